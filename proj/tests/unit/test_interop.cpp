#include <doctest.h>

#include "dctcodec/codec.hpp"
#include "dctcodec/container.hpp"
#include "reference_jpeg.hpp"
#include "test_support.hpp"

using namespace dctcodec;
using namespace dctcodec::testing;

namespace {

// Largest per-sample gap between our component planes and the reference decode.
int max_gap(const Bytes& file) {
  const ReferenceDecode ref = reference_decode(file);
  REQUIRE_MESSAGE(ref.ok, ref.error);
  const DecodedPlanes ours = decode_planes(file);
  REQUIRE(ours.width == ref.width);
  REQUIRE(ours.height == ref.height);
  REQUIRE(static_cast<int>(ours.components.size()) == ref.components);
  int gap = 0;
  for (int c = 0; c < ref.components; ++c) {
    for (Index r = 0; r < ours.height; ++r) {
      for (Index x = 0; x < ours.width; ++x) {
        const int theirs = ref.pixels[(static_cast<std::size_t>(r) * ref.width + x) * ref.components + c];
        gap = std::max(gap, std::abs(theirs - int(ours.components[c](r, x))));
      }
    }
  }
  return gap;
}

}  // namespace

TEST_CASE("reference-encoded grayscale decodes") {
  const Bytes file = reference_encode(load("camera.pgm"), 75, 0);
  CHECK(max_gap(file) <= 1);
}

TEST_CASE("reference-encoded 4:2:0 color with restart markers decodes") {
  std::mt19937_64 rng(21);
  for (auto [w, h, restart] : {std::tuple{64, 64, 1}, std::tuple{50, 37, 2}, std::tuple{129, 71, 5}}) {
    CAPTURE(w);
    CAPTURE(restart);
    const Bytes file = reference_encode(smooth_image(rng, w, h, 3), 85, restart);
    const JfifStream stream = parse_stream(file);
    CHECK(stream.restart_interval == restart);
    CHECK(stream.components[0].h_sampling == 2);
    CHECK(max_gap(file) <= 1);
  }
}

TEST_CASE("natural color image from the reference encoder") {
  CHECK(max_gap(reference_encode(load("coffee.ppm"), 90, 0)) <= 1);
}

TEST_CASE("our 4:2:0 output at odd sizes agrees with the reference decoder") {
  std::mt19937_64 rng(22);
  for (auto [w, h] : {std::pair{17, 9}, std::pair{1, 1}, std::pair{33, 64}}) {
    CAPTURE(w);
    const Bytes file = encode_image(smooth_image(rng, w, h, 3), {.quality = 70, .subsampling = Subsampling::k420});
    CHECK(max_gap(file) <= 1);
  }
}
