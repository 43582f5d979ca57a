#ifndef DCTCODEC_TEST_SUPPORT_HPP
#define DCTCODEC_TEST_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "dctcodec/core.hpp"
#include "dctcodec/entropy.hpp"
#include "dctcodec/image_io.hpp"

namespace dctcodec::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(DCTCODEC_TEST_DATA) / name;
}

inline RasterImage load(const std::string& name) { return read_pnm(read_file(data_path(name))); }

/// The 512x512 natural corpus.
inline std::vector<std::string> corpus_512() {
  return {"camera.pgm", "moon.pgm", "astronaut.ppm", "immunohistochemistry.ppm"};
}

inline RasterImage random_image(std::mt19937_64& rng, Index width, Index height, int channels) {
  RasterImage image(width, height, channels);
  std::uniform_int_distribution<int> sample(0, 255);
  for (auto& plane : image.planes) plane = plane.unaryExpr([&](std::uint8_t) { return std::uint8_t(sample(rng)); });
  return image;
}

/// Smooth random content: a few low-frequency cosines plus mild noise.
inline RasterImage smooth_image(std::mt19937_64& rng, Index width, Index height, int channels) {
  RasterImage image(width, height, channels);
  std::uniform_real_distribution<double> phase(0, 6.28), freq(0.005, 0.05);
  std::normal_distribution<double> noise(0, 2);
  for (auto& plane : image.planes) {
    const double fx = freq(rng), fy = freq(rng), p = phase(rng);
    for (Index r = 0; r < height; ++r) {
      for (Index c = 0; c < width; ++c) {
        const double v = 128 + 80 * std::cos(fx * c + p) * std::sin(fy * r) + noise(rng);
        plane(r, c) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  return image;
}

inline SpatialBlock random_spatial_block(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sample(-128, 127);
  return SpatialBlock::NullaryExpr([&] { return double(sample(rng)); });
}

// ---------------------------------------------------------------------------
// Independent oracles. None of these call into the code under test.

/// Shannon entropy in bits of the distribution given by counts.
inline double entropy_bits(const FrequencyTable& freqs) {
  double total = 0;
  for (const auto& [s, c] : freqs) total += double(c);
  double h = 0;
  for (const auto& [s, c] : freqs) {
    const double p = double(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

/// Minimum of sum(count * length) over every length assignment (lengths 1..n-1)
/// satisfying Kraft <= 1. Exhaustive; only for small alphabets.
inline std::uint64_t brute_force_min_weighted_length(const std::vector<std::uint64_t>& counts) {
  const int n = static_cast<int>(counts.size());
  if (n == 1) return counts[0];
  std::vector<int> lengths(n, 1);
  std::uint64_t best = ~std::uint64_t(0);
  while (true) {
    double kraft = 0;
    std::uint64_t weighted = 0;
    for (int i = 0; i < n; ++i) {
      kraft += std::ldexp(1.0, -lengths[i]);
      weighted += counts[i] * static_cast<std::uint64_t>(lengths[i]);
    }
    if (kraft <= 1.0 + 1e-12) best = std::min(best, weighted);
    int i = 0;
    while (i < n && ++lengths[i] > n - 1) lengths[i++] = 1;
    if (i == n) break;
  }
  return best;
}

/// True when no codeword is a prefix of another. Exhaustive pairwise check.
inline bool prefix_free(const HuffmanSpec& spec) {
  for (const auto& [a, ca] : spec.codes) {
    for (const auto& [b, cb] : spec.codes) {
      if (a == b || ca.length > cb.length) continue;
      if ((cb.bits >> (cb.length - ca.length)) == ca.bits) return false;
    }
  }
  return true;
}

inline double kraft_sum(const HuffmanSpec& spec) {
  double sum = 0;
  for (const auto& [s, code] : spec.codes) sum += std::ldexp(1.0, -code.length);
  return sum;
}

/// Plain loop over the MSE definition.
inline double brute_force_mse(const RasterImage& x, const RasterImage& y) {
  double sum = 0;
  std::size_t terms = 0;
  for (int c = 0; c < x.channels(); ++c) {
    for (Index i = 0; i < x.height; ++i) {
      for (Index j = 0; j < x.width; ++j) {
        const double d = double(x.planes[c](i, j)) - double(y.planes[c](i, j));
        sum += d * d;
        ++terms;
      }
    }
  }
  return sum / double(terms);
}

}  // namespace dctcodec::testing

#endif  // DCTCODEC_TEST_SUPPORT_HPP
