#ifndef DCTCODEC_IMAGE_IO_HPP
#define DCTCODEC_IMAGE_IO_HPP

#include <filesystem>
#include <span>
#include <vector>

#include "dctcodec/core.hpp"

namespace dctcodec {

/// Planar 8-bit raster: one plane for grayscale, three (R, G, B) for color.
struct RasterImage {
  Index width = 0;
  Index height = 0;
  std::vector<SamplePlane> planes;

  RasterImage() = default;
  RasterImage(Index width, Index height, int channels);

  int channels() const { return static_cast<int>(planes.size()); }
  /// Raw pixel payload size in bytes (channels * width * height).
  std::size_t payload_size() const;

  friend bool operator==(const RasterImage& a, const RasterImage& b);
};

/// Parses a binary PGM (P5) or PPM (P6) with maxval 255. Header tokens may be
/// separated by any whitespace, and '#' starts a comment running to end of
/// line.
RasterImage read_pnm(std::span<const std::uint8_t> bytes);

/// Emits P5 for one channel, P6 for three, with a "P5\nW H\n255\n" header.
Bytes write_pnm(const RasterImage& image);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace dctcodec

#endif  // DCTCODEC_IMAGE_IO_HPP
