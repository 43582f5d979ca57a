#include "dctcodec/image_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace dctcodec {

RasterImage::RasterImage(Index width_, Index height_, int channels)
    : width(width_), height(height_) {
  if (channels != 1 && channels != 3) {
    throw CodecError("raster image must have 1 or 3 channels, got " + std::to_string(channels));
  }
  if (width_ < 1 || height_ < 1) {
    throw CodecError("raster image dimensions must be positive");
  }
  planes.assign(channels, SamplePlane::Zero(height_, width_));
}

std::size_t RasterImage::payload_size() const {
  return static_cast<std::size_t>(channels()) * static_cast<std::size_t>(width) *
         static_cast<std::size_t>(height);
}

bool operator==(const RasterImage& a, const RasterImage& b) {
  if (a.width != b.width || a.height != b.height || a.channels() != b.channels()) return false;
  for (int c = 0; c < a.channels(); ++c) {
    if (a.planes[c] != b.planes[c]) return false;
  }
  return true;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and comments, then reads a decimal token.
  long next_number(const char* what) {
    skip_separators();
    const std::size_t start = token_start_ = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw CodecError(std::string("PNM ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (pos_ >= bytes_.size()) throw CodecError(std::string("PNM header truncated before ") + what, pos_);
      throw CodecError(std::string("PNM header: expected ") + what, pos_);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace() {
    if (pos_ >= bytes_.size()) throw CodecError("PNM header truncated before raster", pos_);
    if (!std::isspace(bytes_[pos_])) throw CodecError("PNM header: expected whitespace after maxval", pos_);
    ++pos_;
  }

  std::size_t position() const { return pos_; }
  std::size_t token_start() const { return token_start_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
};

}  // namespace

RasterImage read_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw CodecError("not a PNM file: bad magic number", 0);
  int channels = 0;
  if (bytes[1] == '5') {
    channels = 1;
  } else if (bytes[1] == '6') {
    channels = 3;
  } else {
    throw CodecError(std::string("unsupported PNM magic P") + static_cast<char>(bytes[1]), 0);
  }

  HeaderReader header(bytes);
  header.advance(2);
  const long width = header.next_number("width");
  const long height = header.next_number("height");
  const long maxval = header.next_number("maxval");
  const std::size_t maxval_offset = header.token_start();
  if (width < 1 || height < 1) throw CodecError("PNM dimensions must be positive", maxval_offset);
  if (maxval != 255) throw CodecError("unsupported PNM maxval " + std::to_string(maxval) + " (only 255)", maxval_offset);
  header.single_whitespace();

  const std::size_t data_start = header.position();
  const std::size_t needed = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
  if (bytes.size() - data_start < needed) {
    throw CodecError("truncated PNM pixel data: expected " + std::to_string(needed) + " bytes, found " +
                         std::to_string(bytes.size() - data_start),
                     bytes.size());
  }

  RasterImage image(width, height, channels);
  const std::uint8_t* data = bytes.data() + data_start;
  for (Index row = 0; row < height; ++row) {
    for (Index col = 0; col < width; ++col) {
      for (int c = 0; c < channels; ++c) image.planes[c](row, col) = *data++;
    }
  }
  return image;
}

Bytes write_pnm(const RasterImage& image) {
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.reserve(header.size() + image.payload_size());
  for (Index row = 0; row < image.height; ++row) {
    for (Index col = 0; col < image.width; ++col) {
      for (const auto& plane : image.planes) out.push_back(plane(row, col));
    }
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CodecError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CodecError("failed writing " + path.string());
}

}  // namespace dctcodec
