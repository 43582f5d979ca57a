#include "dctcodec/color.hpp"

namespace dctcodec {

namespace {

std::uint8_t narrow(double value) {
  return static_cast<std::uint8_t>(clamp_sample(round_half_away(value)));
}

}  // namespace

Triple rgb_to_ycbcr(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& m = ColorMatrix<>::instance();
  const Eigen::Vector3d ycc = m.forward * Eigen::Vector3d(r, g, b) + m.offset;
  return {narrow(ycc[0]), narrow(ycc[1]), narrow(ycc[2])};
}

Triple ycbcr_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr) {
  const auto& m = ColorMatrix<>::instance();
  const Eigen::Vector3d rgb = m.inverse * (Eigen::Vector3d(y, cb, cr) - m.offset);
  return {narrow(rgb[0]), narrow(rgb[1]), narrow(rgb[2])};
}

std::array<SamplePlane, 3> rgb_to_ycbcr(const RasterImage& rgb) {
  if (rgb.channels() != 3) throw CodecError("color conversion needs a 3-channel image");
  std::array<SamplePlane, 3> out;
  for (auto& plane : out) plane.resize(rgb.height, rgb.width);
  for (Index row = 0; row < rgb.height; ++row) {
    for (Index col = 0; col < rgb.width; ++col) {
      const Triple ycc = rgb_to_ycbcr(rgb.planes[0](row, col), rgb.planes[1](row, col), rgb.planes[2](row, col));
      for (int c = 0; c < 3; ++c) out[c](row, col) = ycc[c];
    }
  }
  return out;
}

RasterImage ycbcr_to_rgb(const SamplePlane& y, const SamplePlane& cb, const SamplePlane& cr) {
  if (cb.rows() != y.rows() || cr.rows() != y.rows() || cb.cols() != y.cols() || cr.cols() != y.cols()) {
    throw CodecError("YCbCr planes differ in size");
  }
  RasterImage image(y.cols(), y.rows(), 3);
  for (Index row = 0; row < y.rows(); ++row) {
    for (Index col = 0; col < y.cols(); ++col) {
      const Triple rgb = ycbcr_to_rgb(y(row, col), cb(row, col), cr(row, col));
      for (int c = 0; c < 3; ++c) image.planes[c](row, col) = rgb[c];
    }
  }
  return image;
}

IntPlane level_shift(const IntPlane& plane, ShiftDirection direction) {
  if (direction == ShiftDirection::kForward) return level_shift_forward(plane);
  return level_shift_inverse(plane);
}

}  // namespace dctcodec
