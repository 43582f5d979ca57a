#ifndef DCTCODEC_COLOR_HPP
#define DCTCODEC_COLOR_HPP

#include <array>

#include "dctcodec/core.hpp"
#include "dctcodec/image_io.hpp"

namespace dctcodec {

/// RGB -> YCbCr affine map with the coefficients taken verbatim from the
/// classic luminance/chrominance table (note the Cb row sums to -0.003, so
/// white maps to Cb = 127). The inverse is obtained numerically from the
/// forward matrix rather than hard-coded.
template <typename Scalar = double>
struct ColorMatrix {
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  Matrix3 forward;
  Vector3 offset;
  Matrix3 inverse;

  ColorMatrix() {
    forward << Scalar(0.299), Scalar(0.587), Scalar(0.114),
               Scalar(-0.169), Scalar(-0.334), Scalar(0.500),
               Scalar(0.500), Scalar(-0.419), Scalar(-0.081);
    offset << Scalar(0), Scalar(128), Scalar(128);
    // LU with partial pivoting is Gaussian elimination.
    inverse = forward.partialPivLu().inverse();
  }

  static const ColorMatrix& instance() {
    static const ColorMatrix matrix;
    return matrix;
  }
};

using Triple = std::array<std::uint8_t, 3>;

Triple rgb_to_ycbcr(std::uint8_t r, std::uint8_t g, std::uint8_t b);
Triple ycbcr_to_rgb(std::uint8_t y, std::uint8_t cb, std::uint8_t cr);

/// Whole-image conversions. Input/output planes are (R, G, B) and (Y, Cb, Cr).
std::array<SamplePlane, 3> rgb_to_ycbcr(const RasterImage& rgb);
RasterImage ycbcr_to_rgb(const SamplePlane& y, const SamplePlane& cb, const SamplePlane& cr);

enum class ShiftDirection { kForward, kInverse };

/// Forward: [0,255] -> [-128,127]. Works on any integer-valued Eigen
/// expression and yields ints.
template <typename Derived>
auto level_shift_forward(const Eigen::MatrixBase<Derived>& samples) {
  return (samples.template cast<int>().array() - 128).matrix();
}

/// Inverse: adds 128 and clamps to [0,255]. The input may overshoot (IDCT
/// output), so no range is assumed.
template <typename Derived>
auto level_shift_inverse(const Eigen::MatrixBase<Derived>& values) {
  return (values.template cast<int>().array() + 128).cwiseMax(0).cwiseMin(255).matrix();
}

/// Direction-selected level shift over an integer plane.
IntPlane level_shift(const IntPlane& plane, ShiftDirection direction);

}  // namespace dctcodec

#endif  // DCTCODEC_COLOR_HPP
