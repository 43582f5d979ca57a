#ifndef DCTCODEC_CORE_HPP
#define DCTCODEC_CORE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

namespace dctcodec {

/// Side length of every transform block.
inline constexpr int kBlockSize = 8;
inline constexpr int kBlockArea = kBlockSize * kBlockSize;

using Index = Eigen::Index;

/// Fixed 8x8 row-major block. Row index is the vertical position (x / u),
/// column index the horizontal one (y / v).
template <typename Scalar>
using Block = Eigen::Matrix<Scalar, kBlockSize, kBlockSize, Eigen::RowMajor>;

using SpatialBlock = Block<double>;
using CoeffBlock = Block<double>;
using QuantizedBlock = Block<int>;

/// Dynamic row-major sample plane (height x width).
template <typename Scalar>
using Plane = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using SamplePlane = Plane<std::uint8_t>;
using IntPlane = Plane<int>;

using Bytes = std::vector<std::uint8_t>;

/// Every failure raised by the library. Parsers attach the byte offset at
/// which the problem was detected.
class CodecError : public std::runtime_error {
 public:
  explicit CodecError(const std::string& what) : std::runtime_error(what) {}
  CodecError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  std::optional<std::size_t> offset_;
};

/// The one narrowing rule used everywhere a real becomes an integer.
template <typename Real>
inline long round_half_away(Real value) {
  static_assert(std::is_floating_point_v<Real>);
  return std::lround(value);
}

template <typename T>
inline T clamp_sample(T value) {
  return value < T(0) ? T(0) : (value > T(255) ? T(255) : value);
}

}  // namespace dctcodec

#endif  // DCTCODEC_CORE_HPP
