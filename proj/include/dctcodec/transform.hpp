#ifndef DCTCODEC_TRANSFORM_HPP
#define DCTCODEC_TRANSFORM_HPP

#include <numbers>

#include "dctcodec/core.hpp"

namespace dctcodec {

namespace detail {

template <typename Scalar>
Scalar dct_norm(int k) {
  return k == 0 ? Scalar(1) / std::sqrt(Scalar(2)) : Scalar(1);
}

template <typename Scalar>
Block<Scalar> make_dct_basis() {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar scale = std::sqrt(Scalar(2) / kBlockSize);
  Block<Scalar> basis;
  for (int k = 0; k < kBlockSize; ++k) {
    for (int n = 0; n < kBlockSize; ++n) {
      basis(k, n) = scale * dct_norm<Scalar>(k) * std::cos(pi * (2 * n + 1) * k / (2 * kBlockSize));
    }
  }
  return basis;
}

}  // namespace detail

/// Orthonormal 1-D DCT-II matrix: row k holds sqrt(2/N) C(k) cos(pi (2n+1) k / 2N).
template <typename Scalar = double>
const Block<Scalar>& dct_basis() {
  static const Block<Scalar> basis = detail::make_dct_basis<Scalar>();
  return basis;
}

/// Forward 2-D DCT by literal quadruple sum,
///   F(u,v) = 2/N C(u) C(v) sum_x sum_y f(x,y) cos[pi(2x+1)u/2N] cos[pi(2y+1)v/2N].
/// O(N^4); kept as the reference for the separable path.
template <typename Scalar>
Block<Scalar> dct2_direct(const Block<Scalar>& block) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  constexpr int n = kBlockSize;
  Block<Scalar> out;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      Scalar sum = 0;
      for (int x = 0; x < n; ++x) {
        const Scalar cu = std::cos(pi * (2 * x + 1) * u / (2 * n));
        for (int y = 0; y < n; ++y) {
          sum += block(x, y) * cu * std::cos(pi * (2 * y + 1) * v / (2 * n));
        }
      }
      out(u, v) = Scalar(2) / n * detail::dct_norm<Scalar>(u) * detail::dct_norm<Scalar>(v) * sum;
    }
  }
  return out;
}

/// Inverse 2-D DCT by literal quadruple sum,
///   f(x,y) = 2/N sum_u sum_v C(u) C(v) F(u,v) cos[pi(2x+1)u/2N] cos[pi(2y+1)v/2N].
template <typename Scalar>
Block<Scalar> idct2_direct(const Block<Scalar>& coeffs) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  constexpr int n = kBlockSize;
  Block<Scalar> out;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Scalar sum = 0;
      for (int u = 0; u < n; ++u) {
        const Scalar cu = detail::dct_norm<Scalar>(u) * std::cos(pi * (2 * x + 1) * u / (2 * n));
        for (int v = 0; v < n; ++v) {
          sum += cu * detail::dct_norm<Scalar>(v) * coeffs(u, v) * std::cos(pi * (2 * y + 1) * v / (2 * n));
        }
      }
      out(x, y) = Scalar(2) / n * sum;
    }
  }
  return out;
}

/// Separable forward DCT: 1-D transforms over columns then rows, D f D^T.
template <typename Derived>
Block<typename Derived::Scalar> dct2_fast(const Eigen::MatrixBase<Derived>& block) {
  using Scalar = typename Derived::Scalar;
  const auto& basis = dct_basis<Scalar>();
  Block<Scalar> partial;
  partial.noalias() = basis * block;
  Block<Scalar> out;
  out.noalias() = partial * basis.transpose();
  return out;
}

/// Separable inverse DCT: D^T F D.
template <typename Derived>
Block<typename Derived::Scalar> idct2_fast(const Eigen::MatrixBase<Derived>& coeffs) {
  using Scalar = typename Derived::Scalar;
  const auto& basis = dct_basis<Scalar>();
  Block<Scalar> partial;
  partial.noalias() = basis.transpose() * coeffs;
  Block<Scalar> out;
  out.noalias() = partial * basis;
  return out;
}

}  // namespace dctcodec

#endif  // DCTCODEC_TRANSFORM_HPP
