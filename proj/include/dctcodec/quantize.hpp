#ifndef DCTCODEC_QUANTIZE_HPP
#define DCTCODEC_QUANTIZE_HPP

#include "dctcodec/core.hpp"

namespace dctcodec {

enum class TableRole { kLuminance, kChrominance };

/// 8x8 integer divisors in [1,255], natural (row-major) order.
struct QuantTable {
  Block<int> divisors;
  TableRole role = TableRole::kLuminance;

  /// Throws when any divisor is outside [1,255].
  void validate() const;

  friend bool operator==(const QuantTable& a, const QuantTable& b) {
    return a.role == b.role && a.divisors == b.divisors;
  }
};

const QuantTable& luminance_table();
const QuantTable& chrominance_table();

inline QuantTable default_table(TableRole role) {
  return role == TableRole::kLuminance ? luminance_table() : chrominance_table();
}

/// round-half-away(F(u,v) / Q(u,v)) entry-wise.
template <typename Derived>
QuantizedBlock quantize_block(const Eigen::MatrixBase<Derived>& coeffs, const QuantTable& table) {
  QuantizedBlock out;
  for (int u = 0; u < kBlockSize; ++u) {
    for (int v = 0; v < kBlockSize; ++v) {
      out(u, v) = static_cast<int>(round_half_away(double(coeffs(u, v)) / table.divisors(u, v)));
    }
  }
  return out;
}

/// q(u,v) * Q(u,v) entry-wise, as reals.
inline CoeffBlock dequantize_block(const QuantizedBlock& q, const QuantTable& table) {
  return q.cwiseProduct(table.divisors).cast<double>();
}

/// Quality-scaled copy of base: s = 5000/quality below 50, else 200 - 2*quality;
/// each divisor becomes clamp((base*s + 50) / 100, 1, 255) in integer
/// arithmetic. quality = 50 reproduces base.
QuantTable scaled_table(const QuantTable& base, int quality);

}  // namespace dctcodec

#endif  // DCTCODEC_QUANTIZE_HPP
