#include "dctcodec/quantize.hpp"

#include <string>

namespace dctcodec {

void QuantTable::validate() const {
  if ((divisors.array() < 1).any() || (divisors.array() > 255).any()) {
    throw CodecError("quantization divisors must lie in [1,255]");
  }
}

const QuantTable& luminance_table() {
  static const QuantTable table = [] {
    QuantTable t;
    t.role = TableRole::kLuminance;
    t.divisors << 16, 11, 10, 16, 24, 40, 51, 61,
                  12, 12, 14, 19, 26, 58, 60, 55,
                  14, 13, 16, 24, 40, 57, 69, 56,
                  14, 17, 22, 29, 51, 87, 80, 62,
                  18, 22, 37, 56, 68, 109, 103, 77,
                  24, 35, 55, 64, 81, 104, 113, 92,
                  49, 64, 78, 87, 103, 121, 120, 101,
                  72, 92, 95, 98, 112, 100, 103, 99;
    return t;
  }();
  return table;
}

const QuantTable& chrominance_table() {
  static const QuantTable table = [] {
    QuantTable t;
    t.role = TableRole::kChrominance;
    t.divisors.setConstant(99);
    t.divisors.topLeftCorner<4, 4>() << 17, 18, 24, 47,
                                        18, 21, 26, 66,
                                        24, 26, 56, 99,
                                        47, 66, 99, 99;
    return t;
  }();
  return table;
}

QuantTable scaled_table(const QuantTable& base, int quality) {
  if (quality < 1 || quality > 100) {
    throw CodecError("quality must be in [1,100], got " + std::to_string(quality));
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  QuantTable out = base;
  out.divisors = ((base.divisors.array() * scale + 50) / 100).cwiseMax(1).cwiseMin(255).matrix();
  return out;
}

}  // namespace dctcodec
