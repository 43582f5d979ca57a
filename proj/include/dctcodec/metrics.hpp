#ifndef DCTCODEC_METRICS_HPP
#define DCTCODEC_METRICS_HPP

#include <string>

#include "dctcodec/image_io.hpp"

namespace dctcodec {

/// n1 / n2.
double compression_ratio(double n1, double n2);

/// Mean squared sample difference. For color images the mean runs over all
/// 3*H*W samples.
double mse(const RasterImage& x, const RasterImage& y);

/// 10 log10(255^2 / mse); +infinity when mse is zero.
double psnr_from_mse(double mse_value);
double psnr(const RasterImage& x, const RasterImage& y);

struct QualityReport {
  std::size_t n1 = 0;  // raw pixel payload bytes
  std::size_t n2 = 0;  // compressed file bytes
  double cr = 0;
  double mse = 0;
  double psnr = 0;

  static QualityReport measure(const RasterImage& original, const RasterImage& decoded, std::size_t compressed_size);

  /// One key=value pair per line.
  std::string to_key_values() const;
  std::string to_json() const;
};

/// Renders a real the way reports print it: "inf" for infinity.
std::string format_real(double value);

}  // namespace dctcodec

#endif  // DCTCODEC_METRICS_HPP
