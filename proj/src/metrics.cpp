#include "dctcodec/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dctcodec {

double compression_ratio(double n1, double n2) {
  if (n2 == 0) throw CodecError("compression ratio undefined: compressed size is zero (division by zero)");
  return n1 / n2;
}

double mse(const RasterImage& x, const RasterImage& y) {
  if (x.width != y.width || x.height != y.height || x.channels() != y.channels()) {
    throw CodecError("images differ in dimensions or channel count");
  }
  double total = 0;
  for (int c = 0; c < x.channels(); ++c) {
    total += (x.planes[c].cast<double>() - y.planes[c].cast<double>()).squaredNorm();
  }
  return total / static_cast<double>(x.payload_size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

double psnr(const RasterImage& x, const RasterImage& y) { return psnr_from_mse(mse(x, y)); }

QualityReport QualityReport::measure(const RasterImage& original, const RasterImage& decoded,
                                     std::size_t compressed_size) {
  QualityReport r;
  r.n1 = original.payload_size();
  r.n2 = compressed_size;
  r.cr = compression_ratio(static_cast<double>(r.n1), static_cast<double>(r.n2));
  r.mse = dctcodec::mse(original, decoded);
  r.psnr = psnr_from_mse(r.mse);
  return r;
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << value;
  return out.str();
}

std::string QualityReport::to_key_values() const {
  std::ostringstream out;
  out << "n1=" << n1 << "\n"
      << "n2=" << n2 << "\n"
      << "cr=" << format_real(cr) << "\n"
      << "mse=" << format_real(mse) << "\n"
      << "psnr=" << format_real(psnr) << "\n";
  return out.str();
}

std::string QualityReport::to_json() const {
  nlohmann::ordered_json j;
  j["n1"] = n1;
  j["n2"] = n2;
  j["cr"] = cr;
  j["mse"] = mse;
  // JSON has no infinity literal.
  if (std::isinf(psnr)) {
    j["psnr"] = "inf";
  } else {
    j["psnr"] = psnr;
  }
  return j.dump(2) + "\n";
}

}  // namespace dctcodec
