#include "dctcodec/cli.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dctcodec/codec.hpp"
#include "dctcodec/metrics.hpp"

namespace dctcodec {

namespace {

template <typename Matrix>
void print_matrix(std::ostream& out, const Matrix& m, bool real) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      if (real) {
        out << std::fixed << std::setprecision(2) << double(m(r, c));
      } else {
        out << m(r, c);
      }
    }
    out << '\n';
  }
}

std::pair<Index, Index> parse_block_index(const std::string& text) {
  Index row = 0, col = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> row >> comma >> col) || comma != ',' || !in.eof()) {
    throw CLI::ValidationError("--block", "expected R,C");
  }
  return {row, col};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Baseline DCT image codec"};
  app.require_subcommand(1);

  std::string input, output;
  int quality = 50;
  std::string subsample = "444";
  bool json = false;
  int threads = 1;

  auto* encode = app.add_subcommand("encode", "Compress a PGM/PPM image to JPEG");
  encode->add_option("input", input, "Input .pgm/.ppm")->required();
  encode->add_option("output", output, "Output .jpg")->required();
  encode->add_option("--quality", quality, "Quality 1..100")->check(CLI::Range(1, 100));
  encode->add_option("--subsample", subsample, "Chroma subsampling")->check(CLI::IsMember({"444", "420"}));
  encode->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  encode->add_flag("--json", json, "Print the report as JSON");

  auto* decode = app.add_subcommand("decode", "Decompress a JPEG to PGM/PPM");
  decode->add_option("input", input, "Input .jpg")->required();
  decode->add_option("output", output, "Output .pgm/.ppm")->required();

  std::vector<std::string> metric_files;
  std::vector<double> sizes;
  auto* metrics = app.add_subcommand("metrics", "Compare two images, or compute a compression ratio");
  auto* files_opt = metrics->add_option("images", metric_files, "Original and reconstructed images")->expected(2);
  auto* sizes_opt = metrics->add_option("--sizes", sizes, "Original and compressed byte counts")->expected(2);
  files_opt->excludes(sizes_opt);
  metrics->add_flag("--json", json, "Print as JSON");

  std::string stage, block = "0,0";
  auto* inspect = app.add_subcommand("inspect", "Dump one block at an intermediate stage");
  inspect->add_option("input", input, "Input .pgm/.ppm")->required();
  inspect->add_option("--stage", stage, "Pipeline stage")->required()->check(CLI::IsMember({"dct", "quant", "zigzag"}));
  inspect->add_option("--block", block, "Block row,column")->capture_default_str();
  inspect->add_option("--quality", quality, "Quality 1..100")->check(CLI::Range(1, 100));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (metrics->parsed() && metric_files.empty() && sizes.empty()) {
      throw CLI::RequiredError("metrics needs two images or --sizes n1 n2");
    }
    if (inspect->parsed()) parse_block_index(block);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (encode->parsed()) {
      const RasterImage image = read_pnm(read_file(input));
      EncodeParams params;
      params.quality = quality;
      params.subsampling = subsample == "420" ? Subsampling::k420 : Subsampling::k444;
      params.threads = threads;
      const Bytes jpeg = encode_image(image, params);
      write_file(output, jpeg);
      const QualityReport report = QualityReport::measure(image, decode_image(jpeg), jpeg.size());
      out << (json ? report.to_json() : report.to_key_values());
    } else if (decode->parsed()) {
      const RasterImage image = decode_image(read_file(input));
      write_file(output, write_pnm(image));
    } else if (metrics->parsed()) {
      if (!sizes.empty()) {
        const double cr = compression_ratio(sizes[0], sizes[1]);
        out << (json ? "{\n  \"cr\": " + format_real(cr) + "\n}\n" : "cr=" + format_real(cr) + "\n");
      } else {
        const RasterImage a = read_pnm(read_file(metric_files[0]));
        const RasterImage b = read_pnm(read_file(metric_files[1]));
        const double m = mse(a, b);
        const std::string p = format_real(psnr_from_mse(m));
        if (json) {
          out << "{\n  \"mse\": " << format_real(m) << ",\n  \"psnr\": " << (p == "inf" ? "\"inf\"" : p) << "\n}\n";
        } else {
          out << "mse=" << format_real(m) << "\npsnr=" << p << "\n";
        }
      }
    } else if (inspect->parsed()) {
      const auto [row, col] = parse_block_index(block);
      const BlockStages stages = inspect_block(read_pnm(read_file(input)), row, col, quality);
      if (stage == "dct") {
        print_matrix(out, stages.dct, true);
      } else if (stage == "quant") {
        print_matrix(out, stages.quantized, false);
      } else {
        print_matrix(out, Eigen::Map<const Block<int>>(stages.zigzag.data()), false);
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dctcodec
