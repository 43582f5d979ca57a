#include "dctcodec/codec.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <thread>

#include "dctcodec/color.hpp"
#include "dctcodec/container.hpp"
#include "dctcodec/transform.hpp"

namespace dctcodec {

void EncodeParams::validate() const {
  if (quality < 1 || quality > 100) throw CodecError("quality must be in [1,100], got " + std::to_string(quality));
  if (threads < 0) throw CodecError("thread count must not be negative");
}

namespace {

using SampleBlock = Block<std::uint8_t>;

Index ceil_div(Index a, Index b) { return (a + b - 1) / b; }

// Runs fn(i) for i in [0, n) on contiguous chunks. Each index writes only its
// own output slot, so the result does not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  std::size_t workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                     : static_cast<std::size_t>(threads);
  workers = std::min(workers, std::max<std::size_t>(1, n / 64));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = ceil_div(static_cast<Index>(n), static_cast<Index>(workers));
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([=, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

SamplePlane upsample(const SamplePlane& plane, int fx, int fy) {
  if (fx == 1 && fy == 1) return plane;
  SamplePlane out(plane.rows() * fy, plane.cols() * fx);
  for (Index r = 0; r < out.rows(); ++r) {
    for (Index c = 0; c < out.cols(); ++c) out(r, c) = plane(r / fy, c / fx);
  }
  return out;
}

QuantizedBlock forward_block(const SampleBlock& samples, const QuantTable& table) {
  const SpatialBlock shifted = level_shift_forward(samples).cast<double>();
  return quantize_block(dct2_fast(shifted), table);
}

SampleBlock inverse_block(const QuantizedBlock& q, const QuantTable& table) {
  const SpatialBlock spatial = idct2_fast(dequantize_block(q, table));
  const Block<int> rounded = spatial.unaryExpr([](double x) { return static_cast<int>(round_half_away(x)); });
  return level_shift_inverse(rounded).cast<std::uint8_t>();
}

struct ComponentPlan {
  SamplePlane plane;
  int h = 1;
  int v = 1;
  bool chroma = false;
};

std::vector<ComponentPlan> plan_components(const RasterImage& image, Subsampling subsampling) {
  if (image.channels() == 1) return {{image.planes[0], 1, 1, false}};
  if (image.channels() != 3) throw CodecError("only 1- and 3-channel images can be encoded");
  auto ycc = rgb_to_ycbcr(image);
  if (subsampling == Subsampling::k444) {
    return {{std::move(ycc[0]), 1, 1, false}, {std::move(ycc[1]), 1, 1, true}, {std::move(ycc[2]), 1, 1, true}};
  }
  return {{std::move(ycc[0]), 2, 2, false},
          {chroma_resample(ycc[1], Resample::kDown), 1, 1, true},
          {chroma_resample(ycc[2], Resample::kDown), 1, 1, true}};
}

// Table slots: luminance DC/AC, chrominance DC/AC.
int table_slot(bool chroma, SymbolKind kind) { return (chroma ? 2 : 0) + (kind == SymbolKind::kAc ? 1 : 0); }

struct PendingSymbol {
  int slot;
  CodedSymbol symbol;
};

void symbolize_block(const QuantizedBlock& block, bool chroma, int& predictor, std::vector<PendingSymbol>& out) {
  const ZigzagSequence seq = zigzag_scan(block);
  out.push_back({table_slot(chroma, SymbolKind::kDc), CodedSymbol::from(CoefficientSymbol::dc(seq[0] - predictor))});
  predictor = seq[0];
  for (const auto& s : runlength_encode(std::span<const int>(seq).subspan(1))) {
    out.push_back({table_slot(chroma, SymbolKind::kAc), CodedSymbol::from(s)});
  }
}

}  // namespace

SamplePlane chroma_resample(const SamplePlane& plane, Resample factor) {
  if (factor == Resample::kUp) return upsample(plane, 2, 2);
  const Index rows = ceil_div(plane.rows(), 2);
  const Index cols = ceil_div(plane.cols(), 2);
  SamplePlane out(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Index r0 = 2 * r;
    const Index r1 = std::min(r0 + 1, plane.rows() - 1);
    for (Index c = 0; c < cols; ++c) {
      const Index c0 = 2 * c;
      const Index c1 = std::min(c0 + 1, plane.cols() - 1);
      const int sum = plane(r0, c0) + plane(r0, c1) + plane(r1, c0) + plane(r1, c1);
      out(r, c) = static_cast<std::uint8_t>(round_half_away(sum / 4.0));
    }
  }
  return out;
}

Bytes encode_image(const RasterImage& image, const EncodeParams& params) {
  params.validate();
  if (image.width < 1 || image.height < 1 || image.width > 0xFFFF || image.height > 0xFFFF) {
    throw CodecError("image dimensions must lie in [1, 65535]");
  }
  const std::vector<ComponentPlan> plans = plan_components(image, params.subsampling);
  const QuantTable luma = scaled_table(luminance_table(), params.quality);
  const QuantTable chroma = scaled_table(chrominance_table(), params.quality);

  int hmax = 1, vmax = 1;
  for (const auto& p : plans) {
    hmax = std::max(hmax, p.h);
    vmax = std::max(vmax, p.v);
  }
  const Index mcu_cols = ceil_div(image.width, kBlockSize * hmax);
  const Index mcu_rows = ceil_div(image.height, kBlockSize * vmax);

  // Block stages, independent per block.
  std::vector<BlockGrid<int>> quantized;
  for (const auto& p : plans) {
    const BlockGrid<std::uint8_t> samples = split_into_blocks(p.plane, mcu_cols * p.h, mcu_rows * p.v);
    BlockGrid<int> grid;
    grid.blocks_per_row = samples.blocks_per_row;
    grid.blocks_per_col = samples.blocks_per_col;
    grid.width = samples.width;
    grid.height = samples.height;
    grid.blocks.resize(samples.blocks.size());
    const QuantTable& table = p.chroma ? chroma : luma;
    parallel_for(samples.blocks.size(), params.threads,
                 [&](std::size_t i) { grid.blocks[i] = forward_block(samples.blocks[i], table); });
    quantized.push_back(std::move(grid));
  }

  // Symbols in scan order: MCUs row-major, components in frame order.
  std::vector<PendingSymbol> symbols;
  std::vector<int> predictors(plans.size(), 0);
  for (Index my = 0; my < mcu_rows; ++my) {
    for (Index mx = 0; mx < mcu_cols; ++mx) {
      for (std::size_t c = 0; c < plans.size(); ++c) {
        for (int by = 0; by < plans[c].v; ++by) {
          for (int bx = 0; bx < plans[c].h; ++bx) {
            symbolize_block(quantized[c].at(my * plans[c].v + by, mx * plans[c].h + bx), plans[c].chroma,
                            predictors[c], symbols);
          }
        }
      }
    }
  }

  // Pass one: statistics; pass two: codes.
  std::array<FrequencyTable, 4> freqs;
  for (const auto& s : symbols) ++freqs[s.slot][s.symbol.symbol];
  std::array<HuffmanSpec, 4> tables;
  for (int slot = 0; slot < 4; ++slot) {
    if (!freqs[slot].empty()) tables[slot] = optimal_table(freqs[slot]);
  }
  BitWriter writer;
  for (const auto& s : symbols) put_symbol(writer, s.symbol, tables[s.slot]);

  JfifStream stream;
  stream.width = static_cast<int>(image.width);
  stream.height = static_cast<int>(image.height);
  stream.quant_tables[0] = luma;
  const bool color = plans.size() == 3;
  if (color) stream.quant_tables[1] = chroma;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    const int id = plans[c].chroma ? 1 : 0;
    stream.components.push_back({static_cast<int>(c) + 1, plans[c].h, plans[c].v, id, id, id});
  }
  stream.huffman_tables[{TableClass::kDc, 0}] = tables[0];
  stream.huffman_tables[{TableClass::kAc, 0}] = tables[1];
  if (color) {
    stream.huffman_tables[{TableClass::kDc, 1}] = tables[2];
    stream.huffman_tables[{TableClass::kAc, 1}] = tables[3];
  }
  stream.entropy = writer.finish();
  return write_stream(stream);
}

namespace {

// Largest magnitude a decoded coefficient may take before the stream is
// treated as corrupt.
constexpr int kCoefficientLimit = 32767;

QuantizedBlock decode_block(BitReader& reader, const HuffmanDecoder& dc, const HuffmanDecoder& ac, int& predictor) {
  const int dc_size = dc.decode(reader);
  if (dc_size > kMaxCategory) throw CodecError("invalid DC magnitude category " + std::to_string(dc_size));
  const long value = long(predictor) + amplitude_value(reader.bits(dc_size), dc_size);
  if (value > kCoefficientLimit || value < -kCoefficientLimit) throw CodecError("DC coefficient out of range");
  predictor = static_cast<int>(value);

  std::vector<CoefficientSymbol> symbols;
  int filled = 0;
  while (filled < kAcCount) {
    const int symbol = ac.decode(reader);
    CoefficientSymbol s{SymbolKind::kAc, symbol >> 4, symbol & 0x0F, 0};
    if (s.is_end_of_block()) {
      symbols.push_back(s);
      break;
    }
    s.amplitude = amplitude_value(reader.bits(s.size), s.size);
    filled += s.run + 1;
    symbols.push_back(s);
  }
  const auto ac_values = runlength_decode(symbols);

  ZigzagSequence seq;
  seq[0] = predictor;
  std::copy(ac_values.begin(), ac_values.end(), seq.begin() + 1);
  return inverse_zigzag(seq);
}

}  // namespace

DecodedPlanes decode_planes(std::span<const std::uint8_t> bytes) {
  const JfifStream stream = parse_stream(bytes);
  const std::size_t ncomp = stream.components.size();
  if (ncomp != 1 && ncomp != 3) {
    throw CodecError("unsupported component count " + std::to_string(ncomp) + " (expected 1 or 3)",
                     stream.frame_offset);
  }
  const int hmax = stream.max_h_sampling();
  const int vmax = stream.max_v_sampling();
  const bool interleaved = ncomp > 1;
  const Index mcu_cols = ceil_div(stream.width, kBlockSize * hmax);
  const Index mcu_rows = ceil_div(stream.height, kBlockSize * vmax);

  struct ComponentState {
    FrameComponent frame;
    const QuantTable* table;
    HuffmanDecoder dc;
    HuffmanDecoder ac;
    BlockGrid<int> coeffs;
  };
  std::vector<ComponentState> comps;
  std::size_t total_blocks = 0;
  for (const auto& c : stream.components) {
    if (hmax % c.h_sampling != 0 || vmax % c.v_sampling != 0) {
      throw CodecError("unsupported sampling factor combination", stream.frame_offset);
    }
    BlockGrid<int> grid;
    grid.width = ceil_div(Index(stream.width) * c.h_sampling, hmax);
    grid.height = ceil_div(Index(stream.height) * c.v_sampling, vmax);
    grid.blocks_per_row = interleaved ? mcu_cols * c.h_sampling : ceil_div(grid.width, kBlockSize);
    grid.blocks_per_col = interleaved ? mcu_rows * c.v_sampling : ceil_div(grid.height, kBlockSize);
    total_blocks += static_cast<std::size_t>(grid.blocks_per_row * grid.blocks_per_col);
    comps.push_back({c, &stream.quant_tables.at(c.quant_table),
                     HuffmanDecoder(stream.huffman_tables.at({TableClass::kDc, c.dc_table})),
                     HuffmanDecoder(stream.huffman_tables.at({TableClass::kAc, c.ac_table})), std::move(grid)});
  }
  // Every block costs at least two bits (a DC code and an end-of-block code).
  if (total_blocks * 2 > stream.entropy.size() * 8 + 16) {
    throw CodecError("entropy-coded data too short for the declared frame size", stream.entropy_offset);
  }
  for (auto& c : comps) c.coeffs.blocks.resize(static_cast<std::size_t>(c.coeffs.blocks_per_row * c.coeffs.blocks_per_col));

  BitReader reader(stream.entropy, stream.entropy_offset);
  std::vector<int> predictors(ncomp, 0);
  const Index mcu_total = interleaved ? mcu_cols * mcu_rows : comps[0].coeffs.blocks_per_row * comps[0].coeffs.blocks_per_col;
  int next_restart = 0;
  try {
    for (Index m = 0; m < mcu_total; ++m) {
      if (stream.restart_interval > 0 && m > 0 && m % stream.restart_interval == 0) {
        reader.restart(next_restart);
        next_restart = (next_restart + 1) & 7;
        std::fill(predictors.begin(), predictors.end(), 0);
      }
      if (!interleaved) {
        comps[0].coeffs.blocks[static_cast<std::size_t>(m)] = decode_block(reader, comps[0].dc, comps[0].ac, predictors[0]);
        continue;
      }
      const Index my = m / mcu_cols;
      const Index mx = m % mcu_cols;
      for (std::size_t c = 0; c < ncomp; ++c) {
        auto& comp = comps[c];
        for (int by = 0; by < comp.frame.v_sampling; ++by) {
          for (int bx = 0; bx < comp.frame.h_sampling; ++bx) {
            comp.coeffs.at(my * comp.frame.v_sampling + by, mx * comp.frame.h_sampling + bx) =
                decode_block(reader, comp.dc, comp.ac, predictors[c]);
          }
        }
      }
    }
  } catch (const CodecError& e) {
    if (e.offset()) throw;
    throw CodecError(e.what(), reader.offset());
  }

  DecodedPlanes out;
  out.width = stream.width;
  out.height = stream.height;
  for (const auto& comp : comps) {
    BlockGrid<std::uint8_t> samples;
    samples.blocks_per_row = comp.coeffs.blocks_per_row;
    samples.blocks_per_col = comp.coeffs.blocks_per_col;
    samples.width = comp.coeffs.width;
    samples.height = comp.coeffs.height;
    samples.blocks.resize(comp.coeffs.blocks.size());
    for (std::size_t i = 0; i < samples.blocks.size(); ++i) samples.blocks[i] = inverse_block(comp.coeffs.blocks[i], *comp.table);
    const SamplePlane full = upsample(merge_blocks(samples), hmax / comp.frame.h_sampling, vmax / comp.frame.v_sampling);
    out.components.push_back(full.topLeftCorner(out.height, out.width));
  }
  return out;
}

RasterImage decode_image(std::span<const std::uint8_t> bytes) {
  DecodedPlanes planes = decode_planes(bytes);
  if (planes.components.size() == 3) {
    return ycbcr_to_rgb(planes.components[0], planes.components[1], planes.components[2]);
  }
  RasterImage image(planes.width, planes.height, 1);
  image.planes[0] = std::move(planes.components[0]);
  return image;
}

BlockStages inspect_block(const RasterImage& image, Index block_row, Index block_col, int quality) {
  const SamplePlane luma = image.channels() == 3 ? rgb_to_ycbcr(image)[0] : image.planes.at(0);
  const BlockGrid<std::uint8_t> grid = split_into_blocks(luma);
  if (block_row < 0 || block_col < 0 || block_row >= grid.blocks_per_col || block_col >= grid.blocks_per_row) {
    throw CodecError("block (" + std::to_string(block_row) + "," + std::to_string(block_col) +
                     ") outside the " + std::to_string(grid.blocks_per_col) + "x" +
                     std::to_string(grid.blocks_per_row) + " block grid");
  }
  BlockStages stages;
  stages.samples = grid.at(block_row, block_col).cast<int>();
  stages.shifted = level_shift_forward(stages.samples);
  stages.dct = dct2_fast(stages.shifted.cast<double>());
  stages.quantized = quantize_block(stages.dct, scaled_table(luminance_table(), quality));
  stages.zigzag = zigzag_scan(stages.quantized);
  return stages;
}

}  // namespace dctcodec
