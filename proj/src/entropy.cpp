#include "dctcodec/entropy.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

namespace dctcodec {

// ---------------------------------------------------------------------------
// Zigzag

const std::array<int, kBlockArea>& zigzag_order() {
  static const std::array<int, kBlockArea> order = [] {
    std::array<int, kBlockArea> o{};
    int k = 0;
    for (int diagonal = 0; diagonal < 2 * kBlockSize - 1; ++diagonal) {
      const int lo = std::max(0, diagonal - (kBlockSize - 1));
      const int hi = std::min(diagonal, kBlockSize - 1);
      // Even diagonals run bottom-left to top-right, odd ones the other way.
      for (int i = lo; i <= hi; ++i) {
        const int row = diagonal % 2 == 0 ? hi - (i - lo) : i;
        o[k++] = row * kBlockSize + (diagonal - row);
      }
    }
    return o;
  }();
  return order;
}

ZigzagSequence zigzag_scan(const QuantizedBlock& block) {
  ZigzagSequence seq{};
  const auto& order = zigzag_order();
  for (int k = 0; k < kBlockArea; ++k) seq[k] = block.data()[order[k]];
  return seq;
}

QuantizedBlock inverse_zigzag(const ZigzagSequence& sequence) {
  QuantizedBlock block;
  const auto& order = zigzag_order();
  for (int k = 0; k < kBlockArea; ++k) block.data()[order[k]] = sequence[k];
  return block;
}

// ---------------------------------------------------------------------------
// Symbolization

std::vector<int> dc_differential(std::span<const int> values, Direction direction) {
  std::vector<int> out(values.begin(), values.end());
  if (direction == Direction::kEncode) {
    for (std::size_t i = out.size(); i-- > 1;) out[i] -= values[i - 1];
  } else {
    for (std::size_t i = 1; i < out.size(); ++i) out[i] += out[i - 1];
  }
  return out;
}

int magnitude_category(int value) {
  unsigned magnitude = static_cast<unsigned>(value < 0 ? -value : value);
  int size = 0;
  while (magnitude != 0) {
    ++size;
    magnitude >>= 1;
  }
  return size;
}

std::uint32_t amplitude_bits(int value, int size) {
  if (size == 0) return 0;
  return value >= 0 ? static_cast<std::uint32_t>(value)
                    : static_cast<std::uint32_t>(value + (1 << size) - 1);
}

int amplitude_value(std::uint32_t bits, int size) {
  if (size == 0) return 0;
  return bits < (1u << (size - 1)) ? static_cast<int>(bits) - (1 << size) + 1 : static_cast<int>(bits);
}

CoefficientSymbol CoefficientSymbol::dc(int difference) {
  const int size = magnitude_category(difference);
  if (size > kMaxCategory) {
    throw CodecError("DC difference " + std::to_string(difference) + " exceeds the baseline range");
  }
  return {SymbolKind::kDc, 0, size, difference};
}

std::vector<CoefficientSymbol> runlength_encode(std::span<const int> ac) {
  if (ac.size() != kAcCount) throw CodecError("run-length coding expects 63 AC coefficients");
  int last = -1;
  for (int i = 0; i < kAcCount; ++i) {
    if (ac[i] != 0) last = i;
  }
  std::vector<CoefficientSymbol> out;
  int run = 0;
  for (int i = 0; i <= last; ++i) {
    if (ac[i] == 0) {
      ++run;
      continue;
    }
    for (; run > 15; run -= 16) out.push_back(CoefficientSymbol::zero_run());
    const int size = magnitude_category(ac[i]);
    if (size > kMaxCategory) {
      throw CodecError("AC amplitude " + std::to_string(ac[i]) + " exceeds the baseline range");
    }
    out.push_back({SymbolKind::kAc, run, size, ac[i]});
    run = 0;
  }
  if (last < kAcCount - 1) out.push_back(CoefficientSymbol::end_of_block());
  return out;
}

std::array<int, kAcCount> runlength_decode(std::span<const CoefficientSymbol> symbols) {
  std::array<int, kAcCount> ac{};
  int pos = 0;
  for (const auto& s : symbols) {
    if (s.is_end_of_block()) break;
    pos += s.run;
    if (s.size == 0) {
      if (s.run != 15) throw CodecError("invalid AC symbol with zero size and run " + std::to_string(s.run));
      ++pos;  // 16 zeros
      if (pos > kAcCount) throw CodecError("AC coefficients overflow the block");
      continue;
    }
    if (pos >= kAcCount) throw CodecError("AC coefficients overflow the block");
    ac[pos++] = s.amplitude;
  }
  return ac;
}

// ---------------------------------------------------------------------------
// Huffman construction

CodeLengths build_huffman_lengths(const FrequencyTable& freqs) {
  if (freqs.empty()) throw CodecError("cannot build a Huffman code from an empty frequency table");
  if (freqs.size() == 1) return {{freqs.begin()->first, 1}};

  struct Node {
    std::uint64_t count;
    int parent = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> leaf_symbols;
  // (count, creation index): the earliest-created node wins a tie.
  using Entry = std::pair<std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> parentless;
  for (const auto& [symbol, count] : freqs) {
    if (count == 0) throw CodecError("frequency table entries must be positive");
    parentless.emplace(count, static_cast<int>(nodes.size()));
    nodes.push_back({count});
    leaf_symbols.push_back(symbol);
  }
  while (parentless.size() > 1) {
    const auto [count_a, a] = parentless.top();
    parentless.pop();
    const auto [count_b, b] = parentless.top();
    parentless.pop();
    const int parent = static_cast<int>(nodes.size());
    nodes.push_back({count_a + count_b});
    nodes[a].parent = parent;
    nodes[b].parent = parent;
    parentless.emplace(count_a + count_b, parent);
  }

  // Walk each leaf up to the root.
  CodeLengths lengths;
  for (std::size_t leaf = 0; leaf < leaf_symbols.size(); ++leaf) {
    int depth = 0;
    for (int n = static_cast<int>(leaf); nodes[n].parent != -1; n = nodes[n].parent) ++depth;
    lengths[leaf_symbols[leaf]] = depth;
  }
  return lengths;
}

namespace {

enum class Kraft { kExceeds, kComplete, kIncomplete };

Kraft kraft_status(const std::vector<std::uint64_t>& histogram) {
  constexpr std::uint64_t kCap = std::uint64_t(1) << 40;
  std::uint64_t available = 1;
  for (std::size_t len = 1; len < histogram.size(); ++len) {
    available = std::min(available * 2, kCap);
    if (histogram[len] > available) return Kraft::kExceeds;
    available -= histogram[len];
  }
  return available == 0 ? Kraft::kComplete : Kraft::kIncomplete;
}

// Folds leaves deeper than 16 bits back into the tree: two leaves leave the
// deepest level, one moves up a level, the other pairs with a shallower leaf
// that is pushed down one level.
void fold_complete(std::vector<std::uint64_t>& bits) {
  for (std::size_t i = bits.size() - 1; i > kMaxCodeLength; --i) {
    while (bits[i] > 0) {
      std::size_t j = i - 2;
      while (j > 0 && bits[j] == 0) --j;
      if (j == 0) throw CodecError("cannot limit Huffman code depth");
      bits[i] -= 2;
      bits[i - 1] += 1;
      bits[j + 1] += 2;
      bits[j] -= 1;
    }
  }
}

// Fallback for incomplete codes: clamp, then lengthen the longest codes
// shorter than the limit until the Kraft sum fits.
void clamp_incomplete(std::vector<std::uint64_t>& bits) {
  for (std::size_t i = kMaxCodeLength + 1; i < bits.size(); ++i) {
    bits[kMaxCodeLength] += bits[i];
    bits[i] = 0;
  }
  bits.resize(kMaxCodeLength + 1);
  while (kraft_status(bits) == Kraft::kExceeds) {
    std::size_t j = kMaxCodeLength - 1;
    while (j > 0 && bits[j] == 0) --j;
    if (j == 0) throw CodecError("too many symbols for a 16-bit Huffman code");
    bits[j] -= 1;
    bits[j + 1] += 1;
  }
}

}  // namespace

HuffmanSpec canonicalize(const CodeLengths& lengths) {
  if (lengths.empty()) throw CodecError("cannot canonicalize an empty code");
  int max_length = 0;
  for (const auto& [symbol, length] : lengths) {
    if (length < 1) throw CodecError("code lengths must be positive");
    max_length = std::max(max_length, length);
  }
  std::vector<std::uint64_t> histogram(max_length + 1, 0);
  for (const auto& [symbol, length] : lengths) ++histogram[length];

  const Kraft status = kraft_status(histogram);
  if (status == Kraft::kExceeds) throw CodecError("code lengths violate the Kraft inequality");

  // (length, symbol) order; shorter original codes keep shorter final codes.
  std::vector<std::pair<int, int>> order;
  for (const auto& [symbol, length] : lengths) order.emplace_back(length, symbol);
  std::sort(order.begin(), order.end());

  if (max_length > kMaxCodeLength) {
    if (status == Kraft::kComplete) {
      fold_complete(histogram);
    } else {
      clamp_incomplete(histogram);
    }
    std::size_t next = 0;
    for (int len = 1; len <= kMaxCodeLength; ++len) {
      for (std::uint64_t n = 0; n < histogram[len]; ++n) order[next++].first = len;
    }
    std::sort(order.begin(), order.end());
  }

  HuffmanSpec spec;
  std::uint32_t code = 0;
  int current = order.front().first;
  for (const auto& [length, symbol] : order) {
    code <<= (length - current);
    current = length;
    spec.lengths[symbol] = length;
    spec.codes[symbol] = {length, code};
    ++code;
  }
  return spec;
}

HuffmanSpec optimal_table(const FrequencyTable& freqs) {
  constexpr int kReserved = 256;
  for (const auto& [symbol, count] : freqs) {
    if (symbol < 0 || symbol > 255) throw CodecError("stream Huffman symbols must be bytes");
  }
  FrequencyTable with_reserve = freqs;
  with_reserve[kReserved] = 1;
  CodeLengths lengths = canonicalize(build_huffman_lengths(with_reserve)).lengths;
  lengths.erase(kReserved);
  return canonicalize(lengths);
}

std::array<std::uint8_t, kMaxCodeLength> HuffmanSpec::counts() const {
  std::array<std::uint8_t, kMaxCodeLength> out{};
  for (const auto& [symbol, code] : codes) {
    if (code.length < 1 || code.length > kMaxCodeLength) throw CodecError("code length out of DHT range");
    ++out[code.length - 1];
  }
  return out;
}

std::vector<int> HuffmanSpec::ordered_symbols() const {
  std::vector<std::tuple<int, std::uint32_t, int>> order;
  for (const auto& [symbol, code] : codes) order.emplace_back(code.length, code.bits, symbol);
  std::sort(order.begin(), order.end());
  std::vector<int> out;
  for (const auto& entry : order) out.push_back(std::get<2>(entry));
  return out;
}

HuffmanSpec HuffmanSpec::from_counts(std::span<const std::uint8_t> counts, std::span<const int> symbols) {
  if (counts.size() != kMaxCodeLength) throw CodecError("Huffman table needs 16 length counts");
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total != symbols.size()) throw CodecError("Huffman table symbol count mismatch");
  if (total == 0) throw CodecError("Huffman table has no symbols");

  HuffmanSpec spec;
  std::uint32_t code = 0;
  std::size_t k = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    for (int n = 0; n < counts[len - 1]; ++n, ++k) {
      if (code >= (std::uint32_t(1) << len)) throw CodecError("Huffman table violates the Kraft inequality");
      if (spec.codes.contains(symbols[k])) throw CodecError("duplicate symbol in Huffman table");
      spec.lengths[symbols[k]] = len;
      spec.codes[symbols[k]] = {len, code++};
    }
    code <<= 1;
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Bit I/O

void BitWriter::emit(std::uint8_t byte) {
  out_.push_back(byte);
  if (byte == 0xFF) out_.push_back(0x00);
}

void BitWriter::put(std::uint32_t bits, int count) {
  for (int i = count - 1; i >= 0; --i) {
    accumulator_ = (accumulator_ << 1) | ((bits >> i) & 1u);
    if (++pending_ == 8) {
      emit(static_cast<std::uint8_t>(accumulator_));
      accumulator_ = 0;
      pending_ = 0;
    }
  }
}

void BitWriter::align() {
  if (pending_ > 0) put((1u << (8 - pending_)) - 1, 8 - pending_);
}

void BitWriter::restart_marker(int n) {
  align();
  out_.push_back(0xFF);
  out_.push_back(static_cast<std::uint8_t>(0xD0 + (n & 7)));
}

Bytes BitWriter::finish() {
  align();
  return std::move(out_);
}

void BitReader::fill() {
  if (pos_ >= data_.size()) throw CodecError("unexpected end of entropy-coded data", offset());
  std::uint8_t byte = data_[pos_];
  if (byte == 0xFF) {
    if (pos_ + 1 >= data_.size()) throw CodecError("unexpected end of entropy-coded data", offset() + 1);
    if (data_[pos_ + 1] != 0x00) throw CodecError("unexpected marker inside entropy-coded data", offset());
    ++pos_;
  }
  ++pos_;
  current_ = byte;
  available_ = 8;
}

int BitReader::bit() {
  if (available_ == 0) fill();
  --available_;
  return static_cast<int>((current_ >> available_) & 1u);
}

std::uint32_t BitReader::bits(int count) {
  std::uint32_t value = 0;
  for (int i = 0; i < count; ++i) value = (value << 1) | static_cast<std::uint32_t>(bit());
  return value;
}

void BitReader::restart(int n) {
  available_ = 0;
  if (pos_ + 1 >= data_.size() || data_[pos_] != 0xFF || data_[pos_ + 1] != 0xD0 + (n & 7)) {
    throw CodecError("expected restart marker RST" + std::to_string(n & 7), offset());
  }
  pos_ += 2;
}

HuffmanDecoder::HuffmanDecoder(const HuffmanSpec& spec) : symbols_(spec.ordered_symbols()) {
  const auto counts = spec.counts();
  std::int32_t code = 0;
  int index = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    first_code_[len] = code;
    first_index_[len] = index;
    code += counts[len - 1];
    index += counts[len - 1];
    max_code_[len] = counts[len - 1] == 0 ? -1 : code - 1;
    code <<= 1;
  }
}

int HuffmanDecoder::decode(BitReader& reader) const {
  std::int32_t code = 0;
  for (int len = 1; len <= kMaxCodeLength; ++len) {
    code = (code << 1) | reader.bit();
    if (code <= max_code_[len]) return symbols_[first_index_[len] + (code - first_code_[len])];
  }
  throw CodecError("invalid Huffman code in entropy-coded data", reader.offset());
}

void put_symbol(BitWriter& writer, const CodedSymbol& symbol, const HuffmanSpec& spec) {
  const auto it = spec.codes.find(symbol.symbol);
  if (it == spec.codes.end()) throw CodecError("symbol " + std::to_string(symbol.symbol) + " missing from Huffman table");
  writer.put(it->second.bits, it->second.length);
  if (symbol.extra_length > 0) writer.put(symbol.extra_bits, symbol.extra_length);
}

Bytes bit_encode(std::span<const CodedSymbol> symbols, const HuffmanSpec& spec) {
  BitWriter writer;
  for (const auto& s : symbols) put_symbol(writer, s, spec);
  return writer.finish();
}

std::vector<CodedSymbol> bit_decode(std::span<const std::uint8_t> bytes, const HuffmanSpec& spec,
                                    std::size_t count) {
  const HuffmanDecoder decoder(spec);
  BitReader reader(bytes);
  std::vector<CodedSymbol> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CodedSymbol s;
    s.symbol = decoder.decode(reader);
    s.extra_length = s.symbol & 0x0F;
    s.extra_bits = reader.bits(s.extra_length);
    out.push_back(s);
  }
  return out;
}

}  // namespace dctcodec
