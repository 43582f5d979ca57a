#ifndef DCTCODEC_ENTROPY_HPP
#define DCTCODEC_ENTROPY_HPP

#include <array>
#include <map>
#include <span>
#include <vector>

#include "dctcodec/core.hpp"

namespace dctcodec {

// ---------------------------------------------------------------------------
// Zigzag ordering

using ZigzagSequence = std::array<int, kBlockArea>;

/// zigzag_order()[k] is the row-major index of the k-th coefficient visited
/// along alternating anti-diagonals, starting (0,0), (0,1), (1,0), (2,0), ...
const std::array<int, kBlockArea>& zigzag_order();

ZigzagSequence zigzag_scan(const QuantizedBlock& block);
QuantizedBlock inverse_zigzag(const ZigzagSequence& sequence);

// ---------------------------------------------------------------------------
// Coefficient symbolization

enum class Direction { kEncode, kDecode };

/// Encode: first value verbatim, then successive differences. Decode: running sum.
std::vector<int> dc_differential(std::span<const int> values, Direction direction);

enum class SymbolKind { kDc, kAc };

/// One (run, size, amplitude) token. AC (0,0) is end-of-block, AC (15,0) a
/// sixteen-zero run.
struct CoefficientSymbol {
  SymbolKind kind = SymbolKind::kAc;
  int run = 0;
  int size = 0;
  int amplitude = 0;

  static CoefficientSymbol dc(int difference);
  static CoefficientSymbol end_of_block() { return {SymbolKind::kAc, 0, 0, 0}; }
  static CoefficientSymbol zero_run() { return {SymbolKind::kAc, 15, 0, 0}; }

  bool is_end_of_block() const { return kind == SymbolKind::kAc && run == 0 && size == 0; }
  /// Huffman alphabet value: size for DC, (run << 4) | size for AC.
  int code_symbol() const { return kind == SymbolKind::kDc ? size : (run << 4) | size; }

  friend bool operator==(const CoefficientSymbol&, const CoefficientSymbol&) = default;
};

inline constexpr int kMaxCategory = 11;
inline constexpr int kAcCount = kBlockArea - 1;

/// Number of bits needed for |value| (0 for 0).
int magnitude_category(int value);
/// size-bit representation; negatives stored as value + 2^size - 1.
std::uint32_t amplitude_bits(int value, int size);
int amplitude_value(std::uint32_t bits, int size);

/// Tokenizes the 63 AC coefficients of one block in zigzag order.
std::vector<CoefficientSymbol> runlength_encode(std::span<const int> ac);
/// Expands tokens back to 63 coefficients. Stops at end-of-block.
std::array<int, kAcCount> runlength_decode(std::span<const CoefficientSymbol> symbols);

// ---------------------------------------------------------------------------
// Huffman codes

using FrequencyTable = std::map<int, std::uint64_t>;
using CodeLengths = std::map<int, int>;

inline constexpr int kMaxCodeLength = 16;

/// Leaf depths of the Huffman tree grown by repeatedly merging the two
/// parentless nodes of lowest count (ties go to the earlier-created node).
/// Not depth-limited. A lone symbol gets length 1.
CodeLengths build_huffman_lengths(const FrequencyTable& freqs);

struct Codeword {
  int length = 0;
  std::uint32_t bits = 0;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

struct HuffmanSpec {
  CodeLengths lengths;
  std::map<int, Codeword> codes;

  /// Number of codes of each length 1..16 (DHT layout).
  std::array<std::uint8_t, kMaxCodeLength> counts() const;
  /// Symbols in canonical (length, value) order.
  std::vector<int> ordered_symbols() const;

  /// Rebuilds a spec from its DHT form.
  static HuffmanSpec from_counts(std::span<const std::uint8_t> counts, std::span<const int> symbols);

  friend bool operator==(const HuffmanSpec& a, const HuffmanSpec& b) { return a.codes == b.codes; }
};

/// Assigns canonical codes in (length, symbol) order. Lengths beyond 16 are
/// first folded up into the 16-bit limit. Throws on a Kraft violation.
HuffmanSpec canonicalize(const CodeLengths& lengths);

/// Per-stream table: Huffman lengths over freqs with a reserved extra leaf, so
/// the all-ones codeword of the longest length is never assigned.
/// Symbols must be in [0,255].
HuffmanSpec optimal_table(const FrequencyTable& freqs);

// ---------------------------------------------------------------------------
// Bit-level I/O over the byte-stuffed entropy segment

/// MSB-first packer. Every emitted 0xFF is followed by a stuffed 0x00; the
/// final partial byte is padded with 1-bits.
class BitWriter {
 public:
  void put(std::uint32_t bits, int count);
  /// Pads to a byte boundary with 1-bits.
  void align();
  /// Emits a restart marker 0xFFD0+n after aligning.
  void restart_marker(int n);
  Bytes finish();

 private:
  void emit(std::uint8_t byte);

  Bytes out_;
  std::uint32_t accumulator_ = 0;
  int pending_ = 0;
};

/// MSB-first reader that collapses 0xFF 0x00 pairs. Reaching a marker or the
/// end of the buffer is an error reported with the absolute byte offset.
class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> data, std::size_t base_offset = 0)
      : data_(data), base_(base_offset) {}

  int bit();
  std::uint32_t bits(int count);
  /// Drops buffered bits and consumes the expected RSTn marker.
  void restart(int n);
  /// Absolute offset of the next unread byte.
  std::size_t offset() const { return base_ + pos_; }
  std::size_t consumed() const { return pos_; }

 private:
  void fill();

  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
  std::uint32_t current_ = 0;
  int available_ = 0;
};

/// Canonical table-driven decoder (min/max code per length).
class HuffmanDecoder {
 public:
  explicit HuffmanDecoder(const HuffmanSpec& spec);
  int decode(BitReader& reader) const;

 private:
  std::array<std::int32_t, kMaxCodeLength + 1> max_code_{};
  std::array<std::int32_t, kMaxCodeLength + 1> first_code_{};
  std::array<int, kMaxCodeLength + 1> first_index_{};
  std::vector<int> symbols_;
};

/// A Huffman symbol plus the raw extra bits that follow it. For bit_decode the
/// extra-bit count is the low nibble of the symbol (the coefficient alphabet's
/// size field).
struct CodedSymbol {
  int symbol = 0;
  int extra_length = 0;
  std::uint32_t extra_bits = 0;

  static CodedSymbol from(const CoefficientSymbol& s) {
    return {s.code_symbol(), s.size, amplitude_bits(s.amplitude, s.size)};
  }

  friend bool operator==(const CodedSymbol&, const CodedSymbol&) = default;
};

void put_symbol(BitWriter& writer, const CodedSymbol& symbol, const HuffmanSpec& spec);

Bytes bit_encode(std::span<const CodedSymbol> symbols, const HuffmanSpec& spec);
std::vector<CodedSymbol> bit_decode(std::span<const std::uint8_t> bytes, const HuffmanSpec& spec,
                                    std::size_t count);

}  // namespace dctcodec

#endif  // DCTCODEC_ENTROPY_HPP
