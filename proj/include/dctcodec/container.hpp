#ifndef DCTCODEC_CONTAINER_HPP
#define DCTCODEC_CONTAINER_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dctcodec/core.hpp"
#include "dctcodec/entropy.hpp"
#include "dctcodec/quantize.hpp"

namespace dctcodec {

namespace marker {
inline constexpr std::uint8_t kSoi = 0xD8;
inline constexpr std::uint8_t kEoi = 0xD9;
inline constexpr std::uint8_t kApp0 = 0xE0;
inline constexpr std::uint8_t kDqt = 0xDB;
inline constexpr std::uint8_t kSof0 = 0xC0;
inline constexpr std::uint8_t kDht = 0xC4;
inline constexpr std::uint8_t kSos = 0xDA;
inline constexpr std::uint8_t kDri = 0xDD;
inline constexpr std::uint8_t kCom = 0xFE;
inline constexpr std::uint8_t kRst0 = 0xD0;
}  // namespace marker

/// 0xFF, id, then a big-endian length that counts itself plus the payload.
struct MarkerSegment {
  std::uint8_t marker = 0;
  Bytes payload;

  void append_to(Bytes& out) const;
};

enum class TableClass { kDc = 0, kAc = 1 };

/// One frame component with its sampling factors and table bindings. The
/// entropy table selectors come from the scan header.
struct FrameComponent {
  int id = 0;
  int h_sampling = 1;
  int v_sampling = 1;
  int quant_table = 0;
  int dc_table = 0;
  int ac_table = 0;

  friend bool operator==(const FrameComponent&, const FrameComponent&) = default;
};

/// Parsed model of a baseline single-scan JFIF file.
struct JfifStream {
  int width = 0;
  int height = 0;
  std::vector<FrameComponent> components;
  std::map<int, QuantTable> quant_tables;
  std::map<std::pair<TableClass, int>, HuffmanSpec> huffman_tables;
  int restart_interval = 0;
  /// Byte-stuffed scan data exactly as stored, restart markers included.
  Bytes entropy;

  // Parse-only diagnostics; not serialized.
  std::size_t frame_offset = 0;
  std::size_t entropy_offset = 0;
  std::vector<std::string> warnings;

  int max_h_sampling() const;
  int max_v_sampling() const;
};

/// SOI, APP0 (JFIF 1.01), DQT per table, SOF0, DHT per table, [DRI], SOS,
/// entropy bytes, EOI.
Bytes write_stream(const JfifStream& stream);

/// Inverse of write_stream. Unknown APPn/COM segments are skipped, restart
/// markers inside the scan are kept in the entropy payload, and a repeated
/// table id replaces the earlier table with a warning.
JfifStream parse_stream(std::span<const std::uint8_t> bytes);

}  // namespace dctcodec

#endif  // DCTCODEC_CONTAINER_HPP
