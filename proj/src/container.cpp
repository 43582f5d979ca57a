#include "dctcodec/container.hpp"

#include <algorithm>
#include <set>

namespace dctcodec {

namespace {

void put_u16(Bytes& out, int value) {
  out.push_back(static_cast<std::uint8_t>((value >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>(value & 0xFF));
}

bool is_unsupported_sof(std::uint8_t id) {
  return id >= 0xC1 && id <= 0xCF && id != marker::kDht && id != 0xC8 && id != 0xCC;
}

const char* class_name(TableClass c) { return c == TableClass::kDc ? "DC" : "AC"; }

// Bounded reader over one segment payload; every overrun is an error at the
// absolute file offset.
class Cursor {
 public:
  Cursor(std::span<const std::uint8_t> data, std::size_t base) : data_(data), base_(base) {}

  std::uint8_t u8(const char* what) {
    if (pos_ >= data_.size()) throw CodecError(std::string("segment too short reading ") + what, offset());
    return data_[pos_++];
  }
  int u16(const char* what) {
    const int hi = u8(what);
    return (hi << 8) | u8(what);
  }
  bool done() const { return pos_ == data_.size(); }
  std::size_t offset() const { return base_ + pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

void parse_dqt(Cursor& in, JfifStream& stream) {
  while (!in.done()) {
    const std::size_t at = in.offset();
    const int spec = in.u8("DQT table header");
    const int precision = spec >> 4;
    const int id = spec & 0x0F;
    if (precision != 0) throw CodecError("16-bit quantization tables are not baseline", at);
    if (id > 3) throw CodecError("quantization table id " + std::to_string(id) + " out of range", at);
    QuantTable table;
    table.role = id == 0 ? TableRole::kLuminance : TableRole::kChrominance;
    const auto& order = zigzag_order();
    for (int k = 0; k < kBlockArea; ++k) {
      const std::size_t entry = in.offset();
      const int divisor = in.u8("DQT entries");
      if (divisor == 0) throw CodecError("zero quantization divisor", entry);
      table.divisors.data()[order[k]] = divisor;
    }
    if (stream.quant_tables.contains(id)) {
      stream.warnings.push_back("quantization table " + std::to_string(id) + " redefined at byte " +
                                std::to_string(at));
    }
    stream.quant_tables[id] = table;
  }
}

void parse_dht(Cursor& in, JfifStream& stream) {
  while (!in.done()) {
    const std::size_t at = in.offset();
    const int spec = in.u8("DHT table header");
    const int table_class = spec >> 4;
    const int id = spec & 0x0F;
    if (table_class > 1 || id > 3) throw CodecError("invalid Huffman table class/id", at);
    std::array<std::uint8_t, kMaxCodeLength> counts{};
    std::size_t total = 0;
    for (auto& c : counts) {
      c = in.u8("DHT counts");
      total += c;
    }
    if (total > 256) throw CodecError("Huffman table lists more than 256 symbols", at);
    std::vector<int> symbols(total);
    for (auto& s : symbols) s = in.u8("DHT symbols");
    HuffmanSpec table;
    try {
      table = HuffmanSpec::from_counts(counts, symbols);
    } catch (const CodecError& e) {
      throw CodecError(e.what(), at);
    }
    const auto key = std::make_pair(static_cast<TableClass>(table_class), id);
    if (stream.huffman_tables.contains(key)) {
      stream.warnings.push_back(std::string(class_name(key.first)) + " Huffman table " + std::to_string(id) +
                                " redefined at byte " + std::to_string(at));
    }
    stream.huffman_tables[key] = std::move(table);
  }
}

void parse_sof0(Cursor& in, JfifStream& stream, std::size_t at) {
  if (!stream.components.empty()) throw CodecError("more than one frame header", at);
  stream.frame_offset = at;
  const int precision = in.u8("SOF0 precision");
  if (precision != 8) throw CodecError("sample precision " + std::to_string(precision) + " is not baseline", at);
  stream.height = in.u16("SOF0 height");
  stream.width = in.u16("SOF0 width");
  if (stream.height == 0) throw CodecError("frame height defined by DNL is not supported", at);
  if (stream.width == 0) throw CodecError("frame width is zero", at);
  const int count = in.u8("SOF0 component count");
  if (count < 1 || count > 4) throw CodecError("invalid component count " + std::to_string(count), at);
  std::set<int> ids;
  for (int i = 0; i < count; ++i) {
    const std::size_t entry = in.offset();
    FrameComponent c;
    c.id = in.u8("component id");
    const int sampling = in.u8("sampling factors");
    c.h_sampling = sampling >> 4;
    c.v_sampling = sampling & 0x0F;
    c.quant_table = in.u8("quantization table selector");
    if (c.h_sampling < 1 || c.h_sampling > 4 || c.v_sampling < 1 || c.v_sampling > 4) {
      throw CodecError("invalid sampling factors", entry);
    }
    if (c.quant_table > 3) throw CodecError("invalid quantization table selector", entry);
    if (!ids.insert(c.id).second) throw CodecError("duplicate component id", entry);
    stream.components.push_back(c);
  }
  if (!in.done()) throw CodecError("SOF0 segment length mismatch", in.offset());
}

void parse_sos(Cursor& in, JfifStream& stream, std::size_t at) {
  if (stream.components.empty()) throw CodecError("scan before frame header", at);
  const int count = in.u8("SOS component count");
  if (count != static_cast<int>(stream.components.size())) {
    throw CodecError("multi-scan streams are not supported", at);
  }
  std::vector<FrameComponent> ordered;
  std::set<int> seen;
  for (int i = 0; i < count; ++i) {
    const std::size_t entry = in.offset();
    const int id = in.u8("scan component id");
    const int tables = in.u8("scan table selectors");
    auto it = std::find_if(stream.components.begin(), stream.components.end(),
                           [id](const FrameComponent& c) { return c.id == id; });
    if (it == stream.components.end() || !seen.insert(id).second) {
      throw CodecError("scan references unknown component " + std::to_string(id), entry);
    }
    FrameComponent c = *it;
    c.dc_table = tables >> 4;
    c.ac_table = tables & 0x0F;
    if (c.dc_table > 3 || c.ac_table > 3) throw CodecError("invalid Huffman table selector", entry);
    ordered.push_back(c);
  }
  const int ss = in.u8("spectral start");
  const int se = in.u8("spectral end");
  const int approx = in.u8("successive approximation");
  if (ss != 0 || se != 63 || approx != 0) throw CodecError("scan parameters are not baseline", at);
  if (!in.done()) throw CodecError("SOS segment length mismatch", in.offset());
  stream.components = std::move(ordered);

  for (const auto& c : stream.components) {
    if (!stream.quant_tables.contains(c.quant_table)) {
      throw CodecError("component " + std::to_string(c.id) + " uses undefined quantization table", at);
    }
    if (!stream.huffman_tables.contains({TableClass::kDc, c.dc_table}) ||
        !stream.huffman_tables.contains({TableClass::kAc, c.ac_table})) {
      throw CodecError("component " + std::to_string(c.id) + " uses undefined Huffman table", at);
    }
  }
}

}  // namespace

void MarkerSegment::append_to(Bytes& out) const {
  if (payload.size() + 2 > 0xFFFF) throw CodecError("marker segment payload too large");
  out.push_back(0xFF);
  out.push_back(marker);
  put_u16(out, static_cast<int>(payload.size() + 2));
  out.insert(out.end(), payload.begin(), payload.end());
}

int JfifStream::max_h_sampling() const {
  int m = 1;
  for (const auto& c : components) m = std::max(m, c.h_sampling);
  return m;
}

int JfifStream::max_v_sampling() const {
  int m = 1;
  for (const auto& c : components) m = std::max(m, c.v_sampling);
  return m;
}

Bytes write_stream(const JfifStream& stream) {
  if (stream.width < 1 || stream.width > 0xFFFF || stream.height < 1 || stream.height > 0xFFFF) {
    throw CodecError("image dimensions must lie in [1, 65535]");
  }
  if (stream.components.empty() || stream.components.size() > 4) throw CodecError("invalid component count");

  Bytes out{0xFF, marker::kSoi};

  MarkerSegment{marker::kApp0, {'J', 'F', 'I', 'F', 0, 1, 1, 0, 0, 1, 0, 1, 0, 0}}.append_to(out);

  for (const auto& [id, table] : stream.quant_tables) {
    if (id < 0 || id > 3) throw CodecError("quantization table ids exhausted");
    table.validate();
    MarkerSegment dqt{marker::kDqt, {static_cast<std::uint8_t>(id)}};
    for (int index : zigzag_order()) dqt.payload.push_back(static_cast<std::uint8_t>(table.divisors.data()[index]));
    dqt.append_to(out);
  }

  MarkerSegment sof{marker::kSof0, {8}};
  put_u16(sof.payload, stream.height);
  put_u16(sof.payload, stream.width);
  sof.payload.push_back(static_cast<std::uint8_t>(stream.components.size()));
  for (const auto& c : stream.components) {
    sof.payload.push_back(static_cast<std::uint8_t>(c.id));
    sof.payload.push_back(static_cast<std::uint8_t>((c.h_sampling << 4) | c.v_sampling));
    sof.payload.push_back(static_cast<std::uint8_t>(c.quant_table));
  }
  sof.append_to(out);

  for (const auto& [key, table] : stream.huffman_tables) {
    if (key.second < 0 || key.second > 1) throw CodecError("baseline allows two Huffman tables per class");
    MarkerSegment dht{marker::kDht, {static_cast<std::uint8_t>((static_cast<int>(key.first) << 4) | key.second)}};
    const auto counts = table.counts();
    dht.payload.insert(dht.payload.end(), counts.begin(), counts.end());
    for (int symbol : table.ordered_symbols()) {
      if (symbol < 0 || symbol > 255) throw CodecError("Huffman symbol does not fit a byte");
      dht.payload.push_back(static_cast<std::uint8_t>(symbol));
    }
    dht.append_to(out);
  }

  if (stream.restart_interval > 0) {
    MarkerSegment dri{marker::kDri, {}};
    put_u16(dri.payload, stream.restart_interval);
    dri.append_to(out);
  }

  MarkerSegment sos{marker::kSos, {static_cast<std::uint8_t>(stream.components.size())}};
  for (const auto& c : stream.components) {
    sos.payload.push_back(static_cast<std::uint8_t>(c.id));
    sos.payload.push_back(static_cast<std::uint8_t>((c.dc_table << 4) | c.ac_table));
  }
  sos.payload.insert(sos.payload.end(), {0, 63, 0});
  sos.append_to(out);

  out.insert(out.end(), stream.entropy.begin(), stream.entropy.end());
  out.push_back(0xFF);
  out.push_back(marker::kEoi);
  return out;
}

JfifStream parse_stream(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 0xFF || bytes[1] != marker::kSoi) {
    throw CodecError("not a JPEG stream: missing SOI marker", 0);
  }
  JfifStream stream;
  bool have_scan = false;
  std::size_t pos = 2;
  while (true) {
    if (pos >= bytes.size()) throw CodecError("stream ends without EOI marker", pos);
    if (bytes[pos] != 0xFF) throw CodecError("expected a marker", pos);
    const std::size_t marker_at = pos;
    while (pos < bytes.size() && bytes[pos] == 0xFF) ++pos;  // fill bytes
    if (pos >= bytes.size()) throw CodecError("stream ends without EOI marker", pos);
    const std::uint8_t id = bytes[pos++];

    if (id == marker::kEoi) {
      if (!have_scan) throw CodecError("stream has no scan", marker_at);
      break;
    }
    if (id == marker::kSoi) throw CodecError("unexpected SOI marker", marker_at);
    if (id == 0x01 || (id >= marker::kRst0 && id <= marker::kRst0 + 7)) continue;  // standalone
    if (is_unsupported_sof(id)) {
      throw CodecError("unsupported coding mode (SOF" + std::to_string(id - 0xC0) + "); only baseline is supported",
                       marker_at);
    }

    if (bytes.size() - pos < 2) throw CodecError("truncated segment length", pos);
    const std::size_t length = (std::size_t(bytes[pos]) << 8) | bytes[pos + 1];
    if (length < 2) throw CodecError("invalid segment length", pos);
    if (bytes.size() - pos < length) throw CodecError("truncated marker segment", bytes.size());
    Cursor in(bytes.subspan(pos + 2, length - 2), pos + 2);
    pos += length;

    if (have_scan) {
      if (id == marker::kSos) throw CodecError("multi-scan streams are not supported", marker_at);
      continue;  // trailing segments after the scan are ignored
    }

    switch (id) {
      case marker::kDqt:
        parse_dqt(in, stream);
        break;
      case marker::kDht:
        parse_dht(in, stream);
        break;
      case marker::kSof0:
        parse_sof0(in, stream, marker_at);
        break;
      case marker::kDri:
        stream.restart_interval = in.u16("restart interval");
        break;
      case marker::kSos: {
        parse_sos(in, stream, marker_at);
        have_scan = true;
        // Entropy data runs to the first marker that is neither a stuffed
        // 0xFF00 nor RSTn.
        const std::size_t start = pos;
        while (pos < bytes.size()) {
          if (bytes[pos] == 0xFF && pos + 1 < bytes.size()) {
            const std::uint8_t next = bytes[pos + 1];
            if (next == 0x00 || (next >= marker::kRst0 && next <= marker::kRst0 + 7)) {
              pos += 2;
              continue;
            }
            break;
          }
          if (bytes[pos] == 0xFF) break;
          ++pos;
        }
        if (pos >= bytes.size()) throw CodecError("entropy-coded data runs past end of stream", bytes.size());
        stream.entropy.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                              bytes.begin() + static_cast<std::ptrdiff_t>(pos));
        stream.entropy_offset = start;
        break;
      }
      default:
        break;  // APPn, COM and anything else we do not interpret
    }
  }
  return stream;
}

}  // namespace dctcodec
