#include "fslz/container.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace fslz {

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class ByteParser {
 public:
  explicit ByteParser(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }
  uint32_t u32(const char* what) {
    need(4, what);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  uint64_t u64(const char* what) {
    need(8, what);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }
  std::span<const uint8_t> raw(size_t count, const char* what) {
    need(count, what);
    auto s = bytes_.subspan(pos_, count);
    pos_ += count;
    return s;
  }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(size_t count, const char* what) {
    if (bytes_.size() - pos_ < count) throw FormatError(what);
  }
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

// Required parameter tags per algorithm; containers must carry exactly
// this set so streams stay self-describing.
std::vector<ParamTag> required_tags(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::LZ78:
    case AlgorithmId::LZW:
      return {};
    case AlgorithmId::LZ78_LRU:
    case AlgorithmId::LZW_LRU:
      return {ParamTag::D, ParamTag::L_MAX, ParamTag::RECENCY};
    case AlgorithmId::LZ77W:
      return {ParamTag::D, ParamTag::L_MAX, ParamTag::WINDOW};
    case AlgorithmId::FSDL:
      return {ParamTag::D, ParamTag::L_MAX, ParamTag::L, ParamTag::D_MAX_NUM,
              ParamTag::D_MAX_DEN, ParamTag::RECENCY};
  }
  throw FormatError("unknown algorithm id");
}

void check_params(const Container& c) {
  auto tags = required_tags(c.algorithm);
  if (c.params.size() != tags.size()) {
    throw FormatError("parameter block inconsistent with algorithm");
  }
  for (ParamTag t : tags) {
    if (!c.params.contains(t)) throw FormatError("parameter block inconsistent with algorithm");
  }
}

}  // namespace

const char* algorithm_name(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::LZ78:
      return "lz78";
    case AlgorithmId::LZ78_LRU:
      return "lz78lru";
    case AlgorithmId::LZW:
      return "lzw";
    case AlgorithmId::LZW_LRU:
      return "lzwlru";
    case AlgorithmId::LZ77W:
      return "lz77w";
    case AlgorithmId::FSDL:
      return "fsdl";
  }
  return "unknown";
}

std::optional<AlgorithmId> algorithm_from_name(const std::string& name) {
  for (AlgorithmId id : {AlgorithmId::LZ78, AlgorithmId::LZ78_LRU, AlgorithmId::LZW,
                         AlgorithmId::LZW_LRU, AlgorithmId::LZ77W, AlgorithmId::FSDL}) {
    if (name == algorithm_name(id)) return id;
  }
  return std::nullopt;
}

uint64_t Container::param(ParamTag tag) const {
  auto it = params.find(tag);
  if (it == params.end()) throw FormatError("missing container parameter");
  return it->second;
}

std::vector<uint8_t> write_container(const Container& c) {
  if (c.alphabet_size < 2) throw FormatError("alphabet size must be at least 2");
  check_params(c);
  if (c.payload.bytes.size() != (c.payload.bit_length + 7) / 8) {
    throw FormatError("payload byte count does not match bit length");
  }

  std::vector<uint8_t> out;
  out.reserve(27 + 9 * c.params.size() + c.payload.bytes.size());
  for (uint8_t b : Container::kMagic) out.push_back(b);
  out.push_back(Container::kVersion);
  out.push_back(static_cast<uint8_t>(c.algorithm));
  put_u32(out, c.alphabet_size);
  put_u64(out, c.original_length);
  out.push_back(static_cast<uint8_t>(c.params.size()));
  // std::map iterates in tag order, so the layout is deterministic.
  for (const auto& [tag, value] : c.params) {
    out.push_back(static_cast<uint8_t>(tag));
    put_u64(out, value);
  }
  put_u64(out, c.payload.bit_length);
  out.insert(out.end(), c.payload.bytes.begin(), c.payload.bytes.end());
  return out;
}

Container read_container(std::span<const uint8_t> bytes) {
  ByteParser p(bytes);
  auto magic = p.raw(4, "truncated header");
  if (!std::equal(magic.begin(), magic.end(), std::begin(Container::kMagic))) {
    throw FormatError("bad magic");
  }
  uint8_t version = p.u8("truncated header");
  if (version != Container::kVersion) throw FormatError("unknown version");
  uint8_t algo = p.u8("truncated header");
  if (algo > static_cast<uint8_t>(AlgorithmId::FSDL)) throw FormatError("unknown algorithm id");

  Container c;
  c.algorithm = static_cast<AlgorithmId>(algo);
  c.alphabet_size = p.u32("truncated header");
  if (c.alphabet_size < 2) throw FormatError("alphabet size must be at least 2");
  c.original_length = p.u64("truncated header");
  uint8_t param_count = p.u8("truncated header");
  for (uint8_t i = 0; i < param_count; ++i) {
    uint8_t tag = p.u8("truncated header");
    uint64_t value = p.u64("truncated header");
    if (tag < 1 || tag > 7) throw FormatError("unknown parameter tag");
    if (!c.params.emplace(static_cast<ParamTag>(tag), value).second) {
      throw FormatError("duplicate parameter tag");
    }
  }
  check_params(c);
  c.payload.bit_length = p.u64("truncated header");
  size_t payload_bytes = (c.payload.bit_length + 7) / 8;
  if (p.remaining() < payload_bytes) throw FormatError("truncated payload");
  auto raw = p.raw(payload_bytes, "truncated payload");
  c.payload.bytes.assign(raw.begin(), raw.end());
  if (p.remaining() != 0) throw FormatError("trailing bytes after payload");
  // Padding bits in the final byte must be zero.
  if (c.payload.bit_length % 8 != 0 && !c.payload.bytes.empty()) {
    uint8_t pad_mask = static_cast<uint8_t>(0xFF >> (c.payload.bit_length % 8));
    if ((c.payload.bytes.back() & pad_mask) != 0) throw FormatError("nonzero padding bits");
  }
  return c;
}

}  // namespace fslz
