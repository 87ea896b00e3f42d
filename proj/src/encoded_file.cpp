#include "avlc/encoded_file.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "avlc/errors.hpp"

namespace avlc {
namespace {

constexpr std::size_t kMagicLen = sizeof(kEncodedMagic) - 1;

void put_le(std::ostream& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw DataError("truncated encoded file");
    v |= static_cast<std::uint64_t>(c) << (8 * i);
  }
  return v;
}

}  // namespace

void write_encoded(std::ostream& out, std::span<const EncodedBlock> blocks) {
  if (blocks.size() > 0xFFFFFFFFu) throw UsageError("too many blocks for one encoded file");
  out.write(kEncodedMagic, kMagicLen);
  put_le(out, blocks.size(), 4);
  for (const auto& b : blocks) {
    if (b.payload.size() != (b.payload_bits + 7u) / 8u) {
      throw DataError("encoded block payload does not match its bit count");
    }
    const std::uint8_t meta = static_cast<std::uint8_t>((b.encoded ? 1 : 0) | (b.cost_mode ? 2 : 0));
    out.put(static_cast<char>(meta));
    put_le(out, b.payload_bits, 2);
    out.write(reinterpret_cast<const char*>(b.payload.data()),
              static_cast<std::streamsize>(b.payload.size()));
  }
}

void write_encoded(const std::filesystem::path& path, std::span<const EncodedBlock> blocks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_encoded(out, blocks);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<EncodedBlock> read_encoded(std::istream& in) {
  char magic[kMagicLen];
  if (!in.read(magic, kMagicLen) || std::memcmp(magic, kEncodedMagic, kMagicLen) != 0) {
    throw DataError("not an encoded line file (bad magic)");
  }
  const std::uint64_t count = get_le(in, 4);
  std::vector<EncodedBlock> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    EncodedBlock b;
    const auto meta = static_cast<std::uint8_t>(get_le(in, 1));
    if (meta & ~0x3u) throw DataError("block " + std::to_string(i) + ": reserved metadata bits set");
    b.encoded = meta & 1u;
    b.cost_mode = meta & 2u;
    b.payload_bits = static_cast<std::uint16_t>(get_le(in, 2));
    if (b.encoded ? b.payload_bits > kMaxEncodedBits : b.payload_bits != Block::kBits) {
      throw DataError("block " + std::to_string(i) + ": invalid payload length " +
                      std::to_string(b.payload_bits));
    }
    b.payload.resize((b.payload_bits + 7u) / 8u);
    if (!in.read(reinterpret_cast<char*>(b.payload.data()),
                 static_cast<std::streamsize>(b.payload.size()))) {
      throw DataError("truncated encoded file");
    }
    out.push_back(std::move(b));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw DataError("trailing bytes after last block");
  return out;
}

std::vector<EncodedBlock> read_encoded(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_encoded(in);
}

}  // namespace avlc
