#include "zip_archive.hpp"

#include <zlib.h>

#include <cstdint>

#include "sheetcomp/error.hpp"

namespace sheetcomp::detail {

namespace {

constexpr std::uint32_t kEndOfCentralDir = 0x06054b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kLocalHeader = 0x04034b50;

std::uint16_t u16(std::string_view b, std::size_t at) {
  if (at + 2 > b.size()) throw IngestError("corrupt archive: truncated record");
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

std::uint32_t u32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(u16(b, at)) | (static_cast<std::uint32_t>(u16(b, at + 2)) << 16);
}

std::string inflate_raw(std::string_view src, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) throw IngestError("zlib initialisation failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(src.data()));
  zs.avail_in = static_cast<uInt>(src.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected)
    throw IngestError("corrupt archive: deflate stream failed to decode");
  return out;
}

}  // namespace

ZipArchive::ZipArchive(std::string_view bytes) : bytes_(bytes) {
  if (bytes.size() < 22) throw IngestError("corrupt archive: too small to be a zip file");

  // The end record sits within the last 64 KiB + 22 bytes (max comment length).
  std::size_t lowest = bytes.size() > 65557 ? bytes.size() - 65557 : 0;
  std::optional<std::size_t> eocd;
  for (std::size_t at = bytes.size() - 22 + 1; at-- > lowest;) {
    if (u32(bytes, at) == kEndOfCentralDir) {
      eocd = at;
      break;
    }
  }
  if (!eocd) throw IngestError("corrupt archive: end of central directory not found");

  std::uint16_t count = u16(bytes, *eocd + 10);
  std::uint32_t dir_offset = u32(bytes, *eocd + 16);
  if (dir_offset == 0xFFFFFFFFu || count == 0xFFFF)
    throw IngestError("unsupported archive: ZIP64 is not supported");

  std::size_t at = dir_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (u32(bytes, at) != kCentralHeader)
      throw IngestError("corrupt archive: bad central directory entry");
    Entry e;
    e.method = u16(bytes, at + 10);
    e.compressed_size = u32(bytes, at + 20);
    e.size = u32(bytes, at + 24);
    std::uint16_t name_len = u16(bytes, at + 28);
    std::uint16_t extra_len = u16(bytes, at + 30);
    std::uint16_t comment_len = u16(bytes, at + 32);
    e.local_offset = u32(bytes, at + 42);
    if (at + 46 + name_len > bytes.size()) throw IngestError("corrupt archive: truncated name");
    entries_.emplace(std::string(bytes.substr(at + 46, name_len)), e);
    at += 46 + name_len + extra_len + comment_len;
  }
}

std::optional<std::string> ZipArchive::read(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  const Entry& e = it->second;
  if (u32(bytes_, e.local_offset) != kLocalHeader)
    throw IngestError("corrupt archive: bad local header for " + name);
  std::size_t data = e.local_offset + 30 + u16(bytes_, e.local_offset + 26) +
                     u16(bytes_, e.local_offset + 28);
  if (data + e.compressed_size > bytes_.size())
    throw IngestError("corrupt archive: member " + name + " is truncated");
  std::string_view raw = bytes_.substr(data, e.compressed_size);
  switch (e.method) {
    case 0:
      return std::string(raw);
    case 8:
      return inflate_raw(raw, e.size);
    default:
      throw IngestError("unsupported compression method " + std::to_string(e.method) + " in " + name);
  }
}

}  // namespace sheetcomp::detail
