#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace sheetcomp::detail {

// Read-only view of a zip archive held in memory. Supports stored and
// deflated members; ZIP64 archives are rejected.
class ZipArchive {
 public:
  // Throws IngestError on a malformed archive.
  explicit ZipArchive(std::string_view bytes);

  bool contains(const std::string& name) const { return entries_.contains(name); }
  // Decompressed member contents, or nullopt if absent. Throws IngestError if corrupt.
  std::optional<std::string> read(const std::string& name) const;

 private:
  struct Entry {
    std::uint16_t method = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t size = 0;
    std::uint32_t local_offset = 0;
  };

  std::string_view bytes_;
  std::map<std::string, Entry> entries_;
};

}  // namespace sheetcomp::detail
