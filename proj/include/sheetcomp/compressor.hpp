#pragma once

#include <string>
#include <string_view>

#include "sheetcomp/anchors.hpp"
#include "sheetcomp/data_type.hpp"
#include "sheetcomp/inverted_index.hpp"
#include "sheetcomp/vanilla.hpp"

namespace sheetcomp {

// Module 1: structural-anchor extraction; 2: inverted-index translation;
// 3: data-format-aware aggregation.
struct ModuleSet {
  bool extract = false;
  bool invert = false;
  bool aggregate = false;

  static ModuleSet all() { return {true, true, true}; }
  // "1,2,3", "1&3", "2", "" or "none". Throws ConfigError.
  static ModuleSet parse(std::string_view text);
  // "No Modules", "Module 1", "Module 1&2", ...
  std::string label() const;

  friend bool operator==(const ModuleSet&, const ModuleSet&) = default;
};

// The eight combinations in report order: none, 1, 2, 3, 1&2, 1&3, 2&3, 1&2&3.
const std::vector<ModuleSet>& all_module_sets();

struct CompressOptions {
  ModuleSet modules = ModuleSet::all();
  AnchorConfig anchors;
  TypeRules types;
  IndexStyle style = IndexStyle::Detection;
};

// Encodes a sheet with the selected modules. When extraction runs the
// result carries the coordinate map back to the original sheet.
EncodedSheet compress(const Sheet& sheet, const CompressOptions& options = {},
                      const Tokenizer& tokenizer = DefaultTokenizer{});

}  // namespace sheetcomp
