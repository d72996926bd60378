#include "sheetcomp/compressor.hpp"

#include <cctype>

#include "sheetcomp/aggregation.hpp"
#include "sheetcomp/error.hpp"

namespace sheetcomp {

ModuleSet ModuleSet::parse(std::string_view text) {
  ModuleSet m;
  if (text == "none") return m;
  for (char ch : text) {
    switch (ch) {
      case '1': m.extract = true; break;
      case '2': m.invert = true; break;
      case '3': m.aggregate = true; break;
      case ',': case '&': case ' ': break;
      default:
        throw ConfigError("invalid module list '" + std::string(text) + "' (expected digits 1-3)");
    }
  }
  return m;
}

std::string ModuleSet::label() const {
  std::string digits;
  auto add = [&](bool on, char d) {
    if (!on) return;
    if (!digits.empty()) digits += '&';
    digits += d;
  };
  add(extract, '1');
  add(invert, '2');
  add(aggregate, '3');
  return digits.empty() ? "No Modules" : "Module " + digits;
}

const std::vector<ModuleSet>& all_module_sets() {
  static const std::vector<ModuleSet> sets = {
      {false, false, false}, {true, false, false}, {false, true, false}, {false, false, true},
      {true, true, false},   {true, false, true},  {false, true, true},  {true, true, true}};
  return sets;
}

EncodedSheet compress(const Sheet& sheet, const CompressOptions& options, const Tokenizer& tokenizer) {
  TypeRecognizer recognize(options.types);
  EncodedSheet out;

  const Sheet* target = &sheet;
  std::optional<Skeleton> skeleton;
  if (options.modules.extract) {
    auto analysis = find_structural_anchors(sheet, options.anchors, recognize);
    skeleton = extract_skeleton(sheet, analysis.anchors, options.anchors.k);
    target = &skeleton->sheet;
    out.coord_map = skeleton->map;
  }

  const ModuleSet& m = options.modules;
  if (m.invert && m.aggregate) {
    out.text = render_aggregated(aggregate_identical(*target, recognize), invert(*target), options.style);
  } else if (m.invert) {
    out.text = render_index(invert(*target), options.style);
  } else if (m.aggregate) {
    out.text = render_aggregated_grid(aggregate_identical(*target, recognize), *target);
  } else {
    out.text = vanilla_value_block(*target);
  }
  out.token_count = tokenizer.count(out.text);
  return out;
}

}  // namespace sheetcomp
