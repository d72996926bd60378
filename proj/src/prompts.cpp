#include "sheetcomp/prompts.hpp"

#include "prompt_defaults.hpp"
#include "sheetcomp/error.hpp"
#include "sheetcomp/ingest.hpp"

namespace sheetcomp {

namespace {

std::string_view slot_for(PromptId id) {
  switch (id) {
    case PromptId::DetectVanilla:
    case PromptId::Detect: return "[Encoded Spreadsheet]";
    case PromptId::CosStage1: return "[Encoded Spreadsheet with compression]";
    case PromptId::CosStage2: return "[Encoded Spreadsheet without compression]";
  }
  return "";
}

std::size_t occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

std::string_view prompt_name(PromptId id) {
  switch (id) {
    case PromptId::DetectVanilla: return "detect_vanilla";
    case PromptId::Detect: return "detect";
    case PromptId::CosStage1: return "cos_stage1";
    case PromptId::CosStage2: return "cos_stage2";
  }
  return "";
}

std::string PromptTemplate::render(std::string_view payload) const {
  std::string out = text;
  auto pos = out.find(slot);
  if (pos == std::string::npos) throw ConfigError("template " + std::string(prompt_name(id)) + " has no input slot");
  out.replace(pos, slot.size(), payload);
  return out;
}

PromptTemplate default_template(PromptId id) {
  const char* text = nullptr;
  switch (id) {
    case PromptId::DetectVanilla: text = detail::kDetectVanillaTemplate; break;
    case PromptId::Detect: text = detail::kDetectTemplate; break;
    case PromptId::CosStage1: text = detail::kCosStage1Template; break;
    case PromptId::CosStage2: text = detail::kCosStage2Template; break;
  }
  return {id, text, std::string(slot_for(id))};
}

PromptTemplate load_template(PromptId id, const std::filesystem::path& dir) {
  auto path = dir / (std::string(prompt_name(id)) + ".txt");
  std::string text;
  try {
    text = read_file(path);
  } catch (const IngestError& e) {
    throw ConfigError(e.what());
  }
  if (!text.empty() && text.back() == '\n') text.pop_back();
  std::string slot(slot_for(id));
  if (occurrences(text, slot) != 1)
    throw ConfigError(path.string() + " must contain the slot " + slot + " exactly once");
  return {id, std::move(text), std::move(slot)};
}

PromptSet PromptSet::from_directory(const std::filesystem::path& dir) {
  PromptSet set;
  auto load = [&](PromptTemplate& dst, PromptId id) {
    if (std::filesystem::exists(dir / (std::string(prompt_name(id)) + ".txt"))) dst = load_template(id, dir);
  };
  load(set.detect, PromptId::Detect);
  load(set.detect_vanilla, PromptId::DetectVanilla);
  load(set.cos_stage1, PromptId::CosStage1);
  load(set.cos_stage2, PromptId::CosStage2);
  return set;
}

}  // namespace sheetcomp
