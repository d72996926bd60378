#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace sheetcomp {

enum class PromptId { DetectVanilla, Detect, CosStage1, CosStage2 };

// "detect_vanilla", "detect", "cos_stage1", "cos_stage2"; also the file stem
// of the template on disk.
std::string_view prompt_name(PromptId id);

// Instruction text containing exactly one input slot, e.g. "[Encoded Spreadsheet]".
struct PromptTemplate {
  PromptId id;
  std::string text;
  std::string slot;

  // The text with the slot replaced by payload; nothing else changes.
  std::string render(std::string_view payload) const;
};

PromptTemplate default_template(PromptId id);

// Reads <dir>/<name>.txt (one trailing newline is dropped). The file must
// contain the id's slot marker exactly once; throws ConfigError otherwise.
PromptTemplate load_template(PromptId id, const std::filesystem::path& dir);

struct PromptSet {
  PromptTemplate detect = default_template(PromptId::Detect);
  PromptTemplate detect_vanilla = default_template(PromptId::DetectVanilla);
  PromptTemplate cos_stage1 = default_template(PromptId::CosStage1);
  PromptTemplate cos_stage2 = default_template(PromptId::CosStage2);

  // Missing files fall back to the defaults.
  static PromptSet from_directory(const std::filesystem::path& dir);
};

}  // namespace sheetcomp
