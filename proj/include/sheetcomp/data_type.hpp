#pragma once

#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace sheetcomp {

enum class DataType {
  Year,
  Integer,
  Float,
  Percentage,
  ScientificNum,
  Date,
  Time,
  Currency,
  Email,
  Others,
};

inline constexpr DataType kAllDataTypes[] = {
    DataType::Year, DataType::Integer, DataType::Float, DataType::Percentage, DataType::ScientificNum,
    DataType::Date, DataType::Time,    DataType::Currency, DataType::Email, DataType::Others};

// "Year", "Integer", ..., "Others".
std::string_view to_string(DataType t);
std::optional<DataType> parse_data_type(std::string_view name);
// Category label used in prompts: "IntNum", "DateData", "EmailData", ...
std::string_view prompt_label(DataType t);

// Everything except Others and Email counts as numeric for line profiling.
inline bool is_numeric(DataType t) { return t != DataType::Others && t != DataType::Email; }

// Tunable parts of the recognizer.
struct TypeRules {
  std::vector<std::string> currency_symbols{"$", "€", "£", "¥"};
  // Additional full-match date patterns (ECMAScript regex).
  std::vector<std::string> extra_date_patterns;

  static const TypeRules& defaults();
};

// Precompiled form of TypeRules.
class TypeRecognizer {
 public:
  explicit TypeRecognizer(const TypeRules& rules = TypeRules::defaults());

  // First match wins: Email, Percentage, Currency, ScientificNum, Date, Time,
  // Year, Float, Integer, else Others. Surrounding whitespace is ignored.
  DataType operator()(std::string_view value) const;

 private:
  std::vector<std::string> currency_;
  std::vector<std::regex> extra_dates_;
};

DataType recognize_type(std::string_view value);

}  // namespace sheetcomp
