#include "sheetcomp/data_type.hpp"

#include <array>
#include <cctype>

#include "sheetcomp/error.hpp"

namespace sheetcomp {

std::string_view to_string(DataType t) {
  switch (t) {
    case DataType::Year: return "Year";
    case DataType::Integer: return "Integer";
    case DataType::Float: return "Float";
    case DataType::Percentage: return "Percentage";
    case DataType::ScientificNum: return "ScientificNum";
    case DataType::Date: return "Date";
    case DataType::Time: return "Time";
    case DataType::Currency: return "Currency";
    case DataType::Email: return "Email";
    case DataType::Others: return "Others";
  }
  return "Others";
}

std::optional<DataType> parse_data_type(std::string_view name) {
  for (DataType t : kAllDataTypes)
    if (to_string(t) == name) return t;
  return std::nullopt;
}

std::string_view prompt_label(DataType t) {
  switch (t) {
    case DataType::Year: return "YearData";
    case DataType::Integer: return "IntNum";
    case DataType::Float: return "FloatNum";
    case DataType::Percentage: return "PercentageNum";
    case DataType::ScientificNum: return "ScientificNum";
    case DataType::Date: return "DateData";
    case DataType::Time: return "TimeData";
    case DataType::Currency: return "CurrencyData";
    case DataType::Email: return "EmailData";
    case DataType::Others: return "Others";
  }
  return "Others";
}

const TypeRules& TypeRules::defaults() {
  static const TypeRules rules;
  return rules;
}

namespace {

bool digit(char c) { return c >= '0' && c <= '9'; }
bool alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return s;
}

// Digits, optionally grouped as 1-3 digits then ",ddd" groups.
bool integer_body(std::string_view s) {
  if (s.empty()) return false;
  auto comma = s.find(',');
  if (comma == std::string_view::npos) {
    for (char c : s)
      if (!digit(c)) return false;
    return true;
  }
  if (comma == 0 || comma > 3) return false;
  for (std::size_t i = 0; i < comma; ++i)
    if (!digit(s[i])) return false;
  std::size_t i = comma;
  while (i < s.size()) {
    if (s[i] != ',' || i + 4 > s.size()) return false;
    for (std::size_t k = i + 1; k < i + 4; ++k)
      if (!digit(s[k])) return false;
    i += 4;
  }
  return true;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!digit(c)) return false;
  return true;
}

// integer_body with a mandatory ".digits" fraction; the integer part may be empty.
bool float_body(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return false;
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  return all_digits(frac) && (int_part.empty() || integer_body(int_part));
}

bool number_body(std::string_view s) { return integer_body(s) || float_body(s); }

bool is_integer(std::string_view s) { return integer_body(strip_sign(s)); }
bool is_float(std::string_view s) { return float_body(strip_sign(s)); }

bool is_year(std::string_view s) {
  if (s.size() != 4 || !all_digits(s)) return false;
  return s[0] == '1' || s[0] == '2';
}

bool is_percentage(std::string_view s) {
  if (s.empty() || s.back() != '%') return false;
  s.remove_suffix(1);
  if (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return number_body(strip_sign(s));
}

bool is_scientific(std::string_view s) {
  s = strip_sign(s);
  auto e = s.find_first_of("eE");
  if (e == std::string_view::npos || e == 0) return false;
  std::string_view mant = s.substr(0, e);
  std::string_view exp = strip_sign(s.substr(e + 1));
  if (!all_digits(exp)) return false;
  auto dot = mant.find('.');
  if (dot == std::string_view::npos) return all_digits(mant);
  std::string_view ip = mant.substr(0, dot);
  std::string_view fp = mant.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  return (ip.empty() || all_digits(ip)) && (fp.empty() || all_digits(fp));
}

bool is_email(std::string_view s) {
  auto at = s.find('@');
  if (at == std::string_view::npos || at == 0 || s.find('@', at + 1) != std::string_view::npos)
    return false;
  for (char c : s.substr(0, at)) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '%' ||
          c == '+' || c == '-'))
      return false;
  }
  std::string_view domain = s.substr(at + 1);
  auto dot = domain.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  for (char c : domain.substr(0, dot))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')) return false;
  std::string_view tld = domain.substr(dot + 1);
  if (tld.size() < 2) return false;
  for (char c : tld)
    if (!alpha(c)) return false;
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

bool valid_month_day(int month, int day) { return month >= 1 && month <= 12 && day >= 1 && day <= 31; }

constexpr std::array<std::string_view, 12> kMonthAbbrev = {"jan", "feb", "mar", "apr", "may", "jun",
                                                           "jul", "aug", "sep", "oct", "nov", "dec"};

bool is_month_name(std::string_view s) {
  if (s.size() < 3) return false;
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto m : kMonthAbbrev)
    if (lower == m) return true;
  static constexpr std::array<std::string_view, 12> kFull = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  for (auto m : kFull)
    if (lower == m) return true;
  return false;
}

// H:mm, H:mm:ss, optional fractional seconds, optional AM/PM.
bool is_time(std::string_view s) {
  bool meridiem = false;
  if (s.size() > 2) {
    std::string_view tail = s.substr(s.size() - 2);
    if ((tail[0] == 'A' || tail[0] == 'a' || tail[0] == 'P' || tail[0] == 'p') &&
        (tail[1] == 'M' || tail[1] == 'm')) {
      meridiem = true;
      s.remove_suffix(2);
      if (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    }
  }
  auto c1 = s.find(':');
  if (c1 == std::string_view::npos) return false;
  std::string_view h = s.substr(0, c1);
  std::string_view rest = s.substr(c1 + 1);
  auto c2 = rest.find(':');
  std::string_view m = rest.substr(0, c2);
  if (h.empty() || h.size() > 2 || !all_digits(h) || m.size() != 2 || !all_digits(m)) return false;
  int hour = to_int(h);
  if (meridiem ? (hour < 1 || hour > 12) : hour > 23) return false;
  if (to_int(m) > 59) return false;
  if (c2 == std::string_view::npos) return true;
  std::string_view sec = rest.substr(c2 + 1);
  auto dot = sec.find('.');
  std::string_view whole = sec.substr(0, dot);
  if (whole.size() != 2 || !all_digits(whole) || to_int(whole) > 59) return false;
  return dot == std::string_view::npos || all_digits(sec.substr(dot + 1));
}

// Splits on a single separator character; all separators must agree.
std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool is_date(std::string_view s) {
  // Optional trailing time: "2024-02-14T13:45:00" / "2024-02-14 13:45".
  auto t = s.find_first_of("T ");
  if (t != std::string_view::npos) {
    if (!is_time(s.substr(t + 1))) return false;
    s = s.substr(0, t);
  }
  for (char sep : {'-', '/', '.'}) {
    auto parts = split_on(s, sep);
    if (parts.size() == 3) {
      // yyyy-m-d
      if (parts[0].size() == 4 && all_digits(parts[0]) && parts[1].size() <= 2 &&
          all_digits(parts[1]) && parts[2].size() <= 2 && all_digits(parts[2]))
        return valid_month_day(to_int(parts[1]), to_int(parts[2]));
      if (sep == '.') continue;
      // m/d/yy(yy) or d-m-yyyy
      if (parts[0].size() <= 2 && all_digits(parts[0]) && parts[1].size() <= 2 &&
          all_digits(parts[1]) && (parts[2].size() == 2 || parts[2].size() == 4) &&
          all_digits(parts[2])) {
        int a = to_int(parts[0]);
        int b = to_int(parts[1]);
        return valid_month_day(a, b) || valid_month_day(b, a);
      }
      // d-mmm-yy(yy)
      if (sep == '-' && parts[0].size() <= 2 && all_digits(parts[0]) && is_month_name(parts[1]) &&
          (parts[2].size() == 2 || parts[2].size() == 4) && all_digits(parts[2]))
        return to_int(parts[0]) >= 1 && to_int(parts[0]) <= 31;
    } else if (parts.size() == 2 && sep == '-') {
      // d-mmm and mmm-yy
      if (parts[0].size() <= 2 && all_digits(parts[0]) && is_month_name(parts[1]))
        return to_int(parts[0]) >= 1 && to_int(parts[0]) <= 31;
      if (is_month_name(parts[0]) && parts[1].size() == 2 && all_digits(parts[1])) return true;
    }
  }
  return false;
}

}  // namespace

TypeRecognizer::TypeRecognizer(const TypeRules& rules) : currency_(rules.currency_symbols) {
  for (const auto& pattern : rules.extra_date_patterns) {
    try {
      extra_dates_.emplace_back(pattern, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid date pattern '" + pattern + "': " + e.what());
    }
  }
}

DataType TypeRecognizer::operator()(std::string_view raw) const {
  std::string_view s = trim(raw);
  if (s.empty()) return DataType::Others;
  if (is_email(s)) return DataType::Email;
  if (is_percentage(s)) return DataType::Percentage;

  std::string_view unsigned_s = s;
  bool parenthesised = s.size() > 2 && s.front() == '(' && s.back() == ')';
  if (parenthesised) unsigned_s = s.substr(1, s.size() - 2);
  unsigned_s = strip_sign(unsigned_s);
  for (const auto& sym : currency_) {
    if (sym.empty()) continue;
    std::string_view body;
    if (unsigned_s.starts_with(sym)) body = unsigned_s.substr(sym.size());
    else if (unsigned_s.ends_with(sym)) body = unsigned_s.substr(0, unsigned_s.size() - sym.size());
    else continue;
    body = strip_sign(trim(body));
    if (number_body(body)) return DataType::Currency;
  }

  if (is_scientific(s)) return DataType::ScientificNum;
  if (is_date(s)) return DataType::Date;
  for (const auto& re : extra_dates_)
    if (std::regex_match(s.begin(), s.end(), re)) return DataType::Date;
  if (is_time(s)) return DataType::Time;
  if (is_year(s)) return DataType::Year;
  if (is_float(s)) return DataType::Float;
  if (is_integer(s)) return DataType::Integer;
  return DataType::Others;
}

DataType recognize_type(std::string_view value) {
  static const TypeRecognizer recognizer;
  return recognizer(value);
}

}  // namespace sheetcomp
