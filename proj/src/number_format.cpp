#include "sheetcomp/number_format.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace sheetcomp {

std::optional<std::string> builtin_number_format(int id) {
  switch (id) {
    case 0: return "General";
    case 1: return "0";
    case 2: return "0.00";
    case 3: return "#,##0";
    case 4: return "#,##0.00";
    case 5: return "\"$\"#,##0_);(\"$\"#,##0)";
    case 6: return "\"$\"#,##0_);[Red](\"$\"#,##0)";
    case 7: return "\"$\"#,##0.00_);(\"$\"#,##0.00)";
    case 8: return "\"$\"#,##0.00_);[Red](\"$\"#,##0.00)";
    case 9: return "0%";
    case 10: return "0.00%";
    case 11: return "0.00E+00";
    case 12: return "# ?/?";
    case 13: return "# ?\?/??";
    case 14: return "mm-dd-yy";
    case 15: return "d-mmm-yy";
    case 16: return "d-mmm";
    case 17: return "mmm-yy";
    case 18: return "h:mm AM/PM";
    case 19: return "h:mm:ss AM/PM";
    case 20: return "h:mm";
    case 21: return "h:mm:ss";
    case 22: return "m/d/yy h:mm";
    case 37: return "#,##0 ;(#,##0)";
    case 38: return "#,##0 ;[Red](#,##0)";
    case 39: return "#,##0.00;(#,##0.00)";
    case 40: return "#,##0.00;[Red](#,##0.00)";
    case 45: return "mm:ss";
    case 46: return "[h]:mm:ss";
    case 47: return "mmss.0";
    case 48: return "##0.0E+0";
    case 49: return "@";
    default: return std::nullopt;
  }
}

std::string general_number(double value) {
  if (std::isnan(value)) return "NaN";
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  std::string s = buf;
  if (s.find('e') != std::string::npos) return s;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

namespace {

enum class TokKind { Literal, Placeholder, Decimal, Comma, Percent, Exponent, DatePart, AmPm };

struct Token {
  TokKind kind;
  std::string text;
};

std::vector<std::string> split_sections(std::string_view code) {
  std::vector<std::string> out(1);
  bool quoted = false;
  bool bracket = false;
  for (std::size_t i = 0; i < code.size(); ++i) {
    char ch = code[i];
    if (ch == '"' && !bracket) quoted = !quoted;
    if (!quoted && ch == '[') bracket = true;
    if (!quoted && ch == ']') bracket = false;
    if (ch == '\\' && i + 1 < code.size()) {
      out.back() += code.substr(i, 2);
      ++i;
      continue;
    }
    if (ch == ';' && !quoted && !bracket) {
      out.emplace_back();
      continue;
    }
    out.back() += ch;
  }
  return out;
}

bool is_date_letter(char ch) {
  char lo = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return lo == 'y' || lo == 'm' || lo == 'd' || lo == 'h' || lo == 's';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> toks;
  auto literal = [&](std::string text) {
    if (!toks.empty() && toks.back().kind == TokKind::Literal)
      toks.back().text += text;
    else
      toks.push_back({TokKind::Literal, std::move(text)});
  };
  for (std::size_t i = 0; i < s.size();) {
    char ch = s[i];
    if (ch == '"') {
      auto end = s.find('"', i + 1);
      if (end == std::string_view::npos) end = s.size();
      literal(std::string(s.substr(i + 1, end - i - 1)));
      i = end + 1;
    } else if (ch == '\\' && i + 1 < s.size()) {
      literal(std::string(1, s[i + 1]));
      i += 2;
    } else if (ch == '_' || ch == '*') {
      if (ch == '_') literal(" ");
      i += 2;
    } else if (ch == '[') {
      auto end = s.find(']', i);
      if (end == std::string_view::npos) end = s.size();
      std::string_view inner = s.substr(i + 1, end - i - 1);
      if (!inner.empty() && inner[0] == '$') {
        auto dash = inner.find('-');
        literal(std::string(inner.substr(1, dash == std::string_view::npos ? inner.npos : dash - 1)));
      } else if (!inner.empty() && is_date_letter(inner[0])) {
        toks.push_back({TokKind::DatePart, "[" + std::string(inner) + "]"});
      }
      i = end + 1;
    } else if (ch == '0' || ch == '#' || ch == '?') {
      toks.push_back({TokKind::Placeholder, std::string(1, ch)});
      ++i;
    } else if (ch == '.') {
      toks.push_back({TokKind::Decimal, "."});
      ++i;
    } else if (ch == ',') {
      toks.push_back({TokKind::Comma, ","});
      ++i;
    } else if (ch == '%') {
      toks.push_back({TokKind::Percent, "%"});
      ++i;
    } else if ((ch == 'E' || ch == 'e') && i + 1 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-')) {
      toks.push_back({TokKind::Exponent, std::string(s.substr(i, 2))});
      i += 2;
    } else if (s.substr(i, 5) == "AM/PM" || s.substr(i, 5) == "am/pm") {
      toks.push_back({TokKind::AmPm, "AM/PM"});
      i += 5;
    } else if (s.substr(i, 3) == "A/P") {
      toks.push_back({TokKind::AmPm, "A/P"});
      i += 3;
    } else if (is_date_letter(ch)) {
      std::size_t j = i;
      char lo = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      while (j < s.size() && std::tolower(static_cast<unsigned char>(s[j])) == lo) ++j;
      std::string part(j - i, lo);
      toks.push_back({TokKind::DatePart, part});
      i = j;
    } else {
      literal(std::string(1, ch));
      ++i;
    }
  }
  return toks;
}

struct Civil {
  int year, month, day;
};

// Days since 1970-01-01 to proleptic Gregorian date.
Civil civil_from_days(long long z) {
  z += 719468;
  long long era = (z >= 0 ? z : z - 146096) / 146097;
  unsigned doe = static_cast<unsigned>(z - era * 146097);
  unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long long y = static_cast<long long>(yoe) + era * 400;
  unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  unsigned mp = (5 * doy + 2) / 153;
  unsigned d = doy - (153 * mp + 2) / 5 + 1;
  unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

constexpr std::array<const char*, 12> kMonths = {"January", "February", "March",     "April",
                                                 "May",     "June",     "July",      "August",
                                                 "September", "October", "November", "December"};
constexpr std::array<const char*, 7> kWeekdays = {"Sunday",   "Monday", "Tuesday", "Wednesday",
                                                  "Thursday", "Friday", "Saturday"};

std::string pad2(int v) { return (v < 10 ? "0" : "") + std::to_string(v); }

std::string format_datetime(double serial, const std::vector<Token>& toks) {
  // 1900 date system; serial 60 is the fictitious 1900-02-29.
  long long day = static_cast<long long>(std::floor(serial));
  double frac = serial - static_cast<double>(day);
  long long secs = std::llround(frac * 86400.0);
  if (secs >= 86400) {
    secs -= 86400;
    ++day;
  }
  Civil date{1900, 2, 29};
  if (day != 60) {
    long long unix_days = day < 60 ? day - 25568 : day - 25569;
    date = civil_from_days(unix_days);
  }
  int weekday = static_cast<int>(((day + 6) % 7 + 7) % 7);
  int hour = static_cast<int>(secs / 3600);
  int minute = static_cast<int>((secs / 60) % 60);
  int second = static_cast<int>(secs % 60);
  bool twelve_hour = false;
  for (const auto& t : toks) twelve_hour |= t.kind == TokKind::AmPm;

  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    switch (t.kind) {
      case TokKind::DatePart: {
        const std::string& p = t.text;
        if (p.front() == '[') {
          long long total_hours = day * 24 + hour;
          out += std::to_string(total_hours);
        } else if (p[0] == 'y') {
          out += p.size() <= 2 ? pad2(date.year % 100) : std::to_string(date.year);
        } else if (p[0] == 'd') {
          if (p.size() == 1) out += std::to_string(date.day);
          else if (p.size() == 2) out += pad2(date.day);
          else if (p.size() == 3) out += std::string(kWeekdays[weekday]).substr(0, 3);
          else out += kWeekdays[weekday];
        } else if (p[0] == 'h') {
          int h = twelve_hour ? (hour % 12 == 0 ? 12 : hour % 12) : hour;
          out += p.size() == 1 ? std::to_string(h) : pad2(h);
        } else if (p[0] == 's') {
          out += p.size() == 1 ? std::to_string(second) : pad2(second);
        } else if (p[0] == 'm') {
          // Minutes when preceded by hours or followed by seconds.
          bool minutes = false;
          for (std::size_t j = i; j-- > 0;) {
            if (toks[j].kind != TokKind::DatePart) continue;
            minutes = toks[j].text[0] == 'h' || toks[j].text[0] == '[';
            break;
          }
          for (std::size_t j = i + 1; j < toks.size() && !minutes; ++j) {
            if (toks[j].kind != TokKind::DatePart) continue;
            minutes = toks[j].text[0] == 's';
            break;
          }
          if (minutes && p.size() <= 2) {
            out += p.size() == 1 ? std::to_string(minute) : pad2(minute);
          } else if (p.size() == 1) {
            out += std::to_string(date.month);
          } else if (p.size() == 2) {
            out += pad2(date.month);
          } else if (p.size() == 3) {
            out += std::string(kMonths[date.month - 1]).substr(0, 3);
          } else if (p.size() == 5) {
            out += kMonths[date.month - 1][0];
          } else {
            out += kMonths[date.month - 1];
          }
        }
        break;
      }
      case TokKind::AmPm:
        out += t.text == "A/P" ? (hour < 12 ? "A" : "P") : (hour < 12 ? "AM" : "PM");
        break;
      case TokKind::Placeholder:
      case TokKind::Decimal:
        // Fractional seconds ("ss.0") are not rendered.
        if (t.kind == TokKind::Decimal && i + 1 < toks.size() && toks[i + 1].kind == TokKind::Placeholder) {
          while (i + 1 < toks.size() && toks[i + 1].kind == TokKind::Placeholder) ++i;
        } else {
          out += t.text;
        }
        break;
      default:
        out += t.text;
    }
  }
  return out;
}

std::string group_thousands(const std::string& digits) {
  std::string out;
  int n = static_cast<int>(digits.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

std::string format_numeric(double value, const std::vector<Token>& toks, bool force_sign) {
  int int_zeros = 0;
  int decimals = 0;
  bool grouping = false;
  bool after_decimal = false;
  bool scientific = false;
  int exp_digits = 0;
  int percents = 0;
  int trailing_commas = 0;  // each scales by 1/1000
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == TokKind::Exponent) {
      scientific = true;
      for (std::size_t j = i + 1; j < toks.size() && toks[j].kind == TokKind::Placeholder; ++j) ++exp_digits;
      break;
    }
    if (t.kind == TokKind::Placeholder) {
      if (after_decimal) ++decimals;
      else if (t.text == "0") ++int_zeros;
      trailing_commas = 0;
    } else if (t.kind == TokKind::Decimal) {
      after_decimal = true;
    } else if (t.kind == TokKind::Comma) {
      bool between = i + 1 < toks.size() && toks[i + 1].kind == TokKind::Placeholder;
      if (between && !after_decimal) grouping = true;
      else ++trailing_commas;
    } else if (t.kind == TokKind::Percent) {
      ++percents;
    }
  }

  double v = std::fabs(value);
  for (int i = 0; i < percents; ++i) v *= 100.0;
  for (int i = 0; i < trailing_commas; ++i) v /= 1000.0;

  std::string number;
  if (scientific) {
    int exponent = v == 0.0 ? 0 : static_cast<int>(std::floor(std::log10(v)));
    double mantissa = v == 0.0 ? 0.0 : v / std::pow(10.0, exponent);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, mantissa);
    if (std::string(buf).rfind("10", 0) == 0) {
      ++exponent;
      std::snprintf(buf, sizeof buf, "%.*f", decimals, mantissa / 10.0);
    }
    std::string exp_text = std::to_string(std::abs(exponent));
    while (static_cast<int>(exp_text.size()) < std::max(exp_digits, 1)) exp_text = "0" + exp_text;
    number = std::string(buf) + "E" + (exponent < 0 ? "-" : "+") + exp_text;
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    auto dot = s.find('.');
    std::string int_part = s.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? "" : s.substr(dot);
    if (int_part == "0" && int_zeros == 0) int_part.clear();
    while (static_cast<int>(int_part.size()) < int_zeros) int_part = "0" + int_part;
    if (grouping) int_part = group_thousands(int_part);
    number = int_part + frac_part;
  }

  std::string out;
  bool emitted = false;
  for (const auto& t : toks) {
    switch (t.kind) {
      case TokKind::Placeholder:
      case TokKind::Decimal:
      case TokKind::Comma:
        if (!emitted) {
          out += number;
          emitted = true;
        }
        break;
      case TokKind::Literal:
        out += t.text;
        break;
      case TokKind::Percent:
        out += '%';
        break;
      default:
        break;
    }
  }
  if (!emitted) out += number;
  if (force_sign && value < 0 && std::fabs(value) > 0) out = "-" + out;
  return out;
}

}  // namespace

std::string format_number(double value, std::string_view code) {
  auto sections = split_sections(code);
  std::string section = sections[0];
  bool force_sign = true;
  if (value < 0 && sections.size() >= 2 && !sections[1].empty()) {
    section = sections[1];
    force_sign = false;
  } else if (value == 0 && sections.size() >= 3 && !sections[2].empty()) {
    section = sections[2];
  }
  if (section.empty() || section == "General" || section == "@") return general_number(value);

  auto toks = tokenize(section);
  bool has_date = false;
  bool has_digits = false;
  for (const auto& t : toks) {
    has_date |= t.kind == TokKind::DatePart;
    has_digits |= t.kind == TokKind::Placeholder;
  }
  if (has_date) return format_datetime(value, toks);
  if (!has_digits) {
    // Literal-only or unsupported code.
    bool only_literals = true;
    for (const auto& t : toks) only_literals &= t.kind == TokKind::Literal;
    return only_literals && !toks.empty() ? toks[0].text : general_number(value);
  }
  return format_numeric(value, toks, force_sign);
}

}  // namespace sheetcomp
