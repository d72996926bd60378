#include "sheetcomp/vanilla.hpp"

#include "sheetcomp/error.hpp"

namespace sheetcomp {

std::string vanilla_value_block(const Sheet& sheet) {
  std::string out;
  for (int r = 0; r < sheet.rows(); ++r) {
    for (int c = 0; c < sheet.cols(); ++c) {
      out += '|';
      out += render_a1({r, c});
      out += ',';
      out += sheet.at(r, c).value;
    }
    out += '\n';
  }
  return out;
}

std::string vanilla_format_block(const Sheet& sheet) {
  static constexpr std::pair<Border, const char*> kSides[] = {{Border::Top, "Top Border"},
                                                              {Border::Bottom, "Bottom Border"},
                                                              {Border::Left, "Left Border"},
                                                              {Border::Right, "Right Border"}};
  std::string out;
  for (int r = 0; r < sheet.rows(); ++r) {
    for (int c = 0; c < sheet.cols(); ++c) {
      const StyleAttrs& style = sheet.at(r, c).style;
      out += '|';
      out += render_a1({r, c});
      out += ',';
      bool first = true;
      auto emit = [&](const char* token) {
        if (!first) out += ',';
        out += token;
        first = false;
      };
      for (const auto& [side, token] : kSides)
        if (style.borders.has(side)) emit(token);
      if (style.fill_color) emit("Fill Color");
      if (style.bold) emit("Font Bold");
    }
    out += '\n';
  }
  return out;
}

EncodedSheet encode_vanilla(const Sheet& sheet, bool include_format, const Tokenizer& tokenizer) {
  EncodedSheet enc;
  enc.text = vanilla_value_block(sheet);
  if (include_format) {
    enc.text += '\n';
    enc.text += vanilla_format_block(sheet);
  }
  enc.token_count = tokenizer.count(enc.text);
  return enc;
}

double compression_ratio(std::size_t n_before, std::size_t n_after) {
  if (n_after == 0) throw UndefinedRatioError("compression ratio undefined for an empty encoding");
  return static_cast<double>(n_before) / static_cast<double>(n_after);
}

}  // namespace sheetcomp
