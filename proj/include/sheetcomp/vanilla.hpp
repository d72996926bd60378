#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sheetcomp/coordinate_map.hpp"
#include "sheetcomp/grid.hpp"
#include "sheetcomp/tokenizer.hpp"

namespace sheetcomp {

struct EncodedSheet {
  std::string text;
  std::size_t token_count = 0;
  // Set when the encoded grid was extracted from a larger sheet.
  std::optional<CoordinateMap> coord_map;
};

// Row-major "|A1,Year|B1,Profit\n" serialization. With include_format a
// second block follows after a blank line, one "|A1,Top Border,...,Font Bold"
// entry per cell.
EncodedSheet encode_vanilla(const Sheet& sheet, bool include_format = false,
                            const Tokenizer& tokenizer = DefaultTokenizer{});

// Value block only; shared by the encoders that embed vanilla rows.
std::string vanilla_value_block(const Sheet& sheet);
std::string vanilla_format_block(const Sheet& sheet);

// n_before / n_after. Throws UndefinedRatioError when n_after == 0.
double compression_ratio(std::size_t n_before, std::size_t n_after);

}  // namespace sheetcomp
