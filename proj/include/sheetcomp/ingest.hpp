#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sheetcomp/grid.hpp"

namespace sheetcomp {

// Canonical JSON sheet:
//   {"name": str, "cells": [{"addr": "B2", "v": str, "nfs": str?, "fill": str?,
//     "bold": bool?, "borders": ["top"|"bottom"|"left"|"right"]?, "merge": "B2:C3"?}]}
// Errors carry the JSON path of the offending element.
Sheet ingest_json(std::string_view bytes);

// Inverse of ingest_json. Cells are written row-major; only cells carrying a
// value, NFS, style or merge are emitted.
std::string to_json(const Sheet& sheet);

// One Sheet per worksheet, in workbook order.
std::vector<Sheet> ingest_xlsx(std::string_view bytes);

// Dispatches on extension (.json / .xlsx). Throws IngestError.
std::vector<Sheet> load_sheets(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace sheetcomp
