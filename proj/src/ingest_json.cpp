#include <fstream>
#include <iterator>
#include <json.hpp>

#include "sheetcomp/error.hpp"
#include "sheetcomp/ingest.hpp"

namespace sheetcomp {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw IngestError(path + ": missing required key '" + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw IngestError(path + ": expected string");
  return v.get<std::string>();
}

Cell parse_cell(const json& item, const std::string& path, CellAddress addr) {
  Cell cell;
  cell.value = require_string(require(item, "v", path), path + ".v");
  if (auto it = item.find("nfs"); it != item.end() && !it->is_null())
    cell.nfs = require_string(*it, path + ".nfs");
  if (auto it = item.find("fill"); it != item.end() && !it->is_null())
    cell.style.fill_color = require_string(*it, path + ".fill");
  if (auto it = item.find("bold"); it != item.end() && !it->is_null()) {
    if (!it->is_boolean()) throw IngestError(path + ".bold: expected boolean");
    cell.style.bold = it->get<bool>();
  }
  if (auto it = item.find("borders"); it != item.end() && !it->is_null()) {
    if (!it->is_array()) throw IngestError(path + ".borders: expected array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string sub = path + ".borders[" + std::to_string(i) + "]";
      auto side = parse_border(require_string((*it)[i], sub));
      if (!side) throw IngestError(sub + ": unknown border side");
      cell.style.borders.insert(*side);
    }
  }
  if (auto it = item.find("merge"); it != item.end() && !it->is_null()) {
    std::string text = require_string(*it, path + ".merge");
    try {
      cell.merge = parse_range(text);
    } catch (const ParseError& e) {
      throw IngestError(path + ".merge: " + e.what());
    }
    if (cell.merge->top_left() != addr)
      throw IngestError(path + ".merge: range " + text + " is not anchored at its cell");
    if (cell.merge->is_single()) cell.merge.reset();
  }
  return cell;
}

}  // namespace

Sheet ingest_json(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw IngestError(std::string("$: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw IngestError("$: expected object");

  std::string name = "Sheet1";
  if (auto it = doc.find("name"); it != doc.end()) name = require_string(*it, "$.name");

  const json& cells = require(doc, "cells", "$");
  if (!cells.is_array()) throw IngestError("$.cells: expected array");

  SheetBuilder builder(name);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::string path = "$.cells[" + std::to_string(i) + "]";
    const json& item = cells[i];
    if (!item.is_object()) throw IngestError(path + ": expected object");
    std::string addr_text = require_string(require(item, "addr", path), path + ".addr");
    CellAddress addr;
    try {
      addr = parse_a1(addr_text);
    } catch (const ParseError& e) {
      throw IngestError(path + ".addr: " + e.what());
    }
    if (!builder.set(addr, parse_cell(item, path, addr)))
      throw IngestError(path + ".addr: duplicate address " + addr_text);
  }
  return builder.build();
}

std::string to_json(const Sheet& sheet) {
  json cells = json::array();
  for (int r = 0; r < sheet.rows(); ++r) {
    for (int c = 0; c < sheet.cols(); ++c) {
      const Cell& cell = sheet.at(r, c);
      if (cell.empty() && !cell.nfs && cell.style.is_plain() && !cell.merge) continue;
      json item = {{"addr", render_a1({r, c})}, {"v", cell.value}};
      if (cell.nfs) item["nfs"] = *cell.nfs;
      if (cell.style.fill_color) item["fill"] = *cell.style.fill_color;
      if (cell.style.bold) item["bold"] = true;
      if (!cell.style.borders.empty()) {
        json sides = json::array();
        for (Border b : kAllBorders)
          if (cell.style.borders.has(b)) sides.push_back(border_name(b));
        item["borders"] = sides;
      }
      if (cell.merge) item["merge"] = render_range(*cell.merge);
      cells.push_back(std::move(item));
    }
  }
  json doc = {{"name", sheet.name()}, {"cells", std::move(cells)}};
  return doc.dump();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<Sheet> load_sheets(const std::filesystem::path& path) {
  std::string bytes = read_file(path);
  auto ext = path.extension().string();
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (ext == ".xlsx") return ingest_xlsx(bytes);
  if (ext == ".json") return {ingest_json(bytes)};
  throw IngestError("unsupported input type '" + ext + "' (expected .json or .xlsx)");
}

}  // namespace sheetcomp
