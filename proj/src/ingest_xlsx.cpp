#include <cstdlib>
#include <map>
#include <string>

#include "sheetcomp/error.hpp"
#include "sheetcomp/ingest.hpp"
#include "sheetcomp/number_format.hpp"
#include "xml_dom.hpp"
#include "zip_archive.hpp"

namespace sheetcomp {

using detail::XmlNode;
using detail::ZipArchive;

namespace {

struct CellFormat {
  std::optional<std::string> nfs;  // nullopt for General
  StyleAttrs style;
};

struct Styles {
  std::vector<CellFormat> xfs;
  const CellFormat* lookup(const std::string* s_attr) const {
    if (!s_attr) return xfs.empty() ? nullptr : &xfs[0];
    std::size_t idx = std::strtoul(s_attr->c_str(), nullptr, 10);
    return idx < xfs.size() ? &xfs[idx] : nullptr;
  }
};

int int_attr(const XmlNode& n, std::string_view key, int fallback = 0) {
  const std::string* v = n.attr(key);
  return v ? std::atoi(v->c_str()) : fallback;
}

bool truthy_attr(const XmlNode& n, std::string_view key, bool fallback) {
  const std::string* v = n.attr(key);
  if (!v) return fallback;
  return *v != "0" && *v != "false";
}

std::optional<std::string> color_token(const XmlNode* color) {
  if (!color) return std::nullopt;
  if (auto* rgb = color->attr("rgb")) return "#" + *rgb;
  if (auto* theme = color->attr("theme")) return "theme" + *theme;
  if (auto* indexed = color->attr("indexed")) return "indexed" + *indexed;
  return std::nullopt;
}

std::string join_path(const std::string& base_dir, const std::string& target) {
  if (!target.empty() && target[0] == '/') return target.substr(1);
  std::vector<std::string> parts;
  auto push_segments = [&](const std::string& p) {
    std::size_t start = 0;
    while (start <= p.size()) {
      auto slash = p.find('/', start);
      std::string seg = p.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
      if (seg == "..") {
        if (!parts.empty()) parts.pop_back();
      } else if (!seg.empty() && seg != ".") {
        parts.push_back(seg);
      }
      if (slash == std::string::npos) break;
      start = slash + 1;
    }
  };
  push_segments(base_dir);
  push_segments(target);
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "/") + p;
  return out;
}

Styles read_styles(const ZipArchive& zip) {
  Styles styles;
  auto bytes = zip.read("xl/styles.xml");
  if (!bytes) return styles;
  XmlNode root = detail::parse_xml(*bytes, "xl/styles.xml");

  std::map<int, std::string> custom_formats;
  if (const XmlNode* numfmts = root.child("numFmts")) {
    for (const XmlNode* f : numfmts->children_named("numFmt")) {
      if (const std::string* code = f->attr("formatCode"))
        custom_formats[int_attr(*f, "numFmtId")] = *code;
    }
  }

  std::vector<bool> bold_fonts;
  if (const XmlNode* fonts = root.child("fonts")) {
    for (const XmlNode* f : fonts->children_named("font")) {
      const XmlNode* b = f->child("b");
      bold_fonts.push_back(b && truthy_attr(*b, "val", true));
    }
  }

  std::vector<std::optional<std::string>> fills;
  if (const XmlNode* fill_list = root.child("fills")) {
    for (const XmlNode* f : fill_list->children_named("fill")) {
      std::optional<std::string> token;
      if (const XmlNode* pattern = f->child("patternFill")) {
        const std::string* type = pattern->attr("patternType");
        if (type && *type != "none" && *type != "gray125") {
          token = color_token(pattern->child("fgColor"));
          if (!token) token = color_token(pattern->child("bgColor"));
          if (!token) token = *type;
        }
      } else if (f->child("gradientFill")) {
        token = "gradient";
      }
      fills.push_back(token);
    }
  }

  std::vector<BorderSet> borders;
  if (const XmlNode* border_list = root.child("borders")) {
    for (const XmlNode* b : border_list->children_named("border")) {
      BorderSet set;
      auto side = [&](const char* name, Border which) {
        const XmlNode* s = b->child(name);
        if (!s) return;
        const std::string* st = s->attr("style");
        if (st && *st != "none") set.insert(which);
      };
      side("top", Border::Top);
      side("bottom", Border::Bottom);
      side("left", Border::Left);
      side("right", Border::Right);
      borders.push_back(set);
    }
  }

  if (const XmlNode* xfs = root.child("cellXfs")) {
    for (const XmlNode* xf : xfs->children_named("xf")) {
      CellFormat fmt;
      int num_id = int_attr(*xf, "numFmtId");
      if (auto it = custom_formats.find(num_id); it != custom_formats.end())
        fmt.nfs = it->second;
      else
        fmt.nfs = builtin_number_format(num_id);
      if (fmt.nfs && *fmt.nfs == "General") fmt.nfs.reset();

      auto font_id = static_cast<std::size_t>(int_attr(*xf, "fontId"));
      fmt.style.bold = font_id < bold_fonts.size() && bold_fonts[font_id];
      auto fill_id = static_cast<std::size_t>(int_attr(*xf, "fillId"));
      if (fill_id < fills.size()) fmt.style.fill_color = fills[fill_id];
      auto border_id = static_cast<std::size_t>(int_attr(*xf, "borderId"));
      if (border_id < borders.size()) fmt.style.borders = borders[border_id];
      styles.xfs.push_back(std::move(fmt));
    }
  }
  return styles;
}

std::vector<std::string> read_shared_strings(const ZipArchive& zip) {
  std::vector<std::string> out;
  auto bytes = zip.read("xl/sharedStrings.xml");
  if (!bytes) return out;
  XmlNode root = detail::parse_xml(*bytes, "xl/sharedStrings.xml");
  for (const XmlNode* si : root.children_named("si")) out.push_back(si->collect_text("t"));
  return out;
}

std::string display_value(const XmlNode& c, const std::vector<std::string>& shared,
                          const CellFormat* fmt) {
  std::string type = c.attr("t") ? *c.attr("t") : "n";
  const XmlNode* v = c.child("v");
  if (type == "inlineStr") {
    const XmlNode* is = c.child("is");
    return is ? is->collect_text("t") : "";
  }
  if (!v) return "";
  const std::string& raw = v->text;
  if (type == "s") {
    std::size_t idx = std::strtoul(raw.c_str(), nullptr, 10);
    if (idx >= shared.size()) throw IngestError("shared string index " + raw + " out of range");
    return shared[idx];
  }
  if (type == "b") return raw == "1" ? "TRUE" : "FALSE";
  if (type == "str" || type == "e" || type == "d") return raw;
  if (fmt && fmt->nfs && *fmt->nfs != "@") {
    char* end = nullptr;
    double number = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() && *end == '\0') return format_number(number, *fmt->nfs);
  }
  return raw;
}

Sheet read_worksheet(const ZipArchive& zip, const std::string& part, const std::string& name,
                     const std::vector<std::string>& shared, const Styles& styles) {
  auto bytes = zip.read(part);
  if (!bytes) throw IngestError("missing worksheet part " + part);
  XmlNode root = detail::parse_xml(*bytes, part);

  SheetBuilder builder(name);
  std::map<CellAddress, CellRange> merges;
  if (const XmlNode* mc = root.child("mergeCells")) {
    for (const XmlNode* m : mc->children_named("mergeCell")) {
      if (const std::string* ref = m->attr("ref")) {
        try {
          CellRange r = parse_range(*ref);
          if (!r.is_single()) merges[r.top_left()] = r;
        } catch (const ParseError& e) {
          throw IngestError(part + ": bad merge range: " + e.what());
        }
      }
    }
  }

  if (const XmlNode* data = root.child("sheetData")) {
    int next_row = 0;
    for (const XmlNode* row : data->children_named("row")) {
      int row_index = row->attr("r") ? int_attr(*row, "r") - 1 : next_row;
      next_row = row_index + 1;
      int next_col = 0;
      for (const XmlNode* c : row->children_named("c")) {
        CellAddress addr{row_index, next_col};
        if (const std::string* ref = c->attr("r")) {
          try {
            addr = parse_a1(*ref);
          } catch (const ParseError& e) {
            throw IngestError(part + ": " + e.what());
          }
        }
        next_col = addr.col + 1;
        const CellFormat* fmt = styles.lookup(c->attr("s"));
        Cell cell;
        cell.value = display_value(*c, shared, fmt);
        if (fmt) {
          cell.nfs = fmt->nfs;
          cell.style = fmt->style;
        }
        if (auto it = merges.find(addr); it != merges.end()) cell.merge = it->second;
        builder.set(addr, std::move(cell));
      }
    }
  }
  // Merge anchors with no <c> element still carry their span.
  for (const auto& [addr, range] : merges) {
    if (builder.contains(addr)) continue;
    Cell cell;
    cell.merge = range;
    builder.set(addr, std::move(cell));
  }
  return builder.build();
}

}  // namespace

std::vector<Sheet> ingest_xlsx(std::string_view bytes) {
  ZipArchive zip(bytes);
  auto workbook_bytes = zip.read("xl/workbook.xml");
  if (!workbook_bytes) throw IngestError("not an OOXML workbook: xl/workbook.xml missing");
  XmlNode workbook = detail::parse_xml(*workbook_bytes, "xl/workbook.xml");

  std::map<std::string, std::string> targets;
  if (auto rels = zip.read("xl/_rels/workbook.xml.rels")) {
    XmlNode root = detail::parse_xml(*rels, "xl/_rels/workbook.xml.rels");
    for (const XmlNode* rel : root.children_named("Relationship")) {
      const std::string* id = rel->attr("Id");
      const std::string* target = rel->attr("Target");
      if (id && target) targets[*id] = join_path("xl", *target);
    }
  }

  auto shared = read_shared_strings(zip);
  auto styles = read_styles(zip);

  std::vector<Sheet> sheets;
  const XmlNode* sheet_list = workbook.child("sheets");
  if (!sheet_list) throw IngestError("xl/workbook.xml lists no sheets");
  int ordinal = 0;
  for (const XmlNode* s : sheet_list->children_named("sheet")) {
    ++ordinal;
    std::string name = s->attr("name") ? *s->attr("name") : "Sheet" + std::to_string(ordinal);
    std::string part = "xl/worksheets/sheet" + std::to_string(ordinal) + ".xml";
    if (const std::string* rid = s->attr_local("id")) {
      if (auto it = targets.find(*rid); it != targets.end()) part = it->second;
    }
    sheets.push_back(read_worksheet(zip, part, name, shared, styles));
  }
  if (sheets.empty()) throw IngestError("workbook contains no worksheets");
  return sheets;
}

}  // namespace sheetcomp
