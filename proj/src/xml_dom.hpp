#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sheetcomp::detail {

// Minimal element tree. Element names have their namespace prefix stripped;
// attribute names are kept as written.
struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;
  std::vector<XmlNode> children;

  const std::string* attr(std::string_view key) const;
  // Matches "key" or any "prefix:key".
  const std::string* attr_local(std::string_view key) const;
  const XmlNode* child(std::string_view child_name) const;
  std::vector<const XmlNode*> children_named(std::string_view child_name) const;
  // Concatenated text of this node and all descendants named `leaf`.
  std::string collect_text(std::string_view leaf) const;
};

// Throws IngestError naming `part` on malformed XML.
XmlNode parse_xml(std::string_view bytes, const std::string& part);

}  // namespace sheetcomp::detail
