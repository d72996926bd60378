#include "xml_dom.hpp"

#include <expat.h>

#include "sheetcomp/error.hpp"

namespace sheetcomp::detail {

namespace {

std::string_view local_name(std::string_view qname) {
  auto colon = qname.rfind(':');
  return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

struct BuildState {
  XmlNode root;
  std::vector<XmlNode*> stack;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<BuildState*>(user);
  XmlNode* parent = st->stack.back();
  parent->children.emplace_back();
  XmlNode& node = parent->children.back();
  node.name = std::string(local_name(name));
  for (int i = 0; atts[i]; i += 2) node.attrs.emplace_back(atts[i], atts[i + 1]);
  st->stack.push_back(&node);
}

void on_end(void* user, const XML_Char*) { static_cast<BuildState*>(user)->stack.pop_back(); }

void on_text(void* user, const XML_Char* s, int len) {
  static_cast<BuildState*>(user)->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const std::string* XmlNode::attr(std::string_view key) const {
  for (const auto& [k, v] : attrs)
    if (k == key) return &v;
  return nullptr;
}

const std::string* XmlNode::attr_local(std::string_view key) const {
  for (const auto& [k, v] : attrs)
    if (local_name(k) == key) return &v;
  return nullptr;
}

const XmlNode* XmlNode::child(std::string_view child_name) const {
  for (const auto& c : children)
    if (c.name == child_name) return &c;
  return nullptr;
}

std::vector<const XmlNode*> XmlNode::children_named(std::string_view child_name) const {
  std::vector<const XmlNode*> out;
  for (const auto& c : children)
    if (c.name == child_name) out.push_back(&c);
  return out;
}

std::string XmlNode::collect_text(std::string_view leaf) const {
  if (name == leaf) return text;
  std::string out;
  for (const auto& c : children) {
    // Phonetic runs duplicate the visible text.
    if (c.name == "rPh") continue;
    out += c.collect_text(leaf);
  }
  return out;
}

XmlNode parse_xml(std::string_view bytes, const std::string& part) {
  // Parent pointers into `children` stay valid because a node's children are
  // only appended while it is the innermost open element.
  BuildState st;
  st.stack.push_back(&st.root);
  XML_Parser parser = XML_ParserCreate("UTF-8");
  XML_SetUserData(parser, &st);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_text);
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> guard(
      parser, XML_ParserFree);
  if (XML_Parse(parser, bytes.data(), static_cast<int>(bytes.size()), 1) == XML_STATUS_ERROR) {
    throw IngestError("malformed XML in " + part + ": " +
                      XML_ErrorString(XML_GetErrorCode(parser)) + " at line " +
                      std::to_string(XML_GetCurrentLineNumber(parser)));
  }
  if (st.root.children.empty()) throw IngestError("empty XML part " + part);
  return std::move(st.root.children.front());
}

}  // namespace sheetcomp::detail
