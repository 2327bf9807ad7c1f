#include "dragfield/drag_pairs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dragfield {
namespace {

Point parse_point(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(std::string("drag pair '") + what + "' must be [x, y]");
  }
  Point p{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw ValidationError(std::string("drag pair '") + what + "' is not finite");
  }
  return p;
}

}  // namespace

DragSet parse_drag_pairs(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("drag pairs: invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ValidationError("drag pairs: expected a JSON array");
  DragSet pairs;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("handle") || !item.contains("target")) {
      throw ValidationError("drag pairs: each entry needs \"handle\" and \"target\"");
    }
    pairs.push_back({parse_point(item["handle"], "handle"), parse_point(item["target"], "target")});
  }
  return pairs;
}

DragSet load_drag_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_drag_pairs(text.str());
}

std::string format_drag_pairs(const DragSet& pairs) {
  nlohmann::json doc = nlohmann::json::array();
  for (const DragPair& p : pairs) {
    doc.push_back({{"handle", {p.handle.x, p.handle.y}}, {"target", {p.target.x, p.target.y}}});
  }
  return doc.dump();
}

}  // namespace dragfield
