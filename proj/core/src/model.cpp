#include "panelcheck/model.hpp"

#include <set>
#include <string>

namespace panelcheck {

const char* to_string(Membership m) {
  return m == Membership::cad ? "cad" : "net";
}

bool is_valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

Point center(const BBox& b) {
  // floor((x1+x2)/2 + 1/2) on non-negative coordinates
  return Point{(b.x1 + b.x2 + 1) / 2, (b.y1 + b.y2 + 1) / 2};
}

bool box_valid(const BBox& b) {
  return b.x1 >= 0 && b.y1 >= 0 && b.x1 < b.x2 && b.y1 < b.y2;
}

std::vector<std::string> validate_layout(const Layout& l) {
  std::vector<std::string> out;
  if (l.width < 1 || l.height < 1) {
    out.push_back("canvas dimensions must be positive");
  }
  std::set<int> seen;
  for (const Component& c : l.components) {
    const std::string where = "component " + std::to_string(c.id);
    if (c.id < 0) out.push_back(where + ": negative id");
    if (!seen.insert(c.id).second) out.push_back("duplicate id " + std::to_string(c.id));
    if (!is_valid_label(c.label)) out.push_back(where + ": invalid label '" + c.label + "'");
    if (!box_valid(c.box)) {
      out.push_back(where + ": degenerate box");
    } else if (c.box.x2 > l.width || c.box.y2 > l.height) {
      out.push_back(where + ": box outside canvas");
    }
    if (c.membership != l.membership) out.push_back(where + ": membership mismatch");
    if (c.score) {
      if (c.membership != Membership::net) out.push_back(where + ": score on a cad component");
      if (*c.score < 0.0 || *c.score > 1.0) out.push_back(where + ": score out of [0,1]");
    }
  }
  return out;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (inst.cad.membership != Membership::cad) out.push_back("cad layout tagged as net");
  if (inst.net.membership != Membership::net) out.push_back("net layout tagged as cad");
  for (auto& v : validate_layout(inst.cad)) out.push_back("cad: " + v);
  for (auto& v : validate_layout(inst.net)) out.push_back("net: " + v);
  return out;
}

}  // namespace panelcheck
