#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace panelcheck {

/// Origin of a component: schematic ("cad") or detected in a picture ("net").
enum class Membership { cad, net };

const char* to_string(Membership m);

/// Axis-aligned box in image convention: origin top-left, y grows downward.
/// Valid boxes satisfy 0 <= x1 < x2 and 0 <= y1 < y2.
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// One electrical component. `score` is only meaningful for net components
/// (detection confidence in [0,1]).
struct Component {
  std::string label;
  int id = 0;
  BBox box;
  Membership membership = Membership::cad;
  std::optional<double> score;

  friend bool operator==(const Component&, const Component&) = default;
};

/// A canvas plus the components of one membership.
struct Layout {
  int width = 0;
  int height = 0;
  Membership membership = Membership::cad;
  std::vector<Component> components;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// The compliance problem input: a schematic layout and a detected layout.
struct Instance {
  Layout cad;
  Layout net;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Labels are non-empty strings over [a-z0-9_].
bool is_valid_label(std::string_view label);

/// Box center with half-up rounding, e.g. (0,0,11,11) -> (6,6).
Point center(const BBox& box);

bool box_valid(const BBox& box);

/// Returns every violated layout invariant (duplicate id, degenerate box,
/// box outside canvas, membership mismatch, bad label/score). Empty means ok.
std::vector<std::string> validate_layout(const Layout& layout);

/// Violations of both layouts plus the cad/net membership tags.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace panelcheck
