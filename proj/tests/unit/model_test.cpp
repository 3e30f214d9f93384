#include <doctest.h>

#include "panelcheck/model.hpp"
#include "panelcheck/rng.hpp"

using namespace panelcheck;

TEST_CASE("center uses half-up rounding") {
  CHECK(center(BBox{0, 0, 10, 10}) == Point{5, 5});
  CHECK(center(BBox{0, 0, 11, 11}) == Point{6, 6});
  CHECK(center(BBox{20, 0, 30, 10}) == Point{25, 5});
}

TEST_CASE("center commutes with translation") {
  TaggedRng rng(7, "boxes");
  for (int i = 0; i < 200; ++i) {
    BBox b;
    b.x1 = rng.range(0, 500);
    b.y1 = rng.range(0, 500);
    b.x2 = b.x1 + rng.range(1, 100);
    b.y2 = b.y1 + rng.range(1, 100);
    const int dx = rng.range(0, 300);
    const int dy = rng.range(0, 300);
    const Point base = center(b);
    const Point moved = center(BBox{b.x1 + dx, b.y1 + dy, b.x2 + dx, b.y2 + dy});
    CHECK(moved == Point{base.x + dx, base.y + dy});
  }
}

TEST_CASE("validate_layout") {
  Layout l;
  l.width = 320;
  l.height = 320;
  l.membership = Membership::cad;

  SUBCASE("empty layout is ok") { CHECK(validate_layout(l).empty()); }

  SUBCASE("duplicate ids are reported") {
    Component a{"relay", 3, BBox{0, 0, 10, 10}, Membership::cad, {}};
    Component b{"relay", 3, BBox{20, 0, 30, 10}, Membership::cad, {}};
    l.components = {a, b};
    const auto v = validate_layout(l);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "duplicate id 3");
  }

  SUBCASE("degenerate boxes are reported") {
    l.components = {Component{"relay", 1, BBox{5, 5, 5, 9}, Membership::cad, {}}};
    const auto v = validate_layout(l);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("degenerate box") != std::string::npos);
  }

  SUBCASE("boxes outside the canvas are reported") {
    l.components = {Component{"relay", 1, BBox{300, 300, 330, 330}, Membership::cad, {}}};
    CHECK(validate_layout(l).size() == 1);
  }

  SUBCASE("membership mismatch is reported") {
    l.components = {Component{"relay", 1, BBox{0, 0, 10, 10}, Membership::net, {}}};
    CHECK(!validate_layout(l).empty());
  }

  SUBCASE("score on a cad component is reported") {
    l.components = {Component{"relay", 1, BBox{0, 0, 10, 10}, Membership::cad, 0.5}};
    CHECK(!validate_layout(l).empty());
  }
}

TEST_CASE("label validation") {
  CHECK(is_valid_label("relay"));
  CHECK(is_valid_label("breaker_1p"));
  CHECK(!is_valid_label(""));
  CHECK(!is_valid_label("Relay"));
  CHECK(!is_valid_label("re lay"));
}
