#pragma once

// Seeded instance streams shared by the unit and acceptance suites.

#include <algorithm>
#include <string>
#include <vector>

#include "panelcheck/generator.hpp"
#include "panelcheck/model.hpp"
#include "panelcheck/rng.hpp"
#include "panelcheck/topology.hpp"

namespace panelcheck::testing {

struct PreparedInstance {
  Instance instance;
  RelationGraph relations;
};

inline PreparedInstance prepare(const Layout& cad, const Layout& net, int grid = 1000) {
  Instance inst{normalize(cad, grid), normalize(net, grid)};
  RelationGraph rg = build_relations(inst);
  return PreparedInstance{std::move(inst), std::move(rg)};
}

/// Row-aligned layout plus a perturbed copy, sizes bounded by max_components.
inline PreparedInstance perturbed_instance(std::uint64_t seed, int max_components,
                                           Layout* cad_out = nullptr,
                                           PerturbResult* perturb_out = nullptr) {
  TaggedRng rng(seed, "stream");
  GenParams gp;
  gp.n_components = 1 + static_cast<int>(rng.below(max_components));
  gp.n_labels = 1 + static_cast<int>(rng.below(gp.n_components));
  gp.seed = rng.next_u64();

  const Layout cad = gen_layout(gp);

  PerturbParams pp;
  pp.jitter = static_cast<int>(rng.below(8));
  pp.drop_k = static_cast<int>(rng.below(std::min(3, gp.n_components + 1)));
  pp.add_j = static_cast<int>(rng.below(3));
  pp.swap_s = static_cast<int>(rng.below(2));
  pp.seed = rng.next_u64();
  PerturbResult pr = perturb(cad, pp);

  if (cad_out) *cad_out = cad;
  if (perturb_out) *perturb_out = pr;
  return prepare(cad, pr.net);
}

/// Unstructured instance: random boxes anywhere on the canvas, random labels,
/// independent cad and net sides. Exercises irregular chain structure.
inline PreparedInstance scattered_instance(std::uint64_t seed, int max_per_side) {
  TaggedRng rng(seed, "scatter");
  const std::vector<std::string> labels = {"relay", "contactor", "breaker_1p"};
  const int canvas = 200;

  auto make_side = [&](Membership mem) {
    Layout l;
    l.width = canvas;
    l.height = canvas;
    l.membership = mem;
    const int n = static_cast<int>(rng.below(max_per_side + 1));
    for (int i = 0; i < n; ++i) {
      Component c;
      c.label = labels[rng.below(labels.size())];
      c.id = i + 1;
      const int w = 4 + static_cast<int>(rng.below(30));
      const int h = 4 + static_cast<int>(rng.below(30));
      const int x = static_cast<int>(rng.below(canvas - w));
      const int y = static_cast<int>(rng.below(canvas - h));
      c.box = BBox{x, y, x + w, y + h};
      c.membership = mem;
      l.components.push_back(std::move(c));
    }
    return l;
  };

  const Layout cad = make_side(Membership::cad);
  const Layout net = make_side(Membership::net);
  return prepare(cad, net);
}

}  // namespace panelcheck::testing
