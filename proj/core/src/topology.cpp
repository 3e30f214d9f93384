#include "panelcheck/topology.hpp"

#include <algorithm>
#include <cstdlib>

namespace panelcheck {

const char* to_string(Direction d) {
  return d == Direction::h ? "h" : "v";
}

RelationGraph::RelationGraph(std::vector<Between> between,
                             std::vector<ManhattanFact> manhattan)
    : between_(std::move(between)), manhattan_(std::move(manhattan)) {
  for (const Between& b : between_) {
    previous_.push_back(Rel{b.id, b.start, b.dir, b.mem});
    after_.push_back(Rel{b.id, b.end, b.dir, b.mem});
    prev_index_[Key{b.mem, b.id, b.dir}].push_back(b.start);
    after_index_[Key{b.mem, b.id, b.dir}].push_back(b.end);
  }
  for (auto* index : {&prev_index_, &after_index_}) {
    for (auto& [key, ids] : *index) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
  }
  // distinct (pair, dist) tuples each contribute once, mirroring the
  // grounded weak-constraint terms
  std::vector<ManhattanFact> tuples = manhattan_;
  std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
    return std::tie(a.id1, a.id2, a.dist) < std::tie(b.id1, b.id2, b.dist);
  });
  const ManhattanFact* last = nullptr;
  for (const ManhattanFact& f : tuples) {
    if (f.mem1 != Membership::cad || f.mem2 != Membership::net) continue;
    if (last && last->id1 == f.id1 && last->id2 == f.id2 && last->dist == f.dist) continue;
    dist_index_[{f.id1, f.id2}] += f.dist;
    last = &f;
  }
}

std::span<const int> RelationGraph::previous_of(Membership mem, int id,
                                                Direction dir) const {
  auto it = prev_index_.find(Key{mem, id, dir});
  if (it == prev_index_.end()) return {};
  return it->second;
}

std::span<const int> RelationGraph::after_of(Membership mem, int id,
                                             Direction dir) const {
  auto it = after_index_.find(Key{mem, id, dir});
  if (it == after_index_.end()) return {};
  return it->second;
}

bool RelationGraph::has_previous(Membership mem, int id, int neighbor,
                                 Direction dir) const {
  auto span = previous_of(mem, id, dir);
  return std::binary_search(span.begin(), span.end(), neighbor);
}

bool RelationGraph::has_after(Membership mem, int id, int neighbor,
                              Direction dir) const {
  auto span = after_of(mem, id, dir);
  return std::binary_search(span.begin(), span.end(), neighbor);
}

std::int64_t RelationGraph::pair_distance(int cad_id, int net_id) const {
  auto it = dist_index_.find({cad_id, net_id});
  return it == dist_index_.end() ? 0 : it->second;
}

namespace {

int scale_half_up(int value, int grid, int extent) {
  // round_half_up(value*grid/extent) in integer arithmetic
  const std::int64_t num = 2ll * value * grid + extent;
  return static_cast<int>(num / (2ll * extent));
}

}  // namespace

Layout normalize(const Layout& layout, int grid) {
  Layout out;
  out.width = grid;
  out.height = grid;
  out.membership = layout.membership;
  out.components.reserve(layout.components.size());
  for (const Component& c : layout.components) {
    Component n = c;
    n.box.x1 = scale_half_up(c.box.x1, grid, layout.width);
    n.box.x2 = scale_half_up(c.box.x2, grid, layout.width);
    n.box.y1 = scale_half_up(c.box.y1, grid, layout.height);
    n.box.y2 = scale_half_up(c.box.y2, grid, layout.height);
    if (n.box.x1 == n.box.x2) {
      if (n.box.x2 < grid) ++n.box.x2; else --n.box.x1;
    }
    if (n.box.y1 == n.box.y2) {
      if (n.box.y2 < grid) ++n.box.y2; else --n.box.y1;
    }
    out.components.push_back(std::move(n));
  }
  return out;
}

namespace {

struct Extent {
  int along_lo, along_hi;  // interval along the chain direction
  int ortho_lo, ortho_hi;  // interval orthogonal to it
  int center_along;
};

Extent extent_for(const Component& c, Direction dir) {
  const Point ctr = center(c.box);
  if (dir == Direction::h) {
    return Extent{c.box.x1, c.box.x2, c.box.y1, c.box.y2, ctr.x};
  }
  return Extent{c.box.y1, c.box.y2, c.box.x1, c.box.x2, ctr.y};
}

bool strictly_overlaps(const Extent& a, const Extent& b) {
  return std::max(a.ortho_lo, b.ortho_lo) < std::min(a.ortho_hi, b.ortho_hi);
}

}  // namespace

std::vector<Between> build_between(const Layout& layout) {
  std::vector<const Component*> comps;
  comps.reserve(layout.components.size());
  for (const Component& c : layout.components) comps.push_back(&c);
  std::sort(comps.begin(), comps.end(),
            [](const Component* a, const Component* b) { return a->id < b->id; });

  std::vector<Between> out;
  for (Direction dir : {Direction::h, Direction::v}) {
    for (const Component* c : comps) {
      const Extent self = extent_for(*c, dir);
      const Component* best_start = nullptr;
      const Component* best_end = nullptr;
      int start_center = 0, end_center = 0;
      for (const Component* other : comps) {
        if (other == c) continue;
        const Extent oe = extent_for(*other, dir);
        if (!strictly_overlaps(self, oe)) continue;
        const bool before = std::pair(oe.center_along, other->id) <
                            std::pair(self.center_along, c->id);
        if (before) {
          // nearest on the low side: greatest center, ties to smaller id
          if (!best_start || oe.center_along > start_center ||
              (oe.center_along == start_center && other->id < best_start->id)) {
            best_start = other;
            start_center = oe.center_along;
          }
        } else {
          if (!best_end || oe.center_along < end_center ||
              (oe.center_along == end_center && other->id < best_end->id)) {
            best_end = other;
            end_center = oe.center_along;
          }
        }
      }
      if (!best_start && !best_end) continue;
      out.push_back(Between{c->id, best_start ? best_start->id : kNoneId,
                            best_end ? best_end->id : kNoneId, dir,
                            layout.membership});
    }
  }
  return out;
}

std::vector<ManhattanFact> build_manhattan(const Instance& inst) {
  std::vector<ManhattanFact> out;
  for (const Component& c : inst.cad.components) {
    const Point pc = center(c.box);
    for (const Component& n : inst.net.components) {
      if (c.label != n.label) continue;
      const Point pn = center(n.box);
      const std::int64_t dist =
          std::abs(static_cast<std::int64_t>(pc.x) - pn.x) +
          std::abs(static_cast<std::int64_t>(pc.y) - pn.y);
      out.push_back(ManhattanFact{c.id, n.id, dist, Membership::cad, Membership::net});
    }
  }
  return out;
}

RelationGraph derive_relations(std::vector<Between> between,
                               std::vector<ManhattanFact> manhattan) {
  return RelationGraph(std::move(between), std::move(manhattan));
}

RelationGraph build_relations(const Instance& inst) {
  std::vector<Between> between = build_between(inst.cad);
  std::vector<Between> net_between = build_between(inst.net);
  between.insert(between.end(), net_between.begin(), net_between.end());
  return derive_relations(std::move(between), build_manhattan(inst));
}

}  // namespace panelcheck
