#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "panelcheck/model.hpp"

namespace panelcheck {

enum class Direction { h, v };

const char* to_string(Direction d);

/// Sentinel for a missing chain neighbor ("none" in the fact grammar). It is
/// never a component id, so it can never be mapped or absent and is therefore
/// penalty-neutral in the cost rules.
inline constexpr int kNoneId = -1;

/// Directional neighbor fact: start/end are the nearest chain neighbors of
/// `id` along `dir` (kNoneId at chain boundaries). Facts with both ends
/// missing are never produced.
struct Between {
  int id = 0;
  int start = kNoneId;
  int end = kNoneId;
  Direction dir = Direction::h;
  Membership mem = Membership::cad;

  friend bool operator==(const Between&, const Between&) = default;
};

/// Distance fact between two components' centers. Computed facts are always
/// oriented cad-first; parsed fact files may carry other orientations, which
/// are kept verbatim (the cost rules only consume cad/net oriented ones).
struct ManhattanFact {
  int id1 = 0;
  int id2 = 0;
  std::int64_t dist = 0;
  Membership mem1 = Membership::cad;
  Membership mem2 = Membership::net;

  friend bool operator==(const ManhattanFact&, const ManhattanFact&) = default;
};

/// previous/after relations derived from between facts plus the manhattan
/// facts, with lookup structure for the cost rules.
class RelationGraph {
 public:
  struct Rel {
    int id = 0;
    int neighbor = kNoneId;
    Direction dir = Direction::h;
    Membership mem = Membership::cad;

    friend bool operator==(const Rel&, const Rel&) = default;
  };

  RelationGraph() = default;
  RelationGraph(std::vector<Between> between, std::vector<ManhattanFact> manhattan);

  const std::vector<Rel>& previous() const { return previous_; }
  const std::vector<Rel>& after() const { return after_; }
  const std::vector<Between>& between() const { return between_; }
  const std::vector<ManhattanFact>& manhattan() const { return manhattan_; }

  /// Neighbors recorded as previous/after of (mem, id, dir); may contain
  /// kNoneId. Empty span when no fact exists.
  std::span<const int> previous_of(Membership mem, int id, Direction dir) const;
  std::span<const int> after_of(Membership mem, int id, Direction dir) const;

  bool has_previous(Membership mem, int id, int neighbor, Direction dir) const;
  bool has_after(Membership mem, int id, int neighbor, Direction dir) const;

  /// Sum of the distinct distances recorded for the cad/net oriented pair.
  std::int64_t pair_distance(int cad_id, int net_id) const;

 private:
  struct Key {
    Membership mem;
    int id;
    Direction dir;
    auto operator<=>(const Key&) const = default;
  };

  std::vector<Between> between_;
  std::vector<ManhattanFact> manhattan_;
  std::vector<Rel> previous_, after_;
  std::map<Key, std::vector<int>> prev_index_, after_index_;
  std::map<std::pair<int, int>, std::int64_t> dist_index_;
};

/// Rescale a layout onto a square grid: x -> round_half_up(x*grid/width),
/// y -> round_half_up(y*grid/height). Boxes collapsed by rounding are
/// re-inflated by one unit on the collapsed side.
Layout normalize(const Layout& layout, int grid = 1000);

/// Nearest-neighbor chain facts per direction. Two components are chain
/// candidates when their projections orthogonal to the direction overlap
/// strictly; the nearest is picked by center coordinate along the direction,
/// ties by smaller id. Expects an already normalized layout.
std::vector<Between> build_between(const Layout& layout);

/// One fact per same-label (cad, net) pair; L1 distance between centers.
/// Expects both layouts normalized to the same grid.
std::vector<ManhattanFact> build_manhattan(const Instance& inst);

RelationGraph derive_relations(std::vector<Between> between,
                               std::vector<ManhattanFact> manhattan);

/// Full topology for an already normalized instance: between facts for both
/// layouts plus the manhattan facts, derived into a RelationGraph.
RelationGraph build_relations(const Instance& inst);

}  // namespace panelcheck
