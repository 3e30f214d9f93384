#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "panelcheck/model.hpp"
#include "panelcheck/topology.hpp"

namespace panelcheck {

/// Partial injective same-label mapping from cad ids to net ids.
/// Pairs are kept sorted by cad id.
struct Mapping {
  std::vector<std::pair<int, int>> pairs;

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

/// Lexicographic objective mirroring the weak-constraint levels:
/// unmapped cad count (level 3), neighborhood violations (level 2),
/// total Manhattan displacement (level 1).
struct CostVector {
  std::int64_t unmapped = 0;      // U
  std::int64_t violations = 0;    // V
  std::int64_t displacement = 0;  // D

  auto operator<=>(const CostVector&) const = default;
};

enum class ViolationKind { prev_mismatch, after_mismatch, prev_absent, after_absent };

const char* to_string(ViolationKind k);

/// One grounded violation tuple. For the mismatch kinds `net_neighbor` is the
/// image of `cad_neighbor`; for the absent kinds it is kNoneId.
struct Violation {
  ViolationKind kind = ViolationKind::prev_mismatch;
  int cad_id = 0;
  int net_id = 0;
  int cad_neighbor = 0;
  int net_neighbor = kNoneId;
  Direction dir = Direction::h;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Solution {
  Mapping mapping;
  CostVector cost;
  std::vector<std::int64_t> pair_distances;  // parallel to mapping.pairs
  std::vector<std::pair<std::string, int>> absent;  // (label, cad id)
  std::vector<std::pair<std::string, int>> excess;  // (label, net id)
  std::vector<Violation> violations;
  bool optimal = true;
  double solve_seconds = 0.0;
};

enum class Compliance { compliant, non_compliant };

struct Verdict {
  Compliance status = Compliance::compliant;
  std::vector<std::string> warnings;
};

struct SolveOptions {
  std::chrono::milliseconds timeout{60000};
};

/// Evaluate a mapping: U = unmapped cad components; V = grounded tuples of
/// the four neighborhood rules (mapped pair whose cad neighbor maps to a
/// non-neighbor, or whose cad neighbor is absent, via previous and after);
/// D = summed manhattan distances of mapped pairs.
/// Throws std::invalid_argument when the mapping breaks its invariants.
CostVector cost(const Instance& inst, const RelationGraph& rg, const Mapping& m);

/// cost() plus the individual violation tuples, sorted canonically.
std::vector<Violation> find_violations(const Instance& inst, const RelationGraph& rg,
                                       const Mapping& m);

/// Lexicographically optimal mapping over all partial injective same-label
/// mappings; among cost ties the mapping whose sorted pair list is smallest.
/// On timeout the best mapping found so far is returned with optimal=false.
Solution solve(const Instance& inst, const RelationGraph& rg,
               const SolveOptions& options = {});

/// Exhaustive oracle over every partial injective same-label mapping, same
/// tie-break as solve. Guarded to |cad| <= 8 and |net| <= 8; throws
/// std::invalid_argument beyond the guard.
Solution brute_force(const Instance& inst, const RelationGraph& rg);

/// compliant iff no absent and no excess component. Order violations and
/// mapped pairs displaced farther than displacement_warn become warnings.
Verdict verdict(const Solution& s, std::int64_t displacement_warn);

}  // namespace panelcheck
