#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "panelcheck/matcher.hpp"
#include "panelcheck/model.hpp"
#include "panelcheck/topology.hpp"

namespace panelcheck {

/// Canonical fact file for an instance plus its relation facts: objects by
/// membership then id, between by (membership, id, direction), manhattan by
/// (id1, id2). Round-trips through parse_facts byte-exactly.
std::string emit_facts(const Instance& inst, const RelationGraph& rg);

/// The compliance program: auxiliary previous/after rules, the disjunctive
/// mapping guess over same-label cad/net objects, both bijectivity
/// constraints, the weak constraints at levels 3/2/1 and the absent/excess
/// rules, in ASP-Core-2 syntax. Byte-stable across calls.
std::string emit_program();

/// Extract of one answer set: mapped/absent/excess atoms plus an optional
/// cost line. Accepted cost forms: `Optimization: U V D` (levels listed in
/// descending priority, as clingo prints) and `<n>@<level>` tokens (as DLV2
/// prints, e.g. `COST 40@1 2@2`). Atoms may be separated by whitespace,
/// commas or braces. Throws std::runtime_error on malformed atoms or
/// inconsistent sets (an id both mapped and absent/excess).
struct AnswerSet {
  Mapping mapping;
  std::vector<std::pair<std::string, int>> absent;
  std::vector<std::pair<std::string, int>> excess;
  std::optional<CostVector> cost;
};

AnswerSet parse_answer_set(std::string_view text);

}  // namespace panelcheck
