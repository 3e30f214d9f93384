#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "panelcheck/model.hpp"
#include "panelcheck/topology.hpp"

namespace panelcheck {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_ = 0;
};

/// Layout file:
///   canvas W H
///   membership cad|net
///   component <id> <label> <x1> <y1> <x2> <y2> [score]
/// Blank lines and lines starting with '#' are ignored. Coordinates must be
/// non-negative integers; a score is only allowed on net components.
/// Throws ParseError on syntax or invariant violations.
Layout parse_layout(std::string_view text);

/// Detection file (net membership, no ids in the file):
///   canvas W H
///   detection <label> <x1> <y1> <x2> <y2> <score>
/// `component` lines with explicit ids (as in layout files) are also
/// accepted. Missing ids are assigned 1..n in file order before filtering;
/// detections with score < score_threshold are dropped and survivors keep
/// their ids. Components without a score are always kept.
Layout parse_detections(std::string_view text, double score_threshold);

/// Result of parsing an ASP fact file. A relation kind that appears in the
/// file (at least one fact) is honored verbatim and overrides computed
/// topology for that kind.
struct FactFile {
  Instance instance;
  std::vector<Between> between;
  std::vector<ManhattanFact> manhattan;

  bool has_between() const { return !between.empty(); }
  bool has_manhattan() const { return !manhattan.empty(); }
};

/// Fact file grammar (one fact per line, terminating period):
///   object("<label>",<id>,<x1>,<y1>,<x2>,<y2>,"<cad|net>").
///   between(<id>,<start_id|none>,<end_id|none>,"<h|v>","<cad|net>").
///   manhattan(<id1>,<id2>,<dist>,"<mem1>","<mem2>").
/// '%' comment lines and blank lines are skipped. Objects are partitioned by
/// membership into the instance's layouts; canvas dimensions are derived from
/// the coordinate bounds (facts carry no canvas). Relation facts must
/// reference existing ids of their membership.
FactFile parse_facts(std::string_view text);

/// Canonical layout file serialization (inverse of parse_layout).
std::string write_layout(const Layout& layout);

/// On-disk file kinds distinguished by content.
enum class FileKind { layout, detections, facts };

/// Sniffs the kind from the first significant lines: fact files start with a
/// fact or '%' comment; layout files have a `membership` line; otherwise the
/// file is treated as a detection file.
FileKind detect_file_kind(std::string_view text);

}  // namespace panelcheck
