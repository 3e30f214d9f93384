#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "panelcheck/model.hpp"

namespace panelcheck {

struct CatalogEntry {
  std::string label;
  int width = 0;
  int height = 0;
};

/// Built-in catalog of 50 component types with deterministic box sizes in
/// [min_box, max_box].
std::vector<CatalogEntry> default_catalog(int min_box = 16, int max_box = 28);

/// Catalog file: one line per label, `<label> <width> <height>`.
std::vector<CatalogEntry> parse_catalog(std::string_view text);

struct GenParams {
  int n_labels = 6;
  int n_components = 12;
  int canvas_width = 320;
  int canvas_height = 320;
  std::uint64_t seed = 0;
  int min_box = 16;
  int max_box = 28;
};

/// Deterministic cad layout: n_components non-overlapping boxes on a
/// row-aligned grid, exactly n_labels distinct labels each used at least
/// once, components drawn from the catalog. Throws std::invalid_argument on
/// infeasible packing or parameter combinations.
Layout gen_layout(const GenParams& params);
Layout gen_layout(const GenParams& params, const std::vector<CatalogEntry>& catalog);

struct PerturbParams {
  int jitter = 0;      // max per-axis displacement
  int drop_k = 0;      // components to delete
  int add_j = 0;       // spurious components to insert
  int swap_s = 0;      // same-size position swaps
  std::uint64_t seed = 0;
};

struct PerturbResult {
  Layout net;
  std::vector<int> dropped_cad_ids;                // original cad ids
  std::vector<int> added_net_ids;
  std::vector<std::pair<int, int>> swapped_net_ids;
};

/// Copies the layout as a net layout with fresh ids 1..n (cad order), then
/// applies jitter (clamped to the canvas), drops drop_k components, inserts
/// add_j components from the layout's own label set at free positions and
/// swaps swap_s same-size pairs, all deterministically per seed. Fewer swaps
/// than requested are applied when no same-size pair is available. Throws
/// std::invalid_argument when drop_k exceeds the component count and
/// std::runtime_error when no free position exists for an insertion.
PerturbResult perturb(const Layout& cad, const PerturbParams& params);

}  // namespace panelcheck
