#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "panelcheck/matcher.hpp"

namespace panelcheck {

/// Scalability sweep configuration. `samples` is the total sample count,
/// distributed round-robin over the cells (label count x component count,
/// label count <= component count). With full_sweep every combination in
/// [label_lo, label_hi] x [component_lo, component_hi] forms a cell;
/// otherwise the default cells are {6,12,25,50} x {12,25,50,75}.
struct BenchConfig {
  std::vector<int> label_counts = {6, 12, 25, 50};
  std::vector<int> component_counts = {12, 25, 50, 75};
  bool full_sweep = false;
  int label_lo = 6, label_hi = 50;
  int component_lo = 12, component_hi = 75;
  int samples = 500;
  std::uint64_t seed = 0;
  std::chrono::milliseconds timeout{60000};
  int jobs = 1;
  int grid = 1000;
  // default perturbation mix: jitter 2% of the canvas, drop 1, add 1
  double jitter_fraction = 0.02;
  int drop_k = 1;
  int add_j = 1;
};

struct BenchRecord {
  int n_labels = 0;
  int n_components = 0;
  int sample_index = 0;
  double wall_ms = 0.0;
  CostVector cost;
  bool optimal = true;
};

struct CellSummary {
  int n_labels = 0;
  int n_components = 0;
  int count = 0;
  double avg_ms = 0.0;
  double max_ms = 0.0;
  int timeouts = 0;
};

struct BenchResult {
  std::vector<BenchRecord> records;  // ordered by (cell, sample_index)
  std::vector<CellSummary> cells;
  double global_avg_ms = 0.0;
  double global_max_ms = 0.0;
  int timeouts = 0;
};

/// Runs the sweep. Instance streams are derived from (seed, cell, sample), so
/// records are reproducible regardless of the worker count; only wall times
/// vary between runs. Per-instance timeouts are recorded (optimal=false) and
/// the run continues.
BenchResult run_bench(const BenchConfig& config);

/// CSV with header `n_labels,n_components,sample,wall_ms,U,V,D,optimal`.
std::string records_csv(const BenchResult& result);

/// Per-cell summary rows plus a final global row with n_labels=n_components=0.
std::string summary_csv(const BenchResult& result);

}  // namespace panelcheck
