#include "panelcheck/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "panelcheck/generator.hpp"
#include "panelcheck/rng.hpp"
#include "panelcheck/topology.hpp"

namespace panelcheck {
namespace {

struct Cell {
  int n_labels = 0;
  int n_components = 0;
  int samples = 0;
};

std::vector<Cell> make_cells(const BenchConfig& cfg) {
  std::vector<Cell> cells;
  if (cfg.full_sweep) {
    for (int l = cfg.label_lo; l <= cfg.label_hi; ++l) {
      for (int c = std::max(l, cfg.component_lo); c <= cfg.component_hi; ++c) {
        cells.push_back(Cell{l, c, 0});
      }
    }
  } else {
    for (const int l : cfg.label_counts) {
      for (const int c : cfg.component_counts) {
        if (l <= c) cells.push_back(Cell{l, c, 0});
      }
    }
  }
  if (cells.empty()) throw std::invalid_argument("bench: no cells to run");
  if (cfg.samples < 1) throw std::invalid_argument("bench: samples must be >= 1");
  for (int s = 0; s < cfg.samples; ++s) cells[s % cells.size()].samples++;
  return cells;
}

BenchRecord run_one(const BenchConfig& cfg, const Cell& cell, int sample) {
  GenParams gp;
  gp.n_labels = cell.n_labels;
  gp.n_components = cell.n_components;
  gp.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(cell.n_labels),
                     static_cast<std::uint64_t>(cell.n_components),
                     static_cast<std::uint64_t>(sample));
  const Layout cad = gen_layout(gp);

  PerturbParams pp;
  pp.jitter = std::max(
      1, static_cast<int>(std::lround(cfg.jitter_fraction *
                                      std::min(gp.canvas_width, gp.canvas_height))));
  pp.drop_k = std::min(cfg.drop_k, cell.n_components);
  pp.add_j = cfg.add_j;
  pp.seed = mix_seed(gp.seed, 0x70657274);  // independent perturbation stream
  const Layout net = perturb(cad, pp).net;

  Instance inst{normalize(cad, cfg.grid), normalize(net, cfg.grid)};
  const RelationGraph rg = build_relations(inst);

  const auto t0 = std::chrono::steady_clock::now();
  const Solution sol = solve(inst, rg, SolveOptions{cfg.timeout});
  const auto t1 = std::chrono::steady_clock::now();

  BenchRecord rec;
  rec.n_labels = cell.n_labels;
  rec.n_components = cell.n_components;
  rec.sample_index = sample;
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  rec.cost = sol.cost;
  rec.optimal = sol.optimal;
  return rec;
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  const std::vector<Cell> cells = make_cells(cfg);

  struct Task {
    int cell_index;
    int sample;
  };
  std::vector<Task> tasks;
  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    for (int s = 0; s < cells[ci].samples; ++s) tasks.push_back(Task{ci, s});
  }

  BenchResult result;
  result.records.resize(tasks.size());

  const int jobs = std::max(1, cfg.jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      result.records[t] = run_one(cfg, cells[tasks[t].cell_index], tasks[t].sample);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t r = 0;
  double total = 0.0;
  for (const Cell& cell : cells) {
    CellSummary cs;
    cs.n_labels = cell.n_labels;
    cs.n_components = cell.n_components;
    cs.count = cell.samples;
    for (int s = 0; s < cell.samples; ++s, ++r) {
      const BenchRecord& rec = result.records[r];
      cs.avg_ms += rec.wall_ms;
      cs.max_ms = std::max(cs.max_ms, rec.wall_ms);
      if (!rec.optimal) ++cs.timeouts;
      total += rec.wall_ms;
      result.global_max_ms = std::max(result.global_max_ms, rec.wall_ms);
    }
    if (cs.count > 0) cs.avg_ms /= cs.count;
    result.timeouts += cs.timeouts;
    result.cells.push_back(cs);
  }
  if (!result.records.empty()) {
    result.global_avg_ms = total / static_cast<double>(result.records.size());
  }
  return result;
}

std::string records_csv(const BenchResult& result) {
  std::ostringstream os;
  os << "n_labels,n_components,sample,wall_ms,U,V,D,optimal\n";
  char buf[32];
  for (const BenchRecord& r : result.records) {
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    os << r.n_labels << ',' << r.n_components << ',' << r.sample_index << ',' << buf
       << ',' << r.cost.unmapped << ',' << r.cost.violations << ','
       << r.cost.displacement << ',' << (r.optimal ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string summary_csv(const BenchResult& result) {
  std::ostringstream os;
  os << "n_labels,n_components,count,avg_ms,max_ms,timeouts\n";
  char a[32], m[32];
  for (const CellSummary& c : result.cells) {
    std::snprintf(a, sizeof a, "%.3f", c.avg_ms);
    std::snprintf(m, sizeof m, "%.3f", c.max_ms);
    os << c.n_labels << ',' << c.n_components << ',' << c.count << ',' << a << ',' << m
       << ',' << c.timeouts << '\n';
  }
  std::snprintf(a, sizeof a, "%.3f", result.global_avg_ms);
  std::snprintf(m, sizeof m, "%.3f", result.global_max_ms);
  os << "0,0," << result.records.size() << ',' << a << ',' << m << ','
     << result.timeouts << '\n';
  return os.str();
}

}  // namespace panelcheck
