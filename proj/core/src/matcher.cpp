#include "panelcheck/matcher.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "panelcheck/assignment.hpp"

namespace panelcheck {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::prev_mismatch: return "prev-mismatch";
    case ViolationKind::after_mismatch: return "after-mismatch";
    case ViolationKind::prev_absent: return "prev-absent";
    case ViolationKind::after_absent: return "after-absent";
  }
  return "?";
}

namespace {

struct CompIndex {
  std::vector<const Component*> comps;  // ascending id
  std::unordered_map<int, int> by_id;

  explicit CompIndex(const Layout& l) {
    comps.reserve(l.components.size());
    for (const Component& c : l.components) comps.push_back(&c);
    std::sort(comps.begin(), comps.end(),
              [](const Component* a, const Component* b) { return a->id < b->id; });
    by_id.reserve(comps.size());
    for (int i = 0; i < static_cast<int>(comps.size()); ++i) {
      by_id.emplace(comps[i]->id, i);
    }
  }
};

struct Evaluation {
  CostVector cost;
  std::vector<Violation> violations;
};

bool violation_order(const Violation& a, const Violation& b) {
  return std::tie(a.cad_id, a.net_id, a.dir, a.kind, a.cad_neighbor, a.net_neighbor) <
         std::tie(b.cad_id, b.net_id, b.dir, b.kind, b.cad_neighbor, b.net_neighbor);
}

Evaluation evaluate(const Instance& inst, const RelationGraph& rg, const Mapping& m) {
  CompIndex cad(inst.cad), net(inst.net);

  std::unordered_map<int, int> cad_to_net, net_to_cad;
  cad_to_net.reserve(m.pairs.size());
  net_to_cad.reserve(m.pairs.size());
  for (const auto& [c, n] : m.pairs) {
    const auto ci = cad.by_id.find(c);
    const auto nj = net.by_id.find(n);
    if (ci == cad.by_id.end() || nj == net.by_id.end()) {
      throw std::invalid_argument("mapping references an unknown component id");
    }
    if (cad.comps[ci->second]->label != net.comps[nj->second]->label) {
      throw std::invalid_argument("mapping pairs components of different labels");
    }
    if (!cad_to_net.emplace(c, n).second) {
      throw std::invalid_argument("cad id mapped twice");
    }
    if (!net_to_cad.emplace(n, c).second) {
      throw std::invalid_argument("net id mapped twice");
    }
  }

  Evaluation out;
  out.cost.unmapped =
      static_cast<std::int64_t>(inst.cad.components.size()) - m.pairs.size();

  auto pairs = m.pairs;
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [c, n] : pairs) {
    for (const Direction dir : {Direction::h, Direction::v}) {
      for (const int c2 : rg.previous_of(Membership::cad, c, dir)) {
        if (c2 == kNoneId) continue;
        if (const auto it = cad_to_net.find(c2); it != cad_to_net.end()) {
          if (!rg.has_previous(Membership::net, n, it->second, dir)) {
            out.violations.push_back(
                Violation{ViolationKind::prev_mismatch, c, n, c2, it->second, dir});
          }
        } else if (cad.by_id.count(c2)) {
          out.violations.push_back(
              Violation{ViolationKind::prev_absent, c, n, c2, kNoneId, dir});
        }
      }
      for (const int c2 : rg.after_of(Membership::cad, c, dir)) {
        if (c2 == kNoneId) continue;
        if (const auto it = cad_to_net.find(c2); it != cad_to_net.end()) {
          if (!rg.has_after(Membership::net, n, it->second, dir)) {
            out.violations.push_back(
                Violation{ViolationKind::after_mismatch, c, n, c2, it->second, dir});
          }
        } else if (cad.by_id.count(c2)) {
          out.violations.push_back(
              Violation{ViolationKind::after_absent, c, n, c2, kNoneId, dir});
        }
      }
    }
    out.cost.displacement += rg.pair_distance(c, n);
  }
  out.cost.violations = static_cast<std::int64_t>(out.violations.size());
  std::sort(out.violations.begin(), out.violations.end(), violation_order);
  return out;
}

Solution build_solution(const Instance& inst, const RelationGraph& rg, Mapping m,
                        bool optimal, double seconds) {
  std::sort(m.pairs.begin(), m.pairs.end());
  Evaluation ev = evaluate(inst, rg, m);

  Solution s;
  s.mapping = std::move(m);
  s.cost = ev.cost;
  s.violations = std::move(ev.violations);
  s.optimal = optimal;
  s.solve_seconds = seconds;

  std::unordered_set<int> mapped_cad, mapped_net;
  for (const auto& [c, n] : s.mapping.pairs) {
    mapped_cad.insert(c);
    mapped_net.insert(n);
    s.pair_distances.push_back(rg.pair_distance(c, n));
  }
  CompIndex cad(inst.cad), net(inst.net);
  for (const Component* c : cad.comps) {
    if (!mapped_cad.count(c->id)) s.absent.emplace_back(c->label, c->id);
  }
  for (const Component* n : net.comps) {
    if (!mapped_net.count(n->id)) s.excess.emplace_back(n->label, n->id);
  }
  return s;
}

}  // namespace

CostVector cost(const Instance& inst, const RelationGraph& rg, const Mapping& m) {
  return evaluate(inst, rg, m).cost;
}

std::vector<Violation> find_violations(const Instance& inst, const RelationGraph& rg,
                                       const Mapping& m) {
  return evaluate(inst, rg, m).violations;
}

Solution brute_force(const Instance& inst, const RelationGraph& rg) {
  if (inst.cad.components.size() > 8 || inst.net.components.size() > 8) {
    throw std::invalid_argument(
        "brute_force size guard exceeded (requires |cad| <= 8 and |net| <= 8)");
  }
  const auto t0 = std::chrono::steady_clock::now();
  CompIndex cad(inst.cad), net(inst.net);
  const int nc = static_cast<int>(cad.comps.size());

  std::vector<std::vector<int>> candidates(nc);
  for (int i = 0; i < nc; ++i) {
    for (int j = 0; j < static_cast<int>(net.comps.size()); ++j) {
      if (cad.comps[i]->label == net.comps[j]->label) candidates[i].push_back(j);
    }
  }

  std::vector<char> used(net.comps.size(), false);
  std::vector<std::pair<int, int>> pairs;
  bool have_best = false;
  CostVector best_cost;
  Mapping best;

  const std::function<void(int)> visit = [&](int i) {
    if (i == nc) {
      Mapping m{pairs};
      const CostVector c = evaluate(inst, rg, m).cost;
      if (!have_best || c < best_cost) {
        have_best = true;
        best_cost = c;
        best = std::move(m);
      }
      return;
    }
    for (const int j : candidates[i]) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(cad.comps[i]->id, net.comps[j]->id);
      visit(i + 1);
      pairs.pop_back();
      used[j] = false;
    }
    visit(i + 1);  // leave cad i unmapped
  };
  visit(0);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return build_solution(inst, rg, best, true, secs);
}

namespace {

constexpr int kUndecided = -2;
constexpr int kAbsent = -1;

struct RelEdge {
  int other = 0;  // cad index of the other endpoint
  Direction dir = Direction::h;
  bool is_prev = true;
};

// Packs a (net index, net index, direction) relation lookup key.
std::uint64_t pack_rel(int a, int b, Direction d) {
  return (static_cast<std::uint64_t>(a) << 32) |
         (static_cast<std::uint64_t>(b) << 1) |
         static_cast<std::uint64_t>(d == Direction::v);
}

struct Searcher {
  const Instance& inst;
  const RelationGraph& rg;
  CompIndex cad, net;

  struct Group {
    std::vector<int> cads;  // cad indexes, ascending id
    std::vector<int> nets;  // net indexes, ascending id
    int budget0 = 0;        // absences allowed = max(0, |cads| - |nets|)
    int next = 0;           // position of the next undecided cad
    int budget = 0;
    // bound[s][t]: sum of the t smallest candidate-minima among positions s..
    std::vector<std::vector<std::int64_t>> bound;
    std::int64_t current_bound = 0;
  };

  std::vector<Group> groups;
  std::vector<int> group_of;                     // per cad index, -1 when forced absent
  std::vector<std::vector<std::pair<int, std::int64_t>>> candidates;  // (net idx, dist)
  std::vector<RelEdge> fwd_flat, rev_flat;       // adjacency, bucketed per cad
  std::vector<std::pair<int, int>> fwd_span, rev_span;
  std::unordered_set<std::uint64_t> net_prev, net_after;

  std::vector<int> order;      // decision cads, ascending id
  std::vector<int> decision;   // per cad index
  std::vector<char> used;      // per net index
  std::vector<int> absent_now; // decided-absent cads (incl. forced)
  std::int64_t v_partial = 0, d_partial = 0, d_future = 0;

  std::int64_t bound_v = 0, bound_d = 0;
  std::vector<int> best_decision;
  bool have_best = false;

  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;
  bool aborted = false;

  Searcher(const Instance& i, const RelationGraph& r)
      : inst(i), rg(r), cad(i.cad), net(i.net) {}

  void build() {
    const int nc = static_cast<int>(cad.comps.size());
    const int nn = static_cast<int>(net.comps.size());
    decision.assign(nc, kUndecided);
    used.assign(nn, false);
    group_of.assign(nc, -1);
    candidates.assign(nc, {});

    std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> by_label;
    for (int i = 0; i < nc; ++i) by_label[cad.comps[i]->label].first.push_back(i);
    for (int j = 0; j < nn; ++j) by_label[net.comps[j]->label].second.push_back(j);

    for (auto& [label, cn] : by_label) {
      auto& [cs, ns] = cn;
      if (cs.empty()) continue;
      if (ns.empty()) {
        for (const int ci : cs) {
          decision[ci] = kAbsent;
          absent_now.push_back(ci);
        }
        continue;
      }
      Group g;
      g.cads = cs;
      g.nets = ns;
      g.budget0 = std::max(0, static_cast<int>(cs.size() - ns.size()));
      g.budget = g.budget0;
      groups.push_back(std::move(g));
      const int gi = static_cast<int>(groups.size()) - 1;
      for (const int ci : cs) {
        group_of[ci] = gi;
        for (const int nj : ns) {
          candidates[ci].emplace_back(
              nj, rg.pair_distance(cad.comps[ci]->id, net.comps[nj]->id));
        }
        order.push_back(ci);
      }
    }
    std::sort(order.begin(), order.end());

    // per-group D lower-bound tables from per-cad candidate minima
    for (Group& g : groups) {
      const int len = static_cast<int>(g.cads.size());
      std::vector<std::int64_t> minima(len);
      for (int p = 0; p < len; ++p) {
        std::int64_t lo = std::numeric_limits<std::int64_t>::max();
        for (const auto& [nj, dist] : candidates[g.cads[p]]) lo = std::min(lo, dist);
        minima[p] = lo;
      }
      g.bound.assign(len + 1, {});
      for (int s = 0; s <= len; ++s) {
        std::vector<std::int64_t> suffix(minima.begin() + s, minima.end());
        std::sort(suffix.begin(), suffix.end());
        auto& row = g.bound[s];
        row.assign(suffix.size() + 1, 0);
        for (std::size_t t = 0; t < suffix.size(); ++t) row[t + 1] = row[t] + suffix[t];
      }
      g.current_bound = g.bound[0][len - g.budget0];
      d_future += g.current_bound;
    }

    // cad-side relation adjacency (deduplicated, sentinel skipped)
    std::vector<std::vector<RelEdge>> fwd(nc), rev(nc);
    for (int ci = 0; ci < nc; ++ci) {
      const int id = cad.comps[ci]->id;
      for (const Direction dir : {Direction::h, Direction::v}) {
        for (const bool is_prev : {true, false}) {
          const auto span = is_prev ? rg.previous_of(Membership::cad, id, dir)
                                    : rg.after_of(Membership::cad, id, dir);
          for (const int c2 : span) {
            if (c2 == kNoneId) continue;
            const auto it = cad.by_id.find(c2);
            if (it == cad.by_id.end()) continue;
            fwd[ci].push_back(RelEdge{it->second, dir, is_prev});
            rev[it->second].push_back(RelEdge{ci, dir, is_prev});
          }
        }
      }
    }
    fwd_span.resize(nc);
    rev_span.resize(nc);
    for (int ci = 0; ci < nc; ++ci) {
      fwd_span[ci] = {static_cast<int>(fwd_flat.size()), static_cast<int>(fwd[ci].size())};
      fwd_flat.insert(fwd_flat.end(), fwd[ci].begin(), fwd[ci].end());
      rev_span[ci] = {static_cast<int>(rev_flat.size()), static_cast<int>(rev[ci].size())};
      rev_flat.insert(rev_flat.end(), rev[ci].begin(), rev[ci].end());
    }

    // net-side relation membership sets
    for (int nj = 0; nj < nn; ++nj) {
      const int id = net.comps[nj]->id;
      for (const Direction dir : {Direction::h, Direction::v}) {
        for (const int nb : rg.previous_of(Membership::net, id, dir)) {
          if (nb == kNoneId) continue;
          const auto it = net.by_id.find(nb);
          if (it != net.by_id.end()) net_prev.insert(pack_rel(nj, it->second, dir));
        }
        for (const int nb : rg.after_of(Membership::net, id, dir)) {
          if (nb == kNoneId) continue;
          const auto it = net.by_id.find(nb);
          if (it != net.by_id.end()) net_after.insert(pack_rel(nj, it->second, dir));
        }
      }
    }
  }

  bool net_rel_holds(int n1, int n2, Direction dir, bool is_prev) const {
    const std::uint64_t key = pack_rel(n1, n2, dir);
    return is_prev ? net_prev.count(key) > 0 : net_after.count(key) > 0;
  }

  std::int64_t delta_v_mapped(int ci, int nj) const {
    std::int64_t dv = 0;
    const auto [fo, fn] = fwd_span[ci];
    for (int e = fo; e < fo + fn; ++e) {
      const RelEdge& edge = fwd_flat[e];
      const int d2 = decision[edge.other];
      if (d2 == kUndecided) continue;
      if (d2 == kAbsent) {
        ++dv;
      } else if (!net_rel_holds(nj, d2, edge.dir, edge.is_prev)) {
        ++dv;
      }
    }
    const auto [ro, rn] = rev_span[ci];
    for (int e = ro; e < ro + rn; ++e) {
      const RelEdge& edge = rev_flat[e];
      const int d1 = decision[edge.other];
      if (d1 < 0) continue;  // undecided or absent owners ground no tuple yet
      if (!net_rel_holds(d1, nj, edge.dir, edge.is_prev)) ++dv;
    }
    return dv;
  }

  std::int64_t delta_v_absent(int ci) const {
    std::int64_t dv = 0;
    const auto [ro, rn] = rev_span[ci];
    for (int e = ro; e < ro + rn; ++e) {
      if (decision[rev_flat[e].other] >= 0) ++dv;
    }
    return dv;
  }

  // Violations that every completion must still pay: relations from a cad
  // that can no longer go absent (group budget exhausted) to an already
  // absent neighbor.
  std::int64_t forced_future_v() const {
    std::int64_t v = 0;
    for (const int a : absent_now) {
      const auto [ro, rn] = rev_span[a];
      for (int e = ro; e < ro + rn; ++e) {
        const int c1 = rev_flat[e].other;
        if (decision[c1] != kUndecided) continue;
        const int g = group_of[c1];
        if (g >= 0 && groups[g].budget == 0) ++v;
      }
    }
    return v;
  }

  bool better_than_bound(std::int64_t v, std::int64_t d) const {
    return v < bound_v || (v == bound_v && d < bound_d);
  }

  void dfs(std::size_t k) {
    if (aborted) return;
    if ((++nodes & 2047u) == 0 &&
        std::chrono::steady_clock::now() >= deadline) {
      aborted = true;
      return;
    }
    if (k == order.size()) {
      if (better_than_bound(v_partial, d_partial)) {
        bound_v = v_partial;
        bound_d = d_partial;
        best_decision = decision;
        have_best = true;
      }
      return;
    }
    const int ci = order[k];
    Group& g = groups[group_of[ci]];
    const int len = static_cast<int>(g.cads.size());

    auto with_group_step = [&](auto&& body) {
      const std::int64_t old_bound = g.current_bound;
      ++g.next;
      g.current_bound = g.bound[g.next][len - g.next - g.budget];
      d_future += g.current_bound - old_bound;
      body();
      d_future -= g.current_bound - old_bound;
      g.current_bound = old_bound;
      --g.next;
    };

    for (const auto& [nj, dist] : candidates[ci]) {
      if (used[nj]) continue;
      const std::int64_t dv = delta_v_mapped(ci, nj);
      decision[ci] = nj;
      used[nj] = true;
      v_partial += dv;
      d_partial += dist;
      with_group_step([&] {
        if (better_than_bound(v_partial + forced_future_v(), d_partial + d_future)) {
          dfs(k + 1);
        }
      });
      d_partial -= dist;
      v_partial -= dv;
      used[nj] = false;
      decision[ci] = kUndecided;
      if (aborted) return;
    }

    if (g.budget > 0) {
      const std::int64_t dv = delta_v_absent(ci);
      decision[ci] = kAbsent;
      absent_now.push_back(ci);
      v_partial += dv;
      --g.budget;
      with_group_step([&] {
        if (better_than_bound(v_partial + forced_future_v(), d_partial + d_future)) {
          dfs(k + 1);
        }
      });
      ++g.budget;
      v_partial -= dv;
      absent_now.pop_back();
      decision[ci] = kUndecided;
    }
  }

  Mapping seed_mapping() const {
    Mapping m;
    for (const Group& g : groups) {
      const int a = static_cast<int>(g.cads.size());
      const int b = static_cast<int>(g.nets.size());
      std::vector<std::int64_t> dist(static_cast<std::size_t>(a) * b);
      for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
          dist[static_cast<std::size_t>(i) * b + j] =
              rg.pair_distance(cad.comps[g.cads[i]]->id, net.comps[g.nets[j]]->id);
        }
      }
      if (a <= b) {
        const auto cols = min_cost_assignment(a, b, dist);
        for (int i = 0; i < a; ++i) {
          m.pairs.emplace_back(cad.comps[g.cads[i]]->id, net.comps[g.nets[cols[i]]]->id);
        }
      } else {
        std::vector<std::int64_t> t(static_cast<std::size_t>(b) * a);
        for (int j = 0; j < b; ++j) {
          for (int i = 0; i < a; ++i) {
            t[static_cast<std::size_t>(j) * a + i] = dist[static_cast<std::size_t>(i) * b + j];
          }
        }
        const auto rows = min_cost_assignment(b, a, t);
        for (int j = 0; j < b; ++j) {
          m.pairs.emplace_back(cad.comps[g.cads[rows[j]]]->id, net.comps[g.nets[j]]->id);
        }
      }
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    return m;
  }

  Mapping decisions_to_mapping(const std::vector<int>& dec) const {
    Mapping m;
    for (int ci = 0; ci < static_cast<int>(dec.size()); ++ci) {
      if (dec[ci] >= 0) m.pairs.emplace_back(cad.comps[ci]->id, net.comps[dec[ci]]->id);
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    return m;
  }
};

}  // namespace

Solution solve(const Instance& inst, const RelationGraph& rg,
               const SolveOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  Searcher s(inst, rg);
  s.deadline = t0 + options.timeout;
  s.build();

  const Mapping seed = s.seed_mapping();
  const Evaluation seed_eval = evaluate(inst, rg, seed);
  // sentinel one past the seed so an equal-cost leaf still becomes the
  // incumbent (first leaf in canonical DFS order wins cost ties)
  s.bound_v = seed_eval.cost.violations;
  s.bound_d = seed_eval.cost.displacement + 1;

  s.dfs(0);

  Mapping best = s.have_best ? s.decisions_to_mapping(s.best_decision) : seed;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return build_solution(inst, rg, std::move(best), !s.aborted, secs);
}

Verdict verdict(const Solution& s, std::int64_t displacement_warn) {
  Verdict v;
  v.status = (s.absent.empty() && s.excess.empty()) ? Compliance::compliant
                                                    : Compliance::non_compliant;
  for (const Violation& viol : s.violations) {
    std::string w = std::string("order: ") + to_string(viol.kind) + " cad " +
                    std::to_string(viol.cad_id) + " (net " +
                    std::to_string(viol.net_id) + ") neighbor " +
                    std::to_string(viol.cad_neighbor);
    if (viol.net_neighbor != kNoneId) {
      w += " (net " + std::to_string(viol.net_neighbor) + ")";
    }
    w += std::string(" dir ") + to_string(viol.dir);
    v.warnings.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < s.mapping.pairs.size(); ++i) {
    if (s.pair_distances[i] > displacement_warn) {
      v.warnings.push_back(
          "displacement: cad " + std::to_string(s.mapping.pairs[i].first) + " -> net " +
          std::to_string(s.mapping.pairs[i].second) + " distance " +
          std::to_string(s.pair_distances[i]) + " exceeds " +
          std::to_string(displacement_warn));
    }
  }
  return v;
}

}  // namespace panelcheck
