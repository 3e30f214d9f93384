#include "panelcheck/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "panelcheck/io.hpp"
#include "panelcheck/rng.hpp"

namespace panelcheck {
namespace {

constexpr const char* kCatalogLabels[] = {
    "relay",          "contactor",      "breaker_1p",    "breaker_2p",
    "breaker_3p",     "fuse_holder",    "terminal_block", "plc_cpu",
    "plc_io",         "psu_24v",        "psu_12v",       "inverter",
    "soft_starter",   "timer",          "counter",       "energy_meter",
    "volt_meter",     "ammeter",        "selector_switch", "push_button",
    "pilot_lamp",     "buzzer",         "rectifier",     "line_filter",
    "choke",          "transformer",    "isolator",      "surge_arrester",
    "rcd",            "motor_starter",  "aux_contact",   "thermal_relay",
    "ssr",            "signal_converter", "gateway",     "ethernet_switch",
    "io_coupler",     "safety_relay",   "estop_module",  "brake_resistor",
    "dc_link",        "capacitor_bank", "phase_monitor", "level_controller",
    "temp_controller", "humidistat",    "hour_meter",    "current_transformer",
    "shunt",          "busbar_support",
};

constexpr int kCatalogSize = static_cast<int>(std::size(kCatalogLabels));
static_assert(kCatalogSize == 50);

bool overlaps(const BBox& a, const BBox& b) {
  return a.x1 < b.x2 && b.x1 < a.x2 && a.y1 < b.y2 && b.y1 < a.y2;
}

}  // namespace

std::vector<CatalogEntry> default_catalog(int min_box, int max_box) {
  if (min_box < 1 || max_box < min_box) {
    throw std::invalid_argument("invalid box size range");
  }
  const int span = max_box - min_box + 1;
  std::vector<CatalogEntry> out;
  out.reserve(kCatalogSize);
  for (int i = 0; i < kCatalogSize; ++i) {
    out.push_back(CatalogEntry{kCatalogLabels[i], min_box + (i * 7) % span,
                               min_box + (i * 11 + 3) % span});
  }
  return out;
}

std::vector<CatalogEntry> parse_catalog(std::string_view text) {
  std::vector<CatalogEntry> out;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    CatalogEntry e;
    char label[128] = {0};
    if (std::sscanf(line.c_str(), "%127s %d %d", label, &e.width, &e.height) != 3) {
      throw ParseError(line_no, "catalog line: expected '<label> <width> <height>'");
    }
    e.label = label;
    if (!is_valid_label(e.label)) {
      throw ParseError(line_no, "invalid label '" + e.label + "'");
    }
    if (e.width < 1 || e.height < 1) {
      throw ParseError(line_no, "catalog sizes must be positive");
    }
    out.push_back(std::move(e));
  }
  return out;
}

Layout gen_layout(const GenParams& p) {
  return gen_layout(p, default_catalog(p.min_box, p.max_box));
}

Layout gen_layout(const GenParams& p, const std::vector<CatalogEntry>& catalog) {
  if (p.n_labels < 1) throw std::invalid_argument("n_labels must be >= 1");
  if (p.n_components < p.n_labels) {
    throw std::invalid_argument("n_components must be >= n_labels");
  }
  if (p.n_labels > static_cast<int>(catalog.size())) {
    throw std::invalid_argument("n_labels exceeds catalog size");
  }
  if (p.canvas_width < 1 || p.canvas_height < 1) {
    throw std::invalid_argument("canvas must be positive");
  }

  // row-aligned placement grid
  const int n = p.n_components;
  const int rows = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int cols = (n + rows - 1) / rows;
  const int cell_w = p.canvas_width / cols;
  const int cell_h = p.canvas_height / rows;

  // pick the labels for this layout
  TaggedRng label_rng(p.seed, "labels");
  std::vector<int> catalog_idx(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i) catalog_idx[i] = static_cast<int>(i);
  label_rng.shuffle(catalog_idx);
  catalog_idx.resize(p.n_labels);

  int max_w = 0, max_h = 0;
  for (const int ci : catalog_idx) {
    max_w = std::max(max_w, catalog[ci].width);
    max_h = std::max(max_h, catalog[ci].height);
  }
  if (max_w + 2 > cell_w || max_h + 2 > cell_h) {
    throw std::invalid_argument("infeasible packing: catalog boxes do not fit the grid");
  }

  // one of each label, the rest drawn from the chosen labels
  TaggedRng mix_rng(p.seed, "mix");
  std::vector<int> picks = catalog_idx;
  while (static_cast<int>(picks.size()) < n) {
    picks.push_back(catalog_idx[mix_rng.below(catalog_idx.size())]);
  }
  TaggedRng shuffle_rng(p.seed, "shuffle");
  shuffle_rng.shuffle(picks);

  TaggedRng place_rng(p.seed, "place");
  Layout out;
  out.width = p.canvas_width;
  out.height = p.canvas_height;
  out.membership = Membership::cad;
  for (int k = 0; k < n; ++k) {
    const CatalogEntry& e = catalog[picks[k]];
    const int row = k / cols;
    const int col = k % cols;
    // top-aligned inside the cell with a small offset so columns stay aligned
    const int slack_x = cell_w - e.width - 2;
    const int ox = 1 + place_rng.range(0, std::min(4, slack_x));
    const int x1 = col * cell_w + ox;
    const int y1 = row * cell_h + 1;
    Component c;
    c.label = e.label;
    c.id = k + 1;
    c.box = BBox{x1, y1, x1 + e.width, y1 + e.height};
    c.membership = Membership::cad;
    out.components.push_back(std::move(c));
  }
  return out;
}

PerturbResult perturb(const Layout& cad, const PerturbParams& p) {
  const int n = static_cast<int>(cad.components.size());
  if (p.jitter < 0 || p.drop_k < 0 || p.add_j < 0 || p.swap_s < 0) {
    throw std::invalid_argument("perturbation parameters must be non-negative");
  }
  if (p.drop_k > n) throw std::invalid_argument("drop_k exceeds component count");

  PerturbResult result;
  result.net.width = cad.width;
  result.net.height = cad.height;
  result.net.membership = Membership::net;

  // fresh ids 1..n in cad order
  std::vector<Component> comps;
  comps.reserve(cad.components.size());
  int next_id = 1;
  for (const Component& c : cad.components) {
    Component copy = c;
    copy.id = next_id++;
    copy.membership = Membership::net;
    comps.push_back(std::move(copy));
  }

  if (p.jitter > 0) {
    TaggedRng rng(p.seed, "jitter");
    for (Component& c : comps) {
      int dx = rng.range(-p.jitter, p.jitter);
      int dy = rng.range(-p.jitter, p.jitter);
      dx = std::clamp(dx, -c.box.x1, cad.width - c.box.x2);
      dy = std::clamp(dy, -c.box.y1, cad.height - c.box.y2);
      c.box.x1 += dx;
      c.box.x2 += dx;
      c.box.y1 += dy;
      c.box.y2 += dy;
    }
  }

  if (p.drop_k > 0) {
    TaggedRng rng(p.seed, "drop");
    std::vector<int> idx(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) idx[i] = static_cast<int>(i);
    rng.shuffle(idx);
    idx.resize(p.drop_k);
    std::sort(idx.begin(), idx.end(), std::greater<int>());
    for (const int i : idx) {
      result.dropped_cad_ids.push_back(cad.components[i].id);
      comps.erase(comps.begin() + i);
    }
    std::sort(result.dropped_cad_ids.begin(), result.dropped_cad_ids.end());
  }

  if (p.add_j > 0) {
    if (cad.components.empty()) {
      throw std::runtime_error("cannot insert into an empty layout");
    }
    TaggedRng rng(p.seed, "add");
    for (int a = 0; a < p.add_j; ++a) {
      const Component& proto =
          cad.components[rng.below(cad.components.size())];
      const int w = proto.box.x2 - proto.box.x1;
      const int h = proto.box.y2 - proto.box.y1;
      bool placed = false;
      for (int y = 1; y + h < cad.height && !placed; y += 8) {
        for (int x = 1; x + w < cad.width && !placed; x += 8) {
          const BBox cand{x, y, x + w, y + h};
          bool free = true;
          for (const Component& c : comps) {
            if (overlaps(cand, c.box)) {
              free = false;
              break;
            }
          }
          if (!free) continue;
          Component added;
          added.label = proto.label;
          added.id = next_id++;
          added.box = cand;
          added.membership = Membership::net;
          result.added_net_ids.push_back(added.id);
          comps.push_back(std::move(added));
          placed = true;
        }
      }
      if (!placed) throw std::runtime_error("no free position for insertion");
    }
  }

  if (p.swap_s > 0) {
    TaggedRng rng(p.seed, "swap");
    std::map<std::pair<int, int>, std::vector<int>> by_size;  // (w,h) -> indexes
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const BBox& b = comps[i].box;
      by_size[{b.x2 - b.x1, b.y2 - b.y1}].push_back(static_cast<int>(i));
    }
    std::vector<std::pair<int, int>> pool;  // candidate index pairs
    for (const auto& [size, members] : by_size) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          pool.emplace_back(members[i], members[j]);
        }
      }
    }
    rng.shuffle(pool);
    std::vector<char> touched(comps.size(), false);
    int applied = 0;
    for (const auto& [i, j] : pool) {
      if (applied == p.swap_s) break;
      if (touched[i] || touched[j]) continue;
      std::swap(comps[i].box, comps[j].box);
      touched[i] = touched[j] = true;
      result.swapped_net_ids.emplace_back(comps[i].id, comps[j].id);
      ++applied;
    }
  }

  result.net.components = std::move(comps);
  return result;
}

}  // namespace panelcheck
