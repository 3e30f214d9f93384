#include "panelcheck/asp.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace panelcheck {

std::string emit_facts(const Instance& inst, const RelationGraph& rg) {
  std::ostringstream os;

  for (const Layout* l : {&inst.cad, &inst.net}) {
    std::vector<const Component*> comps;
    for (const Component& c : l->components) comps.push_back(&c);
    std::sort(comps.begin(), comps.end(),
              [](const Component* a, const Component* b) { return a->id < b->id; });
    for (const Component* c : comps) {
      os << "object(\"" << c->label << "\"," << c->id << ',' << c->box.x1 << ','
         << c->box.y1 << ',' << c->box.x2 << ',' << c->box.y2 << ",\""
         << to_string(c->membership) << "\").\n";
    }
  }

  std::vector<Between> between = rg.between();
  std::sort(between.begin(), between.end(), [](const Between& a, const Between& b) {
    return std::tie(a.mem, a.id, a.dir, a.start, a.end) <
           std::tie(b.mem, b.id, b.dir, b.start, b.end);
  });
  auto id_or_none = [](int id) {
    return id == kNoneId ? std::string("none") : std::to_string(id);
  };
  for (const Between& b : between) {
    os << "between(" << b.id << ',' << id_or_none(b.start) << ',' << id_or_none(b.end)
       << ",\"" << to_string(b.dir) << "\",\"" << to_string(b.mem) << "\").\n";
  }

  std::vector<ManhattanFact> manhattan = rg.manhattan();
  std::sort(manhattan.begin(), manhattan.end(),
            [](const ManhattanFact& a, const ManhattanFact& b) {
              return std::tie(a.id1, a.id2, a.mem1, a.mem2, a.dist) <
                     std::tie(b.id1, b.id2, b.mem1, b.mem2, b.dist);
            });
  for (const ManhattanFact& m : manhattan) {
    os << "manhattan(" << m.id1 << ',' << m.id2 << ',' << m.dist << ",\""
       << to_string(m.mem1) << "\",\"" << to_string(m.mem2) << "\").\n";
  }
  return os.str();
}

std::string emit_program() {
  return R"(% Calculate auxiliary information
previous(ID, Start_ID, D, M) :- between(ID, Start_ID, _, D, M).
after(ID, End_ID, D, M) :- between(ID, _, End_ID, D, M).

% Guess mapping between cad components and net components
simpObject(C1, ID1, M) :- object(C1, ID1, _, _, _, _, M).
mapped(ID1, ID2) | noMapped(ID1, ID2) :- simpObject(C1, ID1, "cad"), simpObject(C1, ID2, "net").

% No element from the cad is mapped twice
:- mapped(Cad_ID, Net_ID1), mapped(Cad_ID, Net_ID2), Net_ID1 != Net_ID2.

% No element from the net is mapped twice
:- mapped(Cad_ID1, Net_ID), mapped(Cad_ID2, Net_ID), Cad_ID1 != Cad_ID2.

% Minimize the cad elements without a mapping
atLeastOne(Cad_ID) :- mapped(Cad_ID, _).
:~ simpObject(C1, ID1, "cad"), not atLeastOne(ID1). [1@3,C1,ID1]

% Optimize mapping by relative position
:~ mapped(Cad_ID1, Net_ID1), mapped(Cad_ID2, Net_ID2), previous(Cad_ID1, Cad_ID2, DIR, "cad"), not previous(Net_ID1, Net_ID2, DIR, "net"). [1@2,Cad_ID1,Net_ID1,Cad_ID2,Net_ID2,DIR]
:~ mapped(Cad_ID1, Net_ID1), mapped(Cad_ID2, Net_ID2), after(Cad_ID1, Cad_ID2, DIR, "cad"), not after(Net_ID1, Net_ID2, DIR, "net"). [1@2,Cad_ID1,Net_ID1,Cad_ID2,Net_ID2,DIR]
:~ mapped(Cad_ID1, Net_ID1), previous(Cad_ID1, Cad_ID2, DIR, "cad"), absent(_, Cad_ID2). [1@2,Cad_ID1,Net_ID1,Cad_ID2,DIR]
:~ mapped(Cad_ID1, Net_ID1), after(Cad_ID1, Cad_ID2, DIR, "cad"), absent(_, Cad_ID2). [1@2,Cad_ID1,Net_ID1,Cad_ID2,DIR]

% Optimize mapping by distance
:~ mapped(Cad_ID, Net_ID), manhattan(Cad_ID, Net_ID, Dis, "cad", "net"). [Dis@1,Cad_ID,Net_ID,Dis]

% Identify absent and in excess components
mappedCad(ID1) :- mapped(ID1, _).
mappedNet(ID1) :- mapped(_, ID1).
absent(C1, ID1) :- simpObject(C1, ID1, "cad"), not mappedCad(ID1).
excess(C1, ID1) :- simpObject(C1, ID1, "net"), not mappedNet(ID1).
)";
}

namespace {

struct AtomScanner {
  std::string_view text;
  std::size_t pos = 0;

  // Finds the next name(args) atom; returns false at end of input.
  bool next(std::string_view& name, std::string_view& args) {
    while (pos < text.size()) {
      if (!(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
        continue;
      }
      // require a token boundary before the name
      if (pos > 0) {
        const char prev = text[pos - 1];
        if (std::isalnum(static_cast<unsigned char>(prev)) || prev == '_') {
          while (pos < text.size() &&
                 (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
          }
          continue;
        }
      }
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        ++pos;
      }
      name = text.substr(start, pos - start);
      if (pos < text.size() && text[pos] == '(') {
        std::size_t depth = 0;
        std::size_t open = pos;
        bool in_quotes = false;
        while (pos < text.size()) {
          const char c = text[pos];
          if (c == '"') in_quotes = !in_quotes;
          if (!in_quotes) {
            if (c == '(') ++depth;
            if (c == ')' && --depth == 0) break;
          }
          ++pos;
        }
        if (pos == text.size()) throw std::runtime_error("unbalanced parentheses in atom");
        args = text.substr(open + 1, pos - open - 1);
        ++pos;
        return true;
      }
      args = {};
      return true;
    }
    return false;
  }
};

int to_int(std::string_view tok, const char* what) {
  int v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw std::runtime_error(std::string("malformed atom: bad ") + what + " '" +
                             std::string(tok) + "'");
  }
  return v;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_args(std::string_view args) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  bool in_quotes = false;
  for (std::size_t i = 0; i <= args.size(); ++i) {
    if (i < args.size() && args[i] == '"') in_quotes = !in_quotes;
    if (i == args.size() || (args[i] == ',' && !in_quotes)) {
      out.push_back(strip(args.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string label_of(std::string_view tok) {
  if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    return std::string(tok.substr(1, tok.size() - 2));
  }
  return std::string(tok);
}

}  // namespace

AnswerSet parse_answer_set(std::string_view text) {
  AnswerSet out;
  std::set<int> mapped_cad, mapped_net;
  std::set<int> absent_ids, excess_ids;

  AtomScanner scanner{text};
  std::string_view name, args;
  while (scanner.next(name, args)) {
    if (name == "mapped") {
      const auto a = split_args(args);
      if (a.size() != 2) throw std::runtime_error("malformed atom: mapped/2 expected");
      const int c = to_int(a[0], "cad id");
      const int n = to_int(a[1], "net id");
      if (!mapped_cad.insert(c).second) {
        throw std::runtime_error("inconsistent answer set: cad " + std::to_string(c) +
                                 " mapped twice");
      }
      if (!mapped_net.insert(n).second) {
        throw std::runtime_error("inconsistent answer set: net " + std::to_string(n) +
                                 " mapped twice");
      }
      out.mapping.pairs.emplace_back(c, n);
    } else if (name == "absent" || name == "excess") {
      const auto a = split_args(args);
      if (a.size() != 2) throw std::runtime_error("malformed atom: " + std::string(name) +
                                                  "/2 expected");
      const int id = to_int(a[1], "id");
      if (name == "absent") {
        out.absent.emplace_back(label_of(a[0]), id);
        absent_ids.insert(id);
      } else {
        out.excess.emplace_back(label_of(a[0]), id);
        excess_ids.insert(id);
      }
    }
  }

  for (const int id : absent_ids) {
    if (mapped_cad.count(id)) {
      throw std::runtime_error("inconsistent answer set: cad " + std::to_string(id) +
                               " both mapped and absent");
    }
  }
  for (const int id : excess_ids) {
    if (mapped_net.count(id)) {
      throw std::runtime_error("inconsistent answer set: net " + std::to_string(id) +
                               " both mapped and excess");
    }
  }

  std::sort(out.mapping.pairs.begin(), out.mapping.pairs.end());
  std::sort(out.absent.begin(), out.absent.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  std::sort(out.excess.begin(), out.excess.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });

  // optional cost line: either `<n>@<level>` tokens or `Optimization: U V D`
  CostVector cv;
  bool any_level = false;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = strip(text.substr(line_start, line_end - line_start));
    line_start = line_end + 1;

    if (line.starts_with("Optimization:")) {
      std::istringstream is{std::string(line.substr(13))};
      std::vector<std::int64_t> values;
      std::int64_t v = 0;
      while (is >> v) values.push_back(v);
      if (values.size() == 3) {
        out.cost = CostVector{values[0], values[1], values[2]};
        return out;
      }
      continue;
    }
    std::size_t at = line.find('@');
    std::size_t search_from = 0;
    while (at != std::string_view::npos) {
      std::size_t ns = at;
      while (ns > search_from &&
             std::isdigit(static_cast<unsigned char>(line[ns - 1]))) {
        --ns;
      }
      std::size_t le = at + 1;
      while (le < line.size() && std::isdigit(static_cast<unsigned char>(line[le]))) ++le;
      if (ns < at && le > at + 1) {
        std::int64_t n = 0;
        int level = 0;
        std::from_chars(line.data() + ns, line.data() + at, n);
        std::from_chars(line.data() + at + 1, line.data() + le, level);
        if (level == 3) cv.unmapped = n, any_level = true;
        if (level == 2) cv.violations = n, any_level = true;
        if (level == 1) cv.displacement = n, any_level = true;
      }
      search_from = at + 1;
      at = line.find('@', le);
    }
  }
  if (any_level) out.cost = cv;
  return out;
}

}  // namespace panelcheck
