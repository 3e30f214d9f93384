#include "panelcheck/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <vector>

namespace panelcheck {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string(what) + ": expected an integer, got '" +
                               std::string(tok) + "'");
  }
  return value;
}

std::int64_t parse_int64(std::string_view tok, int line, const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, std::string(what) + ": expected an integer, got '" +
                               std::string(tok) + "'");
  }
  return value;
}

double parse_score(std::string_view tok, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "score: expected a number, got '" + std::string(tok) + "'");
  }
  if (value < 0.0 || value > 1.0 || !std::isfinite(value)) {
    throw ParseError(line, "score out of [0,1]");
  }
  return value;
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line_no = 0;

  bool next(std::string_view& line) {
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      line = trim(text.substr(pos, end - pos));
      pos = end + 1;
      ++line_no;
      if (!line.empty()) return true;
    }
    return false;
  }
};

void require_fields(const std::vector<std::string_view>& f, std::size_t lo,
                    std::size_t hi, int line, const char* what) {
  if (f.size() < lo || f.size() > hi) {
    throw ParseError(line, std::string(what) + ": wrong number of fields");
  }
}

void check_layout_or_throw(const Layout& layout, int line) {
  const auto violations = validate_layout(layout);
  if (!violations.empty()) throw ParseError(line, violations.front());
}

Membership parse_membership_word(std::string_view w, int line) {
  if (w == "cad") return Membership::cad;
  if (w == "net") return Membership::net;
  throw ParseError(line, "unknown membership '" + std::string(w) + "'");
}

}  // namespace

Layout parse_layout(std::string_view text) {
  Layout layout;
  bool have_canvas = false, have_membership = false;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(line)) {
    if (line.front() == '#') continue;
    const auto fields = split_ws(line);
    if (fields[0] == "canvas") {
      require_fields(fields, 3, 3, reader.line_no, "canvas");
      layout.width = parse_int(fields[1], reader.line_no, "canvas width");
      layout.height = parse_int(fields[2], reader.line_no, "canvas height");
      if (layout.width < 1 || layout.height < 1) {
        throw ParseError(reader.line_no, "canvas dimensions must be positive");
      }
      have_canvas = true;
    } else if (fields[0] == "membership") {
      require_fields(fields, 2, 2, reader.line_no, "membership");
      layout.membership = parse_membership_word(fields[1], reader.line_no);
      have_membership = true;
    } else if (fields[0] == "component") {
      if (!have_canvas || !have_membership) {
        throw ParseError(reader.line_no, "component before canvas/membership header");
      }
      require_fields(fields, 7, 8, reader.line_no, "component");
      Component c;
      c.id = parse_int(fields[1], reader.line_no, "id");
      c.label = std::string(fields[2]);
      c.box.x1 = parse_int(fields[3], reader.line_no, "x1");
      c.box.y1 = parse_int(fields[4], reader.line_no, "y1");
      c.box.x2 = parse_int(fields[5], reader.line_no, "x2");
      c.box.y2 = parse_int(fields[6], reader.line_no, "y2");
      c.membership = layout.membership;
      if (fields.size() == 8) c.score = parse_score(fields[7], reader.line_no);
      if (!is_valid_label(c.label)) {
        throw ParseError(reader.line_no, "invalid label '" + c.label + "'");
      }
      if (!box_valid(c.box)) throw ParseError(reader.line_no, "degenerate box");
      layout.components.push_back(std::move(c));
    } else {
      throw ParseError(reader.line_no, "unknown directive '" + std::string(fields[0]) + "'");
    }
  }
  if (!have_canvas) throw ParseError(reader.line_no, "missing canvas header");
  if (!have_membership) throw ParseError(reader.line_no, "missing membership header");
  check_layout_or_throw(layout, reader.line_no);
  return layout;
}

Layout parse_detections(std::string_view text, double score_threshold) {
  if (score_threshold < 0.0 || score_threshold > 1.0) {
    throw std::invalid_argument("score threshold must be in [0,1]");
  }
  Layout layout;
  layout.membership = Membership::net;
  bool have_canvas = false;
  int next_id = 1;
  LineReader reader{text};
  std::string_view line;
  while (reader.next(line)) {
    if (line.front() == '#') continue;
    const auto fields = split_ws(line);
    if (fields[0] == "canvas") {
      require_fields(fields, 3, 3, reader.line_no, "canvas");
      layout.width = parse_int(fields[1], reader.line_no, "canvas width");
      layout.height = parse_int(fields[2], reader.line_no, "canvas height");
      if (layout.width < 1 || layout.height < 1) {
        throw ParseError(reader.line_no, "canvas dimensions must be positive");
      }
      have_canvas = true;
      continue;
    }
    if (fields[0] == "membership") {
      require_fields(fields, 2, 2, reader.line_no, "membership");
      if (parse_membership_word(fields[1], reader.line_no) != Membership::net) {
        throw ParseError(reader.line_no, "detection files are net membership");
      }
      continue;
    }
    if (!have_canvas) throw ParseError(reader.line_no, "missing canvas header");
    Component c;
    c.membership = Membership::net;
    if (fields[0] == "detection") {
      require_fields(fields, 7, 7, reader.line_no, "detection");
      c.id = next_id;
      c.label = std::string(fields[1]);
      c.box.x1 = parse_int(fields[2], reader.line_no, "x1");
      c.box.y1 = parse_int(fields[3], reader.line_no, "y1");
      c.box.x2 = parse_int(fields[4], reader.line_no, "x2");
      c.box.y2 = parse_int(fields[5], reader.line_no, "y2");
      c.score = parse_score(fields[6], reader.line_no);
    } else if (fields[0] == "component") {
      require_fields(fields, 7, 8, reader.line_no, "component");
      c.id = parse_int(fields[1], reader.line_no, "id");
      c.label = std::string(fields[2]);
      c.box.x1 = parse_int(fields[3], reader.line_no, "x1");
      c.box.y1 = parse_int(fields[4], reader.line_no, "y1");
      c.box.x2 = parse_int(fields[5], reader.line_no, "x2");
      c.box.y2 = parse_int(fields[6], reader.line_no, "y2");
      if (fields.size() == 8) c.score = parse_score(fields[7], reader.line_no);
    } else {
      throw ParseError(reader.line_no, "unknown directive '" + std::string(fields[0]) + "'");
    }
    ++next_id;
    if (!is_valid_label(c.label)) {
      throw ParseError(reader.line_no, "invalid label '" + c.label + "'");
    }
    if (!box_valid(c.box)) throw ParseError(reader.line_no, "degenerate box");
    if (!c.score || *c.score >= score_threshold) layout.components.push_back(std::move(c));
  }
  if (!have_canvas) throw ParseError(reader.line_no, "missing canvas header");
  check_layout_or_throw(layout, reader.line_no);
  return layout;
}

namespace {

// Cursor over one fact's argument list, e.g. `object("relay",1,...,"cad").`
struct FactArgs {
  std::string_view args;  // inside the parentheses
  std::size_t pos = 0;
  int line = 0;

  bool done() const { return pos >= args.size(); }

  std::string_view next(const char* what) {
    if (done()) throw ParseError(line, std::string(what) + ": missing argument (arity mismatch)");
    std::size_t end = args.find(',', pos);
    if (end == std::string_view::npos) end = args.size();
    auto tok = trim(args.substr(pos, end - pos));
    pos = end + 1;
    if (tok.empty()) throw ParseError(line, std::string(what) + ": empty argument");
    return tok;
  }

  void finish(const char* what) {
    if (!done()) throw ParseError(line, std::string(what) + ": too many arguments (arity mismatch)");
  }
};

std::string_view unquote(std::string_view tok, int line, const char* what) {
  if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"') {
    throw ParseError(line, std::string(what) + ": expected a quoted string, got '" +
                               std::string(tok) + "'");
  }
  return tok.substr(1, tok.size() - 2);
}

Membership parse_membership_term(std::string_view tok, int line) {
  const auto word = unquote(tok, line, "membership");
  if (word == "cad") return Membership::cad;
  if (word == "net") return Membership::net;
  throw ParseError(line, "unknown membership '" + std::string(word) + "'");
}

int parse_id_or_none(std::string_view tok, int line) {
  if (tok == "none") return kNoneId;
  const int id = parse_int(tok, line, "id");
  if (id < 0) throw ParseError(line, "negative id");
  return id;
}

}  // namespace

FactFile parse_facts(std::string_view text) {
  FactFile out;
  out.instance.cad.membership = Membership::cad;
  out.instance.net.membership = Membership::net;

  LineReader reader{text};
  std::string_view line;
  while (reader.next(line)) {
    if (line.front() == '%') continue;
    if (line.back() != '.') throw ParseError(reader.line_no, "fact must end with '.'");
    std::string_view fact = line.substr(0, line.size() - 1);
    const std::size_t open = fact.find('(');
    if (open == std::string_view::npos || fact.back() != ')') {
      throw ParseError(reader.line_no, "syntax error at offset " +
                                           std::to_string(open == std::string_view::npos
                                                              ? fact.size()
                                                              : open));
    }
    const std::string_view head = trim(fact.substr(0, open));
    FactArgs args{fact.substr(open + 1, fact.size() - open - 2), 0, reader.line_no};

    if (head == "object") {
      Component c;
      const auto label = unquote(args.next("label"), reader.line_no, "label");
      c.label = std::string(label);
      if (!is_valid_label(c.label)) {
        throw ParseError(reader.line_no, "invalid label '" + c.label + "'");
      }
      c.id = parse_int(args.next("id"), reader.line_no, "id");
      if (c.id < 0) throw ParseError(reader.line_no, "negative id");
      c.box.x1 = parse_int(args.next("x1"), reader.line_no, "x1");
      c.box.y1 = parse_int(args.next("y1"), reader.line_no, "y1");
      c.box.x2 = parse_int(args.next("x2"), reader.line_no, "x2");
      c.box.y2 = parse_int(args.next("y2"), reader.line_no, "y2");
      c.membership = parse_membership_term(args.next("membership"), reader.line_no);
      args.finish("object");
      if (!box_valid(c.box)) throw ParseError(reader.line_no, "degenerate box");
      (c.membership == Membership::cad ? out.instance.cad : out.instance.net)
          .components.push_back(std::move(c));
    } else if (head == "between") {
      Between b;
      b.id = parse_int(args.next("id"), reader.line_no, "id");
      b.start = parse_id_or_none(args.next("start"), reader.line_no);
      b.end = parse_id_or_none(args.next("end"), reader.line_no);
      const auto dir = unquote(args.next("dir"), reader.line_no, "dir");
      if (dir == "h") b.dir = Direction::h;
      else if (dir == "v") b.dir = Direction::v;
      else throw ParseError(reader.line_no, "unknown direction '" + std::string(dir) + "'");
      b.mem = parse_membership_term(args.next("membership"), reader.line_no);
      args.finish("between");
      if (b.start == kNoneId && b.end == kNoneId) {
        throw ParseError(reader.line_no, "between fact with no neighbors");
      }
      if (b.start == b.id || b.end == b.id) {
        throw ParseError(reader.line_no, "between fact references itself");
      }
      out.between.push_back(b);
    } else if (head == "manhattan") {
      ManhattanFact m;
      m.id1 = parse_int(args.next("id1"), reader.line_no, "id1");
      m.id2 = parse_int(args.next("id2"), reader.line_no, "id2");
      m.dist = parse_int64(args.next("dist"), reader.line_no, "dist");
      if (m.dist < 0) throw ParseError(reader.line_no, "negative distance");
      m.mem1 = parse_membership_term(args.next("mem1"), reader.line_no);
      m.mem2 = parse_membership_term(args.next("mem2"), reader.line_no);
      args.finish("manhattan");
      out.manhattan.push_back(m);
    } else {
      throw ParseError(reader.line_no, "unknown fact '" + std::string(head) + "'");
    }
  }

  // derive canvases from coordinate bounds (facts carry none)
  int max_x = 1, max_y = 1;
  for (const Layout* l : {&out.instance.cad, &out.instance.net}) {
    for (const Component& c : l->components) {
      max_x = std::max(max_x, c.box.x2);
      max_y = std::max(max_y, c.box.y2);
    }
  }
  out.instance.cad.width = out.instance.net.width = max_x;
  out.instance.cad.height = out.instance.net.height = max_y;

  for (const Layout* l : {&out.instance.cad, &out.instance.net}) {
    const auto violations = validate_layout(*l);
    if (!violations.empty()) throw ParseError(reader.line_no, violations.front());
  }

  // relation facts must reference existing components of their membership
  std::set<std::pair<int, int>> known;  // (membership, id)
  for (const Layout* l : {&out.instance.cad, &out.instance.net}) {
    for (const Component& c : l->components) {
      known.insert({static_cast<int>(c.membership), c.id});
    }
  }
  auto require_known = [&](Membership mem, int id) {
    if (id == kNoneId) return;
    if (!known.count({static_cast<int>(mem), id})) {
      throw ParseError(reader.line_no, "relation fact references unknown " +
                                           std::string(to_string(mem)) + " id " +
                                           std::to_string(id));
    }
  };
  for (const Between& b : out.between) {
    require_known(b.mem, b.id);
    require_known(b.mem, b.start);
    require_known(b.mem, b.end);
  }
  for (const ManhattanFact& m : out.manhattan) {
    require_known(m.mem1, m.id1);
    require_known(m.mem2, m.id2);
  }
  return out;
}

std::string write_layout(const Layout& layout) {
  std::ostringstream os;
  os << "canvas " << layout.width << ' ' << layout.height << '\n';
  os << "membership " << to_string(layout.membership) << '\n';
  for (const Component& c : layout.components) {
    os << "component " << c.id << ' ' << c.label << ' ' << c.box.x1 << ' '
       << c.box.y1 << ' ' << c.box.x2 << ' ' << c.box.y2;
    if (c.score) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", *c.score);
      os << ' ' << buf;
    }
    os << '\n';
  }
  return os.str();
}

FileKind detect_file_kind(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  bool saw_canvas = false;
  while (reader.next(line)) {
    if (line.front() == '#') continue;
    if (line.front() == '%' || line.starts_with("object(") ||
        line.starts_with("between(") || line.starts_with("manhattan(")) {
      return FileKind::facts;
    }
    if (line.starts_with("membership")) return FileKind::layout;
    if (line.starts_with("canvas")) {
      saw_canvas = true;
      continue;
    }
    if (line.starts_with("detection")) return FileKind::detections;
    if (line.starts_with("component")) continue;  // keep scanning for membership
    break;
  }
  return saw_canvas ? FileKind::detections : FileKind::layout;
}

}  // namespace panelcheck
