#include "cicat/separoid.hpp"

#include <algorithm>
#include <sstream>

namespace cicat {

JoinSemilattice::JoinSemilattice(std::vector<std::string> elements, Table join)
    : elements_(std::move(elements)), join_(std::move(join)) {
  const std::size_t n = elements_.size();
  if (join_.size() != n)
    throw Error(Errc::invalid_lattice, "join table needs one row per element");
  for (const auto& row : join_) {
    if (row.size() != n) throw Error(Errc::invalid_lattice, "join table rows must be complete");
    for (auto v : row)
      if (v >= n) throw Error(Errc::invalid_lattice, "join table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (join_[a][a] != a)
      throw Error(Errc::invalid_lattice, "join is not idempotent at " + elements_[a]);
    for (std::size_t b = 0; b < n; ++b) {
      if (join_[a][b] != join_[b][a])
        throw Error(Errc::invalid_lattice,
                    "join is not commutative at " + elements_[a] + ", " + elements_[b]);
      for (std::size_t c = 0; c < n; ++c)
        if (join_[join_[a][b]][c] != join_[a][join_[b][c]])
          throw Error(Errc::invalid_lattice, "join is not associative at " + elements_[a] +
                                                 ", " + elements_[b] + ", " + elements_[c]);
    }
  }
}

JoinSemilattice JoinSemilattice::chain(std::size_t n) {
  std::vector<std::string> names;
  Table join(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) join[a][b] = std::max(a, b);
  }
  return JoinSemilattice(std::move(names), std::move(join));
}

JoinSemilattice JoinSemilattice::subset_lattice(const Universe& u) {
  if (u.size() > 6) throw Error(Errc::universe_too_large, "subset lattice limited to 6 variables");
  const std::size_t n = std::size_t{1} << u.size();
  std::vector<std::string> names;
  Table join(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    names.push_back(u.format(static_cast<Mask>(a), ","));
    for (std::size_t b = 0; b < n; ++b) join[a][b] = a | b;
  }
  return JoinSemilattice(std::move(names), std::move(join));
}

std::size_t JoinSemilattice::index_of(std::string_view name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end())
    throw Error(Errc::unknown_element, "unknown lattice element '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - elements_.begin());
}

std::string_view axiom_name(SeparoidAxiom a) noexcept {
  static constexpr std::string_view names[] = {"P1", "P2", "P3", "P4", "P5", "P6"};
  return names[static_cast<int>(a)];
}

Separoid::Separoid(JoinSemilattice lattice, std::set<SepTriple> ternary,
                   std::optional<Table> meet)
    : lattice_(std::move(lattice)), ternary_(std::move(ternary)), meet_(std::move(meet)) {
  const std::size_t n = lattice_.size();
  for (const auto& t : ternary_)
    if (t.x >= n || t.y >= n || t.z >= n)
      throw Error(Errc::unknown_element, "separoid triple references an unknown element");
  if (!meet_) return;
  const auto& m = *meet_;
  if (m.size() != n) throw Error(Errc::invalid_lattice, "meet table needs one row per element");
  for (std::size_t a = 0; a < n; ++a) {
    if (m[a].size() != n) throw Error(Errc::invalid_lattice, "meet table rows must be complete");
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t g = m[a][b];
      if (g >= n || !lattice_.leq(g, a) || !lattice_.leq(g, b))
        throw Error(Errc::invalid_lattice, "meet of " + lattice_.elements()[a] + ", " +
                                               lattice_.elements()[b] + " is not a lower bound");
      for (std::size_t c = 0; c < n; ++c)
        if (lattice_.leq(c, a) && lattice_.leq(c, b) && !lattice_.leq(c, g))
          throw Error(Errc::invalid_lattice, "meet of " + lattice_.elements()[a] + ", " +
                                                 lattice_.elements()[b] +
                                                 " is not the greatest lower bound");
    }
  }
}

void for_each_separoid_instance(const Separoid& s, const SepTriple& p,
                                const std::function<void(const SeparoidInstance&)>& emit) {
  const auto& l = s.lattice();
  const std::size_t n = l.size();
  const auto [x, z, y] = p;
  // P2: x _|_ y | z  =>  y _|_ x | z
  emit({SeparoidAxiom::P2, {p}, {y, z, x}});
  // P3: w <= y  =>  x _|_ w | z
  for (std::size_t w = 0; w < n; ++w)
    if (l.leq(w, y)) emit({SeparoidAxiom::P3, {p}, {x, z, w}});
  // P4: w <= y  =>  x _|_ y | z v w
  for (std::size_t w = 0; w < n; ++w)
    if (l.leq(w, y)) emit({SeparoidAxiom::P4, {p}, {x, l.join(z, w), y}});
  // P5: x _|_ w | y v z  =>  x _|_ y v w | z
  for (std::size_t w = 0; w < n; ++w) {
    SepTriple second{x, l.join(y, z), w};
    if (s.contains(second)) emit({SeparoidAxiom::P5, {p, second}, {x, z, l.join(y, w)}});
  }
  // P6: z <= y, w <= y, x _|_ y | w  =>  x _|_ y | z ^ w
  if (s.strong() && l.leq(z, y)) {
    for (std::size_t w = 0; w < n; ++w) {
      if (!l.leq(w, y)) continue;
      SepTriple second{x, w, y};
      if (s.contains(second)) emit({SeparoidAxiom::P6, {p, second}, {x, s.meet(z, w), y}});
    }
  }
}

Separoid separoid_close(const Separoid& s) {
  const std::size_t n = s.lattice().size();
  if (n > kMaxSeparoidClosure)
    throw Error(Errc::lattice_too_large,
                "separoid closure supports at most 12 elements, got " + std::to_string(n));
  std::set<SepTriple> rel = s.ternary();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) rel.insert({x, x, y});  // P1
  for (;;) {
    // Each round reads a frozen copy so the result does not depend on
    // iteration order within the round.
    Separoid snapshot(s.lattice(), rel, s.meet_table());
    std::set<SepTriple> added;
    for (const auto& t : snapshot.ternary())
      for_each_separoid_instance(snapshot, t, [&](const SeparoidInstance& inst) {
        if (!snapshot.contains(inst.conclusion)) added.insert(inst.conclusion);
      });
    if (added.empty()) break;
    rel.insert(added.begin(), added.end());
  }
  return Separoid(s.lattice(), std::move(rel), s.meet_table());
}

std::vector<SeparoidViolation> check_separoid(const Separoid& s) {
  std::vector<SeparoidViolation> out;
  const std::size_t n = s.lattice().size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!s.contains({x, x, y})) out.push_back({SeparoidAxiom::P1, {}, {x, x, y}});
  std::set<std::pair<SeparoidAxiom, SepTriple>> seen;
  std::vector<SeparoidViolation> rest;
  for (const auto& t : s.ternary())
    for_each_separoid_instance(s, t, [&](const SeparoidInstance& inst) {
      if (s.contains(inst.conclusion)) return;
      rest.push_back({inst.axiom, inst.premises, inst.conclusion});
    });
  std::stable_sort(rest.begin(), rest.end(),
                   [](const auto& a, const auto& b) { return a.axiom < b.axiom; });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace {

std::string triple_str(const SepTriple& t, const JoinSemilattice& l) {
  const auto& e = l.elements();
  return e[t.x] + " | " + e[t.z] + " | " + e[t.y];
}

}  // namespace

std::string format_violation(const SeparoidViolation& v, const JoinSemilattice& l) {
  std::string out(axiom_name(v.axiom));
  out += ": ";
  for (std::size_t i = 0; i < v.premises.size(); ++i) {
    if (i) out += " and ";
    out += "(" + triple_str(v.premises[i], l) + ")";
  }
  if (!v.premises.empty()) out += " ";
  out += "requires (" + triple_str(v.conclusion, l) + ")";
  return out;
}

Separoid graphoid_to_separoid(const CIRelation& r) {
  const Universe& u = r.universe;
  if (u.size() > 4)
    throw Error(Errc::universe_too_large, "graphoid lift supports at most 4 variables");
  JoinSemilattice lattice = JoinSemilattice::subset_lattice(u);
  const std::size_t n = lattice.size();
  Table meet(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) meet[a][b] = a & b;
  std::set<SepTriple> ternary;
  for (const auto& t : r.statements) {
    ternary.insert({t.x, t.z, t.y});
    ternary.insert({t.y, t.z, t.x});
  }
  return Separoid(std::move(lattice), std::move(ternary), std::move(meet));
}

// ---------------------------------------------------------------- text

std::string format_separoid(const Separoid& s) {
  const auto& l = s.lattice();
  const auto& e = l.elements();
  std::ostringstream out;
  out << "elements:";
  for (const auto& name : e) out << ' ' << name;
  out << "\njoin:\n";
  auto rows = [&](const Table& t) {
    for (const auto& row : t) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << e[row[i]];
      out << '\n';
    }
  };
  rows(l.join_table());
  if (s.strong()) {
    out << "meet:\n";
    rows(*s.meet_table());
  }
  for (const auto& t : s.ternary()) out << "CI " << triple_str(t, l) << '\n';
  return out.str();
}

Separoid parse_separoid(std::string_view text, std::size_t first_line) {
  std::vector<std::string> elements;
  Table join, meet;
  bool have_meet = false;
  std::vector<std::pair<std::size_t, std::string>> ci_lines;
  enum class Mode { none, join, meet } mode = Mode::none;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = first_line - 1;
  auto err = [&](const std::string& msg, std::size_t col = 1) {
    return ParseError(Errc::syntax_error, lineno, col, msg);
  };
  auto lookup = [&](const std::string& name) -> std::size_t {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end())
      throw ParseError(Errc::undeclared_variable, lineno, 1,
                       "unknown lattice element '" + name + "'");
    return static_cast<std::size_t>(it - elements.begin());
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "elements:") {
      std::string w;
      while (words >> w) elements.push_back(w);
      mode = Mode::none;
    } else if (first == "join:") {
      mode = Mode::join;
    } else if (first == "meet:") {
      mode = Mode::meet;
      have_meet = true;
    } else if (first == "CI") {
      mode = Mode::none;
      ci_lines.emplace_back(lineno, line.substr(line.find("CI") + 2));
    } else if (mode != Mode::none) {
      if (elements.empty()) throw err("table rows before 'elements:'");
      std::vector<std::size_t> row{lookup(first)};
      std::string w;
      while (words >> w) row.push_back(lookup(w));
      if (row.size() != elements.size())
        throw err("table row needs " + std::to_string(elements.size()) + " entries");
      (mode == Mode::join ? join : meet).push_back(std::move(row));
    } else {
      throw err("unexpected '" + first + "' in separoid block");
    }
  }

  std::set<SepTriple> ternary;
  for (auto& [ln, body] : ci_lines) {
    lineno = ln;
    std::vector<std::string> parts(1);
    for (char c : body) {
      if (c == '|') parts.emplace_back();
      else parts.back() += c;
    }
    if (parts.size() != 3) throw err("expected 'CI x | z | y'");
    std::size_t idx[3];
    for (int i = 0; i < 3; ++i) {
      std::istringstream w(parts[i]);
      std::string name, extra;
      if (!(w >> name) || (w >> extra)) throw err("each CI component is one lattice element");
      idx[i] = lookup(name);
    }
    ternary.insert({idx[0], idx[1], idx[2]});
  }
  try {
    JoinSemilattice lattice(elements, join);
    return Separoid(std::move(lattice), std::move(ternary),
                    have_meet ? std::optional<Table>(meet) : std::nullopt);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.code(), first_line, 1, e.what());
  }
}

}  // namespace cicat
