#include "cicat/ci.hpp"

#include <algorithm>
#include <sstream>

#include "closure_engine.hpp"

namespace cicat {

void validate(const CITriple& t, const Universe& u) {
  if (((t.x | t.y | t.z) & ~u.full()) != 0)
    throw Error(Errc::malformed_triple, "statement mentions variables outside the universe");
  if (!t.valid())
    throw Error(Errc::malformed_triple,
                "statement components must be pairwise disjoint: " + format_triple(t, u));
}

std::string format_triple(const CITriple& t, const Universe& u) {
  return u.format(t.x) + " | " + u.format(t.z) + " | " + u.format(t.y);
}

namespace {

Mask parse_side(std::string_view text, const Universe& u) {
  std::istringstream in{std::string(text)};
  std::string tok;
  Mask m = 0;
  bool empty_marker = false;
  int count = 0;
  while (in >> tok) {
    ++count;
    if (tok == "{}") {
      empty_marker = true;
      continue;
    }
    if (!u.contains(tok))
      throw Error(Errc::undeclared_variable, "undeclared variable '" + tok + "'");
    m |= Mask{1} << u.index_of(tok);
  }
  if (count == 0)
    throw Error(Errc::syntax_error, "empty statement component (write {} for the empty set)");
  if (empty_marker && count > 1)
    throw Error(Errc::syntax_error, "{} cannot be mixed with variable names");
  return m;
}

}  // namespace

CITriple parse_triple(std::string_view text, const Universe& u) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '|') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3)
    throw Error(Errc::syntax_error, "expected a statement of the form 'X | Z | Y'");
  CITriple t{parse_side(parts[0], u), parse_side(parts[1], u), parse_side(parts[2], u)};
  validate(t, u);
  return t;
}

std::string_view rule_name(Rule r) noexcept {
  switch (r) {
    case Rule::symmetry: return "symmetry";
    case Rule::decomposition: return "decomposition";
    case Rule::weak_union: return "weak_union";
    case Rule::contraction: return "contraction";
    case Rule::intersection: return "intersection";
    case Rule::weak_transitivity: return "weak_transitivity";
    case Rule::chordality: return "chordality";
    case Rule::trivial: return "trivial";
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) noexcept {
  for (Rule r : kInferenceRules)
    if (rule_name(r) == name) return r;
  if (name == "trivial") return Rule::trivial;
  return std::nullopt;
}

RuleSet RuleSet::parse(std::string_view text) {
  if (text == "semigraphoid") return semigraphoid();
  if (text == "graphoid") return graphoid();
  RuleSet s;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      auto name = text.substr(start, i - start);
      start = i + 1;
      if (name == "semigraphoid" || name == "graphoid") {
        for (Rule r : (name == "graphoid" ? graphoid() : semigraphoid()).rules()) s = s.with(r);
        continue;
      }
      auto r = rule_from_name(name);
      if (!r || *r == Rule::trivial)
        throw Error(Errc::syntax_error, "unknown rule '" + std::string(name) + "'");
      s = s.with(*r);
    }
  }
  return s;
}

std::vector<Rule> RuleSet::rules() const {
  std::vector<Rule> out;
  for (Rule r : kInferenceRules)
    if (has(r)) out.push_back(r);
  return out;
}

std::string RuleSet::str() const {
  if (*this == semigraphoid()) return "semigraphoid";
  if (*this == graphoid()) return "graphoid";
  std::string out;
  for (Rule r : rules()) {
    if (!out.empty()) out += ',';
    out += rule_name(r);
  }
  return out;
}

std::vector<CITriple> CIRelation::nontrivial() const {
  std::vector<CITriple> out;
  for (const auto& t : statements)
    if (!t.trivial()) out.push_back(t);
  return out;
}

// ------------------------------------------------------------- instances

namespace {

// Non-empty submasks of m in increasing order.
template <class F>
void for_each_nonempty_submask(Mask m, F&& f) {
  std::vector<Mask> subs;
  for (Mask s = m; s; s = (s - 1) & m) subs.push_back(s);
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) f(*it);
}

bool singleton(Mask m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

void for_each_instance(Rule rule, const CITriple& p, std::size_t universe_size,
                       const std::function<bool(const CITriple&)>& present,
                       const std::function<void(const RuleInstance&)>& emit) {
  const Mask full = universe_size == 0 ? 0 : (Mask{1} << universe_size) - 1;
  const Mask free = full & ~(p.x | p.y | p.z);
  switch (rule) {
    case Rule::symmetry:
      emit({rule, {p}, p.swapped()});
      break;
    case Rule::decomposition:
      // I(X, Z, Y u W) => I(X, Z, Y): every proper part of the right side.
      emit({rule, {p}, {p.x, p.z, 0}});
      for_each_nonempty_submask(p.y, [&](Mask s) {
        if (s != p.y) emit({rule, {p}, {p.x, p.z, s}});
      });
      break;
    case Rule::weak_union:
      // I(X, Z, Y u W) => I(X, Z u W, Y)
      for_each_nonempty_submask(p.y, [&](Mask w) { emit({rule, {p}, {p.x, p.z | w, p.y & ~w}}); });
      break;
    case Rule::contraction:
      // I(X, Z, Y) & I(X, Z u Y, W) => I(X, Z, Y u W)
      for_each_nonempty_submask(free, [&](Mask w) {
        CITriple second{p.x, p.z | p.y, w};
        if (present(second)) emit({rule, {p, second}, {p.x, p.z, p.y | w}});
      });
      break;
    case Rule::intersection:
      // I(X, Z u W, Y) & I(X, Z u Y, W) => I(X, Z, Y u W)
      for_each_nonempty_submask(p.z, [&](Mask w) {
        const Mask z = p.z & ~w;
        CITriple second{p.x, z | p.y, w};
        if (present(second)) emit({rule, {p, second}, {p.x, z, p.y | w}});
      });
      break;
    case Rule::weak_transitivity:
      // I(X, Z, Y) & I(X, Z u g, Y) => I(X, Z, g) or I(g, Z, Y); only the
      // disjuncts that already hold are produced.
      if (p.x == 0 || p.y == 0) break;
      for (std::size_t i = 0; i < universe_size; ++i) {
        const Mask g = Mask{1} << i;
        if (!(free & g)) continue;
        CITriple second{p.x, p.z | g, p.y};
        if (!present(second)) continue;
        CITriple left{p.x, p.z, g}, right{g, p.z, p.y};
        if (present(left)) emit({rule, {p, second}, left});
        if (present(right)) emit({rule, {p, second}, right});
      }
      break;
    case Rule::chordality:
      // Literal reading: I(a, g u d, b) & I(g, g, b) => I(a, d, b) with
      // singletons a, b, g, d.
      if (!singleton(p.x) || !singleton(p.y) || popcount(p.z) != 2) break;
      for (std::size_t i = 0; i < universe_size; ++i) {
        const Mask g = Mask{1} << i;
        if (!(p.z & g)) continue;
        CITriple second{g, g, p.y};
        if (present(second)) emit({rule, {p, second}, {p.x, p.z & ~g, p.y}});
      }
      break;
    case Rule::trivial:
      break;
  }
}

bool is_instance(const RuleInstance& inst) {
  const auto& ps = inst.premises;
  const auto& c = inst.conclusion;
  if (!c.valid()) return false;
  for (const auto& p : ps)
    if (!p.valid()) return false;
  switch (inst.rule) {
    case Rule::trivial:
      return ps.empty() && c.trivial();
    case Rule::symmetry:
      return ps.size() == 1 && c == ps[0].swapped();
    case Rule::decomposition:
      return ps.size() == 1 && c.x == ps[0].x && c.z == ps[0].z && is_subset(c.y, ps[0].y);
    case Rule::weak_union: {
      if (ps.size() != 1) return false;
      const auto& p = ps[0];
      const Mask w = p.y & ~c.y;
      return c.x == p.x && is_subset(c.y, p.y) && c.z == (p.z | w);
    }
    case Rule::contraction: {
      if (ps.size() != 2) return false;
      const auto &a = ps[0], &b = ps[1];
      return b.x == a.x && b.z == (a.z | a.y) && c.x == a.x && c.z == a.z &&
             c.y == (a.y | b.y);
    }
    case Rule::intersection: {
      if (ps.size() != 2) return false;
      const auto &a = ps[0], &b = ps[1];
      const Mask z = c.z, y = a.y, w = b.y;
      return a.x == c.x && b.x == c.x && (y & w) == 0 && (z & (y | w)) == 0 &&
             a.z == (z | w) && b.z == (z | y) && c.y == (y | w);
    }
    case Rule::weak_transitivity: {
      if (ps.size() != 2) return false;
      const auto &a = ps[0], &b = ps[1];
      const Mask g = b.z & ~a.z;
      if (b.x != a.x || b.y != a.y || !is_subset(a.z, b.z) || popcount(g) != 1) return false;
      if (a.x == 0 || a.y == 0) return false;
      return c == CITriple{a.x, a.z, g} || c == CITriple{g, a.z, a.y};
    }
    case Rule::chordality: {
      if (ps.size() != 2) return false;
      const auto &a = ps[0], &b = ps[1];
      return popcount(a.x) == 1 && popcount(a.y) == 1 && popcount(a.z) == 2 &&
             b.x == b.z && popcount(b.x) == 1 && is_subset(b.x, a.z) && b.y == a.y &&
             c == CITriple{a.x, a.z & ~b.x, a.y};
    }
  }
  return false;
}

// ---------------------------------------------------------------- engine

namespace detail {

ClosureEngine::ClosureEngine(const Universe& u, RuleSet rules, bool record)
    : universe_(u), n_(u.size()), rules_(rules), record_(record) {
  if (n_ > kMaxClosureUniverse)
    throw Error(Errc::universe_too_large,
                "closure supports at most 8 variables, got " + std::to_string(n_));
  state_.assign(std::size_t{1} << (3 * n_), kAbsent);
  // Trivial statements (X, Z, {}) and ({}, Z, Y).
  const Mask full = u.full();
  for (Mask z = 0;; ++z) {
    const Mask rest = full & ~z;
    for (Mask s = rest;; s = (s - 1) & rest) {
      add_known({s, z, 0});
      add_known({0, z, s});
      if (s == 0) break;
    }
    if (z == full) break;
  }
}

void ClosureEngine::add_known(const CITriple& t) {
  auto& st = state_[encode(t)];
  if (st == kKnown) return;
  st = kKnown;
  known_.push_back(t);
}

void ClosureEngine::seed(std::span<const CITriple> inputs) {
  for (const auto& t : inputs) {
    validate(t, universe_);
    add_known(t);
  }
}

void ClosureEngine::run() {
  std::sort(known_.begin(), known_.end());
  auto is_present = [this](const CITriple& t) { return present(t); };
  const auto rules = rules_.rules();
  for (;;) {
    std::vector<CITriple> pending;
    const std::vector<CITriple> snapshot = known_;
    for (Rule r : rules) {
      for (const auto& p : snapshot) {
        for_each_instance(r, p, n_, is_present, [&](const RuleInstance& inst) {
          const CITriple& c = inst.conclusion;
          auto& st = state_[encode(c)];
          if (st != kAbsent) return;
          st = kPending;
          pending.push_back(c);
          if (record_) just_.emplace(encode(c), Justification{r, inst.premises});
        });
      }
    }
    if (pending.empty()) break;
    for (const auto& c : pending) {
      state_[encode(c)] = kKnown;
      known_.push_back(c);
    }
    std::sort(known_.begin(), known_.end());
  }
}

const ClosureEngine::Justification* ClosureEngine::justification(const CITriple& t) const {
  if (!in_range(t)) return nullptr;
  auto it = just_.find(encode(t));
  return it == just_.end() ? nullptr : &it->second;
}

CIRelation ClosureEngine::relation() const {
  CIRelation r{universe_, {}};
  for (const auto& t : known_) r.statements.insert(t.canonical());
  return r;
}

}  // namespace detail

CIRelation close(std::span<const CITriple> inputs, RuleSet rules, const Universe& u) {
  detail::ClosureEngine engine(u, rules, false);
  engine.seed(inputs);
  engine.run();
  return engine.relation();
}

bool entails(std::span<const CITriple> inputs, const CITriple& target, RuleSet rules,
             const Universe& u) {
  validate(target, u);
  return close(inputs, rules, u).contains(target);
}

}  // namespace cicat
