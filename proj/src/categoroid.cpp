#include "cicat/categoroid.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cicat {

std::string_view gen_class_name(GenClass c) noexcept {
  switch (c) {
    case GenClass::A: return "A";
    case GenClass::T: return "T";
    case GenClass::B0: return "B0";
    case GenClass::B1: return "B1";
  }
  return "?";
}

std::string_view arrow_class_name(ArrowClass c) noexcept {
  switch (c) {
    case ArrowClass::identity: return "identity";
    case ArrowClass::A: return "A";
    case ArrowClass::T: return "T";
    case ArrowClass::B0: return "B0";
    case ArrowClass::B1: return "B1";
    case ArrowClass::pair_endo: return "PairEndo";
    case ArrowClass::triple_endo: return "TripleEndo";
  }
  return "?";
}

namespace {

ArrowClass class_by_endpoints(ObjectKind dom, ObjectKind cod) {
  using K = ObjectKind;
  if (dom == K::base) return ArrowClass::A;
  if (dom == K::pair) return cod == K::pair ? ArrowClass::pair_endo : ArrowClass::B0;
  return cod == K::pair ? ArrowClass::B1 : ArrowClass::triple_endo;
}

// Class of g . f from the classes of its factors.
ArrowClass compose_class(ArrowClass g, ArrowClass f, ObjectKind dom, ObjectKind cod) {
  if (g == ArrowClass::identity) return f;
  if (f == ArrowClass::identity) return g;
  if (g == ArrowClass::T && f == ArrowClass::T) return ArrowClass::T;
  return class_by_endpoints(dom, cod);
}

bool well_kinded(const GenArrow& g) {
  using K = ObjectKind;
  switch (g.cls) {
    case GenClass::A: return g.dom.kind == K::base && g.cod.kind == K::base;
    case GenClass::T: return g.dom.kind == K::triple && g.cod.kind == K::triple;
    case GenClass::B0: return g.dom.kind == K::pair && g.cod.kind == K::triple;
    case GenClass::B1: return g.dom.kind == K::triple && g.cod.kind == K::pair;
  }
  return false;
}

// Shortlex: longer paths, then lexicographically larger, rewrite to smaller.
bool shortlex_less(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

// --------------------------------------------------------------- queries

std::size_t Categoroid::object_index(const CgObject& o) const {
  auto it = object_index_.find(o);
  if (it == object_index_.end())
    throw Error(Errc::unknown_element, "object " + format_object(o) + " is not in the categoroid");
  return it->second;
}

ArrowId Categoroid::identity(const CgObject& o) const { return identities_[object_index(o)]; }

ArrowId Categoroid::generator_arrow(std::size_t g) const { return generator_arrows_.at(g); }

const std::vector<ArrowId>& Categoroid::out_arrows(const CgObject& o) const {
  return out_[object_index(o)];
}

const std::vector<ArrowId>& Categoroid::in_arrows(const CgObject& o) const {
  return in_[object_index(o)];
}

std::vector<ArrowId> Categoroid::hom(const CgObject& x, const CgObject& y) const {
  std::vector<ArrowId> out;
  for (ArrowId a : out_arrows(x))
    if (arrows_[a].cod == y) out.push_back(a);
  return out;
}

ArrowClass Categoroid::classify(const CgObject& dom, const CgObject& cod, const Path& p) const {
  if (p.empty()) return ArrowClass::identity;
  const bool all_t = std::all_of(p.begin(), p.end(), [&](std::size_t g) {
    return generators_[g].cls == GenClass::T;
  });
  if (all_t) return ArrowClass::T;
  return class_by_endpoints(dom.kind, cod.kind);
}

Path Categoroid::normalize(Path p) const {
  if (quotient_ == Quotient::thin || relations_.empty()) return p;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& rel : relations_) {
      auto it = std::search(p.begin(), p.end(), rel.lhs.begin(), rel.lhs.end());
      if (it == p.end()) continue;
      const auto pos = it - p.begin();
      p.erase(p.begin() + pos, p.begin() + pos + static_cast<std::ptrdiff_t>(rel.lhs.size()));
      p.insert(p.begin() + pos, rel.rhs.begin(), rel.rhs.end());
      changed = true;
      break;
    }
  }
  return p;
}

Categoroid::Key Categoroid::key_of(const CgObject& dom, const CgObject& cod, const Path& p) const {
  Key k{object_index(dom), object_index(cod), classify(dom, cod, p), {}};
  if (quotient_ == Quotient::free) k.path = p;
  return k;
}

std::optional<ArrowId> Categoroid::find(const CgObject& dom, const Path& p) const {
  CgObject cod = p.empty() ? dom : generators_[p.back()].cod;
  auto it = arrow_index_.find(key_of(dom, cod, p));
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ArrowId Categoroid::compose(ArrowId g, ArrowId f) const {
  const Arrow& af = arrow(f);
  const Arrow& ag = arrow(g);
  if (cod_index_[f] != dom_index_[g])
    throw Error(Errc::not_composable, "cannot compose " + format_arrow(g) + " after " +
                                          format_arrow(f) + ": endpoints do not match");
  if (af.cls == ArrowClass::identity) return g;
  if (ag.cls == ArrowClass::identity) return f;
  const ArrowClass cls = compose_class(ag.cls, af.cls, af.dom.kind, ag.cod.kind);
  if (quotient_ == Quotient::thin) {
    auto it = thin_index_.find(thin_key(dom_index_[f], cod_index_[g], cls));
    if (it != thin_index_.end()) return it->second;
  } else {
    Key k{dom_index_[f], cod_index_[g], cls, {}};
    Path p = af.path;
    p.insert(p.end(), ag.path.begin(), ag.path.end());
    k.path = normalize(std::move(p));
    if (k.path.empty()) return identities_[k.dom];
    k.cls = classify(af.dom, ag.cod, k.path);
    auto it = arrow_index_.find(k);
    if (it != arrow_index_.end()) return it->second;
  }
  throw Error(Errc::non_saturated, "composite of " + format_arrow(g) + " and " +
                                       format_arrow(f) + " was not materialized");
}

ArrowId Categoroid::arrow_of_path(const Path& p, const CgObject& dom) const {
  ArrowId result = identity(dom);
  for (std::size_t g : p) {
    if (g >= generators_.size())
      throw Error(Errc::not_composable, "generator index out of range");
    result = compose(generator_arrows_[g], result);
  }
  return result;
}

std::string Categoroid::format_object(const CgObject& o) const {
  auto name = [&](std::size_t e) {
    return e < elements_.size() ? elements_[e] : "#" + std::to_string(e);
  };
  if (o.kind == ObjectKind::base) return name(o.parts[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < o.arity(); ++i) {
    if (i) out += ", ";
    out += name(o.parts[i]);
  }
  return out + ")";
}

std::string Categoroid::format_arrow(ArrowId a) const {
  const Arrow& ar = arrow(a);
  if (ar.path.empty()) return "1_" + format_object(ar.dom);
  std::string out;
  for (auto it = ar.path.rbegin(); it != ar.path.rend(); ++it) {
    if (!out.empty()) out += " . ";
    out += generators_[*it].id;
  }
  return out;
}

ArrowId Categoroid::add_arrow(Arrow a) {
  const ArrowId id = arrows_.size();
  const Key k = key_of(a.dom, a.cod, a.path);
  arrow_index_.emplace(k, id);
  if (quotient_ == Quotient::thin) thin_index_.emplace(thin_key(k.dom, k.cod, k.cls), id);
  dom_index_.push_back(k.dom);
  cod_index_.push_back(k.cod);
  out_[k.dom].push_back(id);
  in_[k.cod].push_back(id);
  arrows_.push_back(std::move(a));
  return id;
}

// ------------------------------------------------------------- building

Categoroid free_categoroid(std::vector<std::string> elements, std::vector<CgObject> objects,
                           std::vector<GenArrow> generators, std::size_t max_path_len,
                           std::vector<PathRelation> relations, Quotient quotient) {
  if (max_path_len > kMaxPathLen)
    throw Error(Errc::too_large, "path-length bound must be at most 8");
  return detail::materialize(std::move(elements), std::move(objects), std::move(generators),
                             max_path_len, std::move(relations), quotient);
}

Categoroid detail::materialize(std::vector<std::string> elements, std::vector<CgObject> objects,
                               std::vector<GenArrow> generators, std::size_t max_path_len,
                               std::vector<PathRelation> relations, Quotient quotient) {
  Categoroid c;
  c.elements_ = std::move(elements);
  for (const auto& o : objects) {
    for (std::size_t i = 0; i < o.arity(); ++i)
      if (o.parts[i] >= c.elements_.size())
        throw Error(Errc::ill_kinded_generator, "object component outside the element set");
    if (c.object_index_.emplace(o, c.objects_.size()).second) c.objects_.push_back(o);
  }
  for (const auto& g : generators) {
    if (!well_kinded(g))
      throw Error(Errc::ill_kinded_generator,
                  "generator " + g.id + " of class " + std::string(gen_class_name(g.cls)) +
                      " has endpoints of the wrong kind");
    if (!c.has_object(g.dom) || !c.has_object(g.cod))
      throw Error(Errc::ill_kinded_generator,
                  "generator " + g.id + " has an endpoint that is not an object");
  }
  c.generators_ = std::move(generators);
  c.quotient_ = quotient;
  c.max_path_len_ = max_path_len;

  auto path_ends = [&](const Path& p) -> std::pair<CgObject, CgObject> {
    for (std::size_t g : p)
      if (g >= c.generators_.size())
        throw Error(Errc::invalid_relation, "relation uses an unknown generator");
    for (std::size_t i = 1; i < p.size(); ++i)
      if (c.generators_[p[i - 1]].cod != c.generators_[p[i]].dom)
        throw Error(Errc::invalid_relation, "relation side is not a composable path");
    return {c.generators_[p.front()].dom, c.generators_[p.back()].cod};
  };
  for (auto& rel : relations) {
    if (rel.lhs.empty() && rel.rhs.empty()) continue;
    if (shortlex_less(rel.lhs, rel.rhs)) std::swap(rel.lhs, rel.rhs);
    if (rel.lhs == rel.rhs) continue;
    auto [d1, c1] = path_ends(rel.lhs);
    if (rel.rhs.empty()) {
      if (d1 != c1)
        throw Error(Errc::invalid_relation, "path equated with an identity must be a loop");
    } else {
      auto [d2, c2] = path_ends(rel.rhs);
      if (d1 != d2 || c1 != c2)
        throw Error(Errc::invalid_relation, "related paths must be parallel");
    }
    c.relations_.push_back(std::move(rel));
  }

  const std::size_t n = c.objects_.size();
  c.out_.assign(n, {});
  c.in_.assign(n, {});
  std::vector<std::vector<std::size_t>> gens_from(n);
  for (std::size_t g = 0; g < c.generators_.size(); ++g)
    gens_from[c.object_index(c.generators_[g].dom)].push_back(g);

  std::vector<ArrowId> frontier;
  for (const auto& o : c.objects_) {
    const ArrowId id = c.add_arrow({o, o, ArrowClass::identity, {}});
    c.identities_.push_back(id);
    frontier.push_back(id);
  }
  for (std::size_t level = 1; !frontier.empty(); ++level) {
    std::vector<ArrowId> next;
    for (ArrowId a : frontier) {
      const CgObject dom = c.arrows_[a].dom;
      for (std::size_t g : gens_from[c.object_index(c.arrows_[a].cod)]) {
        Path p = c.arrows_[a].path;
        p.push_back(g);
        p = c.normalize(std::move(p));
        if (c.find(dom, p)) continue;
        if (level > max_path_len)
          throw Error(Errc::non_saturated,
                      "new arrows keep appearing beyond path length " +
                          std::to_string(max_path_len) + " (the free categoroid is infinite "
                          "or needs a larger bound)");
        const CgObject cod = p.empty() ? dom : c.generators_[p.back()].cod;
        Arrow ar{dom, cod, c.classify(dom, cod, p), p};
        next.push_back(c.add_arrow(std::move(ar)));
      }
    }
    frontier = std::move(next);
  }
  for (std::size_t g = 0; g < c.generators_.size(); ++g)
    c.generator_arrows_.push_back(*c.find(c.generators_[g].dom, c.normalize({g})));
  return c;
}

namespace {

// A thin quiver saturates once paths are as long as the object count.
Categoroid build_thin(std::vector<std::string> elements, std::vector<CgObject> objects,
                      std::vector<GenArrow> generators) {
  const std::size_t bound = objects.size() + 1;
  return detail::materialize(std::move(elements), std::move(objects), std::move(generators),
                             bound, {}, Quotient::thin);
}

}  // namespace

Categoroid from_separoid(const Separoid& s) {
  const auto& l = s.lattice();
  const std::size_t n = l.size();
  if (n > 6) throw Error(Errc::too_large, "from_separoid supports at most 6 elements");
  if (auto v = check_separoid(s); !v.empty())
    throw Error(Errc::not_closed, "separoid is not closed: " + format_violation(v.front(), l));

  std::vector<CgObject> objects;
  for (std::size_t x = 0; x < n; ++x) objects.push_back(CgObject::base(x));
  std::set<CgObject> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (l.leq(x, y)) pairs.insert(CgObject::pair(x, y));
  for (const auto& t : s.ternary())
    if (t.x == t.y) pairs.insert(CgObject::pair(t.x, t.z));
  objects.insert(objects.end(), pairs.begin(), pairs.end());
  for (const auto& t : s.ternary()) objects.push_back(CgObject::triple(t.x, t.z, t.y));

  std::vector<GenArrow> gens;
  auto tri = [](const SepTriple& t) { return CgObject::triple(t.x, t.z, t.y); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && l.leq(x, y))
        gens.push_back({"a" + std::to_string(gens.size() + 1), GenClass::A, CgObject::base(x),
                        CgObject::base(y), ""});
  std::size_t t_count = 0;
  for (const auto& p : s.ternary())
    for_each_separoid_instance(s, p, [&](const SeparoidInstance& inst) {
      if (inst.conclusion == p) return;
      std::string note(axiom_name(inst.axiom));
      if (inst.premises.size() > 1) {
        const auto& aux = inst.premises[1];
        note += " with (" + l.elements()[aux.x] + ", " + l.elements()[aux.z] + ", " +
                l.elements()[aux.y] + ")";
      }
      gens.push_back({"t" + std::to_string(++t_count), GenClass::T, tri(p), tri(inst.conclusion),
                      std::move(note)});
    });
  std::size_t b_count = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (l.leq(x, y))
        gens.push_back({"b0_" + std::to_string(++b_count), GenClass::B0, CgObject::pair(x, y),
                        CgObject::triple(x, y, x), ""});
  b_count = 0;
  for (const auto& t : s.ternary())
    if (t.x == t.y)
      gens.push_back({"b1_" + std::to_string(++b_count), GenClass::B1, tri(t),
                      CgObject::pair(t.x, t.z), ""});
  return build_thin(l.elements(), std::move(objects), std::move(gens));
}

Categoroid from_ci_relation(const CIRelation& r, RuleSet rules) {
  const Universe& u = r.universe;
  if (u.size() > 4) throw Error(Errc::too_large, "from_ci_relation supports at most 4 variables");
  {
    std::vector<CITriple> seeds(r.statements.begin(), r.statements.end());
    if (close(seeds, rules, u).statements != r.statements)
      throw Error(Errc::not_closed, "relation is not closed under " + rules.str());
  }
  const Mask full = u.full();
  std::vector<std::string> elements;
  for (Mask m = 0; m <= full; ++m) elements.push_back(u.format(m, ","));

  std::vector<CgObject> objects;
  for (Mask m = 0; m <= full; ++m) objects.push_back(CgObject::base(m));
  for (Mask x = 0; x <= full; ++x)
    for (Mask y = 0; y <= full; ++y)
      if (is_subset(x, y)) objects.push_back(CgObject::pair(x, y));
  std::set<CITriple> oriented;
  for (const auto& t : r.statements) {
    oriented.insert(t);
    oriented.insert(t.swapped());
  }
  auto tri = [](const CITriple& t) { return CgObject::triple(t.x, t.z, t.y); };
  for (const auto& t : oriented) objects.push_back(tri(t));

  std::vector<GenArrow> gens;
  for (Mask a = 0; a <= full; ++a)
    for (std::size_t v = 0; v < u.size(); ++v)
      if (!(a >> v & 1u))
        gens.push_back({"a" + std::to_string(gens.size() + 1), GenClass::A, CgObject::base(a),
                        CgObject::base(a | (Mask{1} << v)), ""});
  auto present = [&](const CITriple& t) { return oriented.count(t) != 0; };
  std::size_t t_count = 0;
  for (const auto& p : oriented)
    for (Rule rule : rules.rules())
      for_each_instance(rule, p, u.size(), present, [&](const RuleInstance& inst) {
        if (inst.conclusion == p || !present(inst.conclusion)) return;
        std::string note(rule_name(rule));
        if (inst.premises.size() > 1) note += " with (" + format_triple(inst.premises[1], u) + ")";
        gens.push_back({"t" + std::to_string(++t_count), GenClass::T, tri(p),
                        tri(inst.conclusion), std::move(note)});
      });
  std::size_t b_count = 0;
  for (Mask x = 0; x <= full; ++x)
    for (Mask y = 0; y <= full; ++y)
      if (is_subset(x, y) && present({x, y, x}))
        gens.push_back({"b0_" + std::to_string(++b_count), GenClass::B0, CgObject::pair(x, y),
                        CgObject::triple(x, y, x), ""});
  b_count = 0;
  for (const auto& t : oriented)
    if (t.x == t.y)
      gens.push_back({"b1_" + std::to_string(++b_count), GenClass::B1, tri(t),
                      CgObject::pair(t.x, t.z), ""});
  return build_thin(std::move(elements), std::move(objects), std::move(gens));
}

// ------------------------------------------------------------------ text

std::string format_categoroid(const Categoroid& c) {
  std::ostringstream out;
  out << "elements:";
  for (const auto& e : c.elements()) out << ' ' << e;
  out << "\nquotient: " << (c.quotient() == Quotient::thin ? "thin" : "free") << '\n';
  out << "max-path-len: " << c.max_path_len() << '\n';
  out << "objects:\n";
  for (const auto& o : c.objects()) out << c.format_object(o) << '\n';
  out << "generators:\n";
  for (const auto& g : c.generators()) {
    out << gen_class_name(g.cls) << ' ' << g.id << ": " << c.format_object(g.dom) << " -> "
        << c.format_object(g.cod);
    if (!g.note.empty()) out << " ; " << g.note;
    out << '\n';
  }
  if (!c.relations().empty()) {
    out << "relations:\n";
    auto side = [&](const Path& p) {
      if (p.empty()) return std::string("1");
      std::string s;
      for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!s.empty()) s += ' ';
        s += c.generators()[*it].id;
      }
      return s;
    };
    for (const auto& r : c.relations()) out << side(r.lhs) << " = " << side(r.rhs) << '\n';
  }
  return out.str();
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

CgObject parse_object(const Categoroid& c, std::string_view text) {
  std::string s = trim(text);
  auto element = [&](const std::string& name) -> std::size_t {
    auto it = std::find(c.elements().begin(), c.elements().end(), name);
    if (it == c.elements().end())
      throw Error(Errc::unknown_element, "unknown element '" + name + "'");
    return static_cast<std::size_t>(it - c.elements().begin());
  };
  if (s.empty()) throw Error(Errc::syntax_error, "missing object");
  if (s.front() != '(') return CgObject::base(element(s));
  if (s.back() != ')') throw Error(Errc::syntax_error, "unbalanced parentheses in '" + s + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::size_t> parts;
  for (std::size_t pos = 0;;) {
    const auto next = s.find(", ", pos);
    parts.push_back(element(trim(s.substr(pos, next == std::string::npos ? next : next - pos))));
    if (next == std::string::npos) break;
    pos = next + 2;
  }
  if (parts.size() == 2) return CgObject::pair(parts[0], parts[1]);
  if (parts.size() == 3) return CgObject::triple(parts[0], parts[1], parts[2]);
  throw Error(Errc::syntax_error, "objects have one, two or three components");
}

Categoroid parse_categoroid(std::string_view text, std::size_t first_line) {
  std::vector<std::string> elements;
  std::vector<CgObject> objects;
  std::vector<GenArrow> gens;
  std::vector<std::pair<std::size_t, std::string>> rel_lines;
  Quotient quotient = Quotient::free;
  std::size_t bound = kMaxPathLen;
  enum class Mode { none, objects, generators, relations } mode = Mode::none;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = first_line - 1;
  auto err = [&](const std::string& msg) {
    return ParseError(Errc::syntax_error, lineno, 1, msg);
  };
  auto element = [&](const std::string& name) -> std::size_t {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end())
      throw ParseError(Errc::undeclared_variable, lineno, 1, "unknown element '" + name + "'");
    return static_cast<std::size_t>(it - elements.begin());
  };
  auto object = [&](const std::string& raw) -> CgObject {
    std::string s = trim(raw);
    if (s.empty()) throw err("missing object");
    if (s.front() != '(') return CgObject::base(element(s));
    if (s.back() != ')') throw err("unbalanced parentheses in '" + s + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<std::size_t> parts;
    for (std::size_t pos = 0;;) {
      const auto next = s.find(", ", pos);
      parts.push_back(element(trim(s.substr(pos, next == std::string::npos ? next : next - pos))));
      if (next == std::string::npos) break;
      pos = next + 2;
    }
    if (parts.size() == 2) return CgObject::pair(parts[0], parts[1]);
    if (parts.size() == 3) return CgObject::triple(parts[0], parts[1], parts[2]);
    throw err("objects have one, two or three components");
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::istringstream words(t);
    std::string first;
    words >> first;
    if (first == "elements:") {
      std::string w;
      while (words >> w) elements.push_back(w);
      mode = Mode::none;
    } else if (first == "quotient:") {
      std::string w;
      words >> w;
      if (w == "free") quotient = Quotient::free;
      else if (w == "thin") quotient = Quotient::thin;
      else throw err("quotient must be 'free' or 'thin'");
      mode = Mode::none;
    } else if (first == "max-path-len:") {
      if (!(words >> bound)) throw err("max-path-len needs a number");
      mode = Mode::none;
    } else if (first == "objects:") {
      mode = Mode::objects;
    } else if (first == "generators:") {
      mode = Mode::generators;
    } else if (first == "relations:") {
      mode = Mode::relations;
    } else if (mode == Mode::objects) {
      objects.push_back(object(t));
    } else if (mode == Mode::generators) {
      GenArrow g;
      if (first == "A") g.cls = GenClass::A;
      else if (first == "T") g.cls = GenClass::T;
      else if (first == "B0") g.cls = GenClass::B0;
      else if (first == "B1") g.cls = GenClass::B1;
      else throw err("unknown generator class '" + first + "'");
      std::string rest = trim(t.substr(first.size()));
      const auto colon = rest.find(':');
      if (colon == std::string::npos || colon == 0) throw err("expected 'CLASS id: dom -> cod'");
      g.id = trim(rest.substr(0, colon));
      rest = rest.substr(colon + 1);
      if (const auto semi = rest.find(';'); semi != std::string::npos) {
        g.note = trim(rest.substr(semi + 1));
        rest = rest.substr(0, semi);
      }
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw err("expected '->' in generator");
      g.dom = object(rest.substr(0, arrow));
      g.cod = object(rest.substr(arrow + 2));
      for (const auto& other : gens)
        if (other.id == g.id)
          throw ParseError(Errc::duplicate_name, lineno, 1, "duplicate generator '" + g.id + "'");
      gens.push_back(std::move(g));
    } else if (mode == Mode::relations) {
      rel_lines.emplace_back(lineno, t);
    } else {
      throw err("unexpected '" + first + "' in categoroid block");
    }
  }

  std::vector<PathRelation> relations;
  for (const auto& [ln, body] : rel_lines) {
    lineno = ln;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw err("expected 'path = path'");
    auto side = [&](const std::string& s) {
      std::istringstream ws(s);
      std::vector<std::string> ids;
      std::string w;
      while (ws >> w) ids.push_back(w);
      if (ids.empty()) throw err("empty relation side");
      Path p;
      if (ids.size() == 1 && ids[0] == "1") return p;
      for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
        auto g = std::find_if(gens.begin(), gens.end(),
                              [&](const GenArrow& a) { return a.id == *it; });
        if (g == gens.end())
          throw ParseError(Errc::undeclared_variable, lineno, 1, "unknown generator '" + *it + "'");
        p.push_back(static_cast<std::size_t>(g - gens.begin()));
      }
      return p;
    };
    relations.push_back({side(body.substr(0, eq)), side(body.substr(eq + 1))});
  }
  if (quotient == Quotient::thin)
    return detail::materialize(std::move(elements), std::move(objects), std::move(gens), bound,
                               std::move(relations), quotient);
  return free_categoroid(std::move(elements), std::move(objects), std::move(gens), bound,
                         std::move(relations), quotient);
}

}  // namespace cicat
