#include <algorithm>
#include <numeric>
#include <set>

#include "cicat/categoroid.hpp"

namespace cicat {

std::vector<Violation> check_category_laws(const Categoroid& c) {
  std::vector<Violation> out;
  const auto& arrows = c.arrows();
  for (ArrowId f = 0; f < arrows.size(); ++f) {
    const ArrowId id_dom = c.identity(arrows[f].dom);
    const ArrowId id_cod = c.identity(arrows[f].cod);
    if (c.compose(f, id_dom) != f) out.push_back({"right identity law fails", {f}});
    if (c.compose(id_cod, f) != f) out.push_back({"left identity law fails", {f}});
  }
  for (ArrowId g = 0; g < arrows.size(); ++g) {
    if (arrows[g].cls == ArrowClass::identity) continue;
    for (ArrowId f : c.in_arrows(arrows[g].dom)) {
      if (arrows[f].cls == ArrowClass::identity) continue;
      const ArrowId gf = c.compose(g, f);
      for (ArrowId h : c.out_arrows(arrows[g].cod)) {
        if (arrows[h].cls == ArrowClass::identity) continue;
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
          out.push_back({"associativity fails", {h, g, f}});
      }
    }
  }
  return out;
}

// ----------------------------------------------------------- functoroids

CgObject Functoroid::map_object(const CgObject& o) const {
  CgObject r = o;
  for (std::size_t i = 0; i < o.arity(); ++i) r.parts[i] = element_map.at(o.parts[i]);
  return r;
}

ArrowId Functoroid::map_arrow(ArrowId a) const {
  const Arrow& ar = source->arrow(a);
  ArrowId result = target->identity(map_object(ar.dom));
  for (std::size_t g : ar.path) result = target->compose(generator_map.at(g), result);
  return result;
}

Functoroid identity_functoroid(const Categoroid& c) {
  Functoroid f{&c, &c, std::vector<std::size_t>(c.elements().size()), {}};
  std::iota(f.element_map.begin(), f.element_map.end(), std::size_t{0});
  for (std::size_t g = 0; g < c.generators().size(); ++g)
    f.generator_map.push_back(c.generator_arrow(g));
  return f;
}

Functoroid compose_functoroids(const Functoroid& g, const Functoroid& f) {
  if (f.target != g.source)
    throw Error(Errc::not_composable, "functoroids do not compose: target and source differ");
  Functoroid r{f.source, g.target, {}, {}};
  for (std::size_t e : f.element_map) r.element_map.push_back(g.element_map.at(e));
  for (ArrowId a : f.generator_map) r.generator_map.push_back(g.map_arrow(a));
  return r;
}

namespace {

bool class_preserved(GenClass src, ArrowClass img) {
  switch (src) {
    case GenClass::A: return img == ArrowClass::A || img == ArrowClass::identity;
    case GenClass::T: return img == ArrowClass::T || img == ArrowClass::identity;
    case GenClass::B0: return img == ArrowClass::B0;
    case GenClass::B1: return img == ArrowClass::B1;
  }
  return false;
}

}  // namespace

std::vector<Violation> check_functoroid(const Functoroid& f) {
  std::vector<Violation> out;
  const Categoroid& s = *f.source;
  const Categoroid& t = *f.target;
  if (f.element_map.size() != s.elements().size())
    return {{"element map has the wrong size", {}}};
  if (f.generator_map.size() != s.generators().size())
    return {{"generator map has the wrong size", {}}};
  for (std::size_t e : f.element_map)
    if (e >= t.elements().size()) return {{"element map leaves the target", {}}};
  for (ArrowId a : f.generator_map)
    if (a >= t.arrows().size()) return {{"generator image is not a target arrow", {}}};

  for (const auto& o : s.objects())
    if (!t.has_object(f.map_object(o)))
      out.push_back({"image of object " + s.format_object(o) + " is not a target object",
                     {s.identity(o)}});
  if (!out.empty()) return out;

  for (std::size_t g = 0; g < s.generators().size(); ++g) {
    const GenArrow& gen = s.generators()[g];
    const Arrow& img = t.arrow(f.generator_map[g]);
    const ArrowId witness = s.generator_arrow(g);
    if (img.dom != f.map_object(gen.dom) || img.cod != f.map_object(gen.cod))
      out.push_back({"generator " + gen.id + " is sent to an arrow with the wrong endpoints",
                     {witness}});
    else if (!class_preserved(gen.cls, img.cls))
      out.push_back({"generator " + gen.id + " of class " + std::string(gen_class_name(gen.cls)) +
                         " is sent to class " + std::string(arrow_class_name(img.cls)),
                     {witness}});
  }
  if (!out.empty()) return out;

  const std::size_t n = s.arrows().size();
  std::vector<ArrowId> image(n);
  for (ArrowId a = 0; a < n; ++a) {
    try {
      image[a] = f.map_arrow(a);
    } catch (const Error& e) {
      out.push_back({std::string("arrow image undefined: ") + e.what(), {a}});
      return out;
    }
  }
  for (const auto& o : s.objects())
    if (image[s.identity(o)] != t.identity(f.map_object(o)))
      out.push_back({"identity not preserved", {s.identity(o)}});
  for (ArrowId a = 0; a < n; ++a)
    for (ArrowId b : s.out_arrows(s.arrow(a).cod)) {
      try {
        if (image[s.compose(b, a)] != t.compose(image[b], image[a]))
          out.push_back({"composition not preserved", {b, a}});
      } catch (const Error& e) {
        out.push_back({std::string("composition not preserved: ") + e.what(), {b, a}});
      }
    }
  return out;
}

// ------------------------------------------------- natural transformations

NatTrans identity_nat_trans(const Functoroid& f) {
  NatTrans n{&f, &f, {}};
  for (const auto& o : f.source->objects())
    n.components.push_back(f.target->identity(f.map_object(o)));
  return n;
}

NatTrans vertical_compose(const NatTrans& beta, const NatTrans& alpha) {
  if (alpha.to != beta.from && !(alpha.to && beta.from &&
                                   alpha.to->element_map == beta.from->element_map &&
                                   alpha.to->generator_map == beta.from->generator_map))
    throw Error(Errc::not_composable, "natural transformations do not compose");
  NatTrans r{alpha.from, beta.to, {}};
  const Categoroid& t = *alpha.from->target;
  for (std::size_t i = 0; i < alpha.components.size(); ++i)
    r.components.push_back(t.compose(beta.components.at(i), alpha.components[i]));
  return r;
}

std::vector<Violation> check_nat_trans(const NatTrans& n) {
  const Functoroid& F = *n.from;
  const Functoroid& G = *n.to;
  if (F.source != G.source || F.target != G.target)
    return {{"functoroids are not parallel", {}}};
  const Categoroid& s = *F.source;
  const Categoroid& t = *F.target;
  if (n.components.size() != s.objects().size())
    return {{"one component per source object is required", {}}};

  std::vector<Violation> out;
  for (std::size_t i = 0; i < s.objects().size(); ++i) {
    const auto& o = s.objects()[i];
    const ArrowId c = n.components[i];
    if (c >= t.arrows().size() || t.arrow(c).dom != F.map_object(o) ||
        t.arrow(c).cod != G.map_object(o))
      out.push_back({"component at " + s.format_object(o) + " has the wrong endpoints",
                     {s.identity(o)}});
  }
  if (!out.empty()) return out;

  for (ArrowId f = 0; f < s.arrows().size(); ++f) {
    const Arrow& a = s.arrow(f);
    const ArrowId ea = n.components[s.object_index(a.dom)];
    const ArrowId eb = n.components[s.object_index(a.cod)];
    try {
      if (t.compose(G.map_arrow(f), ea) != t.compose(eb, F.map_arrow(f)))
        out.push_back({"naturality square does not commute", {f}});
    } catch (const Error& e) {
      out.push_back({std::string("naturality square undefined: ") + e.what(), {f}});
    }
  }
  return out;
}

// --------------------------------------------------- set-valued functoroids

SetFunctoroid representable(const Categoroid& c, const CgObject& x) {
  SetFunctoroid F;
  F.source = &c;
  const std::size_t n = c.objects().size();
  std::vector<std::vector<ArrowId>> homs(n);
  std::vector<std::size_t> pos(c.arrows().size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    homs[i] = c.hom(x, c.objects()[i]);
    F.set_sizes.push_back(homs[i].size());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < homs[i].size(); ++k) {
      pos[homs[i][k]] = k;
      labels.push_back(c.format_arrow(homs[i][k]));
    }
    F.labels.push_back(std::move(labels));
  }
  for (ArrowId f = 0; f < c.arrows().size(); ++f) {
    std::vector<std::size_t> m;
    for (ArrowId a : homs[c.object_index(c.arrow(f).dom)]) m.push_back(pos[c.compose(f, a)]);
    F.arrow_maps.push_back(std::move(m));
  }
  return F;
}

SetFunctoroid constant_point(const Categoroid& c) {
  SetFunctoroid F;
  F.source = &c;
  F.set_sizes.assign(c.objects().size(), 1);
  F.arrow_maps.assign(c.arrows().size(), std::vector<std::size_t>{0});
  return F;
}

std::vector<Violation> check_set_functoroid(const SetFunctoroid& F) {
  const Categoroid& c = *F.source;
  if (F.set_sizes.size() != c.objects().size()) return {{"one set per object is required", {}}};
  if (F.arrow_maps.size() != c.arrows().size()) return {{"one map per arrow is required", {}}};
  std::vector<Violation> out;
  for (ArrowId f = 0; f < c.arrows().size(); ++f) {
    const auto& m = F.arrow_maps[f];
    const std::size_t ds = F.set_sizes[c.object_index(c.arrow(f).dom)];
    const std::size_t cs = F.set_sizes[c.object_index(c.arrow(f).cod)];
    if (m.size() != ds || std::any_of(m.begin(), m.end(), [&](std::size_t v) { return v >= cs; }))
      out.push_back({"map of arrow is not a function between the right sets", {f}});
  }
  if (!out.empty()) return out;
  for (const auto& o : c.objects()) {
    const auto& m = F.arrow_maps[c.identity(o)];
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != i) {
        out.push_back({"identity not sent to the identity map", {c.identity(o)}});
        break;
      }
  }
  for (ArrowId f = 0; f < c.arrows().size(); ++f)
    for (ArrowId g : c.out_arrows(c.arrow(f).cod)) {
      const auto& mg = F.arrow_maps[g];
      const auto& mf = F.arrow_maps[f];
      const auto& mgf = F.arrow_maps[c.compose(g, f)];
      for (std::size_t i = 0; i < mf.size(); ++i)
        if (mgf[i] != mg[mf[i]]) {
          out.push_back({"composition not preserved", {g, f}});
          break;
        }
    }
  return out;
}

// ----------------------------------------------------------------- Yoneda

YonedaReport yoneda_check(const Categoroid& c, const CgObject& x, const SetFunctoroid& F) {
  if (F.source != &c || F.set_sizes.size() != c.objects().size() ||
      F.arrow_maps.size() != c.arrows().size())
    throw Error(Errc::malformed_query, "set functoroid does not match the categoroid");
  const ArrowId one = c.identity(x);

  // Variables: arrows of hom(x, -), identity first.
  std::vector<ArrowId> vars{one};
  for (ArrowId a : c.out_arrows(x))
    if (a != one) vars.push_back(a);
  if (vars.size() > kMaxYonedaArrows)
    throw Error(Errc::enumeration_too_large,
                "hom(" + c.format_object(x) + ", -) has " + std::to_string(vars.size()) +
                    " arrows (limit 200)");
  std::vector<std::size_t> var_of(c.arrows().size(), SIZE_MAX);
  std::vector<std::size_t> domain(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v) {
    var_of[vars[v]] = v;
    domain[v] = F.set_sizes[c.object_index(c.arrow(vars[v]).cod)];
    if (domain[v] > kMaxYonedaSet)
      throw Error(Errc::enumeration_too_large,
                  "F(" + c.format_object(c.arrow(vars[v]).cod) + ") has more than 6 elements");
  }

  // eta(f . a) == F(f)(eta(a)), checked once both variables are assigned.
  struct Constraint {
    std::size_t from, to;
    const std::vector<std::size_t>* map;
  };
  std::vector<std::vector<Constraint>> due(vars.size());
  for (std::size_t v = 0; v < vars.size(); ++v)
    for (ArrowId f : c.out_arrows(c.arrow(vars[v]).cod)) {
      const std::size_t w = var_of[c.compose(f, vars[v])];
      due[std::max(v, w)].push_back({v, w, &F.arrow_maps[f]});
    }

  YonedaReport rep;
  rep.object = x;
  rep.fx_size = F.set_sizes[c.object_index(x)];
  std::vector<std::size_t> assign(vars.size(), 0);
  std::vector<std::size_t> values;
  auto consistent = [&](std::size_t k) {
    for (const auto& con : due[k])
      if ((*con.map)[assign[con.from]] != assign[con.to]) return false;
    return true;
  };
  auto search = [&](auto&& self, std::size_t k) -> void {
    if (k == vars.size()) {
      values.push_back(assign[0]);
      return;
    }
    for (std::size_t val = 0; val < domain[k]; ++val) {
      assign[k] = val;
      if (consistent(k)) self(self, k + 1);
    }
  };
  search(search, 0);

  rep.nat_count = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) rep.bijection.emplace_back(i, values[i]);
  const std::set<std::size_t> distinct(values.begin(), values.end());
  rep.injective = distinct.size() == values.size();
  rep.surjective = distinct.size() == rep.fx_size;
  return rep;
}

// ------------------------------------------------- universal properties

UniversalReport universal_check(const Categoroid& c, UniversalKind kind, const CgObject& x,
                                const CgObject& y, const CgObject& cand) {
  for (const auto* o : {&x, &y, &cand})
    if (o->kind != ObjectKind::base || !c.has_object(*o))
      throw Error(Errc::malformed_query, "universal checks take base objects of the categoroid");
  const bool co = kind == UniversalKind::coproduct;
  const auto first = co ? c.hom(x, cand) : c.hom(cand, x);
  const auto second = co ? c.hom(y, cand) : c.hom(cand, y);
  if (first.empty() || second.empty())
    throw Error(Errc::missing_structure,
                std::string("candidate ") + c.format_object(cand) + " has no " +
                    (co ? "injections" : "projections"));

  UniversalReport best;
  bool have_best = false;
  for (ArrowId f : first)
    for (ArrowId g : second) {
      UniversalReport rep;
      rep.first_leg = f;
      rep.second_leg = g;
      for (const auto& r : c.objects()) {
        if (r.kind != ObjectKind::base) continue;
        const auto hs = co ? c.hom(x, r) : c.hom(r, x);
        const auto is = co ? c.hom(y, r) : c.hom(r, y);
        const auto mediators = co ? c.hom(cand, r) : c.hom(r, cand);
        for (ArrowId h : hs)
          for (ArrowId i : is) {
            std::size_t count = 0;
            for (ArrowId m : mediators) {
              const bool ok = co ? c.compose(m, f) == h && c.compose(m, g) == i
                                 : c.compose(f, m) == h && c.compose(g, m) == i;
              count += ok;
            }
            if (count != 1)
              rep.failures.emplace_back(
                  r, count == 0 ? "no mediating arrow"
                                : std::to_string(count) + " mediating arrows");
          }
      }
      rep.verified = rep.failures.empty();
      if (rep.verified) return rep;
      if (!have_best) {
        best = std::move(rep);
        have_best = true;
      }
    }
  return best;
}

}  // namespace cicat
