// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "cicat/categoroid.hpp"
#include "cicat/dag.hpp"
#include "cicat/imset.hpp"
#include "cicat/separoid.hpp"
#include "oracles.hpp"

using namespace cicat;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const Universe abc({"a", "b", "c"});

Universe letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  return Universe(names);
}

FinitePoset poset_from(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::string> labels;
  std::vector<std::uint8_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = leq[i][j];
  }
  return FinitePoset(labels, table);
}

// ------------------------------------------------------------------ 1

Outcome standard_imset_of_chain() {
  Outcome o;
  const Dag chain(abc, {{0, 1}, {1, 2}});
  const Imset u = standard_imset(chain);
  const std::map<Mask, std::int64_t> expect{{0b111, 1}, {0b010, 1}, {0b011, -1}, {0b110, -1}};
  if (u.coeffs() != expect) o.fail("got " + format_imset(u));
  return o;
}

// ------------------------------------------------------------------ 2

Outcome three_dag_equivalence() {
  Outcome o;
  const std::vector<Dag> same{Dag(abc, {{0, 1}, {1, 2}}), Dag(abc, {{2, 1}, {1, 0}}),
                              Dag(abc, {{1, 0}, {1, 2}})};
  const Dag collider(abc, {{0, 1}, {2, 1}});
  for (const auto& g : same)
    for (const auto& h : same) {
      if (!(standard_imset(g) == standard_imset(h))) o.fail("imsets differ");
      if (!markov_equivalent(g, h)) o.fail("markov_equivalent false");
    }
  for (const auto& g : same) {
    if (standard_imset(g) == standard_imset(collider)) o.fail("collider imset matches");
    if (markov_equivalent(g, collider)) o.fail("collider reported equivalent");
  }
  return o;
}

// ------------------------------------------------------------------ 3

Outcome moebius_identities() {
  Outcome o;
  auto check_inverse = [&](const FinitePoset& p) {
    const auto z = zeta_function(p), m = mobius(p), d = delta_function(p);
    if (!(convolve(z, m) == d) || !(convolve(m, z) == d)) o.fail("zeta * mu != delta");
  };
  for (std::size_t n = 0; n <= 4; ++n) check_inverse(FinitePoset::subset_lattice(letters(n)));
  std::mt19937 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto leq = oracle::random_poset(1 + rng() % 16, 0.35, rng);
    const auto p = poset_from(leq);
    check_inverse(p);
    const auto mu = mobius(p);
    const auto ref = oracle::mobius_matrix(leq);
    for (std::size_t x = 0; x < leq.size(); ++x)
      for (std::size_t y = 0; y < leq.size(); ++y)
        if (mu.at(x, y) != ref[x][y]) o.fail("mu differs from matrix inverse");
  }
  std::uniform_int_distribution<int> val(-100, 100);
  for (int i = 0; i < 100; ++i) {
    FinitePoset p;
    if (i % 2 == 0) {
      p = FinitePoset::subset_lattice(letters(rng() % 5));
    } else {
      const auto inner = oracle::random_poset(rng() % 15, 0.35, rng);
      const std::size_t n = inner.size() + 1;
      std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
      for (std::size_t j = 0; j < n; ++j) leq[0][j] = true;
      for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = 1; b < n; ++b) leq[a][b] = inner[a - 1][b - 1];
      p = poset_from(leq);
    }
    ElementFunction e(p.size());
    for (auto& v : e) v = val(rng);
    if (mobius_invert(accumulate(e, p), p) != e) o.fail("inversion round trip failed");
  }
  return o;
}

// ------------------------------------------------------------------ 4

Outcome closure_oracle() {
  Outcome o;
  for (const bool g : {false, true}) {
    const auto rules = g ? RuleSet::graphoid() : RuleSet::semigraphoid();
    for (const auto& t : oracle::all_triples(3))
      if (close(std::vector{t}, rules, abc).statements != oracle::naive_closure({t}, g, 3))
        o.fail("3-variable single statement " + format_triple(t, abc));
  }
  std::mt19937 rng(77);
  const Universe u = letters(4);
  for (int i = 0; i < 50; ++i) {
    std::vector<CITriple> in;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) in.push_back(oracle::random_triple(4, rng));
    for (const bool g : {false, true}) {
      const auto rules = g ? RuleSet::graphoid() : RuleSet::semigraphoid();
      if (close(in, rules, u).statements != oracle::naive_closure(in, g, 4))
        o.fail("4-variable random input " + std::to_string(i));
    }
  }
  return o;
}

// ------------------------------------------------------------------ 5

Outcome dsep_oracle() {
  Outcome o;
  std::mt19937 rng(555);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 2 + rng() % 5;
    const auto g = oracle::random_dag(n, 0.45, rng);
    const auto t = oracle::random_triple(n, rng);
    const bool got = d_separated(oracle::to_dag(g, letters(n)), t.x, t.y, t.z);
    if (got != oracle::dsep_paths(g, t.x, t.y, t.z)) o.fail("pair " + std::to_string(i));
  }
  return o;
}

// ------------------------------------------------------------------ 6

Outcome imset_soundness() {
  Outcome o;
  std::size_t instances = 0;
  auto test = [&](const std::vector<CITriple>& premises, const CITriple& conclusion) {
    ++instances;
    Imset u(abc);
    for (const auto& p : premises) u += semi_elementary(abc, p).imset;
    const Imset v = semi_elementary(abc, conclusion).imset;
    if (!implies(u, v, 4, 8)) o.fail("no l for conclusion " + format_triple(conclusion, abc));
  };
  const auto triples = oracle::all_triples(3);
  for (const auto& t : triples) {
    test({t}, t.swapped());
    for (Mask w = t.y;; w = (w - 1) & t.y) {
      const Mask y = t.y & ~w;
      test({t}, {t.x, t.z, y});           // decomposition
      test({t}, {t.x, t.z | w, y});       // weak union
      if (w == 0) break;
    }
  }
  for (const auto& first : triples)
    for (const auto& second : triples)
      if (second.x == first.x && second.z == (first.z | first.y) && (second.y & first.y) == 0)
        test({first, second}, {first.x, first.z, first.y | second.y});  // contraction
  o.detail = std::to_string(instances) + " instances";
  return o;
}

// ------------------------------------------------------------------ 7

std::vector<JoinSemilattice> small_lattices() {
  std::vector<JoinSemilattice> out;
  for (std::size_t n = 1; n <= 5; ++n) out.push_back(JoinSemilattice::chain(n));
  out.push_back(JoinSemilattice::subset_lattice(letters(2)));
  // M3: 0 < p, q, r < 1
  Table m3(5, std::vector<std::size_t>(5, 4));
  for (std::size_t i = 0; i < 5; ++i) m3[0][i] = m3[i][0] = i, m3[i][i] = i;
  out.emplace_back(std::vector<std::string>{"0", "p", "q", "r", "1"}, m3);
  // N5: 0 < p < q < 1, 0 < r < 1
  const std::vector<std::vector<bool>> le{{1, 1, 1, 1, 1},
                                          {0, 1, 1, 0, 1},
                                          {0, 0, 1, 0, 1},
                                          {0, 0, 0, 1, 1},
                                          {0, 0, 0, 0, 1}};
  Table n5(5, std::vector<std::size_t>(5));
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      for (std::size_t c = 0; c < 5; ++c) {
        // least upper bound
        if (!le[a][c] || !le[b][c]) continue;
        bool least = true;
        for (std::size_t d = 0; d < 5; ++d)
          if (le[a][d] && le[b][d] && !le[c][d]) least = false;
        if (least) n5[a][b] = c;
      }
  out.emplace_back(std::vector<std::string>{"0", "p", "q", "r", "1"}, n5);
  return out;
}

Outcome separoid_laws() {
  Outcome o;
  std::mt19937 rng(7);
  std::size_t count = 0;
  for (const auto& l : small_lattices())
    for (int i = 0; i < 60; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, l.size() - 1);
      std::set<SepTriple> seeds;
      const int k = static_cast<int>(rng() % 4);
      for (int j = 0; j < k; ++j) seeds.insert({pick(rng), pick(rng), pick(rng)});
      const auto s = separoid_close(Separoid(l, seeds));
      ++count;
      if (!check_separoid(s).empty()) o.fail("violations after closing");
      if (!oracle::separoid_axioms_hold(s)) o.fail("axiom oracle rejects closure");
      if (!(separoid_close(s) == s)) o.fail("closure not idempotent");
    }
  o.detail = std::to_string(count) + " separoids";
  return o;
}

// ------------------------------------------------------------------ 8

// Every closed separoid on a lattice: closures reached by adding one triple
// at a time from the least closed relation.
std::vector<Separoid> all_closed(const JoinSemilattice& l) {
  std::set<std::set<SepTriple>> seen;
  std::vector<Separoid> out;
  std::vector<Separoid> frontier{separoid_close(Separoid(l, {}))};
  seen.insert(frontier[0].ternary());
  const std::size_t n = l.size();
  while (!frontier.empty()) {
    std::vector<Separoid> next;
    for (const auto& s : frontier) {
      out.push_back(s);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z)
          for (std::size_t y = 0; y < n; ++y) {
            if (s.contains({x, z, y})) continue;
            auto t = s.ternary();
            t.insert({x, z, y});
            auto c = separoid_close(Separoid(l, t));
            if (seen.insert(c.ternary()).second) next.push_back(std::move(c));
          }
    }
    frontier = std::move(next);
  }
  return out;
}

Outcome yoneda_bijections() {
  Outcome o;
  std::vector<JoinSemilattice> lattices;
  for (std::size_t n = 1; n <= 4; ++n) lattices.push_back(JoinSemilattice::chain(n));
  lattices.push_back(JoinSemilattice::subset_lattice(letters(2)));
  std::size_t categoroids = 0, checks = 0;
  for (const auto& l : lattices)
    for (const auto& s : all_closed(l)) {
      const auto c = from_separoid(s);
      ++categoroids;
      for (const auto& y : c.objects()) {
        const auto F = representable(c, y);
        for (const auto& x : c.objects()) {
          const auto r = yoneda_check(c, x, F);
          ++checks;
          if (!r.passed() || r.nat_count != c.hom(y, x).size())
            o.fail("failed at x = " + c.format_object(x) + ", F = hom(" + c.format_object(y) +
                   ", -)");
        }
      }
    }
  o.detail = std::to_string(categoroids) + " categoroids, " + std::to_string(checks) + " checks";
  return o;
}

// ------------------------------------------------------------------ 9

Outcome universal_properties() {
  Outcome o;
  const auto c = from_ci_relation(close(std::vector<CITriple>{}, RuleSet::semigraphoid(), abc),
                                  RuleSet::semigraphoid());
  auto verified = [&](UniversalKind k, Mask x, Mask y, Mask cand) {
    try {
      return universal_check(c, k, CgObject::base(x), CgObject::base(y), CgObject::base(cand))
          .verified;
    } catch (const Error& e) {
      if (e.code() == Errc::missing_structure) return false;
      throw;
    }
  };
  for (Mask x = 0; x < 8; ++x)
    for (Mask y = 0; y < 8; ++y)
      for (Mask cand = 0; cand < 8; ++cand) {
        if (verified(UniversalKind::coproduct, x, y, cand) != (cand == (x | y)))
          o.fail("coproduct mismatch");
        if (verified(UniversalKind::product, x, y, cand) != (cand == (x & y)))
          o.fail("product mismatch");
      }
  return o;
}

// ----------------------------------------------------------------- 10

Outcome equivalence_partition() {
  Outcome o;
  const auto graphs = oracle::all_dags(3);
  if (graphs.size() != 25) o.fail("expected 25 DAGs, enumerated " + std::to_string(graphs.size()));
  const auto triples = oracle::all_triples(3);
  // Oracle: relation as the set of d-separated nontrivial triples.
  std::vector<std::set<CITriple>> oracle_rel;
  for (const auto& g : graphs) {
    std::set<CITriple> r;
    for (const auto& t : triples)
      if (!t.trivial() && oracle::dsep_paths(g, t.x, t.y, t.z)) r.insert(t);
    oracle_rel.push_back(r);
  }
  std::size_t oracle_classes = std::set<std::set<CITriple>>(oracle_rel.begin(), oracle_rel.end())
                                   .size();
  std::set<std::map<Mask, std::int64_t>> imset_classes;
  std::set<std::set<CITriple>> relation_classes;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto gi = oracle::to_dag(graphs[i], abc);
    imset_classes.insert(standard_imset(gi).coeffs());
    relation_classes.insert(ci_relation(gi).statements);
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const auto gj = oracle::to_dag(graphs[j], abc);
      const bool by_imset = standard_imset(gi) == standard_imset(gj);
      const bool by_relation = ci_relation(gi).statements == ci_relation(gj).statements;
      if (by_imset != by_relation) o.fail("partitions disagree");
      if (by_relation != (oracle_rel[i] == oracle_rel[j])) o.fail("relation differs from oracle");
    }
  }
  if (imset_classes.size() != oracle_classes || relation_classes.size() != oracle_classes)
    o.fail("class counts differ from the oracle");
  o.detail = std::to_string(oracle_classes) + " classes";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_ms;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "standard imset of the chain a->b->c", 1, standard_imset_of_chain},
      {2, "chain, reverse chain and fork share one imset; collider differs", 10,
       three_dag_equivalence},
      {3, "Moebius identities and inversion round trips", 1000, moebius_identities},
      {4, "closure matches the naive fixpoint oracle", 30000, closure_oracle},
      {5, "d-separation matches path enumeration", 30000, dsep_oracle},
      {6, "imset implication for every semigraphoid instance on 3 variables", 60000,
       imset_soundness},
      {7, "separoid closure satisfies the axioms and is idempotent", 10000, separoid_laws},
      {8, "Yoneda bijection for every object and representable", 60000, yoneda_bijections},
      {9, "coproduct is union and product is intersection on subsets of {a,b,c}", 5000,
       universal_properties},
      {10, "imset partition of the 25 three-vertex DAGs matches d-separation", 10000,
       equivalence_partition},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_time = ms < c.limit_ms;
    const bool pass = out.ok && in_time;
    failures += !pass;
    std::printf("%s [%2d] %s (%.3f ms, limit %.0f ms)%s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, ms, c.limit_ms, out.detail.empty() ? "" : ": ",
                !in_time && out.ok ? "over time limit" : out.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
