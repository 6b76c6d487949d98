#include <doctest.h>

#include <random>

#include "cicat/dag.hpp"
#include "oracles.hpp"

using namespace cicat;

namespace {

const Universe abc({"a", "b", "c"});
constexpr Mask A = 1, B = 2, C = 4;

Dag chain() { return Dag(abc, {{0, 1}, {1, 2}}); }
Dag reverse_chain() { return Dag(abc, {{2, 1}, {1, 0}}); }
Dag fork_dag() { return Dag(abc, {{1, 0}, {1, 2}}); }
Dag collider() { return Dag(abc, {{0, 1}, {2, 1}}); }

Universe letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  return Universe(names);
}

}  // namespace

TEST_CASE("construction") {
  CHECK(chain().parents("b").mask() == A);
  CHECK(chain().parents("a").empty());
  CHECK(collider().parents("b").mask() == (A | C));
  CHECK_THROWS_AS(chain().parents("q"), Error);
  try {
    Dag(abc, {{0, 1}, {1, 2}, {2, 0}});
    FAIL("expected cyclic_dag");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cyclic_dag);
  }
  try {
    Dag(abc, {{1, 1}});
    FAIL("expected invalid_edge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_edge);
  }
  const auto order = chain().topological_order();
  CHECK(order == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("d-separation examples") {
  CHECK(d_separated(chain(), A, C, B));
  CHECK_FALSE(d_separated(chain(), A, C, 0));
  CHECK(d_separated(collider(), A, C, 0));
  CHECK_FALSE(d_separated(collider(), A, C, B));
  CHECK_THROWS_AS(d_separated(chain(), A, A, 0), Error);
  CHECK_THROWS_AS(d_separated(chain(), 0, C, 0), Error);
}

TEST_CASE("d-separation matches both oracles on random DAGs") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const auto g = oracle::random_dag(n, 0.4, rng);
    const auto dag = oracle::to_dag(g, letters(n));
    const auto t = oracle::random_triple(n, rng);
    const bool got = d_separated(dag, t.x, t.y, t.z);
    CHECK(got == oracle::dsep_paths(g, t.x, t.y, t.z));
    CHECK(got == oracle::dsep_moral(g, t.x, t.y, t.z));
  }
}

TEST_CASE("induced relations") {
  const auto r = ci_relation(chain());
  CHECK(r.contains({A, B, C}));
  CHECK_FALSE(r.contains({A, 0, C}));
  const auto single = ci_relation(Dag(Universe({"a"}), {}));
  for (const auto& t : single.statements) CHECK(t.trivial());
  CHECK(ci_relation(Dag(Universe({"a", "b"}), {})).contains({1, 0, 2}));
  CHECK_THROWS_AS(ci_relation(Dag(letters(7), {})), Error);
}

TEST_CASE("standard imsets") {
  const auto u = standard_imset(chain());
  CHECK(u.coeffs() == std::map<Mask, std::int64_t>{{A | B | C, 1}, {B, 1}, {A | B, -1}, {B | C, -1}});
  CHECK(standard_imset(Dag(Universe({"a"}), {})).zero());
  CHECK(standard_imset(collider()).coeffs() ==
        std::map<Mask, std::int64_t>{{A | C, 1}, {0, 1}, {A, -1}, {C, -1}});
  std::mt19937 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto g = oracle::to_dag(oracle::random_dag(n, 0.5, rng), letters(n));
    const auto s = standard_imset(g);
    CHECK(s.sum() == 0);
    CHECK(mobius_form(s).at(0, letters(n).full()) == 0);
  }
}

TEST_CASE("Markov equivalence") {
  CHECK(markov_equivalent(chain(), fork_dag()));
  CHECK(markov_equivalent(chain(), reverse_chain()));
  CHECK_FALSE(markov_equivalent(chain(), collider()));
  CHECK(markov_equivalent(collider(), collider()));
  CHECK_THROWS_AS(markov_equivalent(chain(), Dag(letters(4), {})), Error);
}

TEST_CASE("equivalence agrees with skeleton and colliders on four vertices") {
  const auto all = oracle::all_dags(4);
  CHECK(all.size() == 543);
  const Universe u = letters(4);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    const auto& g = all[rng() % all.size()];
    const auto& h = all[rng() % all.size()];
    CHECK(markov_equivalent(oracle::to_dag(g, u), oracle::to_dag(h, u)) ==
          oracle::markov_equivalent_vstructures(g, h));
  }
}

TEST_CASE("DAG text") {
  CHECK(format_dag(chain()) == "vars: a b c\na -> b\nb -> c\n");
}
