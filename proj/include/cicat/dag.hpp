#pragma once

// Directed acyclic graphs over a universe: d-separation, induced CI
// relations, standard imsets and Markov equivalence.

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cicat/ci.hpp"
#include "cicat/imset.hpp"

namespace cicat {

class Dag {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // (parent, child)

  // Throws invalid_edge (self-loop or endpoint outside the universe) or
  // cyclic_dag.
  Dag(Universe u, std::set<Edge> edges);

  const Universe& universe() const noexcept { return universe_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return universe_.size(); }

  Mask parents(std::size_t v) const;
  Mask children(std::size_t v) const;
  // Throws unknown_vertex.
  VarSet parents(std::string_view v) const;
  // Vertices in a topological order.
  const std::vector<std::size_t>& topological_order() const noexcept { return order_; }

  friend bool operator==(const Dag& a, const Dag& b) noexcept {
    return a.universe_ == b.universe_ && a.edges_ == b.edges_;
  }

 private:
  Universe universe_;
  std::set<Edge> edges_;
  std::vector<Mask> parents_, children_;
  std::vector<std::size_t> order_;
};

// Reachability ("Bayes ball") over (vertex, direction) states. Throws
// malformed_query when the sets overlap or X or Y is empty.
bool d_separated(const Dag& g, Mask x, Mask y, Mask z);
bool d_separated(const Dag& g, const VarSet& x, const VarSet& y, const VarSet& z);

inline constexpr std::size_t kMaxCIRelationUniverse = 6;

// Every d-separation statement, plus the trivial statements.
CIRelation ci_relation(const Dag& g);

// u_G = d(V) - d({}) + sum_i (d(pa_i) - d(i u pa_i)).
Imset standard_imset(const Dag& g);

// Equality of standard imsets; throws universe_mismatch.
bool markov_equivalent(const Dag& a, const Dag& b);

// "vars: a b c" then one "a -> b" line per edge.
std::string format_dag(const Dag& g);

}  // namespace cicat
