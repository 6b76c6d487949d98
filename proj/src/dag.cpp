#include "cicat/dag.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cicat {

Dag::Dag(Universe u, std::set<Edge> edges)
    : universe_(std::move(u)), edges_(std::move(edges)) {
  const std::size_t n = universe_.size();
  parents_.assign(n, 0);
  children_.assign(n, 0);
  for (auto [p, c] : edges_) {
    if (p >= n || c >= n) throw Error(Errc::invalid_edge, "edge endpoint outside the universe");
    if (p == c) throw Error(Errc::invalid_edge, "self-loop on " + universe_.name(p));
    parents_[c] |= Mask{1} << p;
    children_[p] |= Mask{1} << c;
  }
  // Kahn's algorithm, smallest index first.
  std::vector<int> indegree(n);
  for (std::size_t v = 0; v < n; ++v) indegree[v] = popcount(parents_[v]);
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.insert(v);
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    order_.push_back(v);
    for (std::size_t c = 0; c < n; ++c)
      if (children_[v] >> c & 1u)
        if (--indegree[c] == 0) ready.insert(c);
  }
  if (order_.size() != n) throw Error(Errc::cyclic_dag, "graph has a directed cycle");
}

Mask Dag::parents(std::size_t v) const {
  if (v >= size()) throw Error(Errc::unknown_vertex, "vertex index out of range");
  return parents_[v];
}

Mask Dag::children(std::size_t v) const {
  if (v >= size()) throw Error(Errc::unknown_vertex, "vertex index out of range");
  return children_[v];
}

VarSet Dag::parents(std::string_view v) const {
  if (!universe_.contains(v))
    throw Error(Errc::unknown_vertex, "unknown vertex '" + std::string(v) + "'");
  return VarSet(universe_, parents_[universe_.index_of(v)]);
}

bool d_separated(const Dag& g, Mask x, Mask y, Mask z) {
  const Mask full = g.universe().full();
  if (((x | y | z) & ~full) != 0)
    throw Error(Errc::malformed_query, "query mentions vertices outside the graph");
  if (x == 0 || y == 0) throw Error(Errc::malformed_query, "X and Y must be nonempty");
  if ((x & y) || (x & z) || (y & z))
    throw Error(Errc::malformed_query, "X, Y and Z must be pairwise disjoint");
  const std::size_t n = g.size();

  // Z and its ancestors: colliders in this set pass the ball through.
  Mask anc = z;
  for (auto it = g.topological_order().rbegin(); it != g.topological_order().rend(); ++it)
    if (anc & g.children(*it)) anc |= Mask{1} << *it;

  // Direction: 0 = arrived from a child (moving up), 1 = from a parent.
  std::vector<std::uint8_t> seen(2 * n, 0);
  std::deque<std::pair<std::size_t, int>> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (x >> v & 1u) queue.emplace_back(v, 0);
  auto push_all = [&](Mask targets, int dir) {
    for (std::size_t w = 0; w < n; ++w)
      if (targets >> w & 1u) queue.emplace_back(w, dir);
  };
  while (!queue.empty()) {
    auto [v, dir] = queue.front();
    queue.pop_front();
    if (seen[2 * v + dir]) continue;
    seen[2 * v + dir] = 1;
    const bool observed = z >> v & 1u;
    if (!observed && (y >> v & 1u)) return false;
    if (dir == 0) {
      if (!observed) {
        push_all(g.parents(v), 0);
        push_all(g.children(v), 1);
      }
    } else {
      if (!observed) push_all(g.children(v), 1);
      if (anc >> v & 1u) push_all(g.parents(v), 0);
    }
  }
  return true;
}

bool d_separated(const Dag& g, const VarSet& x, const VarSet& y, const VarSet& z) {
  for (const VarSet* s : {&x, &y, &z})
    if (!(s->universe() == g.universe()))
      throw Error(Errc::universe_mismatch, "query sets over a different universe");
  return d_separated(g, x.mask(), y.mask(), z.mask());
}

CIRelation ci_relation(const Dag& g) {
  const Universe& u = g.universe();
  if (u.size() > kMaxCIRelationUniverse)
    throw Error(Errc::universe_too_large, "CI relation enumeration supports at most 6 vertices");
  CIRelation r{u, {}};
  const Mask full = u.full();
  for (Mask z = 0;; ++z) {
    if (is_subset(z, full)) {
      const Mask rest = full & ~z;
      for (Mask x = rest;; x = (x - 1) & rest) {
        const Mask rest2 = rest & ~x;
        for (Mask y = rest2;; y = (y - 1) & rest2) {
          CITriple t{x, z, y};
          if (t.trivial() || d_separated(g, x, y, z)) r.statements.insert(t.canonical());
          if (y == 0) break;
        }
        if (x == 0) break;
      }
    }
    if (z == full) break;
  }
  return r;
}

Imset standard_imset(const Dag& g) {
  const Universe& u = g.universe();
  Imset out(u);
  out.add(u.full(), 1);
  out.add(0, -1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Mask pa = g.parents(i);
    out.add(pa, 1);
    out.add(pa | (Mask{1} << i), -1);
  }
  return out;
}

bool markov_equivalent(const Dag& a, const Dag& b) {
  if (!(a.universe() == b.universe()))
    throw Error(Errc::universe_mismatch, "DAGs over different universes");
  return standard_imset(a) == standard_imset(b);
}

std::string format_dag(const Dag& g) {
  const Universe& u = g.universe();
  std::ostringstream out;
  out << "vars:";
  for (const auto& n : u.names()) out << ' ' << n;
  out << '\n';
  std::vector<std::pair<std::string, std::string>> lines;
  for (auto [p, c] : g.edges()) lines.emplace_back(u.name(p), u.name(c));
  std::sort(lines.begin(), lines.end());
  for (const auto& [p, c] : lines) out << p << " -> " << c << '\n';
  return out.str();
}

}  // namespace cicat
