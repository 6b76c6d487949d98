#include "cicat/varlattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cicat {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::universe_too_large: return "universe-too-large";
    case Errc::universe_too_small: return "universe-too-small";
    case Errc::duplicate_name: return "duplicate-name";
    case Errc::unknown_element: return "unknown-element";
    case Errc::unknown_vertex: return "unknown-vertex";
    case Errc::poset_mismatch: return "poset-mismatch";
    case Errc::invalid_poset: return "invalid-poset";
    case Errc::no_unique_bottom: return "no-unique-bottom";
    case Errc::malformed_triple: return "malformed-triple";
    case Errc::malformed_query: return "malformed-query";
    case Errc::universe_mismatch: return "universe-mismatch";
    case Errc::invalid_lattice: return "invalid-lattice";
    case Errc::lattice_too_large: return "lattice-too-large";
    case Errc::not_closed: return "not-closed";
    case Errc::too_large: return "too-large";
    case Errc::cyclic_dag: return "cyclic-dag";
    case Errc::invalid_edge: return "invalid-edge";
    case Errc::search_bound: return "search-bound";
    case Errc::ill_kinded_generator: return "ill-kinded-generator";
    case Errc::invalid_relation: return "invalid-relation";
    case Errc::non_saturated: return "non-saturated";
    case Errc::not_composable: return "not-composable";
    case Errc::enumeration_too_large: return "enumeration-too-large";
    case Errc::missing_structure: return "missing-structure";
    case Errc::syntax_error: return "syntax-error";
    case Errc::undeclared_variable: return "undeclared-variable";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Universe

Universe::Universe() : names_(std::make_shared<const std::vector<std::string>>()) {}

Universe::Universe(std::vector<std::string> names) {
  if (names.size() > kMaxUniverse)
    throw Error(Errc::universe_too_large,
                "universe has " + std::to_string(names.size()) +
                    " variables; at most 16 are supported");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw Error(Errc::syntax_error, "empty variable name");
    if (!seen.insert(n).second)
      throw Error(Errc::duplicate_name, "duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::size_t Universe::index_of(std::string_view name) const {
  auto it = std::find(names_->begin(), names_->end(), name);
  if (it == names_->end())
    throw Error(Errc::unknown_element, "unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_->begin());
}

bool Universe::contains(std::string_view name) const noexcept {
  return std::find(names_->begin(), names_->end(), name) != names_->end();
}

Mask Universe::mask_of(std::span<const std::string> names) const {
  Mask m = 0;
  for (const auto& n : names) m |= Mask{1} << index_of(n);
  return m;
}

std::string Universe::format(Mask m, std::string_view sep) const {
  if (m == 0) return "{}";
  std::vector<std::string_view> parts;
  for (std::size_t i = 0; i < size(); ++i)
    if (m >> i & 1u) parts.push_back((*names_)[i]);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

VarSet::VarSet(Universe u, Mask members) : universe_(std::move(u)), members_(members) {
  if (!is_subset(members_, universe_.full()))
    throw Error(Errc::unknown_element, "subset mask exceeds the universe");
}

std::vector<VarSet> all_subsets(const Universe& u) {
  if (u.size() > kMaxUniverse)
    throw Error(Errc::universe_too_large, "universe too large to enumerate");
  std::vector<VarSet> out;
  out.reserve(std::size_t{1} << u.size());
  for (Mask m = 0; m <= u.full(); ++m) {
    out.emplace_back(u, m);
    if (m == u.full()) break;
  }
  return out;
}

// ------------------------------------------------------------- FinitePoset

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<std::uint8_t> leq) {
  const std::size_t n = labels.size();
  if (n > kMaxPosetSize)
    throw Error(Errc::too_large, "poset has more than 1024 elements");
  if (leq.size() != n * n)
    throw Error(Errc::invalid_poset, "relation table has the wrong size");
  auto le = [&](std::size_t x, std::size_t y) { return leq[x * n + y] != 0; };
  for (std::size_t x = 0; x < n; ++x) {
    if (!le(x, x))
      throw Error(Errc::invalid_poset, "relation is not reflexive at " + labels[x]);
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && le(x, y) && le(y, x))
        throw Error(Errc::invalid_poset,
                    "relation is not antisymmetric at " + labels[x] + ", " + labels[y]);
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!le(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (le(y, z) && !le(x, z))
          throw Error(Errc::invalid_poset, "relation is not transitive at " + labels[x] +
                                               ", " + labels[y] + ", " + labels[z]);
    }

  auto d = std::make_shared<Data>();
  // Sorting by down-set size gives a linear extension.
  std::vector<std::size_t> below(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) below[y] += le(x, y);
  d->order.resize(n);
  std::iota(d->order.begin(), d->order.end(), std::size_t{0});
  std::stable_sort(d->order.begin(), d->order.end(),
                   [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
  d->up.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : d->order)
      if (le(x, y)) d->up[x].push_back(y);
  d->slot.assign(n * n, -1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y : d->up[x]) d->slot[x * n + y] = static_cast<std::ptrdiff_t>(d->slots++);
  d->labels = std::move(labels);
  d->leq = std::move(leq);
  data_ = std::move(d);
}

FinitePoset FinitePoset::from_relation(
    std::vector<std::string> labels,
    std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  const std::size_t n = labels.size();
  if (n > kMaxPosetSize)
    throw Error(Errc::too_large, "poset has more than 1024 elements");
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw Error(Errc::unknown_element, "relation element out of range");
    leq[a * n + b] = 1;
  }
  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  return FinitePoset(std::move(labels), std::move(leq));
}

FinitePoset FinitePoset::subset_lattice(const Universe& u) {
  if (u.size() > 10)
    throw Error(Errc::universe_too_large,
                "subset lattices are materialized for at most 10 variables");
  const std::size_t n = std::size_t{1} << u.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Mask m = 0; m < n; ++m) labels.push_back(u.format(m, ","));
  std::vector<std::uint8_t> leq(n * n, 0);
  for (Mask a = 0; a < n; ++a)
    for (Mask b = 0; b < n; ++b) leq[a * n + b] = is_subset(a, b);
  return FinitePoset(std::move(labels), std::move(leq));
}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) leq[a * n + b] = 1;
  return FinitePoset(std::move(labels), std::move(leq));
}

void FinitePoset::check(std::size_t x) const {
  if (x >= size())
    throw Error(Errc::unknown_element, "poset element " + std::to_string(x) + " out of range");
}

const std::string& FinitePoset::label(std::size_t x) const {
  check(x);
  return data_->labels[x];
}

std::size_t FinitePoset::index_of(std::string_view label) const {
  if (data_) {
    auto it = std::find(data_->labels.begin(), data_->labels.end(), label);
    if (it != data_->labels.end()) return static_cast<std::size_t>(it - data_->labels.begin());
  }
  throw Error(Errc::unknown_element, "unknown poset element '" + std::string(label) + "'");
}

bool FinitePoset::leq(std::size_t x, std::size_t y) const {
  check(x);
  check(y);
  return data_->leq[x * size() + y] != 0;
}

std::span<const std::size_t> FinitePoset::up(std::size_t x) const {
  check(x);
  return data_->up[x];
}

std::vector<std::size_t> FinitePoset::minimal_elements() const {
  std::vector<std::size_t> out;
  const std::size_t n = size();
  for (std::size_t y = 0; y < n; ++y) {
    bool minimal = true;
    for (std::size_t x = 0; x < n && minimal; ++x)
      if (x != y && data_->leq[x * n + y]) minimal = false;
    if (minimal) out.push_back(y);
  }
  return out;
}

std::ptrdiff_t FinitePoset::pair_slot(std::size_t x, std::size_t y) const {
  check(x);
  check(y);
  return data_->slot[x * size() + y];
}

bool operator==(const FinitePoset& a, const FinitePoset& b) noexcept {
  if (a.data_ == b.data_) return true;
  if (!a.data_ || !b.data_) return a.size() == b.size();
  return a.data_->labels == b.data_->labels && a.data_->leq == b.data_->leq;
}

// ------------------------------------------------------- IncidenceFunction

IncidenceFunction::IncidenceFunction(FinitePoset p)
    : poset_(std::move(p)), values_(poset_.size() ? poset_.comparable_pairs() : 0, 0) {}

std::int64_t IncidenceFunction::at(std::size_t x, std::size_t y) const {
  auto s = poset_.pair_slot(x, y);
  return s < 0 ? 0 : values_[static_cast<std::size_t>(s)];
}

void IncidenceFunction::set(std::size_t x, std::size_t y, std::int64_t v) {
  auto s = poset_.pair_slot(x, y);
  if (s < 0)
    throw Error(Errc::unknown_element, "incidence functions vanish on incomparable pairs");
  values_[static_cast<std::size_t>(s)] = v;
}

int zeta(const FinitePoset& p, std::size_t x, std::size_t y) { return p.leq(x, y) ? 1 : 0; }

IncidenceFunction zeta_function(const FinitePoset& p) {
  IncidenceFunction f(p);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y : p.up(x)) f.set(x, y, 1);
  return f;
}

IncidenceFunction delta_function(const FinitePoset& p) {
  IncidenceFunction f(p);
  for (std::size_t x = 0; x < p.size(); ++x) f.set(x, x, 1);
  return f;
}

IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g) {
  if (!(f.poset() == g.poset()))
    throw Error(Errc::poset_mismatch, "convolution of functions on different posets");
  const FinitePoset& p = f.poset();
  IncidenceFunction h(p);
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y : p.up(x)) {
      std::int64_t sum = 0;
      for (std::size_t z : p.up(x))
        if (p.leq(z, y)) sum += f.at(x, z) * g.at(z, y);
      h.set(x, y, sum);
    }
  }
  return h;
}

IncidenceFunction mobius(const FinitePoset& p) {
  IncidenceFunction mu(p);
  for (std::size_t x = 0; x < p.size(); ++x) {
    // up(x) is in linear-extension order, so every z < y is already done.
    for (std::size_t y : p.up(x)) {
      if (y == x) {
        mu.set(x, x, 1);
        continue;
      }
      std::int64_t sum = 0;
      for (std::size_t z : p.up(x))
        if (z != y && p.leq(z, y)) sum += mu.at(x, z);
      mu.set(x, y, -sum);
    }
  }
  return mu;
}

ElementFunction accumulate(const ElementFunction& e, const FinitePoset& p) {
  if (e.size() != p.size())
    throw Error(Errc::poset_mismatch, "function size does not match the poset");
  ElementFunction n(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t a : p.up(x)) n[a] += e[x];
  return n;
}

ElementFunction mobius_invert(const ElementFunction& n, const FinitePoset& p) {
  if (n.size() != p.size())
    throw Error(Errc::poset_mismatch, "function size does not match the poset");
  if (p.minimal_elements().size() != 1)
    throw Error(Errc::no_unique_bottom, "Moebius inversion needs a unique minimal element");
  const IncidenceFunction mu = mobius(p);
  ElementFunction e(p.size(), 0);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t a : p.up(x)) e[a] += n[x] * mu.at(x, a);
  return e;
}

}  // namespace cicat
