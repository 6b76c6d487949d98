#pragma once

// Variable universes, the subset lattice, and the incidence algebra of a
// finite poset (zeta, Moebius, convolution, inversion).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cicat/error.hpp"

namespace cicat {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxUniverse = 16;

inline int popcount(Mask m) noexcept { return __builtin_popcount(m); }
inline bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

// An ordered list of distinct variable names. Cheap to copy: the name table
// is shared and immutable.
class Universe {
 public:
  Universe();
  explicit Universe(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_->size(); }
  const std::vector<std::string>& names() const noexcept { return *names_; }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  Mask full() const noexcept { return size() == 0 ? 0 : (Mask{1} << size()) - 1; }

  // Throws unknown_element.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const noexcept;

  // Mask from variable names; throws unknown_element.
  Mask mask_of(std::span<const std::string> names) const;

  // Set formatting with names in sorted order; the empty set prints as "{}".
  std::string format(Mask m, std::string_view sep = " ") const;

  friend bool operator==(const Universe& a, const Universe& b) noexcept {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

// A subset of a universe.
class VarSet {
 public:
  VarSet(Universe u, Mask members);

  const Universe& universe() const noexcept { return universe_; }
  Mask mask() const noexcept { return members_; }
  int size() const noexcept { return popcount(members_); }
  bool empty() const noexcept { return members_ == 0; }
  bool contains(std::size_t index) const noexcept {
    return index < 32 && (members_ >> index & 1u);
  }
  std::string str() const { return universe_.format(members_); }

  friend bool operator==(const VarSet& a, const VarSet& b) noexcept {
    return a.members_ == b.members_ && a.universe_ == b.universe_;
  }

 private:
  Universe universe_;
  Mask members_;
};

// All 2^n subsets ordered by bitmask value; throws universe_too_large.
std::vector<VarSet> all_subsets(const Universe& u);

// A finite partial order given by its full relation table. Element i is
// identified by its index; labels are for printing only.
class FinitePoset {
 public:
  FinitePoset() = default;

  // leq is row-major: leq[x * n + y] != 0 iff x <= y. Validated for
  // reflexivity, antisymmetry and transitivity (throws invalid_poset).
  FinitePoset(std::vector<std::string> labels, std::vector<std::uint8_t> leq);

  // Reflexive-transitive closure of the given (lower, upper) pairs.
  static FinitePoset from_relation(
      std::vector<std::string> labels,
      std::span<const std::pair<std::size_t, std::size_t>> pairs);
  // Element i is the subset with bitmask i; order is inclusion.
  static FinitePoset subset_lattice(const Universe& u);
  // 0 < 1 < ... < n-1.
  static FinitePoset chain(std::size_t n);

  std::size_t size() const noexcept { return data_ ? data_->labels.size() : 0; }
  const std::string& label(std::size_t x) const;
  std::size_t index_of(std::string_view label) const;

  bool leq(std::size_t x, std::size_t y) const;
  // Elements y with x <= y, in linear-extension order.
  std::span<const std::size_t> up(std::size_t x) const;
  // A linear extension: x < y implies x appears before y.
  std::span<const std::size_t> linear_order() const { return data_->order; }
  std::vector<std::size_t> minimal_elements() const;

  // Comparable pairs are numbered densely; returns -1 for incomparable.
  std::ptrdiff_t pair_slot(std::size_t x, std::size_t y) const;
  std::size_t comparable_pairs() const noexcept { return data_->slots; }

  friend bool operator==(const FinitePoset& a, const FinitePoset& b) noexcept;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::vector<std::uint8_t> leq;
    std::vector<std::vector<std::size_t>> up;
    std::vector<std::size_t> order;
    std::vector<std::ptrdiff_t> slot;
    std::size_t slots = 0;
  };

  void check(std::size_t x) const;

  std::shared_ptr<const Data> data_;
};

inline constexpr std::size_t kMaxPosetSize = 1024;

// A function on comparable pairs of a poset; incomparable pairs are zero.
class IncidenceFunction {
 public:
  explicit IncidenceFunction(FinitePoset p);

  const FinitePoset& poset() const noexcept { return poset_; }
  std::int64_t at(std::size_t x, std::size_t y) const;
  // Throws unknown_element for out-of-range or incomparable pairs.
  void set(std::size_t x, std::size_t y, std::int64_t v);

  friend bool operator==(const IncidenceFunction& a,
                         const IncidenceFunction& b) noexcept {
    return a.poset_ == b.poset_ && a.values_ == b.values_;
  }

 private:
  FinitePoset poset_;
  std::vector<std::int64_t> values_;
};

// Functions element -> integer, indexed by element.
using ElementFunction = std::vector<std::int64_t>;

int zeta(const FinitePoset& p, std::size_t x, std::size_t y);
IncidenceFunction zeta_function(const FinitePoset& p);
IncidenceFunction delta_function(const FinitePoset& p);

// (f * g)(x, y) = sum over x <= z <= y of f(x, z) g(z, y).
IncidenceFunction convolve(const IncidenceFunction& f, const IncidenceFunction& g);

// mu(x, x) = 1, mu(x, y) = -sum_{x <= z < y} mu(x, z).
IncidenceFunction mobius(const FinitePoset& p);

// n(a) = sum_{x <= a} e(x).
ElementFunction accumulate(const ElementFunction& e, const FinitePoset& p);

// e(a) = sum_{x <= a} n(x) mu(x, a). Requires a unique minimal element
// (throws no_unique_bottom).
ElementFunction mobius_invert(const ElementFunction& n, const FinitePoset& p);

}  // namespace cicat
