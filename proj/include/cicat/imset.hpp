#pragma once

// Integer-valued multisets on the subset lattice of a universe.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cicat/ci.hpp"
#include "cicat/varlattice.hpp"

namespace cicat {

class Imset {
 public:
  explicit Imset(Universe u) : universe_(std::move(u)) {}

  const Universe& universe() const noexcept { return universe_; }
  const std::map<Mask, std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::int64_t at(Mask a) const;
  bool zero() const noexcept { return coeffs_.empty(); }

  // Adds v to the coefficient of a; zero entries are dropped.
  void add(Mask a, std::int64_t v);

  Imset& operator+=(const Imset& o);
  Imset& operator-=(const Imset& o);
  friend Imset operator+(Imset a, const Imset& b) { return a += b; }
  friend Imset operator-(Imset a, const Imset& b) { return a -= b; }
  friend Imset operator*(std::int64_t k, const Imset& a);

  std::int64_t sum() const;
  std::int64_t positive_mass() const;

  friend bool operator==(const Imset& a, const Imset& b) noexcept {
    return a.universe_ == b.universe_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Universe universe_;
  std::map<Mask, std::int64_t> coeffs_;
};

Imset delta(const Universe& u, Mask a);

// Integer linear combination; throws universe_mismatch.
Imset combine(const std::vector<std::pair<std::int64_t, Imset>>& terms);

struct SemiElementary {
  Imset imset;
  bool degenerate;  // an empty side; the imset is zero
};

// d(XYZ) + d(Z) - d(XZ) - d(YZ).
SemiElementary semi_elementary(const Universe& u, const CITriple& t);

struct ElementaryTriple {
  std::size_t a, b;  // a < b
  Mask c;
  auto operator<=>(const ElementaryTriple&) const = default;
};

struct ElementaryBasis {
  Universe universe;
  std::vector<ElementaryTriple> entries;
  std::vector<Imset> imsets;
};

// All <a,b|C>, ordered by (a, b) then C; requires 2..6 variables.
ElementaryBasis elementary_basis(const Universe& u);
std::string format_elementary(const ElementaryTriple& e, const Universe& u);

// Sum over S of u(S) * |S|(|S|-1)/2. Exactly the number of elementary
// terms in any combinatorial decomposition of u.
std::int64_t imset_degree(const Imset& u);

struct Decomposition {
  enum class Status { found, not_combinatorial, bound_exhausted };
  Status status;
  // (multiplicity, basis index), basis order, zero multiplicities omitted.
  std::vector<std::pair<std::int64_t, std::size_t>> terms;
};

inline constexpr std::size_t kMaxImsetUniverse = 5;
inline constexpr std::int64_t kMaxDegreeBound = 8;

// Nonnegative elementary decomposition with at most degree_bound terms.
// not_combinatorial is definitive; bound_exhausted means the exact degree
// of u exceeds degree_bound so no search was possible.
Decomposition decompose_combinatorial(const Imset& u, std::int64_t degree_bound);
Decomposition decompose_combinatorial(const Imset& u, std::int64_t degree_bound,
                                      const ElementaryBasis& basis);

// Smallest l in 1..l_max with l*u - v combinatorial within degree_bound.
std::optional<std::int64_t> implies(const Imset& u, const Imset& v, std::int64_t l_max,
                                    std::int64_t degree_bound);

// g(bottom, A) = sum_{B <= A} u(B) on the subset lattice of u's universe.
IncidenceFunction mobius_form(const Imset& u);
// Reads g(bottom, .) back through Moebius inversion.
Imset imset_from_mobius_form(const IncidenceFunction& g, const Universe& u);

// "<names joined by ','> <coefficient>" per line, by bitmask; {} for the
// empty set. The zero imset is the empty document.
std::string format_imset(const Imset& u);
// Throws ParseError; `first_line` offsets reported line numbers.
Imset parse_imset(std::string_view text, const Universe& u, std::size_t first_line = 1);

}  // namespace cicat
