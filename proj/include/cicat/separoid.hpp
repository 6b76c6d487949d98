#pragma once

// Join semi-lattices and (strong) separoids: the ternary relation
// "x indep y | z", stored as triples (x, z, y) of element indices.

#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cicat/ci.hpp"

namespace cicat {

using Table = std::vector<std::vector<std::size_t>>;

class JoinSemilattice {
 public:
  JoinSemilattice() = default;
  // Checks that join is total, associative, commutative and idempotent
  // (throws invalid_lattice).
  JoinSemilattice(std::vector<std::string> elements, Table join);

  static JoinSemilattice chain(std::size_t n);
  static JoinSemilattice subset_lattice(const Universe& u);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const Table& join_table() const noexcept { return join_; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  // Induced order: a <= b iff a v b = b.
  bool leq(std::size_t a, std::size_t b) const { return join_[a][b] == b; }
  std::size_t index_of(std::string_view name) const;

  friend bool operator==(const JoinSemilattice&, const JoinSemilattice&) = default;

 private:
  std::vector<std::string> elements_;
  Table join_;
};

struct SepTriple {
  std::size_t x = 0, z = 0, y = 0;
  auto operator<=>(const SepTriple&) const = default;
};

enum class SeparoidAxiom { P1, P2, P3, P4, P5, P6 };
std::string_view axiom_name(SeparoidAxiom a) noexcept;

class Separoid {
 public:
  Separoid() = default;
  // Throws invalid_lattice if `meet` is not the greatest lower bound, or
  // unknown_element for out-of-range triples.
  Separoid(JoinSemilattice lattice, std::set<SepTriple> ternary,
           std::optional<Table> meet = std::nullopt);

  const JoinSemilattice& lattice() const noexcept { return lattice_; }
  const std::set<SepTriple>& ternary() const noexcept { return ternary_; }
  const std::optional<Table>& meet_table() const noexcept { return meet_; }
  bool strong() const noexcept { return meet_.has_value(); }
  std::size_t meet(std::size_t a, std::size_t b) const { return (*meet_)[a][b]; }
  bool contains(const SepTriple& t) const { return ternary_.count(t) != 0; }

  friend bool operator==(const Separoid&, const Separoid&) = default;

 private:
  JoinSemilattice lattice_;
  std::set<SepTriple> ternary_;
  std::optional<Table> meet_;
};

// An axiom instance: premises in the order the axiom states them.
struct SeparoidInstance {
  SeparoidAxiom axiom;
  std::vector<SepTriple> premises;
  SepTriple conclusion;
};

// Enumerates P2..P6 instances whose first premise is `first` and whose
// other premises are in `s` (P6 only when `s` is strong).
void for_each_separoid_instance(const Separoid& s, const SepTriple& first,
                                const std::function<void(const SeparoidInstance&)>& emit);

inline constexpr std::size_t kMaxSeparoidClosure = 12;

// Least relation containing s.ternary and every P1 instance, closed under
// P2..P5 (and P6 for strong separoids). Throws lattice_too_large.
Separoid separoid_close(const Separoid& s);

struct SeparoidViolation {
  SeparoidAxiom axiom;
  std::vector<SepTriple> premises;
  SepTriple conclusion;
};

std::vector<SeparoidViolation> check_separoid(const Separoid& s);
std::string format_violation(const SeparoidViolation& v, const JoinSemilattice& l);

// Subset lattice with union/intersection; statements lifted to elements
// indexed by bitmask. Throws universe_too_large above 4 variables.
Separoid graphoid_to_separoid(const CIRelation& r);

// Text block:
//   elements: e1 e2 ...
//   join:
//   <one row per element>
//   meet:          (optional)
//   <rows>
//   CI x | z | y   (one per triple)
std::string format_separoid(const Separoid& s);
// Throws ParseError; `first_line` offsets reported line numbers.
Separoid parse_separoid(std::string_view text, std::size_t first_line = 1);

}  // namespace cicat
