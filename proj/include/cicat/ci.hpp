#pragma once

// Conditional-independence statements (X, Z, Y) = "X independent of Y given
// Z", the graphoid-style rule sets, least-fixpoint closure and derivations.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cicat/varlattice.hpp"

namespace cicat {

// Components are masks over a universe that is carried separately (by the
// relation or passed alongside).
struct CITriple {
  Mask x = 0;
  Mask z = 0;
  Mask y = 0;

  bool valid() const noexcept { return (x & y) == 0 && (x & z) == 0 && (y & z) == 0; }
  bool trivial() const noexcept { return x == 0 || y == 0; }
  CITriple swapped() const noexcept { return {y, z, x}; }
  // Orders (x, y) by bitmask; used for set membership only.
  CITriple canonical() const noexcept { return x <= y ? *this : swapped(); }

  auto operator<=>(const CITriple&) const = default;
};

// Throws malformed_triple when components overlap or leave the universe.
void validate(const CITriple& t, const Universe& u);

// "X | Z | Y" with sorted names and {} for the empty set.
std::string format_triple(const CITriple& t, const Universe& u);
// Parses "a b | {} | c"; throws syntax_error / undeclared_variable /
// malformed_triple.
CITriple parse_triple(std::string_view text, const Universe& u);

enum class Rule : std::uint8_t {
  symmetry,
  decomposition,
  weak_union,
  contraction,
  intersection,
  weak_transitivity,
  chordality,
  trivial,  // pseudo-rule: statements with an empty side are axioms
};

inline constexpr std::array<Rule, 7> kInferenceRules = {
    Rule::symmetry,     Rule::decomposition,     Rule::weak_union, Rule::contraction,
    Rule::intersection, Rule::weak_transitivity, Rule::chordality};

std::string_view rule_name(Rule r) noexcept;
std::optional<Rule> rule_from_name(std::string_view name) noexcept;

class RuleSet {
 public:
  constexpr RuleSet() = default;
  constexpr RuleSet(std::initializer_list<Rule> rules) {
    for (Rule r : rules) bits_ |= bit(r);
  }

  static constexpr RuleSet semigraphoid() {
    return {Rule::symmetry, Rule::decomposition, Rule::weak_union, Rule::contraction};
  }
  static constexpr RuleSet graphoid() {
    return {Rule::symmetry, Rule::decomposition, Rule::weak_union, Rule::contraction,
            Rule::intersection};
  }
  // "semigraphoid", "graphoid", or a comma-separated rule list.
  static RuleSet parse(std::string_view text);

  constexpr bool has(Rule r) const noexcept { return (bits_ & bit(r)) != 0; }
  constexpr RuleSet with(Rule r) const noexcept {
    RuleSet s = *this;
    s.bits_ |= bit(r);
    return s;
  }
  std::vector<Rule> rules() const;
  std::string str() const;

  friend constexpr bool operator==(RuleSet, RuleSet) = default;

 private:
  static constexpr std::uint8_t bit(Rule r) { return std::uint8_t(1u << unsigned(r)); }
  std::uint8_t bits_ = 0;
};

// A ternary relation stored as canonical keys.
struct CIRelation {
  Universe universe;
  std::set<CITriple> statements;

  bool contains(const CITriple& t) const { return statements.count(t.canonical()) != 0; }
  // Non-trivial statements only.
  std::vector<CITriple> nontrivial() const;
};

inline constexpr std::size_t kMaxClosureUniverse = 8;

// One inference step: premises (one or two, in the order the rule states
// them) and the conclusion.
struct RuleInstance {
  Rule rule;
  std::vector<CITriple> premises;
  CITriple conclusion;
};

// Enumerates every instance of `rule` whose first premise is `first` and
// whose remaining premises satisfy `present`. Instances are produced in a
// fixed order. Weak transitivity and chordality only produce a conclusion
// that `present` already accepts (they are disjunctive rules).
void for_each_instance(Rule rule, const CITriple& first, std::size_t universe_size,
                       const std::function<bool(const CITriple&)>& present,
                       const std::function<void(const RuleInstance&)>& emit);

// Checks a single claimed instance against the rule's definition.
bool is_instance(const RuleInstance& inst);

// Least fixpoint of `rules` over the inputs and all trivial statements.
// Throws universe_too_large (> 8 variables) or malformed_triple.
CIRelation close(std::span<const CITriple> inputs, RuleSet rules, const Universe& u);
bool entails(std::span<const CITriple> inputs, const CITriple& target, RuleSet rules,
             const Universe& u);

// ------------------------------------------------------------ derivations

struct PremiseRef {
  enum class Source : std::uint8_t { input, step };
  Source source;
  std::size_t index;  // 0-based into inputs or steps
};

struct DerivationStep {
  Rule rule;
  std::vector<PremiseRef> premises;
  CITriple conclusion;
};

struct Derivation {
  std::vector<DerivationStep> steps;
  CITriple target;
};

// Breadth-first derivation; nullopt when the target is outside the closure.
std::optional<Derivation> derive(std::span<const CITriple> inputs, const CITriple& target,
                                 RuleSet rules, const Universe& u);

struct ReplayResult {
  bool ok = true;
  std::optional<std::size_t> failing_step;  // 0-based
  std::string message;
};

ReplayResult replay(const Derivation& d, std::span<const CITriple> inputs);

// One line per step: "<index>: <rule> <premise-ids...> |- (X | Z | Y)".
// Steps are numbered from 1; premise ids are "h<k>" for the k-th input
// (1-based) and the bare step number otherwise.
std::string format_derivation(const Derivation& d, const Universe& u);
Derivation parse_derivation(std::string_view text, const CITriple& target, const Universe& u);

}  // namespace cicat
