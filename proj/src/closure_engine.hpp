#pragma once

// Round-based least-fixpoint engine shared by close() and derive(). Each
// round fires every rule against a snapshot of the statements known at the
// start of the round, so discovery depth equals the round number.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "cicat/ci.hpp"

namespace cicat::detail {

class ClosureEngine {
 public:
  struct Justification {
    Rule rule;
    std::vector<CITriple> premises;
  };

  ClosureEngine(const Universe& u, RuleSet rules, bool record);

  void seed(std::span<const CITriple> inputs);
  void run();

  bool present(const CITriple& t) const { return in_range(t) && state_[encode(t)] == kKnown; }
  const std::vector<CITriple>& known() const { return known_; }
  const Justification* justification(const CITriple& t) const;
  CIRelation relation() const;

 private:
  static constexpr std::uint8_t kAbsent = 0, kKnown = 1, kPending = 2;

  bool in_range(const CITriple& t) const {
    return ((t.x | t.y | t.z) & ~universe_.full()) == 0;
  }
  std::uint32_t encode(const CITriple& t) const {
    return t.x | (t.z << n_) | (t.y << (2 * n_));
  }
  void add_known(const CITriple& t);

  Universe universe_;
  std::size_t n_;
  RuleSet rules_;
  bool record_;
  std::vector<std::uint8_t> state_;
  std::vector<CITriple> known_;
  std::unordered_map<std::uint32_t, Justification> just_;
};

}  // namespace cicat::detail
