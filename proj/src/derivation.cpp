#include <algorithm>
#include <map>
#include <sstream>

#include "cicat/ci.hpp"
#include "closure_engine.hpp"

namespace cicat {

std::optional<Derivation> derive(std::span<const CITriple> inputs, const CITriple& target,
                                 RuleSet rules, const Universe& u) {
  validate(target, u);
  detail::ClosureEngine engine(u, rules, true);
  engine.seed(inputs);
  engine.run();

  // Prefer the target's own orientation; fall back to its symmetric twin.
  CITriple goal = target;
  if (!engine.present(goal)) {
    goal = target.swapped();
    if (!engine.present(goal)) return std::nullopt;
  }

  std::map<CITriple, std::size_t> input_index;
  for (std::size_t i = 0; i < inputs.size(); ++i) input_index.emplace(inputs[i], i);

  Derivation d;
  d.target = target;
  std::map<CITriple, std::size_t> step_index;

  auto ref_of = [&](const CITriple& t) {
    if (auto it = input_index.find(t); it != input_index.end())
      return PremiseRef{PremiseRef::Source::input, it->second};
    return PremiseRef{PremiseRef::Source::step, step_index.at(t)};
  };

  // Post-order walk over first-discovery justifications.
  auto visit = [&](auto&& self, const CITriple& t) -> void {
    if (input_index.count(t) || step_index.count(t)) return;
    const auto* j = engine.justification(t);
    if (!j) {
      d.steps.push_back({Rule::trivial, {}, t});
    } else {
      for (const auto& p : j->premises) self(self, p);
      DerivationStep step{j->rule, {}, t};
      for (const auto& p : j->premises) step.premises.push_back(ref_of(p));
      d.steps.push_back(std::move(step));
    }
    step_index.emplace(t, d.steps.size() - 1);
  };
  visit(visit, goal);
  return d;
}

ReplayResult replay(const Derivation& d, std::span<const CITriple> inputs) {
  auto fail = [](std::size_t i, std::string msg) {
    return ReplayResult{false, i, std::move(msg)};
  };
  std::set<CITriple> available(inputs.begin(), inputs.end());
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& step = d.steps[i];
    RuleInstance inst{step.rule, {}, step.conclusion};
    for (const auto& ref : step.premises) {
      if (ref.source == PremiseRef::Source::input) {
        if (ref.index >= inputs.size()) return fail(i, "premise refers to a missing input");
        inst.premises.push_back(inputs[ref.index]);
      } else {
        if (ref.index >= i)
          return fail(i, "premise " + std::to_string(ref.index + 1) + " is used before it is derived");
        inst.premises.push_back(d.steps[ref.index].conclusion);
      }
    }
    if (!is_instance(inst))
      return fail(i, "step is not an instance of " + std::string(rule_name(step.rule)));
    // Disjunctive rules only ever restate a disjunct that already holds.
    if (step.rule == Rule::weak_transitivity && !available.count(step.conclusion) &&
        !step.conclusion.trivial())
      return fail(i, "weak_transitivity conclusion is not already established");
    available.insert(step.conclusion);
  }
  const CITriple want = d.target.canonical();
  if (d.steps.empty()) {
    for (const auto& t : inputs)
      if (t.canonical() == want) return {};
    return fail(0, "empty derivation but the target is not an input");
  }
  if (d.steps.back().conclusion.canonical() != want)
    return fail(d.steps.size() - 1, "final conclusion differs from the target");
  return {};
}

std::string format_derivation(const Derivation& d, const Universe& u) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    out << i + 1 << ": " << rule_name(s.rule);
    for (const auto& p : s.premises) {
      if (p.source == PremiseRef::Source::input)
        out << " h" << p.index + 1;
      else
        out << ' ' << p.index + 1;
    }
    out << " |- (" << format_triple(s.conclusion, u) << ")\n";
  }
  return out.str();
}

Derivation parse_derivation(std::string_view text, const CITriple& target, const Universe& u) {
  Derivation d;
  d.target = target;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& msg) {
    return Error(Errc::syntax_error, "derivation line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    auto turnstile = line.find("|-");
    if (colon == std::string::npos || turnstile == std::string::npos || turnstile < colon)
      throw bad("expected '<index>: <rule> <premises...> |- (X | Z | Y)'");
    std::istringstream head(line.substr(colon + 1, turnstile - colon - 1));
    std::string rule_tok;
    if (!(head >> rule_tok)) throw bad("missing rule name");
    auto rule = rule_from_name(rule_tok);
    if (!rule) throw bad("unknown rule '" + rule_tok + "'");
    DerivationStep step{*rule, {}, {}};
    std::string tok;
    while (head >> tok) {
      try {
        if (tok.size() > 1 && tok[0] == 'h')
          step.premises.push_back({PremiseRef::Source::input, std::stoul(tok.substr(1)) - 1});
        else
          step.premises.push_back({PremiseRef::Source::step, std::stoul(tok) - 1});
      } catch (const std::logic_error&) {
        throw bad("bad premise id '" + tok + "'");
      }
    }
    auto open = line.find('(', turnstile), close = line.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw bad("conclusion must be parenthesized");
    step.conclusion = parse_triple(std::string_view(line).substr(open + 1, close - open - 1), u);
    d.steps.push_back(std::move(step));
  }
  return d;
}

}  // namespace cicat
