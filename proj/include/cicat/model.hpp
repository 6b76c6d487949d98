#pragma once

// Model files: a variable declaration plus optional dag, ci, imset,
// separoid and categoroid sections.
//
//   vars: a b c
//   dag:
//   a -> b
//   ci:
//   a | b | c
//   imset:
//   a,b 1
//   separoid:
//   <separoid block>
//   categoroid:
//   <categoroid block>
//
// '#' starts a comment. Sections other than vars may appear in any order,
// each at most once.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cicat/categoroid.hpp"
#include "cicat/ci.hpp"
#include "cicat/dag.hpp"
#include "cicat/imset.hpp"
#include "cicat/separoid.hpp"

namespace cicat {

struct Model {
  Universe universe;
  std::optional<Dag> dag;
  std::vector<CITriple> ci;  // in file order
  bool has_ci = false;
  std::optional<Imset> imset;
  std::optional<Separoid> separoid;
  std::optional<Categoroid> categoroid;
};

// Throws ParseError carrying syntax_error, undeclared_variable,
// cyclic_dag, malformed_triple or a nested block's code.
Model parse_model(std::string_view text);
// Canonical text; parse_model(format_model(m)) formats identically.
std::string format_model(const Model& m);

}  // namespace cicat
