#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cicat {

enum class Errc {
  universe_too_large,
  universe_too_small,
  duplicate_name,
  unknown_element,
  unknown_vertex,
  poset_mismatch,
  invalid_poset,
  no_unique_bottom,
  malformed_triple,
  malformed_query,
  universe_mismatch,
  invalid_lattice,
  lattice_too_large,
  not_closed,
  too_large,
  cyclic_dag,
  invalid_edge,
  search_bound,
  ill_kinded_generator,
  invalid_relation,
  non_saturated,
  not_composable,
  enumeration_too_large,
  missing_structure,
  syntax_error,
  undeclared_variable,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// A diagnostic that points into a text input (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, std::size_t column, const std::string& msg)
      : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cicat
