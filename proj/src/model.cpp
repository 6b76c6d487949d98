#include "cicat/model.hpp"

#include <set>
#include <sstream>

namespace cicat {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < line.size();) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

enum class Section { none, vars, dag, ci, imset, separoid, categoroid };

std::optional<Section> header(const std::string& word) {
  if (word == "vars:") return Section::vars;
  if (word == "dag:") return Section::dag;
  if (word == "ci:") return Section::ci;
  if (word == "imset:") return Section::imset;
  if (word == "separoid:") return Section::separoid;
  if (word == "categoroid:") return Section::categoroid;
  return std::nullopt;
}

}  // namespace

Model parse_model(std::string_view text) {
  Model m;
  bool have_vars = false;
  std::set<Section> seen;
  Section mode = Section::none;
  std::set<Dag::Edge> edges;
  std::size_t block_start = 0;
  std::string block;

  auto flush_block = [&]() {
    if (mode == Section::imset) m.imset = parse_imset(block, m.universe, block_start);
    else if (mode == Section::separoid) m.separoid = parse_separoid(block, block_start);
    else if (mode == Section::categoroid) m.categoroid = parse_categoroid(block, block_start);
    block.clear();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = tokenize(line);
    if (toks.empty()) {
      if (mode == Section::imset || mode == Section::separoid || mode == Section::categoroid)
        block += '\n';
      continue;
    }
    if (auto h = header(toks[0].text)) {
      flush_block();
      if (!seen.insert(*h).second)
        throw ParseError(Errc::syntax_error, lineno, toks[0].column,
                         "section '" + toks[0].text + "' appears twice");
      mode = *h;
      block_start = lineno + 1;
      if (*h == Section::vars) {
        std::vector<std::string> names;
        for (std::size_t i = 1; i < toks.size(); ++i) names.push_back(toks[i].text);
        try {
          m.universe = Universe(std::move(names));
        } catch (const Error& e) {
          throw ParseError(e.code(), lineno, toks[0].column, e.what());
        }
        have_vars = true;
        mode = Section::none;
      } else if (toks.size() > 1) {
        throw ParseError(Errc::syntax_error, lineno, toks[1].column,
                         "section header '" + toks[0].text + "' takes no arguments");
      } else if (!have_vars && (*h == Section::dag || *h == Section::ci || *h == Section::imset)) {
        throw ParseError(Errc::syntax_error, lineno, toks[0].column,
                         "'vars:' must precede the '" + toks[0].text + "' section");
      }
      if (*h == Section::dag) m.dag = Dag(m.universe, {});
      if (*h == Section::ci) m.has_ci = true;
      continue;
    }
    switch (mode) {
      case Section::none:
      case Section::vars:
        throw ParseError(Errc::syntax_error, lineno, toks[0].column,
                         "unexpected '" + toks[0].text + "' outside a section");
      case Section::dag: {
        if (toks.size() != 3 || toks[1].text != "->")
          throw ParseError(Errc::syntax_error, lineno, toks[0].column, "expected an edge 'a -> b'");
        auto vertex = [&](const Token& t) {
          if (!m.universe.contains(t.text))
            throw ParseError(Errc::undeclared_variable, lineno, t.column,
                             "undeclared variable '" + t.text + "'");
          return m.universe.index_of(t.text);
        };
        edges.insert({vertex(toks[0]), vertex(toks[2])});
        try {
          m.dag = Dag(m.universe, edges);
        } catch (const Error& e) {
          throw ParseError(e.code(), lineno, toks[0].column, e.what());
        }
        break;
      }
      case Section::ci:
        try {
          m.ci.push_back(parse_triple(line, m.universe));
        } catch (const Error& e) {
          throw ParseError(e.code(), lineno, toks[0].column, e.what());
        }
        break;
      case Section::imset:
      case Section::separoid:
      case Section::categoroid:
        block += raw;
        block += '\n';
        break;
    }
  }
  flush_block();
  return m;
}

std::string format_model(const Model& m) {
  std::string out = "vars:";
  for (const auto& n : m.universe.names()) out += " " + n;
  out += '\n';
  if (m.dag) {
    out += "dag:\n";
    for (const auto& [p, c] : m.dag->edges())
      out += m.universe.name(p) + " -> " + m.universe.name(c) + '\n';
  }
  if (m.has_ci) {
    out += "ci:\n";
    for (const auto& t : m.ci) out += format_triple(t, m.universe) + '\n';
  }
  if (m.imset) out += "imset:\n" + format_imset(*m.imset);
  if (m.separoid) out += "separoid:\n" + format_separoid(*m.separoid);
  if (m.categoroid) out += "categoroid:\n" + format_categoroid(*m.categoroid);
  return out;
}

}  // namespace cicat
