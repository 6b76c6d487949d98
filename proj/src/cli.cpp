#include "cicat/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cicat/model.hpp"

namespace cicat::cli {

namespace {

// Result of a command body; usage problems are thrown as Error.
using Body = std::function<int(std::ostream&)>;

Model load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::syntax_error, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    throw Error(e.code(), path + ":" + e.what());
  }
}

Mask names_to_mask(const Universe& u, const std::string& text) {
  std::string s = text;
  for (char& ch : s)
    if (ch == ',') ch = ' ';
  std::istringstream words(s);
  Mask m = 0;
  for (std::string w; words >> w;) {
    if (w == "{}") continue;
    if (!u.contains(w)) throw Error(Errc::undeclared_variable, "undeclared variable '" + w + "'");
    m |= Mask{1} << u.index_of(w);
  }
  return m;
}

Imset model_imset(const Model& m) {
  if (m.imset) return *m.imset;
  if (m.dag) return standard_imset(*m.dag);
  if (m.has_ci) {
    Imset sum(m.universe);
    for (const auto& t : m.ci) sum += semi_elementary(m.universe, t).imset;
    return sum;
  }
  throw Error(Errc::missing_structure, "model has no imset, dag or ci section");
}

Categoroid model_categoroid(const Model& m, RuleSet rules) {
  if (m.categoroid) return *m.categoroid;
  if (m.separoid) return from_separoid(*m.separoid);
  if (m.has_ci) return from_ci_relation(close(m.ci, rules, m.universe), rules);
  if (m.dag) return from_ci_relation(ci_relation(*m.dag), rules);
  throw Error(Errc::missing_structure, "model has no categoroid, separoid, ci or dag section");
}

void print_violations(std::ostream& out, const Categoroid& c, const std::vector<Violation>& vs) {
  for (const auto& v : vs) {
    out << "violation: " << v.what;
    for (std::size_t i = 0; i < v.arrows.size(); ++i)
      out << (i ? ", " : " [") << c.format_arrow(v.arrows[i]);
    if (!v.arrows.empty()) out << ']';
    out << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conditional independence, imsets and categoroids", "cicat"};
  app.require_subcommand(1);
  Body body;

  std::string model_path, other_path, rules_text = "semigraphoid";

  auto* dsep = app.add_subcommand("dsep", "Decide d-separation of X and Y given Z in a DAG");
  std::string xs, ys, zs;
  dsep->add_option("model", model_path, "Model file with a dag section")->required();
  dsep->add_option("--x", xs, "First variable set")->required();
  dsep->add_option("--y", ys, "Second variable set")->required();
  dsep->add_option("--z", zs, "Conditioning set");
  dsep->callback([&] {
    body = [&](std::ostream& o) {
      Model m = load(model_path);
      if (!m.dag) throw Error(Errc::missing_structure, "model has no dag section");
      const Universe& u = m.universe;
      const bool sep = d_separated(*m.dag, names_to_mask(u, xs), names_to_mask(u, ys),
                                   names_to_mask(u, zs));
      o << (sep ? "d-separated" : "d-connected") << '\n';
      return sep ? 0 : 1;
    };
  });

  auto* closecmd = app.add_subcommand("close", "Close the ci statements (or a separoid)");
  bool all = false;
  closecmd->add_option("model", model_path)->required();
  closecmd->add_option("--rules", rules_text, "semigraphoid, graphoid or a comma list of rules");
  closecmd->add_flag("--all", all, "Also print trivial statements");
  closecmd->callback([&] {
    body = [&](std::ostream& o) {
      Model m = load(model_path);
      if (!m.has_ci && m.separoid) {
        o << format_separoid(separoid_close(*m.separoid));
        return 0;
      }
      if (!m.has_ci) throw Error(Errc::missing_structure, "model has no ci or separoid section");
      const CIRelation r = close(m.ci, RuleSet::parse(rules_text), m.universe);
      for (const auto& t : r.statements)
        if (all || !t.trivial()) o << format_triple(t, m.universe) << '\n';
      return 0;
    };
  });

  auto* derivecmd = app.add_subcommand("derive", "Print a derivation of a statement");
  std::string target_text;
  derivecmd->add_option("model", model_path)->required();
  derivecmd->add_option("--target", target_text, "Statement 'X | Z | Y'")->required();
  derivecmd->add_option("--rules", rules_text);
  derivecmd->callback([&] {
    body = [&](std::ostream& o) {
      Model m = load(model_path);
      const CITriple target = parse_triple(target_text, m.universe);
      auto d = derive(m.ci, target, RuleSet::parse(rules_text), m.universe);
      if (!d) {
        o << "not derivable\n";
        return 1;
      }
      if (auto rep = replay(*d, m.ci); !rep.ok)
        throw Error(Errc::search_bound, "internal derivation failed to replay: " + rep.message);
      o << format_derivation(*d, m.universe);
      return 0;
    };
  });

  auto* imsetcmd = app.add_subcommand("imset", "Print the model's imset");
  imsetcmd->add_option("model", model_path)->required();
  imsetcmd->callback([&] {
    body = [&](std::ostream& o) {
      o << format_imset(model_imset(load(model_path)));
      return 0;
    };
  });

  auto* impliescmd = app.add_subcommand("implies", "Test whether imset u implies imset v");
  std::int64_t lmax = 4, degree_bound = 8;
  impliescmd->add_option("u-model", model_path)->required();
  impliescmd->add_option("v-model", other_path)->required();
  impliescmd->add_option("--lmax", lmax, "Largest multiplier tried")->check(CLI::Range(1, 8));
  impliescmd->add_option("--degree-bound", degree_bound, "Decomposition degree bound")
      ->check(CLI::Range(1, 8));
  impliescmd->callback([&] {
    body = [&](std::ostream& o) {
      const Imset u = model_imset(load(model_path));
      const Imset v = model_imset(load(other_path));
      if (auto l = implies(u, v, lmax, degree_bound)) {
        o << "implies with l = " << *l << '\n';
        return 0;
      }
      o << "no implication found\n";
      return 1;
    };
  });

  auto* equivcmd = app.add_subcommand("equiv", "Test Markov equivalence of two DAGs");
  equivcmd->add_option("first", model_path)->required();
  equivcmd->add_option("second", other_path)->required();
  equivcmd->callback([&] {
    body = [&](std::ostream& o) {
      const Model a = load(model_path);
      const Model b = load(other_path);
      if (!a.dag || !b.dag) throw Error(Errc::missing_structure, "both models need a dag section");
      if (!markov_equivalent(*a.dag, *b.dag)) {
        o << "not equivalent\n";
        return 1;
      }
      o << format_imset(standard_imset(*a.dag));
      return 0;
    };
  });

  auto* mobiuscmd = app.add_subcommand("mobius", "Print the accumulated (Moebius) form");
  mobiuscmd->add_option("model", model_path)->required();
  mobiuscmd->callback([&] {
    body = [&](std::ostream& o) {
      const Model m = load(model_path);
      const Imset u = model_imset(m);
      const IncidenceFunction g = mobius_form(u);
      const FinitePoset& p = g.poset();
      for (std::size_t a = 0; a < p.size(); ++a) {
        const std::int64_t v = g.at(0, a);
        if (v != 0) o << u.universe().format(static_cast<Mask>(a), ",") << ' ' << v << '\n';
      }
      if (!(imset_from_mobius_form(g, u.universe()) == u)) {
        o << "inversion mismatch\n";
        return 1;
      }
      return 0;
    };
  });

  auto* yonedacmd = app.add_subcommand("yoneda-check", "Verify Yoneda bijections");
  std::string object_text, functor_text = "all";
  yonedacmd->add_option("model", model_path)->required();
  yonedacmd->add_option("--object", object_text, "Object x (default: every object)");
  yonedacmd->add_option("--functor", functor_text,
                        "'all' (every representable), 'const', or an object y for hom(y, -)");
  yonedacmd->add_option("--rules", rules_text);
  yonedacmd->callback([&] {
    body = [&](std::ostream& o) {
      const Categoroid c = model_categoroid(load(model_path), RuleSet::parse(rules_text));
      std::vector<CgObject> xs_list;
      if (object_text.empty()) xs_list = c.objects();
      else xs_list.push_back(parse_object(c, object_text));
      std::vector<std::pair<std::string, SetFunctoroid>> fs;
      if (functor_text == "const") {
        fs.emplace_back("const", constant_point(c));
      } else if (functor_text == "all") {
        for (const auto& y : c.objects())
          fs.emplace_back("hom(" + c.format_object(y) + ", -)", representable(c, y));
      } else {
        const CgObject y = parse_object(c, functor_text);
        fs.emplace_back("hom(" + c.format_object(y) + ", -)", representable(c, y));
      }
      bool ok = true;
      for (const auto& x : xs_list)
        for (const auto& [name, F] : fs) {
          const YonedaReport rep = yoneda_check(c, x, F);
          o << "x = " << c.format_object(x) << ", F = " << name << ": |Nat| = " << rep.nat_count
            << ", |F(x)| = " << rep.fx_size << (rep.passed() ? ", bijection" : ", FAILED")
            << '\n';
          ok = ok && rep.passed();
        }
      return ok ? 0 : 1;
    };
  });

  auto* checkcmd = app.add_subcommand("check", "Check axioms or category laws");
  checkcmd->add_option("model", model_path)->required();
  checkcmd->add_option("--rules", rules_text);
  checkcmd->callback([&] {
    body = [&](std::ostream& o) {
      const Model m = load(model_path);
      std::size_t problems = 0;
      bool checked = false;
      if (m.categoroid) {
        checked = true;
        const Categoroid& c = *m.categoroid;
        auto vs = check_category_laws(c);
        auto fv = check_functoroid(identity_functoroid(c));
        vs.insert(vs.end(), fv.begin(), fv.end());
        print_violations(o, c, vs);
        problems += vs.size();
      }
      if (m.separoid) {
        checked = true;
        for (const auto& v : check_separoid(*m.separoid)) {
          o << "violation: " << format_violation(v, m.separoid->lattice()) << '\n';
          ++problems;
        }
      }
      if (m.has_ci) {
        checked = true;
        const CIRelation r = close(m.ci, RuleSet::parse(rules_text), m.universe);
        std::set<CITriple> given;
        for (const auto& t : m.ci) given.insert(t.canonical());
        for (const auto& t : r.statements)
          if (!t.trivial() && !given.count(t)) {
            o << "missing: " << format_triple(t, m.universe) << '\n';
            ++problems;
          }
      }
      if (!checked)
        throw Error(Errc::missing_structure, "model has no categoroid, separoid or ci section");
      if (problems == 0) o << "ok\n";
      return problems == 0 ? 0 : 1;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    std::ostringstream buf;
    const int code = body(buf);
    out << buf.str();
    return code;
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cicat::cli
