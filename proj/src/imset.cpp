#include "cicat/imset.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_set>

namespace cicat {

std::int64_t Imset::at(Mask a) const {
  auto it = coeffs_.find(a);
  return it == coeffs_.end() ? 0 : it->second;
}

void Imset::add(Mask a, std::int64_t v) {
  if (!is_subset(a, universe_.full()))
    throw Error(Errc::unknown_element, "imset support outside the universe");
  if (v == 0) return;
  auto& slot = coeffs_[a];
  slot += v;
  if (slot == 0) coeffs_.erase(a);
}

Imset& Imset::operator+=(const Imset& o) {
  if (!(universe_ == o.universe_))
    throw Error(Errc::universe_mismatch, "imsets over different universes");
  for (auto [a, v] : o.coeffs_) add(a, v);
  return *this;
}

Imset& Imset::operator-=(const Imset& o) {
  if (!(universe_ == o.universe_))
    throw Error(Errc::universe_mismatch, "imsets over different universes");
  for (auto [a, v] : o.coeffs_) add(a, -v);
  return *this;
}

Imset operator*(std::int64_t k, const Imset& a) {
  Imset out(a.universe_);
  if (k == 0) return out;
  for (auto [s, v] : a.coeffs_) out.coeffs_.emplace(s, k * v);
  return out;
}

std::int64_t Imset::sum() const {
  std::int64_t s = 0;
  for (auto [a, v] : coeffs_) s += v;
  return s;
}

std::int64_t Imset::positive_mass() const {
  std::int64_t s = 0;
  for (auto [a, v] : coeffs_)
    if (v > 0) s += v;
  return s;
}

Imset delta(const Universe& u, Mask a) {
  Imset out(u);
  out.add(a, 1);
  return out;
}

Imset combine(const std::vector<std::pair<std::int64_t, Imset>>& terms) {
  if (terms.empty()) return Imset(Universe{});
  Imset out(terms.front().second.universe());
  for (const auto& [k, u] : terms) {
    if (!(u.universe() == out.universe()))
      throw Error(Errc::universe_mismatch, "combination of imsets over different universes");
    for (auto [a, v] : u.coeffs()) out.add(a, k * v);
  }
  return out;
}

SemiElementary semi_elementary(const Universe& u, const CITriple& t) {
  validate(t, u);
  Imset out(u);
  out.add(t.x | t.y | t.z, 1);
  out.add(t.z, 1);
  out.add(t.x | t.z, -1);
  out.add(t.y | t.z, -1);
  return {std::move(out), t.trivial()};
}

ElementaryBasis elementary_basis(const Universe& u) {
  if (u.size() < 2) throw Error(Errc::universe_too_small, "elementary imsets need two variables");
  if (u.size() > 6) throw Error(Errc::universe_too_large, "elementary basis limited to 6 variables");
  ElementaryBasis basis{u, {}, {}};
  const std::size_t n = u.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const Mask ab = (Mask{1} << a) | (Mask{1} << b);
      const Mask rest = u.full() & ~ab;
      for (Mask c = 0; c <= rest; ++c) {
        if (!is_subset(c, rest)) continue;
        basis.entries.push_back({a, b, c});
        Imset e(u);
        e.add(ab | c, 1);
        e.add(c, 1);
        e.add((Mask{1} << a) | c, -1);
        e.add((Mask{1} << b) | c, -1);
        basis.imsets.push_back(std::move(e));
      }
    }
  return basis;
}

std::string format_elementary(const ElementaryTriple& e, const Universe& u) {
  return "<" + u.name(e.a) + "," + u.name(e.b) + "|" + u.format(e.c, ",") + ">";
}

std::int64_t imset_degree(const Imset& u) {
  std::int64_t d = 0;
  for (auto [a, v] : u.coeffs()) {
    const std::int64_t k = popcount(a);
    d += v * k * (k - 1) / 2;
  }
  return d;
}

namespace {

class DecompositionSearch {
 public:
  DecompositionSearch(const ElementaryBasis& basis, std::size_t n) : size_(std::size_t{1} << n) {
    for (const auto& e : basis.imsets) {
      std::vector<std::int64_t> dense(size_, 0);
      for (auto [a, v] : e.coeffs()) dense[a] = v;
      dense_.push_back(std::move(dense));
    }
    // For each point, the last basis entry that touches it.
    last_touch_.assign(size_, -1);
    for (std::size_t i = 0; i < dense_.size(); ++i)
      for (std::size_t s = 0; s < size_; ++s)
        if (dense_[i][s] != 0) last_touch_[s] = static_cast<std::ptrdiff_t>(i);
  }

  bool run(std::vector<std::int64_t> residual, std::int64_t degree) {
    chosen_.assign(dense_.size(), 0);
    return dfs(0, residual, degree);
  }

  const std::vector<std::int64_t>& chosen() const { return chosen_; }

 private:
  bool dfs(std::size_t i, std::vector<std::int64_t>& r, std::int64_t degree) {
    if (degree == 0) return std::all_of(r.begin(), r.end(), [](auto v) { return v == 0; });
    if (i == dense_.size()) return false;
    std::int64_t pos = 0;
    for (std::size_t s = 0; s < size_; ++s) {
      if (r[s] > 0) pos += r[s];
      if (r[s] != 0 && last_touch_[s] < static_cast<std::ptrdiff_t>(i)) return false;
    }
    // Each elementary term carries exactly +2 positive mass.
    if (pos > 2 * degree) return false;
    std::string key = memo_key(i, r);
    if (failed_.count(key)) return false;
    const auto& e = dense_[i];
    for (std::int64_t k = degree; k >= 0; --k) {
      for (std::size_t s = 0; s < size_; ++s) r[s] -= k * e[s];
      chosen_[i] = k;
      const bool ok = dfs(i + 1, r, degree - k);
      for (std::size_t s = 0; s < size_; ++s) r[s] += k * e[s];
      if (ok) return true;
    }
    chosen_[i] = 0;
    failed_.insert(std::move(key));
    return false;
  }

  std::string memo_key(std::size_t i, const std::vector<std::int64_t>& r) const {
    std::string key(sizeof(std::uint32_t) + r.size() * sizeof(std::int64_t), '\0');
    const auto idx = static_cast<std::uint32_t>(i);
    std::memcpy(key.data(), &idx, sizeof idx);
    std::memcpy(key.data() + sizeof idx, r.data(), r.size() * sizeof(std::int64_t));
    return key;
  }

  std::size_t size_;
  std::vector<std::vector<std::int64_t>> dense_;
  std::vector<std::ptrdiff_t> last_touch_;
  std::vector<std::int64_t> chosen_;
  std::unordered_set<std::string> failed_;
};

void check_search_args(const Imset& u, std::int64_t degree_bound) {
  if (u.universe().size() > kMaxImsetUniverse)
    throw Error(Errc::universe_too_large, "imset search supports at most 5 variables");
  if (degree_bound < 0 || degree_bound > kMaxDegreeBound)
    throw Error(Errc::search_bound, "degree bound must lie in 0..8");
}

}  // namespace

Decomposition decompose_combinatorial(const Imset& u, std::int64_t degree_bound) {
  check_search_args(u, degree_bound);
  if (u.zero()) return {Decomposition::Status::found, {}};
  if (u.universe().size() < 2) return {Decomposition::Status::not_combinatorial, {}};
  return decompose_combinatorial(u, degree_bound, elementary_basis(u.universe()));
}

Decomposition decompose_combinatorial(const Imset& u, std::int64_t degree_bound,
                                      const ElementaryBasis& basis) {
  using Status = Decomposition::Status;
  check_search_args(u, degree_bound);
  if (!(basis.universe == u.universe()))
    throw Error(Errc::universe_mismatch, "basis and imset over different universes");
  if (u.zero()) return {Status::found, {}};

  // Every elementary imset has zero total mass and zero first moment.
  std::int64_t moment = 0;
  for (auto [a, v] : u.coeffs()) moment += v * popcount(a);
  const std::int64_t degree = imset_degree(u);
  if (u.sum() != 0 || moment != 0 || degree <= 0) return {Status::not_combinatorial, {}};
  if (degree > degree_bound) return {Status::bound_exhausted, {}};

  const std::size_t n = u.universe().size();
  std::vector<std::int64_t> residual(std::size_t{1} << n, 0);
  for (auto [a, v] : u.coeffs()) residual[a] = v;
  DecompositionSearch search(basis, n);
  if (!search.run(std::move(residual), degree)) return {Status::not_combinatorial, {}};

  Decomposition d{Status::found, {}};
  Imset rebuilt(u.universe());
  for (std::size_t i = 0; i < search.chosen().size(); ++i) {
    const auto k = search.chosen()[i];
    if (k == 0) continue;
    d.terms.emplace_back(k, i);
    rebuilt += k * basis.imsets[i];
  }
  if (!(rebuilt == u)) throw std::logic_error("decomposition does not reconstruct its target");
  return d;
}

std::optional<std::int64_t> implies(const Imset& u, const Imset& v, std::int64_t l_max,
                                    std::int64_t degree_bound) {
  if (!(u.universe() == v.universe()))
    throw Error(Errc::universe_mismatch, "implication between imsets over different universes");
  if (l_max < 1 || l_max > 8) throw Error(Errc::search_bound, "l_max must lie in 1..8");
  check_search_args(u, degree_bound);
  const bool small = u.universe().size() < 2;
  std::optional<ElementaryBasis> basis;
  if (!small) basis = elementary_basis(u.universe());
  for (std::int64_t l = 1; l <= l_max; ++l) {
    const Imset diff = l * u - v;
    if (diff.zero()) return l;
    if (small) continue;
    if (decompose_combinatorial(diff, degree_bound, *basis).status ==
        Decomposition::Status::found)
      return l;
  }
  return std::nullopt;
}

IncidenceFunction mobius_form(const Imset& u) {
  if (u.universe().size() > kMaxImsetUniverse)
    throw Error(Errc::universe_too_large, "Moebius form supports at most 5 variables");
  const FinitePoset p = FinitePoset::subset_lattice(u.universe());
  ElementFunction e(p.size(), 0);
  for (auto [a, v] : u.coeffs()) e[a] = v;
  const ElementFunction n = accumulate(e, p);
  IncidenceFunction g(p);
  for (std::size_t a = 0; a < p.size(); ++a) g.set(0, a, n[a]);
  return g;
}

Imset imset_from_mobius_form(const IncidenceFunction& g, const Universe& u) {
  const FinitePoset& p = g.poset();
  if (!(p == FinitePoset::subset_lattice(u)))
    throw Error(Errc::poset_mismatch, "function is not on the subset lattice of the universe");
  ElementFunction n(p.size(), 0);
  for (std::size_t a = 0; a < p.size(); ++a) n[a] = g.at(0, a);
  const ElementFunction e = mobius_invert(n, p);
  Imset out(u);
  for (std::size_t a = 0; a < e.size(); ++a) out.add(static_cast<Mask>(a), e[a]);
  return out;
}

std::string format_imset(const Imset& u) {
  std::string out;
  for (auto [a, v] : u.coeffs()) out += u.universe().format(a, ",") + " " + std::to_string(v) + "\n";
  return out;
}

Imset parse_imset(std::string_view text, const Universe& u, std::size_t first_line) {
  Imset out(u);
  std::set<Mask> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = first_line - 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string set_tok, num_tok, extra;
    if (!(words >> set_tok)) continue;
    const std::size_t col = line.find(set_tok) + 1;
    if (!(words >> num_tok) || (words >> extra))
      throw ParseError(Errc::syntax_error, lineno, col, "expected '<subset> <integer>'");
    Mask m = 0;
    if (set_tok != "{}") {
      std::size_t start = 0;
      for (std::size_t i = 0; i <= set_tok.size(); ++i) {
        if (i == set_tok.size() || set_tok[i] == ',') {
          std::string name = set_tok.substr(start, i - start);
          start = i + 1;
          if (!u.contains(name))
            throw ParseError(Errc::undeclared_variable, lineno, col,
                             "undeclared variable '" + name + "'");
          m |= Mask{1} << u.index_of(name);
        }
      }
    }
    std::int64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(num_tok, &used);
      if (used != num_tok.size()) throw std::invalid_argument(num_tok);
    } catch (const std::logic_error&) {
      throw ParseError(Errc::syntax_error, lineno, line.find(num_tok) + 1,
                       "bad coefficient '" + num_tok + "'");
    }
    if (!seen.insert(m).second)
      throw ParseError(Errc::syntax_error, lineno, col, "duplicate subset " + set_tok);
    out.add(m, v);
  }
  return out;
}

}  // namespace cicat
