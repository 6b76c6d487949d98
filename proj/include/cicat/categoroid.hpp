#pragma once

// Finite categoroids: base, pair and triple objects over an element set,
// four generating-arrow classes (A, T, B0, B1), and the materialized
// composition closure.
//
// Arrows compose whenever endpoints match. The class of a composite is
// read off its endpoint kinds and generators:
//   Base -> Base       A
//   Triple -> Triple   T if built from T generators only, else TripleEndo
//   Pair -> Triple     B0
//   Triple -> Pair     B1
//   Pair -> Pair       PairEndo
// Identities have their own class.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cicat/ci.hpp"
#include "cicat/error.hpp"
#include "cicat/separoid.hpp"

namespace cicat {

enum class ObjectKind : std::uint8_t { base, pair, triple };

struct CgObject {
  ObjectKind kind = ObjectKind::base;
  std::array<std::size_t, 3> parts{};  // unused slots are zero

  static CgObject base(std::size_t a) { return {ObjectKind::base, {a, 0, 0}}; }
  static CgObject pair(std::size_t a, std::size_t b) { return {ObjectKind::pair, {a, b, 0}}; }
  static CgObject triple(std::size_t a, std::size_t b, std::size_t c) {
    return {ObjectKind::triple, {a, b, c}};
  }
  std::size_t arity() const noexcept { return static_cast<std::size_t>(kind) + 1; }

  auto operator<=>(const CgObject&) const = default;
};

enum class GenClass : std::uint8_t { A, T, B0, B1 };
enum class ArrowClass : std::uint8_t { identity, A, T, B0, B1, pair_endo, triple_endo };

std::string_view gen_class_name(GenClass c) noexcept;
std::string_view arrow_class_name(ArrowClass c) noexcept;

struct GenArrow {
  std::string id;
  GenClass cls;
  CgObject dom;
  CgObject cod;
  std::string note;  // side conditions, e.g. the auxiliary premise
};

// Generator indices listed in application order: {f, g} means g . f.
using Path = std::vector<std::size_t>;

struct PathRelation {
  Path lhs;
  Path rhs;
};

enum class Quotient : std::uint8_t {
  free,  // paths modulo the given relations
  thin,  // parallel arrows of the same class are identified
};

using ArrowId = std::size_t;

class Categoroid;

namespace detail {
// Unbounded-length materialization shared by the public constructors.
Categoroid materialize(std::vector<std::string> elements, std::vector<CgObject> objects,
                       std::vector<GenArrow> generators, std::size_t max_path_len,
                       std::vector<PathRelation> relations, Quotient quotient);
}  // namespace detail

struct Arrow {
  CgObject dom;
  CgObject cod;
  ArrowClass cls;
  Path path;  // normal-form representative; empty for identities
};

class Categoroid {
 public:
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const std::vector<CgObject>& objects() const noexcept { return objects_; }
  const std::vector<GenArrow>& generators() const noexcept { return generators_; }
  const std::vector<PathRelation>& relations() const noexcept { return relations_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  Quotient quotient() const noexcept { return quotient_; }
  std::size_t max_path_len() const noexcept { return max_path_len_; }

  bool has_object(const CgObject& o) const { return object_index_.count(o) != 0; }
  std::size_t object_index(const CgObject& o) const;
  ArrowId identity(const CgObject& o) const;
  // The arrow represented by a single generator.
  ArrowId generator_arrow(std::size_t g) const;

  // Throws not_composable when cod(f) != dom(g).
  ArrowId compose(ArrowId g, ArrowId f) const;
  bool composable(ArrowId g, ArrowId f) const { return arrow(f).cod == arrow(g).dom; }

  // Arrows out of / into an object, in id order.
  const std::vector<ArrowId>& out_arrows(const CgObject& o) const;
  const std::vector<ArrowId>& in_arrows(const CgObject& o) const;
  std::vector<ArrowId> hom(const CgObject& x, const CgObject& y) const;

  // Arrow for an arbitrary generator path (normalized); throws
  // not_composable for a broken path.
  ArrowId arrow_of_path(const Path& p, const CgObject& dom) const;

  std::string format_object(const CgObject& o) const;
  std::string format_arrow(ArrowId a) const;

 private:
  friend Categoroid detail::materialize(std::vector<std::string>, std::vector<CgObject>,
                                       std::vector<GenArrow>, std::size_t,
                                       std::vector<PathRelation>, Quotient);

  struct Key {
    std::size_t dom, cod;
    ArrowClass cls;
    Path path;
    auto operator<=>(const Key&) const = default;
  };

  ArrowClass classify(const CgObject& dom, const CgObject& cod, const Path& p) const;
  Path normalize(Path p) const;
  Key key_of(const CgObject& dom, const CgObject& cod, const Path& p) const;
  std::optional<ArrowId> find(const CgObject& dom, const Path& p) const;
  ArrowId add_arrow(Arrow a);
  static std::uint64_t thin_key(std::size_t dom, std::size_t cod, ArrowClass cls) noexcept {
    return (static_cast<std::uint64_t>(dom) << 35) | (static_cast<std::uint64_t>(cod) << 3) |
           static_cast<std::uint64_t>(cls);
  }

  std::vector<std::string> elements_;
  std::vector<CgObject> objects_;
  std::map<CgObject, std::size_t> object_index_;
  std::vector<GenArrow> generators_;
  std::vector<PathRelation> relations_;  // oriented: lhs rewrites to rhs
  Quotient quotient_ = Quotient::free;
  std::size_t max_path_len_ = 0;

  std::vector<Arrow> arrows_;
  std::map<Key, ArrowId> arrow_index_;
  // Thin quotients: (dom, cod, class) packed into one word.
  std::unordered_map<std::uint64_t, ArrowId> thin_index_;
  std::vector<std::size_t> dom_index_, cod_index_;
  std::vector<ArrowId> identities_;
  std::vector<ArrowId> generator_arrows_;
  std::vector<std::vector<ArrowId>> out_, in_;
};

inline constexpr std::size_t kMaxPathLen = 8;

// Materializes identities and every composable generator path up to
// max_path_len, modulo the relations (free) or per-class parallelism
// (thin). Throws ill_kinded_generator, invalid_relation, or non_saturated
// when paths one step longer than the bound still produce new arrows.
Categoroid free_categoroid(std::vector<std::string> elements, std::vector<CgObject> objects,
                           std::vector<GenArrow> generators, std::size_t max_path_len,
                           std::vector<PathRelation> relations = {},
                           Quotient quotient = Quotient::free);

// Thin categoroid of a closed separoid. Throws not_closed or too_large
// (more than 6 elements).
Categoroid from_separoid(const Separoid& s);

// Thin categoroid of a CI relation closed under `rules`; objects are the
// subsets (by bitmask) of a universe of at most 4 variables. Throws
// not_closed or too_large.
Categoroid from_ci_relation(const CIRelation& r, RuleSet rules);

// ---------------------------------------------------------------- checks

struct Violation {
  std::string what;
  std::vector<ArrowId> arrows;  // witnesses, ids in the relevant categoroid
};

// Identity and associativity laws over every materialized arrow.
std::vector<Violation> check_category_laws(const Categoroid& c);

// Source and target are borrowed and must outlive the functoroid.
struct Functoroid {
  const Categoroid* source = nullptr;
  const Categoroid* target = nullptr;
  std::vector<std::size_t> element_map;  // base map on elements
  std::vector<ArrowId> generator_map;    // per source generator

  CgObject map_object(const CgObject& o) const;
  // Image of any source arrow, composed along its representative path.
  ArrowId map_arrow(ArrowId a) const;
};

Functoroid identity_functoroid(const Categoroid& c);
// (g . f): apply f first.
Functoroid compose_functoroids(const Functoroid& g, const Functoroid& f);
std::vector<Violation> check_functoroid(const Functoroid& f);

struct NatTrans {
  const Functoroid* from = nullptr;
  const Functoroid* to = nullptr;
  std::vector<ArrowId> components;  // per source object index
};

NatTrans identity_nat_trans(const Functoroid& f);
// Vertical composite (beta . alpha): component-wise composition.
NatTrans vertical_compose(const NatTrans& beta, const NatTrans& alpha);
std::vector<Violation> check_nat_trans(const NatTrans& n);

// A covariant functoroid into finite sets. Elements of each set are
// 0..size-1.
struct SetFunctoroid {
  const Categoroid* source = nullptr;
  std::vector<std::size_t> set_sizes;                 // per object index
  std::vector<std::vector<std::size_t>> arrow_maps;   // per arrow id
  std::vector<std::vector<std::string>> labels;       // optional, per object
};

// hom(x, -): F(o) = hom(x, o), F(f)(a) = f . a.
SetFunctoroid representable(const Categoroid& c, const CgObject& x);
SetFunctoroid constant_point(const Categoroid& c);
std::vector<Violation> check_set_functoroid(const SetFunctoroid& f);

struct YonedaReport {
  CgObject object;
  std::size_t nat_count = 0;
  std::size_t fx_size = 0;
  // (index of the natural transformation, eta_x(1_x))
  std::vector<std::pair<std::size_t, std::size_t>> bijection;
  bool injective = false;
  bool surjective = false;
  bool passed() const noexcept {
    return injective && surjective && nat_count == fx_size;
  }
};

inline constexpr std::size_t kMaxYonedaArrows = 200;
inline constexpr std::size_t kMaxYonedaSet = 6;

// Enumerates Nat(hom(x, -), F) by backtracking with naturality pruning and
// checks that eta -> eta_x(1_x) is a bijection onto F(x). Throws
// enumeration_too_large when hom(x, -) exceeds 200 arrows or some relevant
// F(y) exceeds 6 elements.
YonedaReport yoneda_check(const Categoroid& c, const CgObject& x, const SetFunctoroid& f);

enum class UniversalKind { coproduct, product };

struct UniversalReport {
  bool verified = false;
  std::optional<ArrowId> first_leg, second_leg;  // injections or projections
  std::vector<std::pair<CgObject, std::string>> failures;
};

// Throws missing_structure when the candidate lacks injections
// (projections), or malformed_query for non-base objects.
UniversalReport universal_check(const Categoroid& c, UniversalKind kind, const CgObject& x,
                                const CgObject& y, const CgObject& candidate);

// ------------------------------------------------------------------ text

// Block form:
//   elements: a b c
//   quotient: free|thin
//   max-path-len: N
//   objects:
//   a | (a, b) | (a, b, c)      (one object per line)
//   generators:
//   A f: a -> b [; note]
//   relations:
//   g f = h                     (paths written composition-style)
std::string format_categoroid(const Categoroid& c);
// "a" or "(a, b)" or "(a, b, c)" over c's element names; throws
// unknown_element or syntax_error.
CgObject parse_object(const Categoroid& c, std::string_view text);
// Throws ParseError, or the free_categoroid errors.
Categoroid parse_categoroid(std::string_view text, std::size_t first_line = 1);

}  // namespace cicat
