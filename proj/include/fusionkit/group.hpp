#pragma once

// Finite permutation groups by full element enumeration.
//
// Elements of a FiniteGroup are indexed by `Elem`, their position in the
// lexicographically sorted list of image sequences. The identity always has
// index 0. Products compose right to left: (a * b)(i) = a(b(i)), and
// conjugation is left-handed, conj(g, x) = g x g^-1.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fusionkit {

using Point = std::uint16_t;
using Elem = std::uint32_t;
inline constexpr Elem kNoElem = 0xffffffffu;

class Perm {
 public:
  Perm() = default;
  /// 0-based images; throws InvalidPermutation unless a bijection.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// 1-based images, as written in group files.
  static Perm from_one_based(std::span<const long> images);
  /// Cycle notation on 1-based points, e.g. "(1 2)(3 4)".
  static Perm from_cycles(std::size_t degree, const std::string& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(std::size_t i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const;
  std::string cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

/// A subgroup stored as its sorted member list plus a membership bitset.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(std::vector<Elem> members, std::size_t group_order);

  std::size_t order() const { return members_.size(); }
  const std::vector<Elem>& members() const { return members_; }
  bool contains(Elem x) const {
    return x / 64 < bits_.size() && ((bits_[x / 64] >> (x % 64)) & 1u) != 0;
  }
  bool is_subgroup_of(const Subgroup& other) const;
  /// Position of x in members(), or kNoElem.
  std::size_t position(Elem x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members_ == b.members_;
  }
  /// Canonical order: by order, then lexicographically by member list.
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b);

 private:
  std::vector<Elem> members_;
  std::vector<std::uint64_t> bits_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept;
};

class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultCap = 10000;

  FiniteGroup() = default;

  /// Closure of `gens` in Sym(degree). Throws ClosureTooLarge past `cap`.
  static FiniteGroup from_generators(std::size_t degree, const std::vector<Perm>& gens,
                                     std::size_t cap = kDefaultCap);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generators() const { return generators_; }
  std::vector<Elem> generator_elems() const;
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& perm(Elem x) const { return elements_[x]; }

  static constexpr Elem identity() { return 0; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
  Elem mul(std::initializer_list<Elem> word) const;

  std::optional<Elem> find(const Perm& p) const;
  /// Throws NotASubgroup if p is not an element.
  Elem index_of(const Perm& p) const;
  std::size_t element_order(Elem x) const;

  Subgroup whole() const;
  Subgroup trivial() const;
  Subgroup generate(std::span<const Elem> gens) const;
  /// Validates closure; throws NotASubgroup otherwise.
  Subgroup subgroup(std::vector<Elem> members) const;
  Subgroup conjugate(Elem g, const Subgroup& h) const;
  bool is_abelian(const Subgroup& h) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::vector<Elem> inverse_;
  std::vector<Elem> table_;  // full product table for small groups
};

// Arithmetic helpers.
bool is_prime(unsigned p);
std::size_t p_part(std::size_t n, unsigned p);
bool is_p_power(std::size_t n, unsigned p);
bool coprime_to(std::size_t n, unsigned p);

Subgroup normalizer(const FiniteGroup& g, const Subgroup& x, const Subgroup& ambient);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& x);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& x, const Subgroup& ambient);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& x);
Subgroup center(const FiniteGroup& g, const Subgroup& x);
/// N_ambient(P, Q) = { g in ambient : g P g^-1 <= Q }.
std::vector<Elem> transporter_set(const FiniteGroup& g, const Subgroup& p, const Subgroup& q,
                                  const Subgroup& ambient);
std::vector<Elem> transporter_set(const FiniteGroup& g, const Subgroup& p, const Subgroup& q);
bool is_normal(const FiniteGroup& g, const Subgroup& n, const Subgroup& ambient);
Subgroup intersect(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
/// Subgroup generated by a and b.
Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

/// Every subgroup of h, in canonical order (cyclic extension).
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, const Subgroup& h);
/// Every normal subgroup of h, in canonical order.
std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, const Subgroup& h);

/// Least K <= h (canonical order) with K ∩ n = 1 and |K||n| = |h|.
std::optional<Subgroup> find_complement(const FiniteGroup& g, const Subgroup& h, const Subgroup& n);

/// Lexicographically least Sylow p-subgroup of h.
Subgroup sylow(const FiniteGroup& g, const Subgroup& h, unsigned p);
Subgroup sylow(const FiniteGroup& g, unsigned p);

struct Cores {
  Subgroup op;        // largest normal p-subgroup
  Subgroup op_prime;  // largest normal p'-subgroup
};
Cores cores(const FiniteGroup& g, const Subgroup& h, unsigned p);
Cores cores(const FiniteGroup& g, unsigned p);

/// C_H(O_p(H)) <= O_p(H).
bool is_characteristic_p(const FiniteGroup& g, const Subgroup& h, unsigned p);
bool is_characteristic_p(const FiniteGroup& g, unsigned p);

struct ThompsonSubgroup {
  Subgroup j;
  std::size_t d = 0;  // largest order of an abelian subgroup
};
/// Throws NotAPGroup unless |p_group| is a power of p.
ThompsonSubgroup thompson_j(const FiniteGroup& g, const Subgroup& p_group, unsigned p);
/// Q <_J P.
bool j_less(const ThompsonSubgroup& q, const ThompsonSubgroup& p);

/// Homomorphism between subgroups; images[i] is the image of domain.members()[i].
struct GroupHom {
  Subgroup domain;
  Subgroup codomain;
  std::vector<Elem> images;

  Elem operator()(Elem x) const;
  bool is_multiplicative(const FiniteGroup& g) const;
  bool is_injective() const;
  friend bool operator==(const GroupHom& a, const GroupHom& b) {
    return a.domain == b.domain && a.images == b.images;
  }
};

/// c_g restricted to p, landing in q.
GroupHom conjugation_hom(const FiniteGroup& g, Elem x, const Subgroup& p, const Subgroup& q);

/// Aut(G) as a permutation group on the element indices of G. Automorphism i
/// is element i of `perm_group`, so `automorphisms` is in canonical order.
struct AutomorphismGroup {
  std::vector<Elem> generating_tuple;
  std::vector<GroupHom> automorphisms;
  FiniteGroup perm_group;
  Subgroup inner;
  std::vector<std::size_t> out_class;  // per automorphism
  std::size_t out_order = 0;

  Elem apply(Elem automorphism, Elem x) const { return perm_group.perm(automorphism)(x); }
  /// Index of c_x.
  Elem inner_of(const FiniteGroup& g, Elem x) const;
};

/// Lexicographically least irredundant generating sequence of h (greedy).
std::vector<Elem> minimal_generating_tuple(const FiniteGroup& g, const Subgroup& h);

/// Throws TooLarge when |G| exceeds `cap`.
AutomorphismGroup automorphism_group(const FiniteGroup& g, std::size_t cap = 1000);

/// H/N in its regular representation on cosets.
struct Quotient {
  FiniteGroup group;
  std::vector<Elem> project;  // by position in h.members()
  std::vector<Elem> lift;     // least representative of each coset

  Elem operator()(const Subgroup& h, Elem x) const { return project[h.position(x)]; }
};
Quotient quotient(const FiniteGroup& g, const Subgroup& h, const Subgroup& n);

/// A group given by a multiplication table on {0..n-1}, in its regular representation.
struct TableGroup {
  FiniteGroup group;
  std::vector<Elem> to_group;           // table index -> group element
  std::vector<std::size_t> from_group;  // group element -> table index
};
TableGroup group_from_table(std::size_t n,
                            const std::function<std::size_t(std::size_t, std::size_t)>& mul);

/// Generators in the text format: degree on the first line, then one
/// generator per line as 1-based images. '#' starts a comment line.
FiniteGroup parse_group(const std::string& text, std::size_t cap = FiniteGroup::kDefaultCap);
FiniteGroup load_group(const std::string& path, std::size_t cap = FiniteGroup::kDefaultCap);

}  // namespace fusionkit
