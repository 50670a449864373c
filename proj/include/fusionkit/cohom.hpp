#pragma once

// The orbit category O(F^c), the center functor Z_F on it, and its first
// inverse limits. Abelian groups are written additively in coordinates and
// multiplicatively as elements of the ambient group.
//
// Conventions (the ones under which t ↦ λ̃(t) is a functor):
//   Z_F([φ])(z) = φ^-1(z)                         for z ∈ Z(Q), [φ]: P → Q
//   (du)([φ])   = Z_F([φ])(u(Q)) · u(P)^-1
//   t cocycle   ⇔ t([ψ∘φ]) = t([φ]) · Z_F([φ])(t([ψ]))

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fusionkit/fusion.hpp"
#include "fusionkit/snf.hpp"
#include "fusionkit/translink.hpp"

namespace fusionkit {

/// A finite abelian subgroup A with a basis of cyclic generators.
class AbelianPresentation {
 public:
  AbelianPresentation() = default;
  /// Greedy primary basis: repeatedly the lexicographically least element of
  /// largest order meeting the span so far trivially. Throws NotASubgroup if
  /// `a` is not abelian.
  AbelianPresentation(const FiniteGroup& g, Subgroup a);

  const Subgroup& group() const { return group_; }
  const std::vector<Elem>& generators() const { return gens_; }
  const std::vector<Int>& orders() const { return orders_; }
  std::size_t rank() const { return gens_.size(); }
  /// Invariant factors (ascending, each dividing the next, all > 1).
  std::vector<Int> invariants() const;

  const std::vector<Int>& coordinates(Elem x) const { return coords_[group_.position(x)]; }
  Elem element(std::span<const Int> c) const;

 private:
  Subgroup group_;
  std::vector<Elem> gens_;
  std::vector<Int> orders_;
  std::vector<std::vector<Int>> coords_;  // by position in group_
  std::vector<Elem> by_index_;            // mixed-radix index -> element
};

/// Invariant factors of ⊕ Z/n_i.
std::vector<Int> invariant_factors(const std::vector<Int>& cyclic_orders);

struct OrbitMorphism {
  SubId src = 0;
  SubId dst = 0;
  std::size_t rep = 0;               // least member, index into F.hom(src, dst)
  std::vector<std::size_t> members;  // indices into F.hom(src, dst)
  bool inclusion = false;
};

/// Objects: F-centric subgroups. Mor(P,Q) = Inn(Q)\Hom_F(P,Q).
class OrbitCategory {
 public:
  OrbitCategory() = default;
  OrbitCategory(std::shared_ptr<const FusionSystem> f, std::vector<SubId> objects);

  const FusionSystem& fusion() const { return *fusion_; }
  const std::vector<SubId>& objects() const { return objects_; }
  std::size_t size() const { return mors_.size(); }
  const OrbitMorphism& mor(std::size_t m) const { return mors_[m]; }
  const FusionMorphism& rep(std::size_t m) const;
  std::vector<std::size_t> hom(SubId p, SubId q) const;
  /// Orbit of F.hom(p, q)[index].
  std::size_t orbit_of(SubId p, SubId q, std::size_t index) const;
  /// [g]∘[f] for f: P→Q, g: Q→R, computed on representatives.
  std::size_t compose(std::size_t g, std::size_t f) const { return comp_.at({g, f}); }
  /// Composable pairs (g, f) in a fixed order.
  const std::vector<std::pair<std::size_t, std::size_t>>& composable() const { return pairs_; }

 private:
  std::shared_ptr<const FusionSystem> fusion_;
  std::vector<SubId> objects_;
  std::vector<OrbitMorphism> mors_;
  std::map<std::pair<SubId, SubId>, std::vector<std::size_t>> orbit_index_;  // per hom index
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

OrbitCategory orbit_category(std::shared_ptr<const FusionSystem> f);

/// Orbit decomposition partitions every Hom_F(P,Q), composition is
/// independent of representatives, and associative.
AxiomReport verify_orbit_category(const OrbitCategory& o);

/// Z_F on O(F^c): Z(P) per object and Z(Q) → Z(P) per orbit morphism.
class CenterFunctor {
 public:
  CenterFunctor() = default;
  explicit CenterFunctor(OrbitCategory o);

  const OrbitCategory& category() const { return o_; }
  const AbelianPresentation& z(SubId p) const { return z_.at(p); }
  /// Z_F([φ])(x) for x ∈ Z(target), evaluated through matrix(m).
  Elem apply(std::size_t m, Elem x) const;
  /// Coordinates of Z(Q) → coordinates of Z(P), entries reduced.
  const IntMatrix& matrix(std::size_t m) const { return matrices_[m]; }

  /// Fault injection for tests: replace one induced map.
  void set_matrix(std::size_t m, IntMatrix a);

 private:
  OrbitCategory o_;
  std::map<SubId, AbelianPresentation> z_;
  std::vector<IntMatrix> matrices_;
};

/// Z_F([ψ∘φ]) = Z_F([φ])∘Z_F([ψ]) on all composable pairs, and the matrices
/// agree with the element maps.
AxiomReport verify_center_functor(const CenterFunctor& z);

/// Degree 0: by SubId (entries for non-objects are ignored). Degree 1: by
/// orbit morphism, value in Z(source).
using Cochain0 = std::map<SubId, Elem>;
using Cochain1 = std::vector<Elem>;

Cochain0 constant_cochain(const OrbitCategory& o, Elem z);
Cochain1 coboundary(const CenterFunctor& zf, const Cochain0& u);
bool is_inclusion_normalized(const OrbitCategory& o, const Cochain1& t);
/// Checked directly on group elements through the representatives.
bool is_cocycle(const OrbitCategory& o, const Cochain1& t);

/// Ẑ¹, B̂¹ and lim¹ = Ẑ¹/B̂¹ by Smith normal form.
struct CocycleSolution {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t unknowns = 0;                // coordinates of non-inclusion morphisms
  std::vector<std::size_t> offsets;        // by orbit morphism (kNone for inclusions)
  std::vector<Int> unknown_orders;
  IntMatrix equations;                     // rows: Σ a_j x_j ≡ 0 mod modulus
  std::vector<Int> moduli;

  std::vector<Int> z1_invariants;
  std::vector<Cochain1> z1_generators;
  std::vector<Int> b1_invariants;
  std::vector<Cochain1> b1_generators;     // du_z for the basis of Z(S)
  std::vector<Int> lim1_invariants;
  std::vector<Cochain1> lim1_generators;   // cocycles representing the basis of lim¹

  Int z1_order() const;
  Int b1_order() const;
  Int lim1_order() const;
};

CocycleSolution solve_z1hat(const CenterFunctor& zf);

/// Coordinates of a 1-cochain in the unknowns of `s`, and back.
IntVector cochain_vector(const CenterFunctor& zf, const CocycleSolution& s, const Cochain1& t);
Cochain1 vector_cochain(const CenterFunctor& zf, const CocycleSolution& s, const IntVector& v);

/// Every element of Ẑ¹, from the generators (sorted).
std::vector<Cochain1> enumerate_z1hat(const CenterFunctor& zf, const CocycleSolution& s);

/// A complement to B̂¹ in Ẑ¹ by subgroup search on the cocycle table;
/// nullopt when none exists. Generators are a minimal generating tuple.
struct Z1Complement {
  std::size_t order = 0;
  std::vector<Cochain1> generators;
};
std::optional<Z1Complement> z1_complement(const CenterFunctor& zf, const CocycleSolution& s);

/// Independent oracle: backtracking over inclusion-normalized cochains,
/// checking the cocycle identity on group elements. Throws
/// SearchSpaceTooLarge when the raw cochain count exceeds `bound`.
std::vector<Cochain1> brute_z1hat(const OrbitCategory& o, std::size_t bound = 1000000);

/// Z(F): elements of Z(S) fixed by every Z_F([φ]).
AbelianPresentation lim0(const CenterFunctor& zf);

/// Text dump of the cocycle system: one row per line, "modulus: coefficients".
std::string dump_system(const CocycleSolution& s);

}  // namespace fusionkit
