#pragma once

// Explicit finite categories over a fusion system: transporter categories
// T_Δ(G), centric linking systems L_S^c(G), and anything else carrying the
// structural functors δ and π. Morphisms are identified by a payload (a
// group or locality element); composition is an explicit table.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fusionkit/fusion.hpp"

namespace fusionkit {

using MorId = std::uint32_t;
inline constexpr MorId kNoMor = 0xffffffffu;

struct Morphism {
  SubId src = 0;
  SubId dst = 0;
  std::size_t payload = 0;

  friend auto operator<=>(const Morphism&, const Morphism&) = default;
};

class FiniteCategory {
 public:
  using ComposeFn = std::function<std::size_t(const Morphism& g, const Morphism& f)>;
  using DeltaFn = std::function<std::size_t(SubId p, SubId q, Elem s)>;
  using PiFn = std::function<std::vector<Elem>(const Morphism&)>;

  FiniteCategory() = default;
  /// `compose(g, f)` returns the payload of g∘f; `delta(P, Q, s)` the payload of
  /// δ_{P,Q}(s) for s ∈ N_S(P,Q); `pi` the images of P's members under π.
  FiniteCategory(std::shared_ptr<const FusionSystem> f, std::vector<SubId> objects,
                 std::vector<Morphism> morphisms, const ComposeFn& compose,
                 const DeltaFn& delta, const PiFn& pi);

  const FusionSystem& fusion() const { return *fusion_; }
  std::shared_ptr<const FusionSystem> fusion_ptr() const { return fusion_; }
  const std::vector<SubId>& objects() const { return objects_; }
  bool has_object(SubId p) const { return p < pos_.size() && pos_[p] != kNone; }

  std::size_t size() const { return mors_.size(); }
  const Morphism& mor(MorId m) const { return mors_[m]; }
  const std::vector<MorId>& hom(SubId p, SubId q) const;
  /// Throws NoSuchRestriction if absent.
  MorId find(SubId p, SubId q, std::size_t payload) const;
  MorId find_or_none(SubId p, SubId q, std::size_t payload) const;

  MorId identity(SubId p) const { return identity_[pos_[p]]; }
  /// g∘f for f: P→Q, g: Q→R.
  MorId compose(MorId g, MorId f) const;
  MorId delta(SubId p, SubId q, Elem s) const;
  MorId inclusion(SubId p, SubId q) const { return delta(p, q, Elem{0}); }
  const std::vector<Elem>& pi(MorId m) const { return pi_[m]; }
  /// Index of π(m) in Hom_F(P,Q).
  std::size_t pi_index(MorId m) const { return pi_index_[m]; }

  bool is_iso(MorId m) const;
  /// Inverse of an isomorphism (kNoMor otherwise).
  MorId inverse(MorId m) const;

  /// Fault injection for tests: overwrite one composition entry.
  void set_composition(MorId g, MorId f, MorId value);

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::shared_ptr<const FusionSystem> fusion_;
  std::vector<SubId> objects_;
  std::vector<std::size_t> pos_;               // SubId -> object position
  std::vector<Morphism> mors_;                 // sorted by (src, dst, payload)
  std::vector<std::vector<MorId>> hom_;        // by object position pair
  std::vector<MorId> first_out_;               // first morphism with a given source
  std::vector<std::vector<MorId>> comp_;       // comp_[f][g - first_out_[target f]]
  std::vector<std::vector<MorId>> delta_;      // by pair, indexed by position in S
  std::vector<std::vector<Elem>> pi_;
  std::vector<std::size_t> pi_index_;
  std::vector<MorId> identity_;
};

/// Δ closed under F-conjugacy and overgroups; throws BadObjectSet otherwise.
void validate_object_set(const FusionSystem& f, const std::vector<SubId>& objects);

FiniteCategory build_transporter(std::shared_ptr<const FusionSystem> f,
                                 std::vector<SubId> objects);

/// Objects: the F-centric subgroups; Mor(P,Q) = N_G(P,Q)/O_p'(C_G(P)), each
/// coset named by its least element.
FiniteCategory build_centric_linking(std::shared_ptr<const FusionSystem> f);

/// O_p'(C_G(P)) for the ambient group of f.
Subgroup linking_kernel(const FusionSystem& f, SubId p);

struct AxiomResult {
  std::string name;
  bool pass = true;
  std::string witness;
};
using AxiomReport = std::vector<AxiomResult>;
bool all_pass(const AxiomReport& r);

/// Category laws, (A1) (A2) (B) (C) (I) (II), monic/epic, free E(P)-actions.
/// With `linking`, also E(P) = δ_P(Z(P)) and characteristic-p automizers.
AxiomReport verify_transporter_axioms(const FiniteCategory& t, bool linking = false);

/// The unique ψ: P0 → Q0 with ι∘ψ = φ∘ι.
MorId restrict_morphism(const FiniteCategory& t, MorId phi, SubId p0, SubId q0);
/// The unique ψ: P → Q with ψ∘ι = ι∘φ, for φ: P0 → Q0.
MorId extend_morphism(const FiniteCategory& t, MorId phi, SubId p, SubId q);

/// Aut_T(P) as an abstract group (regular representation of its table).
TableGroup automizer_group(const FiniteCategory& t, SubId p);

/// An invertible functor T -> T, given on objects and morphisms.
struct CatAutomorphism {
  std::vector<SubId> objects;  // indexed by SubId; meaningful on objects only
  std::vector<MorId> morphisms;

  friend bool operator==(const CatAutomorphism&, const CatAutomorphism&) = default;
  friend auto operator<=>(const CatAutomorphism&, const CatAutomorphism&) = default;
};

CatAutomorphism identity_automorphism(const FiniteCategory& t);
/// a∘b.
CatAutomorphism compose(const CatAutomorphism& a, const CatAutomorphism& b);
CatAutomorphism inverse(const FiniteCategory& t, const CatAutomorphism& a);
/// Empty string when a is a bijective, isotypical functor sending inclusions to
/// inclusions; otherwise a description of the first failure.
std::string check_automorphism(const FiniteCategory& t, const CatAutomorphism& a);
/// Identity on objects and α_S∘δ_S = δ_S.
bool is_rigid(const FiniteCategory& t, const CatAutomorphism& a);
/// Conjugation by an automorphism γ of S in T: ψ ↦ γ'∘ψ∘γ_P^{-1} with γ' and
/// γ_P restrictions of γ.
CatAutomorphism conjugation_by(const FiniteCategory& t, MorId gamma);

}  // namespace fusionkit
