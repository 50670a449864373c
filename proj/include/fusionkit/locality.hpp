#pragma once

// Finite localities (L, Δ, S). A word is stored in written order, so that
// Π(w) = w[0]·w[1]···w[n-1] and w.back() acts first. The domain D is exactly
// the set of words admitting an object chain in Δ; membership is decided by
// pushing the largest admissible subgroup of S through the conjugation maps.
//
// Elements of S are embedded in the carrier; conjugation maps c_f are stored
// on positions in S (S.members() order), which requires |S| <= 64.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionkit/fusion.hpp"
#include "fusionkit/translink.hpp"

namespace fusionkit {

using LocElem = std::uint32_t;
inline constexpr LocElem kUndefined = 0xffffffffu;

class Locality {
 public:
  static constexpr std::uint8_t kOutside = 0xff;
  /// Product of a pair known to lie in D.
  using ProductFn = std::function<LocElem(LocElem a, LocElem b)>;

  Locality() = default;
  /// `conj[f * |S| + i]` is the position of c_f(S.members()[i]), or kOutside
  /// when that element is not in S_f. `s_embed[i]` is the carrier element of
  /// S.members()[i]. `tags` are opaque labels (group elements, morphism ids).
  Locality(std::shared_ptr<const FusionSystem> f, std::vector<SubId> delta,
           std::vector<LocElem> inverse, std::vector<std::uint8_t> conj,
           std::vector<LocElem> s_embed, const ProductFn& product,
           std::vector<std::size_t> tags);

  const FusionSystem& fusion() const { return *fusion_; }
  std::shared_ptr<const FusionSystem> fusion_ptr() const { return fusion_; }
  const std::vector<SubId>& delta() const { return delta_; }
  bool in_delta(SubId p) const { return in_delta_[p]; }

  std::size_t size() const { return inverse_.size(); }
  LocElem inverse(LocElem f) const { return inverse_[f]; }
  std::size_t tag(LocElem f) const { return tags_[f]; }
  /// Carrier element with this tag, or kUndefined.
  LocElem find_tag(std::size_t tag) const;

  LocElem from_s(std::size_t pos) const { return s_embed_[pos]; }
  LocElem from_s_elem(Elem s) const;
  /// Position in S, or kNoElem when f is not in S.
  std::size_t s_position(LocElem f) const { return s_pos_[f]; }
  LocElem identity() const { return s_embed_[0]; }

  SubId s_f(LocElem f) const { return s_f_[f]; }
  /// Position of c_f(x) for x at position i of S, or kOutside.
  std::uint8_t conj_pos(LocElem f, std::size_t i) const { return conj_[f * s_order_ + i]; }
  /// c_f(P) for P <= S_f.
  SubId conj_sub(LocElem f, SubId p) const;

  /// Π of a pair, or kUndefined.
  LocElem product(LocElem a, LocElem b) const { return pair_[a * size() + b]; }
  /// Largest X ≤ S pushed through the word (its image at the end), or nullopt
  /// if the word is not in D.
  std::optional<SubId> via(std::span<const LocElem> w) const;
  bool in_domain(std::span<const LocElem> w) const { return via(w).has_value(); }
  /// Π(w), or kUndefined if w is not in D.
  LocElem product(std::span<const LocElem> w) const;

  /// N_L(P) = {f : P <= S_f, c_f(P) = P}.
  std::vector<LocElem> normalizer(SubId p) const;

  std::uint64_t mask_of(SubId p) const { return masks_[p]; }
  SubId sub_of_mask(std::uint64_t m) const;  // throws NotASubgroup
  std::uint64_t push(LocElem f, std::uint64_t mask) const;

 private:
  std::shared_ptr<const FusionSystem> fusion_;
  std::vector<SubId> delta_;
  std::vector<bool> in_delta_;
  std::size_t s_order_ = 0;
  std::vector<LocElem> inverse_;
  std::vector<std::uint8_t> conj_;
  std::vector<LocElem> s_embed_;
  std::vector<std::size_t> s_pos_;
  std::vector<SubId> s_f_;
  std::vector<LocElem> pair_;
  std::vector<std::size_t> tags_;
  std::vector<std::uint64_t> sf_mask_;
  std::vector<std::uint64_t> masks_;
  std::unordered_map<std::uint64_t, SubId> mask_ids_;
  std::unordered_map<std::size_t, LocElem> tag_ids_;
};

/// L_Δ(G) for the fusion system F_S(H): the elements g of H with S ∩ g^-1 S g in Δ.
/// Tags are group elements.
Locality build_group_locality(std::shared_ptr<const FusionSystem> f, std::vector<SubId> delta);

/// Elements f with S_f in Δ, products restricted to the smaller domain.
/// Tags are carrier elements of the larger locality.
Locality restrict_locality(const Locality& l, std::vector<SubId> delta);

/// Partial-group axioms on words of length <= max_len, (L1a) against an
/// independent chain search, (L1b), (L2), S_f ∈ Δ, and consistency of the
/// stored conjugation maps with Π. With `linking`, also N_L(P) of
/// characteristic p for every P ∈ Δ and F^cr ⊆ Δ.
AxiomReport verify_locality_axioms(const Locality& l, bool linking = false,
                                   std::size_t max_len = 4);

/// N_L(P) as an abstract group; to_group maps positions in `normalizer(P)`.
TableGroup normalizer_group(const Locality& l, SubId p);

// ---------------------------------------------------------------- Θ and Λ

/// T_Δ(L): morphisms (f, P, Q) with P <= S_f and c_f(P) <= Q; payload f.
FiniteCategory theta(const Locality& l);

/// Λ(T) = Iso(T)/≡, with S identified as {[δ_S(s)]}. Tags are the MorIds
/// of the maximal member of each class.
struct LambdaLocality {
  std::shared_ptr<const Locality> locality;
  std::vector<LocElem> class_of;  // by MorId; kUndefined for non-isomorphisms
};
LambdaLocality lambda(const FiniteCategory& t);

// ---------------------------------------------------------------- automorphisms

/// A bijection of the carrier.
struct LocAutomorphism {
  std::vector<LocElem> map;

  friend bool operator==(const LocAutomorphism&, const LocAutomorphism&) = default;
  friend auto operator<=>(const LocAutomorphism&, const LocAutomorphism&) = default;
};

LocAutomorphism identity_automorphism(const Locality& l);
/// a∘b.
LocAutomorphism compose(const LocAutomorphism& a, const LocAutomorphism& b);
LocAutomorphism inverse(const LocAutomorphism& a);
/// Image of P ≤ S, or nullopt if β(P) is not a subgroup of S.
std::optional<SubId> image_sub(const Locality& l, const LocAutomorphism& a, SubId p);
/// Empty when a is an automorphism of (L, Δ, S); else the first failure.
std::string check_automorphism(const Locality& l, const LocAutomorphism& a);
bool is_rigid(const Locality& l, const LocAutomorphism& a);
/// x ↦ f x f^-1 for f ∈ N_L(S).
LocAutomorphism conjugation_by(const Locality& l, LocElem f);

struct RigidSearch {
  std::vector<LocAutomorphism> automorphisms;  // sorted; identity first
  std::vector<LocAutomorphism> z_conjugations;  // Aut_{Z(S)}(L), sorted
  std::size_t nodes = 0;
};
/// Every rigid automorphism by backtracking with product propagation.
/// Throws SearchSpaceTooLarge past `node_cap` search nodes.
RigidSearch rigid_automorphisms_bruteforce(const Locality& l, std::size_t node_cap = 10000000);

/// Restriction Aut₀(L⁺) → Aut₀(L) for L = restrict_locality(L⁺, Δ), both
/// sides by brute-force search: well defined, bijective, multiplicative, and
/// Aut_{Z(S)}(L⁺) onto Aut_{Z(S)}(L).
struct RestrictionReport {
  std::size_t plus = 0;    // |Aut₀(L⁺)|
  std::size_t base = 0;    // |Aut₀(L)|
  std::size_t z_plus = 0;  // |Aut_{Z(S)}(L⁺)|
  std::size_t z_base = 0;
  AxiomReport checks;
};
RestrictionReport verify_restriction_iso(const Locality& plus, const Locality& base);

/// Θ(β): (f, P, Q) ↦ (β f, β P, β Q) on theta(l).
CatAutomorphism theta_of(const FiniteCategory& tl, const Locality& l, const LocAutomorphism& b);
/// Λ(α): [φ] ↦ [α φ]; throws NotATransporterSystem if not well defined.
LocAutomorphism lambda_of(const FiniteCategory& t, const LambdaLocality& lt,
                          const CatAutomorphism& a);

// ---------------------------------------------------------------- round trips

/// η_T: T → Θ(Λ(T)), φ: P → Q ↦ ([φ_0], P, Q) with φ_0 the restriction of φ
/// onto its image. Indexed by MorId of T.
std::vector<MorId> eta(const FiniteCategory& t, const LambdaLocality& lt,
                       const FiniteCategory& tlt);
/// ζ_L: L → Λ(Θ(L)), f ↦ [(f, S_f, c_f(S_f))].
std::vector<LocElem> zeta(const Locality& l, const FiniteCategory& tl,
                          const LambdaLocality& ltl);

/// η_T is a rigid isomorphism of transporter systems commuting with π, and
/// natural with respect to each test automorphism of T.
AxiomReport roundtrip_check(const FiniteCategory& t, const std::vector<CatAutomorphism>& tests);
/// ζ_L is a rigid isomorphism of localities, natural for each test automorphism.
AxiomReport roundtrip_check(std::shared_ptr<const Locality> l,
                            const std::vector<LocAutomorphism>& tests);

}  // namespace fusionkit
