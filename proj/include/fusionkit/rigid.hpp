#pragma once

// Rigid automorphisms of a centric linking system through cocycles: λ̃ sends
// t ∈ Ẑ¹ to φ ↦ φ∘δ_P(t([π φ])). Aut₀ = λ̃(Ẑ¹), Aut_{Z(S)} = λ̃(B̂¹), and
// Out₀ = Aut₀/Aut_{Z(S)}.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fusionkit/cohom.hpp"
#include "fusionkit/locality.hpp"
#include "fusionkit/translink.hpp"

namespace fusionkit {

/// Throws NotACocycle unless the result is a rigid automorphism of `l`.
CatAutomorphism lambda_tilde(const FiniteCategory& l, const CenterFunctor& zf, const Cochain1& t);

/// A finite group of category automorphisms with its composition table.
struct AutGroupTable {
  std::vector<CatAutomorphism> elements;  // sorted
  TableGroup table;                       // a∘b on element indices

  /// Throws std::logic_error unless `elements` is closed under composition.
  static AutGroupTable from_elements(std::vector<CatAutomorphism> elements);
  std::size_t size() const { return elements.size(); }
  /// Index of a, or kNoElem.
  std::size_t index_of(const CatAutomorphism& a) const;
  Elem elem(std::size_t i) const { return table.to_group[i]; }
  std::size_t index(Elem x) const { return table.from_group[x]; }
  const FiniteGroup& group() const { return table.group; }
  Subgroup subgroup(const std::vector<std::size_t>& indices) const;
};

struct Aut0 {
  AutGroupTable aut0;
  std::vector<Cochain1> cocycles;   // λ̃^-1, by element index
  Subgroup aut_z;                   // λ̃(B̂¹) inside aut0.group()
  Quotient out0;                    // Aut₀/Aut_{Z(S)}
  std::vector<Int> out0_invariants;
  /// λ̃ injective and multiplicative, λ̃(du_z) = c_{δ_S(z)}, B̂¹ ≅ Z(S)/Z(F),
  /// Out₀ abelian with the invariants of lim¹.
  AxiomReport checks;
};
Aut0 compute_aut0(const FiniteCategory& l, const CenterFunctor& zf, const CocycleSolution& s);

/// δ_S^-1∘α_S∘δ_S, checked to preserve the fusion system (std::logic_error
/// otherwise).
GroupHom mu_tilde(const FiniteCategory& l, const CatAutomorphism& a);

/// μ̃ is trivial on Aut₀, maps {c_φ : φ ∈ Aut_L(S)} onto Aut_F(S), and is
/// multiplicative on that set.
AxiomReport verify_mu(const FiniteCategory& l, const Aut0& a);

/// The subgroup E of Aut₀ of elements that are the identity on Aut_L(J(S)).
std::vector<std::size_t> fixing_thompson(const FiniteCategory& l, const Aut0& a);

struct SplitReport {
  AxiomReport checks;                   // abelian, exponent, split
  std::optional<Subgroup> complement;   // E₀ inside a.aut0.group()
  bool from_thompson = false;           // E₀ came from the subgroup E
  std::vector<std::size_t> generators;  // element indices generating E₀
};
/// Out₀ abelian, α^{k(p)} ∈ Aut_{Z(S)} for α ∈ Aut₀, and a complement E₀ to
/// Aut_{Z(S)} in Aut₀ (first inside E, else by subgroup search).
SplitReport verify_exponent_and_split(const FiniteCategory& l, const Aut0& a);

struct ThompsonPowerReport {
  std::size_t hypothesis = 0;  // |{τ ∈ Aut₀ : τ identity on Aut_L(J(S))}|
  std::size_t excluded_z = 0;  // Z(S)-conjugations outside that set
  AxiomResult result;
};
/// Every τ ∈ Aut₀ that is the identity on Aut_L(J(S)) satisfies τ^{k(p)} = id.
ThompsonPowerReport thompson_power_check(const FiniteCategory& l, const Aut0& a);

/// Aut₀(L) against Aut₀(Λ(L)) found by the locality's brute-force search:
/// Λ(α) is a bijection between them with the same composition table, and
/// Aut_{Z(S)} corresponds. Throws SearchSpaceTooLarge past `node_cap`.
AxiomReport compare_with_locality(const FiniteCategory& l, const Aut0& a,
                                  std::size_t node_cap = 10000000);

/// 1 for odd p, 2 for p = 2.
inline unsigned k_of(unsigned p) { return p == 2 ? 2 : 1; }

}  // namespace fusionkit
