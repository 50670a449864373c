#pragma once

// From automorphisms of G to automorphisms of L = L_S^c(G). An automorphism a
// of G normalizing S acts on L by P ↦ a(P), gK_P ↦ a(g)K_{a(P)}, with
// K_P = O_p'(C_G(P)); κ_G: Out(G) → Out(L) is the induced map.

#include <cstddef>
#include <memory>
#include <vector>

#include "fusionkit/group.hpp"
#include "fusionkit/rigid.hpp"
#include "fusionkit/translink.hpp"

namespace fusionkit {

struct KappaData {
  AutomorphismGroup aut;                // Aut(G), on element indices
  std::vector<Elem> domain;             // N_Aut(G)(S), sorted
  std::vector<CatAutomorphism> images;  // κ̃, by domain position
  std::vector<std::size_t> class_rep;   // per outer class: a domain position
  std::vector<std::size_t> kernel;      // outer classes [a] with κ̃(a) ∈ {c_γ}
  Subgroup kernel_lift;                 // their union inside aut.perm_group
  /// Images are automorphisms, κ̃ is multiplicative, inner goes to c_γ,
  /// μ̃∘κ̃ is restriction to S, and every outer class meets the domain.
  AxiomReport checks;

  std::size_t out_order() const { return aut.out_order; }
  std::size_t kernel_order() const { return kernel.size(); }
};

/// Throws TooLarge past the Aut(G) cap.
KappaData kappa_tilde(const FiniteCategory& l, std::size_t cap = 1000);

struct KernelVerdict {
  bool hypothesis = false;  // O_p'(G) = 1
  std::size_t kernel_order = 0;
  AxiomResult p_prime;      // gcd(|ker κ_G|, p) = 1 (vacuous without the hypothesis)
  AxiomResult sylow_injective;  // κ_G injective on a Sylow p-subgroup of Out(G)
};
KernelVerdict kappa_kernel(const FiniteCategory& l, const KappaData& k);

/// A = C_Aut(G)(S)/C_Inn(G)(S). A class acts trivially on L when κ̃ sends it
/// into Aut_{Z(S)}(L), the image of C_Inn(G)(S). The checks are asserted only
/// when O_p'(G) = 1; otherwise they record what was found.
struct AStructure {
  bool hypothesis = false;
  Quotient a;
  std::size_t order = 0;
  std::size_t op_prime = 0;        // |O_p'(A)|
  std::size_t trivial_on_l = 0;    // |{classes acting trivially on L}|
  std::vector<Int> b_invariants;   // of a complement B to O_p'(A)
  AxiomReport checks;
};
AStructure centralizing_aut_structure(const FiniteCategory& l, const KappaData& k);

}  // namespace fusionkit
