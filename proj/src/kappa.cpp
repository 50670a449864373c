#include "fusionkit/kappa.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "fusionkit/cohom.hpp"
#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

// Least element of g·O_p'(C_G(P)), the payload naming that coset in L.
struct Cosets {
  const FiniteGroup* g = nullptr;
  std::vector<Subgroup> kernel;

  explicit Cosets(const FiniteCategory& l) : g(&l.fusion().group()) {
    kernel.resize(l.fusion().subgroups().size());
    for (SubId p : l.objects()) kernel[p] = linking_kernel(l.fusion(), p);
  }
  Elem least(SubId p, Elem x) const {
    Elem best = kNoElem;
    for (Elem k : kernel[p].members()) best = std::min(best, g->mul(x, k));
    return best;
  }
};

SubId image_of(const FusionSystem& F, const AutomorphismGroup& aut, Elem a, SubId p) {
  std::vector<Elem> im;
  for (Elem x : F.sub(p).members()) im.push_back(aut.apply(a, x));
  std::sort(im.begin(), im.end());
  return F.id_of(Subgroup(std::move(im), F.group().order()));
}

bool normalizes(const FusionSystem& F, const AutomorphismGroup& aut, Elem a) {
  for (Elem x : F.sylow().members())
    if (!F.sylow().contains(aut.apply(a, x))) return false;
  return true;
}

std::set<CatAutomorphism> inner_automorphisms(const FiniteCategory& l) {
  const SubId s = l.fusion().sylow_id();
  std::set<CatAutomorphism> out;
  for (MorId g : l.hom(s, s)) out.insert(conjugation_by(l, g));
  return out;
}

std::set<CatAutomorphism> center_conjugations(const FiniteCategory& l, const Cosets& c) {
  const FusionSystem& F = l.fusion();
  const SubId s = F.sylow_id();
  std::set<CatAutomorphism> out;
  const Subgroup zs = center(F.group(), F.sylow());
  for (Elem z : zs.members())
    out.insert(conjugation_by(l, l.find(s, s, c.least(s, z))));
  return out;
}

}  // namespace

KappaData kappa_tilde(const FiniteCategory& l, std::size_t cap) {
  const FusionSystem& F = l.fusion();
  const FiniteGroup& G = F.group();
  const SubId s = F.sylow_id();
  const Cosets cosets(l);
  KappaData out;
  out.aut = automorphism_group(G, cap);
  const AutomorphismGroup& aut = out.aut;
  const FiniteGroup& A = aut.perm_group;

  for (Elem a = 0; a < A.order(); ++a)
    if (normalizes(F, aut, a)) out.domain.push_back(a);

  AxiomResult functor{"kappa-automorphism", true, ""};
  for (Elem a : out.domain) {
    CatAutomorphism c = identity_automorphism(l);
    for (SubId p : l.objects()) c.objects[p] = image_of(F, aut, a, p);
    for (MorId m = 0; m < l.size(); ++m) {
      const Morphism& mor = l.mor(m);
      const SubId ap = c.objects[mor.src], aq = c.objects[mor.dst];
      c.morphisms[m] = l.find(ap, aq, cosets.least(ap, aut.apply(a, static_cast<Elem>(mor.payload))));
    }
    const std::string why = check_automorphism(l, c);
    if (!why.empty() && functor.pass) {
      functor.pass = false;
      functor.witness = "automorphism " + std::to_string(a) + ": " + why;
    }
    out.images.push_back(std::move(c));
  }
  auto position = [&](Elem a) {
    auto it = std::lower_bound(out.domain.begin(), out.domain.end(), a);
    return it != out.domain.end() && *it == a ? static_cast<std::size_t>(it - out.domain.begin())
                                              : kNoElem;
  };

  AxiomResult hom{"kappa-multiplicative", true, ""};
  for (std::size_t i = 0; i < out.domain.size() && hom.pass; ++i)
    for (std::size_t j = 0; j < out.domain.size(); ++j) {
      std::vector<Point> im(G.order());
      for (Elem x = 0; x < G.order(); ++x)
        im[x] = static_cast<Point>(aut.apply(out.domain[i], aut.apply(out.domain[j], x)));
      const auto ab = A.find(Perm(std::move(im)));
      const std::size_t k = ab ? position(*ab) : kNoElem;
      if (k == kNoElem || out.images[k] != compose(out.images[i], out.images[j])) {
        hom.pass = false;
        hom.witness = "κ̃(ab) ≠ κ̃(a)∘κ̃(b)";
        break;
      }
    }

  // Aut_G(S) goes onto {c_γ : γ ∈ Aut_L(S)}.
  AxiomResult inner{"kappa-inner", true, ""};
  const std::set<CatAutomorphism> c_gamma = inner_automorphisms(l);
  std::set<CatAutomorphism> got;
  const Subgroup n = normalizer(G, F.sylow(), F.ambient());
  for (Elem x : n.members()) {
    const std::size_t k = position(aut.inner_of(G, x));
    const CatAutomorphism want = conjugation_by(l, l.find(s, s, cosets.least(s, x)));
    if (k == kNoElem || out.images[k] != want) {
      inner.pass = false;
      inner.witness = "κ̃(c_x) ≠ c_[x] for x = " + G.perm(x).cycles();
      break;
    }
    got.insert(want);
  }
  if (inner.pass && got != c_gamma) {
    inner.pass = false;
    inner.witness = "κ̃(Aut_G(S)) ≠ {c_γ}";
  }

  AxiomResult mu{"mu-kappa-restriction", true, ""};
  for (std::size_t i = 0; i < out.domain.size(); ++i) {
    std::vector<Elem> restricted;
    for (Elem x : F.sylow().members()) restricted.push_back(aut.apply(out.domain[i], x));
    if (mu_tilde(l, out.images[i]).images != restricted) {
      mu.pass = false;
      mu.witness = "μ̃∘κ̃ differs from restriction at automorphism " + std::to_string(out.domain[i]);
      break;
    }
  }

  // Sylow: every outer class has a representative normalizing S, and the
  // kernel verdict does not depend on the representative.
  AxiomResult classes{"kappa-classes", true, ""};
  out.class_rep.assign(aut.out_order, kNoElem);
  std::vector<int> verdict(aut.out_order, -1);
  for (std::size_t i = 0; i < out.domain.size(); ++i) {
    const std::size_t c = aut.out_class[out.domain[i]];
    if (out.class_rep[c] == kNoElem) out.class_rep[c] = i;
    const int v = c_gamma.count(out.images[i]) ? 1 : 0;
    if (verdict[c] >= 0 && verdict[c] != v) {
      classes.pass = false;
      classes.witness = "kernel membership depends on the representative";
    }
    verdict[c] = v;
  }
  for (std::size_t c = 0; c < aut.out_order; ++c) {
    if (out.class_rep[c] == kNoElem) {
      classes.pass = false;
      classes.witness = "outer class " + std::to_string(c) + " misses N_Aut(G)(S)";
    } else if (verdict[c] == 1) {
      out.kernel.push_back(c);
    }
  }
  std::vector<Elem> lift;
  for (Elem a = 0; a < A.order(); ++a)
    if (std::binary_search(out.kernel.begin(), out.kernel.end(), aut.out_class[a])) lift.push_back(a);
  try {
    out.kernel_lift = A.subgroup(std::move(lift));
  } catch (const NotASubgroup&) {
    classes.pass = false;
    classes.witness = "ker κ is not a subgroup";
  }
  out.checks = {functor, hom, inner, mu, classes};
  return out;
}

KernelVerdict kappa_kernel(const FiniteCategory& l, const KappaData& k) {
  const FusionSystem& F = l.fusion();
  const unsigned p = F.prime();
  KernelVerdict out;
  out.hypothesis = cores(F.group(), p).op_prime.order() == 1;
  out.kernel_order = k.kernel_order();
  const bool coprime = out.kernel_order % p != 0;
  out.p_prime = {"kernel-p-prime", coprime || !out.hypothesis,
                 "|ker κ| = " + std::to_string(out.kernel_order)};
  if (!out.hypothesis) out.p_prime.witness += " (O_p'(G) ≠ 1, not asserted)";

  const FiniteGroup& A = k.aut.perm_group;
  const Subgroup P = sylow(A, p);
  const std::size_t meet = intersect(A, P, k.kernel_lift).order();
  const std::size_t inner = intersect(A, P, k.aut.inner).order();
  out.sylow_injective = {"kappa-sylow-injective", meet == inner || !out.hypothesis,
                         meet == inner ? "" : "a p-element of Out(G) lies in ker κ"};
  return out;
}

AStructure centralizing_aut_structure(const FiniteCategory& l, const KappaData& k) {
  const FusionSystem& F = l.fusion();
  const unsigned p = F.prime();
  const AutomorphismGroup& aut = k.aut;
  const FiniteGroup& P = aut.perm_group;
  const Cosets cosets(l);
  AStructure out;

  std::vector<Elem> c_members;
  for (Elem a = 0; a < P.order(); ++a) {
    bool fixes = true;
    for (Elem x : F.sylow().members()) fixes = fixes && aut.apply(a, x) == x;
    if (fixes) c_members.push_back(a);
  }
  const Subgroup c = P.subgroup(c_members);
  const Subgroup ci = intersect(P, c, aut.inner);
  out.a = quotient(P, c, ci);
  const FiniteGroup& A = out.a.group;
  const Subgroup all = A.whole();
  out.order = A.order();
  const Subgroup opp = cores(A, p).op_prime;
  out.op_prime = opp.order();

  const std::set<CatAutomorphism> z = center_conjugations(l, cosets);
  std::set<Elem> trivial;
  for (Elem a : c.members()) {
    const auto it = std::lower_bound(k.domain.begin(), k.domain.end(), a);
    if (it == k.domain.end() || *it != a) throw std::logic_error("C_Aut(G)(S) outside the domain");
    if (z.count(k.images[static_cast<std::size_t>(it - k.domain.begin())])) trivial.insert(out.a(c, a));
  }
  out.trivial_on_l = trivial.size();
  AxiomResult normal_complement{"A-trivial-on-L", true, ""};
  if (std::vector<Elem>(trivial.begin(), trivial.end()) != opp.members()) {
    normal_complement.pass = false;
    normal_complement.witness = "O_p'(A) has order " + std::to_string(opp.order()) + ", " +
                                std::to_string(trivial.size()) + " classes act trivially on L";
  }

  AxiomResult split{"A-split", true, ""};
  const auto b = find_complement(A, all, opp);
  if (!b) {
    split.pass = false;
    split.witness = "no complement to O_p'(A)";
  } else {
    bool elementary = A.is_abelian(*b);
    for (Elem x : b->members()) elementary = elementary && A.mul(x, x) == A.identity();
    if (p != 2) elementary = b->order() == 1;
    if (!elementary) {
      split.pass = false;
      split.witness = p == 2 ? "B is not elementary abelian" : "B is not trivial";
    } else {
      out.b_invariants = AbelianPresentation(A, *b).invariants();
    }
  }
  out.hypothesis = cores(F.group(), p).op_prime.order() == 1;
  if (!out.hypothesis)
    for (AxiomResult* r : {&normal_complement, &split})
      if (!r->pass) {
        r->pass = true;
        r->witness += " (O_p'(G) ≠ 1, not asserted)";
      }
  out.checks = {normal_complement, split};
  return out;
}

}  // namespace fusionkit
