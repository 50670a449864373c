#pragma once

// Fusion systems F_S(H) realized by a group: objects are the subgroups of S,
// morphisms the distinct maps c_g|_P with g in H and gPg^-1 <= Q.

#include <memory>
#include <string>
#include <vector>

#include "fusionkit/group.hpp"

namespace fusionkit {

using SubId = std::size_t;

struct FusionMorphism {
  SubId src = 0;
  SubId dst = 0;
  std::vector<Elem> images;  // image of src.members()[i]
  Elem witness = 0;          // least g inducing the map

  friend bool operator==(const FusionMorphism&, const FusionMorphism&) = default;
};

struct SubgroupFlags {
  std::size_t cls = 0;  // F-conjugacy class id
  bool fully_normalized = false;
  bool centric = false;
  bool radical = false;
  bool centric_radical = false;
  bool subcentric = false;
  bool essential_candidate = false;
};

struct Classification {
  std::vector<SubgroupFlags> flags;  // by SubId
  std::vector<std::vector<SubId>> classes;

  std::vector<SubId> centric() const;
  std::vector<SubId> subcentric() const;
  std::vector<SubId> centric_radical() const;
};

class FusionSystem {
 public:
  FusionSystem() = default;
  /// F_S(G) with S the canonical Sylow p-subgroup of G.
  FusionSystem(std::shared_ptr<const FiniteGroup> g, unsigned p);
  /// F_S(H) for H <= G with S a Sylow p-subgroup of H.
  FusionSystem(std::shared_ptr<const FiniteGroup> g, Subgroup h, Subgroup s, unsigned p);

  const FiniteGroup& group() const { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
  unsigned prime() const { return p_; }
  const Subgroup& ambient() const { return ambient_; }
  const Subgroup& sylow() const { return subgroups_.back(); }
  SubId sylow_id() const { return subgroups_.size() - 1; }

  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  const Subgroup& sub(SubId id) const { return subgroups_[id]; }
  /// Throws NotASubgroup unless x is a subgroup of S.
  SubId id_of(const Subgroup& x) const;

  const std::vector<FusionMorphism>& hom(SubId p, SubId q) const {
    return hom_[p * subgroups_.size() + q];
  }
  /// Index in hom(p, q) of the morphism with these images, or kNoElem.
  std::size_t find(SubId p, SubId q, const std::vector<Elem>& images) const;
  Elem apply(const FusionMorphism& m, Elem x) const { return m.images[sub(m.src).position(x)]; }
  /// Subgroup id of phi(P).
  SubId image_of(const FusionMorphism& m) const;
  /// psi o phi, as a morphism into psi's target.
  std::vector<Elem> compose(const FusionMorphism& psi, const FusionMorphism& phi) const;

  /// Aut_F(P) as a permutation group on positions in P; the inner automorphisms.
  struct Automizer {
    FiniteGroup group;
    Subgroup inner;
  };
  Automizer automizer(SubId p) const;

  const Classification& classification() const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
  unsigned p_ = 0;
  Subgroup ambient_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<FusionMorphism>> hom_;
  mutable std::shared_ptr<const Classification> classification_;
};

Classification classify(const FusionSystem& f);

/// F_{N_S(Q)}(N_H(Q)); throws NotFullyNormalized.
FusionSystem normalizer_fusion(const FusionSystem& f, SubId q);

/// Largest R normal in S such that every morphism extends to one on PR fixing R.
Subgroup op_of_fusion(const FusionSystem& f);

/// True iff every morphism is a composite of restrictions of automorphisms of
/// members of c.
bool verify_conjugation_family(const FusionSystem& f, const std::vector<SubId>& c);

/// Generators of x in cycle notation, e.g. "<(1 2 3 4), (1 3)>".
std::string describe(const FiniteGroup& g, const Subgroup& x);

}  // namespace fusionkit
