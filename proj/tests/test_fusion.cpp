#include <algorithm>
#include <memory>
#include <numeric>
#include <set>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/fusion.hpp"
#include "support.hpp"

using namespace fusionkit;

namespace {

FusionSystem make(const std::string& name, unsigned p) {
  return FusionSystem(std::make_shared<const FiniteGroup>(test::load(name)), p);
}

// Group-theoretic centric test: Z(Q) is a Sylow p-subgroup of C_G(Q) for every G-conjugate Q in S.
bool centric_oracle(const FusionSystem& f, SubId p) {
  const FiniteGroup& g = f.group();
  for (const FusionMorphism& m : f.hom(p, f.sylow_id())) {
    const Subgroup q(m.images, g.order());
    if (p_part(centralizer(g, q).order(), f.prime()) != center(g, q).order()) return false;
  }
  return true;
}

struct S4Parts {
  SubId vn, vo, c4, z, off;  // normal V4, other V4, C4, Z(S), a non-central subgroup of vn
};

S4Parts s4_parts(const FusionSystem& f) {
  S4Parts out{};
  const FiniteGroup& g = f.group();
  out.vn = f.id_of(cores(g, 2).op);
  out.z = f.id_of(center(g, f.sylow()));
  for (SubId i = 0; i < f.subgroups().size(); ++i) {
    const Subgroup& x = f.sub(i);
    if (x.order() == 4 && i != out.vn) (g.is_abelian(x) && std::any_of(x.members().begin(), x.members().end(), [&](Elem e) { return g.element_order(e) == 4; }) ? out.c4 : out.vo) = i;
    if (x.order() == 2 && i != out.z && x.is_subgroup_of(f.sub(out.vn))) out.off = i;
  }
  return out;
}

}  // namespace

TEST_CASE("hom sets") {
  const auto c2 = make("c2", 2);
  CHECK(c2.subgroups().size() == 2);
  for (SubId a = 0; a < 2; ++a)
    for (SubId b = 0; b < 2; ++b) CHECK(c2.hom(a, b).size() == (a <= b ? 1u : 0u));

  const auto s4 = make("s4", 2);
  const auto& cl = s4.classification();
  std::set<std::size_t> order4;
  for (SubId i = 0; i < s4.subgroups().size(); ++i)
    if (s4.sub(i).order() == 4) order4.insert(cl.flags[i].cls);
  CHECK(order4.size() == 3);
  const auto parts = s4_parts(s4);
  CHECK(s4.hom(parts.vn, parts.vn).size() == 6);
  CHECK(s4.hom(parts.vo, parts.vo).size() == 2);  // N_G(V4') = S
  CHECK(s4.hom(parts.c4, parts.c4).size() == 2);

  const auto s3 = make("s3", 3);
  CHECK(s3.hom(s3.sylow_id(), s3.sylow_id()).size() == 2);
}

TEST_CASE("composition closure") {
  for (auto [name, p] : {std::pair{"s4", 2u}, {"a4", 2u}, {"gl23", 2u}, {"s3xs3", 3u}}) {
    const auto f = make(name, p);
    const std::size_t n = f.subgroups().size();
    for (SubId a = 0; a < n; ++a)
      for (SubId b = 0; b < n; ++b)
        for (const auto& phi : f.hom(a, b)) {
          CHECK(f.find(a, b, phi.images) != kNoElem);
          for (SubId c = 0; c < n; ++c)
            for (const auto& psi : f.hom(b, c)) CHECK(f.find(a, c, f.compose(psi, phi)) != kNoElem);
        }
  }
}

TEST_CASE("classification of S4 at 2") {
  const auto f = make("s4", 2);
  const auto& cl = f.classification();
  const SubId s = f.sylow_id();
  CHECK(cl.flags[s].centric);
  CHECK(cl.flags[s].radical);
  CHECK(cl.flags[s].fully_normalized);
  CHECK(cl.flags[s].subcentric);

  const auto parts = s4_parts(f);
  const std::vector<SubId> expected{parts.c4, parts.vo, parts.vn, s};
  auto centric = cl.centric();
  CHECK(std::set<SubId>(centric.begin(), centric.end()) ==
        std::set<SubId>(expected.begin(), expected.end()));
  for (SubId i = 0; i < f.subgroups().size(); ++i) CHECK(cl.flags[i].centric == centric_oracle(f, i));

  const SubId z = f.id_of(center(f.group(), f.sylow()));
  CHECK(cl.flags[z].subcentric);
  CHECK_FALSE(cl.flags[z].centric);
  CHECK(f.sub(z).order() == 2);

  // V4 normal is centric-radical (Out = S3) and essential-candidate; C4 is not radical.
  CHECK(cl.flags[parts.vn].centric_radical);
  CHECK(cl.flags[parts.vn].essential_candidate);
  CHECK_FALSE(cl.flags[parts.c4].radical);
  // F is constrained, so even the trivial subgroup is subcentric.
  CHECK(cl.flags[0].subcentric);
  CHECK_FALSE(cl.flags[parts.off].fully_normalized);
}

TEST_CASE("subcentric exceeds centric in A4") {
  const auto f = make("a4", 2);
  const auto& cl = f.classification();
  CHECK(cl.centric() == std::vector<SubId>{f.sylow_id()});
  CHECK(cl.subcentric().size() == f.subgroups().size());
}

TEST_CASE("normalizer fusion") {
  const auto f = make("s4", 2);
  CHECK(normalizer_fusion(f, f.sylow_id()).ambient().order() == 8);
  const auto parts = s4_parts(f);
  const auto nv = normalizer_fusion(f, parts.vn);
  CHECK(nv.ambient().order() == 24);
  CHECK(nv.sylow() == f.sylow());
  CHECK(normalizer_fusion(f, parts.z).ambient().order() == 8);
  CHECK_THROWS_AS(normalizer_fusion(f, parts.off), NotFullyNormalized);
}

TEST_CASE("O_p of a fusion system") {
  const auto d8 = make("d8", 2);
  CHECK(op_of_fusion(d8) == d8.sylow());
  // S normal in G forces O_p(F) = S, even though Aut_F(S) acts nontrivially.
  CHECK(op_of_fusion(make("s3", 3)).order() == 3);
  CHECK(op_of_fusion(make("a4", 2)).order() == 4);
  CHECK(op_of_fusion(make("a5", 2)).order() == 4);  // S abelian with N_G(S) = A4 controlling fusion
  const auto s4 = make("s4", 2);
  CHECK(op_of_fusion(s4) == cores(s4.group(), 2).op);
}

TEST_CASE("conjugation families") {
  const auto f = make("s4", 2);
  std::vector<SubId> all(f.subgroups().size());
  std::iota(all.begin(), all.end(), SubId{0});
  CHECK(verify_conjugation_family(f, all));
  std::vector<SubId> fnc;
  for (SubId i : f.classification().centric())
    if (f.classification().flags[i].fully_normalized) fnc.push_back(i);
  CHECK(verify_conjugation_family(f, fnc));
  CHECK_FALSE(verify_conjugation_family(f, {f.sylow_id()}));
}

TEST_CASE("classification invariants across the catalog") {
  for (auto [name, p] : {std::pair{"s4", 2u}, {"a4", 2u}, {"a5", 2u}, {"d8", 2u}, {"q8", 2u},
                         {"gl23", 2u}, {"s3", 3u}, {"a4", 3u}, {"s3xs3", 3u}, {"c3c4", 3u}}) {
    CAPTURE(name);
    const auto f = make(name, p);
    const auto& cl = f.classification();
    const FiniteGroup& g = f.group();
    const Subgroup op = op_of_fusion(f);
    for (SubId i = 0; i < f.subgroups().size(); ++i) {
      const auto& fl = cl.flags[i];
      for (SubId j : cl.classes[fl.cls]) {
        CHECK(cl.flags[j].centric == fl.centric);
        CHECK(cl.flags[j].radical == fl.radical);
        CHECK(cl.flags[j].subcentric == fl.subcentric);
      }
      CHECK(fl.centric == centric_oracle(f, i));
      if (fl.centric_radical) {
        CHECK(fl.centric);
        CHECK(op.is_subgroup_of(f.sub(i)));
      }
      if (fl.centric) CHECK(fl.subcentric);
      if (fl.subcentric)
        for (SubId j = 0; j < f.subgroups().size(); ++j)
          if (f.sub(i).is_subgroup_of(f.sub(j))) CHECK(cl.flags[j].subcentric);
    }
    const Subgroup& s = f.sylow();
    CHECK(f.hom(f.sylow_id(), f.sylow_id()).size() ==
          normalizer(g, s).order() / centralizer(g, s).order());
    const auto aut_s = f.automizer(f.sylow_id());
    CHECK(coprime_to(aut_s.group.order() / aut_s.inner.order(), p));
  }
}
