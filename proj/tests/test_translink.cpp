#include <algorithm>
#include <memory>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/translink.hpp"
#include "support.hpp"

using namespace fusionkit;

namespace {

std::shared_ptr<const FusionSystem> fusion(const std::string& name, unsigned p) {
  return std::make_shared<const FusionSystem>(std::make_shared<const FiniteGroup>(test::load(name)), p);
}

std::string failures(const AxiomReport& r) {
  std::string out;
  for (const auto& a : r)
    if (!a.pass) out += a.name + ": " + a.witness + "\n";
  return out;
}

}  // namespace

TEST_CASE("transporter categories") {
  const auto d8 = fusion("d8", 2);
  const auto one = build_transporter(d8, {d8->sylow_id()});
  CHECK(one.objects().size() == 1);
  CHECK(one.hom(d8->sylow_id(), d8->sylow_id()).size() == 8);

  const auto s4 = fusion("s4", 2);
  const auto centric = s4->classification().centric();
  const auto t = build_transporter(s4, centric);
  const FiniteGroup& g = s4->group();
  const SubId vn = s4->id_of(cores(g, 2).op);
  CHECK(t.hom(vn, vn).size() == 24);
  for (SubId p : centric)
    for (SubId q : centric)
      CHECK(t.hom(p, q).size() == transporter_set(g, s4->sub(p), s4->sub(q)).size());
  CHECK(failures(verify_transporter_axioms(t)) == "");

  CHECK_THROWS_AS(build_transporter(s4, {vn}), BadObjectSet);
}

TEST_CASE("centric linking systems") {
  const auto d8 = fusion("d8", 2);
  const auto ld = build_centric_linking(d8);
  CHECK(failures(verify_transporter_axioms(ld, true)) == "");
  for (SubId p : ld.objects())
    for (SubId q : ld.objects())
      CHECK(ld.hom(p, q).size() == transporter_set(d8->group(), d8->sub(p), d8->sub(q)).size());

  const auto s4 = fusion("s4", 2);
  const auto l = build_centric_linking(s4);
  const SubId s = s4->sylow_id();
  CHECK(l.hom(s, s).size() == 8);
  const SubId vn = s4->id_of(cores(s4->group(), 2).op);
  CHECK(l.hom(vn, vn).size() == 24);
  CHECK(failures(verify_transporter_axioms(l, true)) == "");

  for (auto [name, p] : {std::pair{"a4", 2u}, {"a5", 2u}, {"q8", 2u}, {"gl23", 2u}, {"s3", 3u},
                         {"a4", 3u}, {"s3xs3", 3u}, {"c3c4", 3u}}) {
    CAPTURE(name);
    const auto f = fusion(name, p);
    const auto lk = build_centric_linking(f);
    CHECK(failures(verify_transporter_axioms(lk, true)) == "");
    // |Mor(P,Q)| = |N_G(P,Q)| / |O_p'(C_G(P))|
    for (SubId a : lk.objects())
      for (SubId b : lk.objects())
        CHECK(lk.hom(a, b).size() * linking_kernel(*f, a).order() ==
              transporter_set(f->group(), f->sub(a), f->sub(b)).size());
  }
  // A4 at p = 3: C_G(S) = S, nothing to quotient; C3:C4 has a nontrivial kernel.
  const auto c3c4 = fusion("c3c4", 3);
  CHECK(linking_kernel(*c3c4, c3c4->sylow_id()).order() == 2);
}

TEST_CASE("fault injection") {
  const auto s4 = fusion("s4", 2);
  auto l = build_centric_linking(s4);
  const SubId s = s4->sylow_id();
  const auto& aut = l.hom(s, s);
  const MorId a = aut[1], b = aut[2];
  const MorId good = l.compose(a, b);
  l.set_composition(a, b, good == aut[0] ? aut[3] : aut[0]);
  const auto r = verify_transporter_axioms(l, true);
  CHECK_FALSE(all_pass(r));
  CHECK_FALSE(r[0].pass);  // category laws catch it
}

TEST_CASE("restriction and extension") {
  const auto s4 = fusion("s4", 2);
  const auto l = build_centric_linking(s4);
  const SubId s = s4->sylow_id();
  const FiniteGroup& g = s4->group();
  SubId c4 = 0;
  for (SubId p : l.objects())
    if (s4->sub(p).order() == 4 && minimal_generating_tuple(g, s4->sub(p)).size() <= 2 &&
        std::any_of(s4->sub(p).members().begin(), s4->sub(p).members().end(),
                    [&](Elem e) { return g.element_order(e) == 4; }))
      c4 = p;
  REQUIRE(s4->sub(c4).order() == 4);
  CHECK(restrict_morphism(l, l.identity(s), c4, s) == l.inclusion(c4, s));
  for (MorId phi : l.hom(s, s)) {
    const MorId r = restrict_morphism(l, phi, c4, c4);  // C4 is characteristic in S
    CHECK(l.mor(r).payload == l.mor(phi).payload);
    CHECK(extend_morphism(l, r, s, s) == phi);
  }
  const SubId vn = s4->id_of(cores(g, 2).op);
  int order3 = 0;
  for (MorId phi : l.hom(vn, vn)) {
    const Elem x = static_cast<Elem>(l.mor(phi).payload);
    if (g.element_order(x) != 3) continue;
    ++order3;
    CHECK_THROWS_AS(extend_morphism(l, phi, s, s), NoSuchExtension);
  }
  CHECK(order3 > 0);
  CHECK_THROWS_AS(restrict_morphism(l, l.identity(vn), c4, c4), NoSuchRestriction);
}
