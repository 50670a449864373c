#include <algorithm>
#include <memory>
#include <set>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/locality.hpp"
#include "support.hpp"

using namespace fusionkit;
using test::failures;
using test::fusion_of;

namespace {

std::vector<SubId> nonidentity(const FusionSystem& f) {
  std::vector<SubId> out;
  for (SubId p = 1; p < f.subgroups().size(); ++p) out.push_back(p);
  return out;
}

// Brute-force oracle for L_Δ(G): g is in the carrier iff some P ∈ Δ has gPg^-1 <= S,
// and a word is defined iff some P ∈ Δ survives every partial conjugation inside S.
bool oracle_defined(const FusionSystem& f, const std::vector<SubId>& delta,
                    const std::vector<Elem>& word) {
  const FiniteGroup& g = f.group();
  for (SubId p : delta) {
    Subgroup x = f.sub(p);
    bool ok = true;
    for (std::size_t i = word.size(); i-- > 0 && ok;) {
      x = g.conjugate(word[i], x);
      ok = x.is_subgroup_of(f.sylow()) &&
           std::find(delta.begin(), delta.end(), f.id_of(x)) != delta.end();
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("group localities match the brute-force oracle") {
  const auto f = fusion_of("s4", 2);
  const auto centric = f->classification().centric();
  const Locality l = build_group_locality(f, centric);
  CHECK(l.size() == 24);
  CHECK(failures(verify_locality_axioms(l, true)) == "");
  const FiniteGroup& g = f->group();
  for (LocElem a = 0; a < l.size(); ++a)
    for (LocElem b = 0; b < l.size(); ++b)
      for (LocElem c = 0; c < l.size(); ++c) {
        const std::vector<LocElem> w{a, b, c};
        const std::vector<Elem> gw{Elem(l.tag(a)), Elem(l.tag(b)), Elem(l.tag(c))};
        const bool defined = oracle_defined(*f, centric, gw);
        REQUIRE(l.in_domain(w) == defined);
        if (defined) CHECK(l.tag(l.product(w)) == g.mul({gw[0], gw[1], gw[2]}));
      }
  // S_f for a 3-cycle: the elements of S it conjugates back into S.
  const Elem t = g.index_of(Perm::from_cycles(4, "(1 2 3)"));
  const LocElem lt = l.find_tag(t);
  std::vector<Elem> sf;
  for (Elem s : f->sylow().members())
    if (f->sylow().contains(g.conj(t, s))) sf.push_back(s);
  CHECK(f->sub(l.s_f(lt)).members() == sf);
  CHECK(l.in_delta(l.s_f(lt)));
}

TEST_CASE("p-group localities are groups") {
  const auto f = fusion_of("d8", 2);
  const Locality l = build_group_locality(f, nonidentity(*f));
  CHECK(l.size() == 8);
  for (LocElem a = 0; a < 8; ++a)
    for (LocElem b = 0; b < 8; ++b) CHECK(l.product(a, b) != kUndefined);
  CHECK(failures(verify_locality_axioms(l, true)) == "");
  const auto rs = rigid_automorphisms_bruteforce(l);
  CHECK(rs.automorphisms.size() == 1);
  CHECK(rs.z_conjugations.size() == 1);
  const LambdaLocality lt = lambda(build_transporter(f, nonidentity(*f)));
  CHECK(lt.locality->size() == 8);
}

TEST_CASE("restriction of localities") {
  const auto f = fusion_of("s4", 2);
  const auto& cl = f->classification();
  const auto subcentric = cl.subcentric();
  const auto centric = cl.centric();
  CHECK(subcentric.size() > centric.size());
  const Locality big = build_group_locality(f, subcentric);
  const Locality small = build_group_locality(f, centric);
  const Locality res = restrict_locality(big, centric);
  CHECK(restrict_locality(big, subcentric).size() == big.size());
  REQUIRE(res.size() == small.size());
  for (LocElem a = 0; a < res.size(); ++a) {
    CHECK(big.tag(res.tag(a)) == small.tag(a));
    for (LocElem b = 0; b < res.size(); ++b) CHECK(res.product(a, b) == small.product(a, b));
  }
  CHECK(failures(verify_locality_axioms(res)) == "");
  CHECK_THROWS_AS(restrict_locality(small, subcentric), BadObjectSet);
}

TEST_CASE("Θ of a group locality is the transporter category") {
  const auto f = fusion_of("s4", 2);
  const auto centric = f->classification().centric();
  const Locality l = build_group_locality(f, centric);
  const FiniteCategory tl = theta(l);
  const FiniteCategory t = build_transporter(f, centric);
  REQUIRE(tl.size() == t.size());
  for (MorId m = 0; m < t.size(); ++m) {
    CHECK(t.mor(m).src == tl.mor(m).src);
    CHECK(t.mor(m).payload == l.tag(static_cast<LocElem>(tl.mor(m).payload)));
  }
  CHECK(failures(verify_transporter_axioms(tl)) == "");

  const auto one = build_group_locality(f, {f->sylow_id()});
  const FiniteCategory t1 = theta(one);
  CHECK(t1.hom(f->sylow_id(), f->sylow_id()).size() ==
        normalizer(f->group(), f->sylow()).order());
}

TEST_CASE("round trips over the catalog") {
  const std::vector<std::pair<std::string, unsigned>> catalog{
      {"s4", 2}, {"a4", 2}, {"a5", 2}, {"d8", 2}, {"q8", 2},
      {"gl23", 2}, {"s3", 3}, {"a4", 3}, {"s3xs3", 3}, {"c3c4", 3}};
  for (const auto& [name, p] : catalog) {
    CAPTURE(name);
    const auto f = fusion_of(name, p);
    const FiniteCategory link = build_centric_linking(f);
    std::vector<CatAutomorphism> tests;
    const SubId s = f->sylow_id();
    for (MorId g : link.hom(s, s)) tests.push_back(conjugation_by(link, g));
    for (const auto& a : tests) CHECK(check_automorphism(link, a) == "");
    CHECK(failures(roundtrip_check(link, tests)) == "");

    const LambdaLocality lt = lambda(link);
    CHECK(failures(verify_locality_axioms(*lt.locality, true, 3)) == "");

    // Group localities are linking localities only when O_p'(C_G(P)) = 1 on Δ.
    const auto l = std::make_shared<const Locality>(build_group_locality(f, f->classification().centric()));
    bool linking = true;
    for (SubId q : l->delta()) linking = linking && linking_kernel(*f, q).order() == 1;
    CHECK(failures(verify_locality_axioms(*l, linking, 3)) == "");
    std::vector<LocAutomorphism> ltests;
    for (LocElem x : l->normalizer(s)) ltests.push_back(conjugation_by(*l, x));
    const auto rs = rigid_automorphisms_bruteforce(*l);
    ltests.insert(ltests.end(), rs.automorphisms.begin(), rs.automorphisms.end());
    for (const auto& b : ltests) CHECK(check_automorphism(*l, b) == "");
    CHECK(failures(roundtrip_check(l, ltests)) == "");
  }
}

TEST_CASE("Λ of the centric linking system of S4") {
  const auto f = fusion_of("s4", 2);
  const LambdaLocality lt = lambda(build_centric_linking(f));
  CHECK(lt.locality->size() == 24);
  // Non-isomorphisms contribute nothing.
  const FiniteCategory link = build_centric_linking(f);
  for (MorId m = 0; m < link.size(); ++m)
    CHECK((lt.class_of[m] == kUndefined) == !link.is_iso(m));
}

TEST_CASE("rigid automorphisms of S4 localities form a group") {
  const auto f = fusion_of("s4", 2);
  const Locality l = build_group_locality(f, f->classification().centric());
  const auto rs = rigid_automorphisms_bruteforce(l);
  const std::set<LocAutomorphism> all(rs.automorphisms.begin(), rs.automorphisms.end());
  CHECK(rs.automorphisms.front() == identity_automorphism(l));
  for (const auto& a : rs.automorphisms) {
    CHECK(is_rigid(l, a));
    for (const auto& b : rs.automorphisms) CHECK(all.count(compose(a, b)));
  }
  for (const auto& z : rs.z_conjugations) CHECK(all.count(z));
}

TEST_CASE("corrupted localities are rejected") {
  const auto f = fusion_of("s4", 2);
  FiniteCategory t = build_transporter(f, f->classification().centric());
  const SubId s = f->sylow_id();
  const auto& aut = t.hom(s, s);
  const MorId right = t.compose(aut[1], aut[2]);
  t.set_composition(aut[1], aut[2], right == aut[3] ? aut[4] : aut[3]);
  bool rejected = false;
  try {
    rejected = !test::failures(verify_locality_axioms(*lambda(t).locality)).empty();
  } catch (const Error&) {
    rejected = true;
  }
  CHECK(rejected);
}

TEST_CASE("restriction from subcentric to centric objects") {
  for (const char* name : {"s4", "a4"}) {
    CAPTURE(std::string(name));
    const auto f = fusion_of(name, 2);
    const auto& cls = f->classification();
    const std::vector<SubId> sc = cls.subcentric(), c = cls.centric();
    CHECK(sc.size() > c.size());
    for (SubId p : c) CHECK(std::find(sc.begin(), sc.end(), p) != sc.end());

    const Locality plus = build_group_locality(f, sc);
    const Locality base = restrict_locality(plus, c);
    const Locality direct = build_group_locality(f, c);
    CHECK(failures(verify_locality_axioms(plus, true, 3)) == "");
    // Same carrier (as group elements) and the same products.
    REQUIRE(base.size() == direct.size());
    for (LocElem x = 0; x < base.size(); ++x) {
      CHECK(plus.tag(base.tag(x)) == direct.tag(x));
      for (LocElem y = 0; y < base.size(); ++y) {
        const LocElem b = base.product(x, y), d = direct.product(x, y);
        CHECK((b == kUndefined) == (d == kUndefined));
        if (b != kUndefined && d != kUndefined) CHECK(plus.tag(base.tag(b)) == direct.tag(d));
      }
    }
    const RestrictionReport r = verify_restriction_iso(plus, base);
    CHECK(failures(r.checks) == "");
    CHECK(r.plus == r.base);
    CHECK(r.z_plus == r.z_base);
  }
  // Z(D8) in S4 is subcentric but not centric.
  const auto f = fusion_of("s4", 2);
  const SubId z = f->id_of(center(f->group(), f->sylow()));
  CHECK(f->classification().flags[z].subcentric);
  CHECK(!f->classification().flags[z].centric);
}
