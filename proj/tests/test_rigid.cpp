#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/locality.hpp"
#include "fusionkit/rigid.hpp"
#include "support.hpp"

using namespace fusionkit;
using test::failures;
using test::fusion_of;

namespace {

struct Entry {
  const char* name;
  unsigned p;
};
constexpr Entry kCatalog[] = {{"s4", 2},  {"a4", 2},   {"a5", 2},    {"d8", 2},
                              {"q8", 2},  {"gl23", 2}, {"s3", 3},    {"a4", 3},
                              {"s3xs3", 3}, {"c3c4", 3}, {"s3xc2", 2}};

}  // namespace

TEST_CASE("Aut0 through cocycles over the catalog") {
  for (const Entry& e : kCatalog) {
    CAPTURE(std::string(e.name));
    CAPTURE(e.p);
    auto f = fusion_of(e.name, e.p);
    const FiniteCategory l = build_centric_linking(f);
    const CenterFunctor zf(orbit_category(f));
    const CocycleSolution s = solve_z1hat(zf);
    const Aut0 a = compute_aut0(l, zf, s);
    CHECK(failures(a.checks) == "");
    CHECK(static_cast<Int>(a.aut0.size()) == s.z1_order());
    CHECK(static_cast<Int>(a.aut_z.order()) == s.b1_order());
    CHECK(a.aut0.elements.front() == identity_automorphism(l));
    CHECK(failures(verify_mu(l, a)) == "");
    CHECK(failures(compare_with_locality(l, a)) == "");

    const SplitReport split = verify_exponent_and_split(l, a);
    CHECK(failures(split.checks) == "");
    REQUIRE(split.complement.has_value());
    CHECK(split.complement->order() * a.aut_z.order() == a.aut0.size());

    const ThompsonPowerReport r = thompson_power_check(l, a);
    CHECK(r.result.pass);
    CHECK(r.hypothesis >= 1);
  }
}

TEST_CASE("Aut0 agrees with the brute-force rigid search on Λ(L)") {
  for (const Entry& e : kCatalog) {
    CAPTURE(std::string(e.name));
    CAPTURE(e.p);
    auto f = fusion_of(e.name, e.p);
    const FiniteCategory l = build_centric_linking(f);
    const CenterFunctor zf(orbit_category(f));
    const Aut0 a = compute_aut0(l, zf, solve_z1hat(zf));

    const LambdaLocality lt = lambda(l);
    const RigidSearch rs = rigid_automorphisms_bruteforce(*lt.locality);
    REQUIRE(rs.automorphisms.size() == a.aut0.size());
    CHECK(rs.z_conjugations.size() == a.aut_z.order());

    std::map<LocAutomorphism, std::size_t> image;
    for (std::size_t i = 0; i < a.aut0.size(); ++i)
      image.emplace(lambda_of(l, lt, a.aut0.elements[i]), i);
    std::set<LocAutomorphism> brute(rs.automorphisms.begin(), rs.automorphisms.end());
    std::set<LocAutomorphism> mapped;
    for (const auto& [b, i] : image) mapped.insert(b);
    CHECK(mapped == brute);

    // Same multiplication tables under Λ.
    for (std::size_t i = 0; i < a.aut0.size(); ++i)
      for (std::size_t j = 0; j < a.aut0.size(); ++j) {
        const std::size_t ij = a.aut0.index_of(compose(a.aut0.elements[i], a.aut0.elements[j]));
        const LocAutomorphism b = compose(lambda_of(l, lt, a.aut0.elements[i]),
                                          lambda_of(l, lt, a.aut0.elements[j]));
        REQUIRE(image.count(b));
        CHECK(image.at(b) == ij);
      }
    for (const auto& z : rs.z_conjugations) {
      REQUIRE(image.count(z));
      CHECK(a.aut_z.contains(a.aut0.elem(image.at(z))));
    }
  }
}

TEST_CASE("λ̃ rejects non-cocycles") {
  auto f = fusion_of("s4", 2);
  const FiniteCategory l = build_centric_linking(f);
  const CenterFunctor zf(orbit_category(f));
  const OrbitCategory& o = zf.category();
  const FiniteGroup& G = f->group();
  const std::vector<Cochain1> z1 = brute_z1hat(o);
  const std::set<Cochain1> good(z1.begin(), z1.end());

  std::size_t rejected = 0, tried = 0;
  for (std::size_t m = 0; m < o.size(); ++m) {
    if (o.mor(m).inclusion) continue;
    for (Elem z : zf.z(o.mor(m).src).group().members()) {
      Cochain1 t(o.size(), G.identity());
      t[m] = z;
      if (good.count(t)) continue;
      ++tried;
      try {
        lambda_tilde(l, zf, t);
      } catch (const NotACocycle&) {
        ++rejected;
      }
    }
  }
  CHECK(tried > 0);
  CHECK(rejected == tried);
}

TEST_CASE("automorphism tables reject non-closed sets") {
  auto f = fusion_of("s4", 2);
  const FiniteCategory l = build_centric_linking(f);
  const SubId s = f->sylow_id();
  std::vector<CatAutomorphism> xs{identity_automorphism(l)};
  for (MorId g : l.hom(s, s)) {
    const CatAutomorphism c = conjugation_by(l, g);
    if (c != xs.front()) {
      xs.push_back(c);
      break;
    }
  }
  if (xs.size() == 2 && compose(xs[1], xs[1]) != xs[0])
    CHECK_THROWS_AS(AutGroupTable::from_elements(xs), std::logic_error);
  std::vector<CatAutomorphism> all;
  for (MorId g : l.hom(s, s)) all.push_back(conjugation_by(l, g));
  const AutGroupTable t = AutGroupTable::from_elements(all);
  // γ ↦ c_γ is faithful here: Aut_L(S) = N_G(S) = D8.
  CHECK(t.size() == 8);
  CHECK(t.group().order() == 8);
  CHECK(!t.group().is_abelian(t.group().whole()));
}
