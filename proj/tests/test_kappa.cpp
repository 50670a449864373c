#include <string>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/kappa.hpp"
#include "support.hpp"

using namespace fusionkit;
using test::failures;
using test::fusion_of;

namespace {

struct Entry {
  const char* name;
  unsigned p;
  std::size_t out;  // |Out(G)|
};
constexpr Entry kCatalog[] = {{"s4", 2, 1},   {"a4", 2, 2},    {"a5", 2, 2},  {"d8", 2, 2},
                              {"q8", 2, 6},   {"gl23", 2, 2},  {"s3", 3, 1},  {"a4", 3, 2},
                              {"s3xs3", 3, 2}, {"c3c4", 3, 2}, {"s3xc2", 2, 2}};

}  // namespace

TEST_CASE("κ̃ over the catalog") {
  for (const Entry& e : kCatalog) {
    CAPTURE(std::string(e.name));
    CAPTURE(e.p);
    auto f = fusion_of(e.name, e.p);
    const FiniteCategory l = build_centric_linking(f);
    const KappaData k = kappa_tilde(l);
    CHECK(failures(k.checks) == "");
    CHECK(k.out_order() == e.out);
    CHECK(k.class_rep.size() == e.out);
    // κ̃ is defined on N_Aut(G)(S), which contains Aut_G(S).
    CHECK(k.domain.size() >= normalizer(f->group(), f->sylow()).order() /
                                 center(f->group(), f->group().whole()).order());

    const KernelVerdict v = kappa_kernel(l, k);
    CHECK(v.p_prime.pass);
    CHECK(v.sylow_injective.pass);
    const AStructure a = centralizing_aut_structure(l, k);
    CHECK(failures(a.checks) == "");
    CHECK(a.order == a.op_prime * (a.b_invariants.empty() ? 1 : [&] {
            std::size_t n = 1;
            for (Int x : a.b_invariants) n *= static_cast<std::size_t>(x);
            return n;
          }()));
  }
}

TEST_CASE("ker κ for groups without normal p'-subgroups") {
  for (const char* name : {"s4", "a4", "a5"}) {
    CAPTURE(std::string(name));
    auto f = fusion_of(name, 2);
    const FiniteCategory l = build_centric_linking(f);
    const KappaData k = kappa_tilde(l);
    const KernelVerdict v = kappa_kernel(l, k);
    CHECK(v.hypothesis);
    CHECK(v.kernel_order == 1);
    CHECK(v.p_prime.pass);
  }
}

TEST_CASE("the outer automorphism of A4 moves the linking system") {
  auto f = fusion_of("a4", 2);
  const FiniteCategory l = build_centric_linking(f);
  const KappaData k = kappa_tilde(l);
  REQUIRE(k.out_order() == 2);
  const std::size_t outer = k.aut.out_class[k.aut.inner.members().front()] == 0 ? 1 : 0;
  const CatAutomorphism& c = k.images[k.class_rep[outer]];
  CHECK(c != identity_automorphism(l));
  CHECK(check_automorphism(l, c) == "");
}

TEST_CASE("κ̃ respects the Aut(G) cap") {
  auto f = fusion_of("a5", 2);
  CHECK_THROWS_AS(kappa_tilde(build_centric_linking(f), 10), TooLarge);
}

TEST_CASE("without O_p'(G) = 1 the kernel may contain p-elements") {
  // Inversion on C6 fixes the Sylow 2-subgroup and acts trivially on L.
  auto f = fusion_of("c6", 2);
  const FiniteCategory l = build_centric_linking(f);
  const KappaData k = kappa_tilde(l);
  CHECK(failures(k.checks) == "");
  const KernelVerdict v = kappa_kernel(l, k);
  CHECK(!v.hypothesis);
  CHECK(v.kernel_order == 2);
  CHECK(v.p_prime.pass);
  CHECK(v.p_prime.witness.find("not asserted") != std::string::npos);
  const AStructure a = centralizing_aut_structure(l, k);
  CHECK(a.order == 2);
  CHECK(a.op_prime == 1);
  CHECK(a.trivial_on_l == 2);
}
