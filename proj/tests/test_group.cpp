#include <set>

#include "doctest.h"
#include "fusionkit/errors.hpp"
#include "fusionkit/group.hpp"
#include "support.hpp"

using namespace fusionkit;

namespace {

// Independent closure on raw image vectors.
std::size_t naive_order(std::size_t n, const std::vector<std::vector<Point>>& gens) {
  std::vector<Point> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Point>(i);
  std::set<std::vector<Point>> seen{id};
  std::vector<std::vector<Point>> todo{id};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      std::vector<Point> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = g[x[i]];
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("closure orders") {
  CHECK(FiniteGroup::from_generators(1, {}).order() == 1);
  const auto s4 = FiniteGroup::from_generators(
      4, {Perm::from_cycles(4, "(1 2)"), Perm::from_cycles(4, "(1 2 3 4)")});
  CHECK(s4.order() == naive_order(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
  CHECK(s4.order() == 24);
  const auto v4 = FiniteGroup::from_generators(
      4, {Perm::from_cycles(4, "(1 2)(3 4)"), Perm::from_cycles(4, "(1 3)(2 4)")});
  CHECK(v4.order() == naive_order(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
  CHECK(v4.order() == 4);
  CHECK(s4.perm(s4.identity()).is_identity());
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0}), InvalidPermutation);
  CHECK_THROWS_AS(FiniteGroup::from_generators(
                      5, {Perm::from_cycles(5, "(1 2)"), Perm::from_cycles(5, "(1 2 3 4 5)")}, 100),
                  ClosureTooLarge);
  CHECK_THROWS_AS(parse_group("3\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_group("3\n1 1 2\n"), InvalidPermutation);
  CHECK(parse_group("# comment\n3\n\n2 3 1\n").order() == 3);
}

TEST_CASE("sylow subgroups") {
  const auto s4 = test::load("s4");
  CHECK(sylow(s4, 2).order() == 8);
  CHECK(sylow(s4, 3).order() == 3);
  CHECK(sylow(test::load("a4"), 5).order() == 1);

  // Every Sylow 2-subgroup of S4 (found among all subgroups) is a conjugate.
  const Subgroup s = sylow(s4, 2);
  std::set<Subgroup> conjugates;
  for (Elem g = 0; g < s4.order(); ++g) conjugates.insert(s4.conjugate(g, s));
  std::size_t order8 = 0;
  for (const Subgroup& h : all_subgroups(s4, s4.whole()))
    if (h.order() == 8) {
      ++order8;
      CHECK(conjugates.count(h) == 1);
    }
  CHECK(order8 == conjugates.size());
  CHECK(order8 == 3);
}

TEST_CASE("normalizers, centralizers, transporters") {
  const auto s4 = test::load("s4");
  const Elem a = s4.index_of(Perm::from_cycles(4, "(1 2)(3 4)"));
  const Elem b = s4.index_of(Perm::from_cycles(4, "(1 3)(2 4)"));
  const std::vector<Elem> vg{a, b};
  const Subgroup v4 = s4.generate(vg);
  CHECK(centralizer(s4, v4) == v4);
  CHECK(normalizer(s4, s4.whole()) == s4.whole());
  CHECK(normalizer(s4, v4) == s4.whole());

  const Subgroup p = s4.generate(std::span<const Elem>(&a, 1));
  const Subgroup s = sylow(s4, 2);
  std::size_t count = 0;
  for (Elem g = 0; g < s4.order(); ++g) {
    const Perm& gp = s4.perm(g);
    const Perm image = gp * s4.perm(a) * gp.inverse();
    count += s.contains(s4.index_of(image)) ? 1 : 0;
  }
  CHECK(transporter_set(s4, p, s).size() == count);
  CHECK(center(s4, s4.whole()).order() == 1);
}

TEST_CASE("cores and characteristic p") {
  const auto a4 = test::load("a4");
  const auto c2 = cores(a4, 2);
  CHECK(c2.op.order() == 4);
  CHECK(c2.op_prime.order() == 1);
  const auto s4 = test::load("s4");
  const auto c3 = cores(s4, 3);
  CHECK(c3.op.order() == 1);
  CHECK(c3.op_prime.order() == 4);
  for (const Subgroup& n : normal_subgroups(s4, s4.whole())) CHECK(is_normal(s4, n, s4.whole()));
  CHECK(normal_subgroups(s4, s4.whole()).size() == 4);
  CHECK(normal_subgroups(test::load("a5"), test::load("a5").whole()).size() == 2);

  CHECK(is_characteristic_p(s4, 2));
  CHECK_FALSE(is_characteristic_p(test::load("c6"), 2));
  const auto d8 = test::load("d8");
  CHECK(is_characteristic_p(d8, 2));
  const auto cd = cores(d8, 2);
  CHECK(cd.op == d8.whole());
  CHECK(cd.op_prime.order() == 1);
}

TEST_CASE("automorphism groups") {
  const auto v4 = FiniteGroup::from_generators(
      4, {Perm::from_cycles(4, "(1 2)(3 4)"), Perm::from_cycles(4, "(1 3)(2 4)")});
  const auto av = automorphism_group(v4);
  CHECK(av.automorphisms.size() == 6);
  CHECK(av.inner.order() == 1);
  CHECK(av.out_order == 6);

  const auto a4 = test::load("a4");
  const auto aa = automorphism_group(a4);
  CHECK(aa.automorphisms.size() == 24);
  CHECK(aa.out_order == 2);
  CHECK(aa.inner.order() == 12);
  CHECK(is_normal(aa.perm_group, aa.inner, aa.perm_group.whole()));
  for (const auto& h : aa.automorphisms) {
    CHECK(h.is_multiplicative(a4));
    CHECK(h.is_injective());
  }

  CHECK(automorphism_group(test::load("c2")).automorphisms.size() == 1);
  CHECK(automorphism_group(test::load("s4")).out_order == 1);
  CHECK(automorphism_group(test::load("a5")).out_order == 2);
  CHECK_THROWS_AS(automorphism_group(test::load("a5"), 50), TooLarge);
}

TEST_CASE("Thompson subgroup") {
  const auto d8 = test::load("d8");
  const auto jd = thompson_j(d8, d8.whole(), 2);
  CHECK(jd.d == 4);
  CHECK(jd.j == d8.whole());
  const auto q8 = test::load("q8");
  CHECK(q8.order() == 8);
  const auto jq = thompson_j(q8, q8.whole(), 2);
  CHECK(jq.d == 4);
  CHECK(jq.j == q8.whole());
  const auto c6 = test::load("c6");
  CHECK_THROWS_AS(thompson_j(c6, c6.whole(), 2), NotAPGroup);
  const Subgroup c3 = sylow(c6, 3);
  CHECK(thompson_j(c6, c3, 3).j == c3);

  // J(S) is characteristic: every automorphism of S fixes it.
  const auto gl = test::load("gl23");
  CHECK(gl.order() == 48);
  const Subgroup s = sylow(gl, 2);
  const auto j = thompson_j(gl, s, 2);
  std::vector<Perm> gens;
  for (Elem x : minimal_generating_tuple(gl, s)) gens.push_back(gl.perm(x));
  const auto sd16 = FiniteGroup::from_generators(gl.degree(), gens);
  const auto jj = thompson_j(sd16, sd16.whole(), 2);
  CHECK(jj.d == j.d);
  for (const auto& a : automorphism_group(sd16).automorphisms) {
    std::vector<Elem> image;
    for (Elem x : jj.j.members()) image.push_back(a(x));
    CHECK(Subgroup(image, sd16.order()) == jj.j);
  }
  CHECK_FALSE(j_less(j, j));
}

TEST_CASE("quotients") {
  const auto s4 = test::load("s4");
  const Subgroup v4 = cores(s4, 2).op;
  const auto q = quotient(s4, s4.whole(), v4);
  CHECK(q.group.order() == 6);
  const Subgroup all = s4.whole();
  for (Elem x : all.members())
    for (Elem y : all.members())
      CHECK(q(all, s4.mul(x, y)) == q.group.mul(q(all, x), q(all, y)));
}

TEST_CASE("complements by subgroup search") {
  const FiniteGroup s4 = test::load("s4");
  const Subgroup all = s4.whole();
  // S4 = V4 ⋊ S3.
  const auto normals = normal_subgroups(s4, all);
  Subgroup v4;
  for (const Subgroup& n : normals)
    if (n.order() == 4) v4 = n;
  REQUIRE(v4.order() == 4);
  const auto c = find_complement(s4, all, v4);
  REQUIRE(c.has_value());
  CHECK(c->order() == 6);
  CHECK(intersect(s4, *c, v4).order() == 1);
  // The centre of Q8 has no complement.
  const FiniteGroup q8 = test::load("q8");
  const Subgroup q = q8.whole();
  CHECK(!find_complement(q8, q, center(q8, q)).has_value());
  CHECK(find_complement(q8, q, q8.trivial())->order() == 8);
}
