// Acceptance run over the catalog: one line per criterion, exit status 0 iff
// every criterion holds.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fusionkit/cohom.hpp"
#include "fusionkit/errors.hpp"
#include "fusionkit/kappa.hpp"
#include "fusionkit/locality.hpp"
#include "fusionkit/report.hpp"
#include "fusionkit/rigid.hpp"

using namespace fusionkit;

namespace {

const std::string kData = FUSIONKIT_DATA_DIR;

struct Instance {
  std::string name;
  unsigned p = 0;
  std::shared_ptr<const FusionSystem> f;
  FiniteCategory l;
  CenterFunctor zf;
  CocycleSolution s;
  Aut0 a;
};

std::vector<Instance> load_catalog() {
  std::vector<Instance> out;
  for (const ManifestEntry& e : parse_manifest(kData + "/catalog.manifest")) {
    Instance x;
    x.name = std::filesystem::path(e.file).stem().string();
    x.p = e.prime;
    x.f = std::make_shared<const FusionSystem>(std::make_shared<const FiniteGroup>(load_group(e.file)),
                                               e.prime);
    x.l = build_centric_linking(x.f);
    x.zf = CenterFunctor(orbit_category(x.f));
    x.s = solve_z1hat(x.zf);
    x.a = compute_aut0(x.l, x.zf, x.s);
    out.push_back(std::move(x));
  }
  return out;
}

std::string tag(const Instance& x) { return x.name + "/" + std::to_string(x.p); }

// Collects the first few failures of one criterion.
struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::size_t checks = 0;
  void fail(const std::string& s) { failures.push_back(s); }
  void require(bool ok, const std::string& s) {
    ++checks;
    if (!ok) fail(s);
  }
  void report(const std::string& where, const AxiomReport& r) {
    for (const AxiomResult& a : r) require(a.pass, where + " " + a.name + ": " + a.witness);
  }
};

// Invariant factors of a finite abelian group of cochains under pointwise product.
std::vector<Int> cochain_invariants(const FiniteGroup& g, const std::vector<Cochain1>& elems,
                                    const std::set<Cochain1>& sub) {
  std::map<Cochain1, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  auto product = [&](std::size_t a, std::size_t b) {
    Cochain1 c(elems[a].size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = g.mul(elems[a][m], elems[b][m]);
    return index.at(c);
  };
  const TableGroup t = group_from_table(elems.size(), product);
  std::vector<Elem> n;
  for (const Cochain1& c : sub) n.push_back(t.to_group[index.at(c)]);
  const Subgroup all = t.group.whole();
  const Quotient q = quotient(t.group, all, t.group.subgroup(n));
  return AbelianPresentation(q.group, q.group.whole()).invariants();
}

Outcome criterion1(const std::vector<Instance>& cat) {
  Outcome o;
  for (const Instance& x : cat) {
    const SplitReport split = verify_exponent_and_split(x.l, x.a);
    o.report(tag(x), x.a.checks);
    o.report(tag(x), split.checks);
    o.require(split.complement.has_value(), tag(x) + ": no complement E₀");
    if (x.p != 2) o.require(x.a.out0.group.order() == 1, tag(x) + ": Out₀ ≠ 1 at odd p");
    if (split.complement)
      o.require(split.complement->order() * x.a.aut_z.order() == x.a.aut0.size(),
                tag(x) + ": E₀ has the wrong order");
  }
  return o;
}

Outcome criterion2(const std::vector<Instance>& cat) {
  Outcome o;
  std::size_t checked = 0;
  for (const Instance& x : cat) {
    const OrbitCategory& oc = x.zf.category();
    const unsigned k = k_of(x.p);
    const Int exp = x.s.lim1_invariants.empty() ? 1 : x.s.lim1_invariants.back();
    o.require(k % exp == 0, tag(x) + ": exponent of lim¹ does not divide k(p)");
    const auto c = z1_complement(x.zf, x.s);
    o.require(c.has_value() && static_cast<Int>(c->order) == x.s.lim1_order(),
              tag(x) + ": B̂¹ → Ẑ¹ does not split");
    std::vector<Cochain1> brute;
    try {
      brute = brute_z1hat(oc);
    } catch (const SearchSpaceTooLarge&) {
      o.notes.push_back(tag(x) + " oracle bound exceeded");
      continue;
    }
    ++checked;
    o.require(brute == enumerate_z1hat(x.zf, x.s), tag(x) + ": cocycle sets differ");
    const FiniteGroup& G = x.f->group();
    std::set<Cochain1> b1;
    for (Elem z : x.zf.z(x.f->sylow_id()).group().members())
      b1.insert(coboundary(x.zf, constant_cochain(oc, z)));
    o.require(cochain_invariants(G, brute, {brute.front()}) == x.s.z1_invariants,
              tag(x) + ": Ẑ¹ invariant factors differ");
    o.require(cochain_invariants(G, brute, b1) == x.s.lim1_invariants,
              tag(x) + ": lim¹ invariant factors differ");
  }
  o.notes.insert(o.notes.begin(), std::to_string(checked) + " oracle comparisons");
  return o;
}

Outcome criterion3(const std::vector<Instance>& cat) {
  Outcome o;
  for (const Instance& x : cat) {
    o.report(tag(x), x.a.checks);
    o.require(static_cast<Int>(x.a.aut0.size()) == x.s.z1_order(), tag(x) + ": |Ẑ¹| ≠ |Aut₀|");
    // Z(F) = lim⁰ is the kernel of z ↦ du_z.
    const FiniteGroup& G = x.f->group();
    std::vector<Elem> ker;
    for (Elem z : x.zf.z(x.f->sylow_id()).group().members())
      if (coboundary(x.zf, constant_cochain(x.zf.category(), z)) ==
          Cochain1(x.zf.category().size(), G.identity()))
        ker.push_back(z);
    o.require(Subgroup(ker, G.order()) == lim0(x.zf).group(), tag(x) + ": Z(F) ≠ lim⁰");
  }
  return o;
}

Outcome criterion4(const std::vector<Instance>& cat) {
  Outcome o;
  for (const Instance& x : cat) {
    const SubId s = x.f->sylow_id();
    std::vector<CatAutomorphism> tests;
    for (MorId g : x.l.hom(s, s)) tests.push_back(conjugation_by(x.l, g));
    tests.insert(tests.end(), x.a.aut0.elements.begin(), x.a.aut0.elements.end());
    o.report(tag(x) + " η(L)", roundtrip_check(x.l, tests));

    const FiniteCategory t = build_transporter(x.f, x.f->classification().centric());
    std::vector<CatAutomorphism> ttests;
    for (MorId g : t.hom(s, s)) ttests.push_back(conjugation_by(t, g));
    o.report(tag(x) + " η(T)", roundtrip_check(t, ttests));

    const auto gl = std::make_shared<const Locality>(
        build_group_locality(x.f, x.f->classification().centric()));
    std::vector<LocAutomorphism> ltests;
    for (LocElem e : gl->normalizer(s)) ltests.push_back(conjugation_by(*gl, e));
    const RigidSearch rs = rigid_automorphisms_bruteforce(*gl);
    ltests.insert(ltests.end(), rs.automorphisms.begin(), rs.automorphisms.end());
    o.report(tag(x) + " ζ(L_Δ(G))", roundtrip_check(gl, ltests));

    const auto lam = lambda(x.l).locality;
    std::vector<LocAutomorphism> mtests;
    for (LocElem e : lam->normalizer(s)) mtests.push_back(conjugation_by(*lam, e));
    o.report(tag(x) + " ζ(Λ(L))", roundtrip_check(lam, mtests));

    o.report(tag(x) + " Aut₀", compare_with_locality(x.l, x.a));
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const char* name : {"s4", "a4"}) {
    const auto f = std::make_shared<const FusionSystem>(
        std::make_shared<const FiniteGroup>(load_group(kData + "/groups/" + name + ".gens")), 2);
    const Classification& c = f->classification();
    const auto sc = c.subcentric(), ce = c.centric();
    const bool proper = sc.size() > ce.size() && std::includes(sc.begin(), sc.end(), ce.begin(), ce.end());
    o.require(proper, std::string(name) + ": F^s ⊋ F^c fails");
    const Locality plus = build_group_locality(f, sc);
    o.report(std::string(name) + " L_{F^s}", verify_locality_axioms(plus, true, 3));
    const RestrictionReport r = verify_restriction_iso(plus, restrict_locality(plus, ce));
    o.report(name, r.checks);
    o.notes.push_back(std::string(name) + " |Aut₀| " + std::to_string(r.plus) + "→" +
                      std::to_string(r.base));
    if (std::string(name) == "s4") {
      const SubId z = f->id_of(center(f->group(), f->sylow()));
      o.require(c.flags[z].subcentric && !c.flags[z].centric, "s4: Z(S) not subcentric non-centric");
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const char* name : {"s4", "a4", "a5"}) {
    const auto f = std::make_shared<const FusionSystem>(
        std::make_shared<const FiniteGroup>(load_group(kData + "/groups/" + name + ".gens")), 2);
    const FiniteCategory l = build_centric_linking(f);
    const KappaData k = kappa_tilde(l);
    const KernelVerdict v = kappa_kernel(l, k);
    o.report(name, k.checks);
    o.require(v.hypothesis, std::string(name) + ": O_2'(G) ≠ 1");
    o.require(v.kernel_order % 2 == 1, std::string(name) + ": |ker κ| even");
    o.notes.push_back(std::string(name) + " |Out|=" + std::to_string(k.out_order()) + " |ker|=" +
                      std::to_string(v.kernel_order));
  }
  return o;
}

Outcome criterion7(const std::vector<Instance>& cat) {
  Outcome o;
  for (const Instance& x : cat) {
    o.report(tag(x) + " L", verify_transporter_axioms(x.l, true));
    const std::vector<SubId> delta = x.f->classification().centric();
    o.report(tag(x) + " T", verify_transporter_axioms(build_transporter(x.f, delta), false));
    const Locality gl = build_group_locality(x.f, delta);
    bool linking = true;
    for (SubId q : delta) linking = linking && linking_kernel(*x.f, q).order() == 1;
    o.report(tag(x) + " L_Δ(G)", verify_locality_axioms(gl, linking, 4));
    o.report(tag(x) + " Λ(L)", verify_locality_axioms(*lambda(x.l).locality, true, 4));
  }
  return o;
}

Outcome criterion8(const std::vector<Instance>& cat) {
  Outcome o;
  std::size_t total = 0;
  for (const Instance& x : cat) {
    const ThompsonPowerReport r = thompson_power_check(x.l, x.a);
    o.require(r.result.pass, tag(x) + ": " + r.result.witness);
    total += r.hypothesis;
  }
  o.notes.push_back(std::to_string(total) + " automorphisms in the hypothesis sets");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::string manifest = kData + "/catalog.manifest";
  const std::string first = catalog_report(manifest, {"all"}).dump(2);
  const std::string second = catalog_report(manifest, {"all"}).dump(2);
  o.require(first == second, "catalog reports differ between runs");
  o.notes.push_back(std::to_string(first.size()) + " bytes");
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  std::vector<Instance> cat;
  try {
    cat = load_catalog();
  } catch (const std::exception& e) {
    std::printf("catalog could not be built: %s\n", e.what());
    return 1;
  }
  std::printf("catalog: %zu instances (%.1f s)\n", cat.size(),
              std::chrono::duration<double>(Clock::now() - t0).count());

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Out0 abelian of exponent k(p), complement E0 exhibited", [&] { return criterion1(cat); }},
      {"lim1 by SNF matches the brute-force oracle; B1 splits", [&] { return criterion2(cat); }},
      {"Z1 and Aut0 exact sequences isomorphic", [&] { return criterion3(cat); }},
      {"eta/zeta round trips; Aut0(T) = Aut0(Lambda(T))", [&] { return criterion4(cat); }},
      {"restriction Aut0(L_{F^s}) -> Aut0(L_{F^c}) is an isomorphism", [] { return criterion5(); }},
      {"ker kappa is a p'-group for S4, A4, A5 at 2", [] { return criterion6(); }},
      {"transporter and locality axiom suites", [&] { return criterion7(cat); }},
      {"tau^k(p) = id on the Thompson hypothesis set", [&] { return criterion8(cat); }},
      {"catalog reports byte-identical across runs", [] { return criterion9(); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool pass = o.failures.empty();
    all = all && pass;
    std::ostringstream extra;
    for (const auto& n : o.notes) extra << "; " << n;
    std::printf("[%s] criterion %zu: %s (%zu checks, %.1f s%s)\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.checks, secs, extra.str().c_str());
    for (std::size_t j = 0; j < o.failures.size() && j < 5; ++j)
      std::printf("    %s\n", o.failures[j].c_str());
  }
  return all ? 0 : 1;
}
