#include "fusionkit/translink.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

std::string label(SubId p) { return "P" + std::to_string(p); }

std::string mor_label(const FiniteCategory& t, MorId m) {
  const Morphism& x = t.mor(m);
  return "[" + std::to_string(x.payload) + ": " + label(x.src) + "->" + label(x.dst) + "]";
}

}  // namespace

// ---------------------------------------------------------------- FiniteCategory

FiniteCategory::FiniteCategory(std::shared_ptr<const FusionSystem> f, std::vector<SubId> objects,
                               std::vector<Morphism> morphisms, const ComposeFn& compose,
                               const DeltaFn& delta, const PiFn& pi)
    : fusion_(std::move(f)), objects_(std::move(objects)), mors_(std::move(morphisms)) {
  const FusionSystem& F = *fusion_;
  std::sort(objects_.begin(), objects_.end());
  objects_.erase(std::unique(objects_.begin(), objects_.end()), objects_.end());
  pos_.assign(F.subgroups().size(), kNone);
  for (std::size_t i = 0; i < objects_.size(); ++i) pos_[objects_[i]] = i;
  std::sort(mors_.begin(), mors_.end());
  if (std::adjacent_find(mors_.begin(), mors_.end()) != mors_.end())
    throw NotATransporterSystem("duplicate morphism");

  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  first_out_.assign(n + 1, static_cast<MorId>(mors_.size()));
  for (MorId m = static_cast<MorId>(mors_.size()); m-- > 0;) {
    const Morphism& x = mors_[m];
    if (!has_object(x.src) || !has_object(x.dst))
      throw BadObjectSet("morphism between non-objects");
    first_out_[pos_[x.src]] = m;
  }
  for (std::size_t i = n; i-- > 0;)
    if (first_out_[i] > first_out_[i + 1]) first_out_[i] = first_out_[i + 1];
  for (MorId m = 0; m < mors_.size(); ++m)
    hom_[pos_[mors_[m].src] * n + pos_[mors_[m].dst]].push_back(m);

  const Subgroup& S = F.sylow();
  delta_.assign(n * n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto& row = delta_[i * n + j];
      row.assign(S.order(), kNoMor);
      for (Elem s : transporter_set(F.group(), F.sub(objects_[i]), F.sub(objects_[j]), S))
        row[S.position(s)] = find(objects_[i], objects_[j], delta(objects_[i], objects_[j], s));
    }
  identity_.resize(n);
  for (std::size_t i = 0; i < n; ++i) identity_[i] = delta_[i * n + i][0];

  pi_.resize(mors_.size());
  pi_index_.resize(mors_.size());
  for (MorId m = 0; m < mors_.size(); ++m) {
    pi_[m] = pi(mors_[m]);
    pi_index_[m] = F.find(mors_[m].src, mors_[m].dst, pi_[m]);
    if (pi_index_[m] == kNoElem)
      throw NotATransporterSystem("π" + mor_label(*this, m) + " is not a morphism of F");
  }

  comp_.resize(mors_.size());
  for (MorId f = 0; f < mors_.size(); ++f) {
    const std::size_t q = pos_[mors_[f].dst];
    auto& row = comp_[f];
    row.resize(first_out_[q + 1] - first_out_[q]);
    for (MorId g = first_out_[q]; g < first_out_[q + 1]; ++g)
      row[g - first_out_[q]] = find(mors_[f].src, mors_[g].dst, compose(mors_[g], mors_[f]));
  }
}

const std::vector<MorId>& FiniteCategory::hom(SubId p, SubId q) const {
  return hom_[pos_[p] * objects_.size() + pos_[q]];
}

MorId FiniteCategory::find_or_none(SubId p, SubId q, std::size_t payload) const {
  const auto& h = hom(p, q);
  auto it = std::lower_bound(h.begin(), h.end(), payload,
                             [&](MorId m, std::size_t v) { return mors_[m].payload < v; });
  if (it == h.end() || mors_[*it].payload != payload) return kNoMor;
  return *it;
}

MorId FiniteCategory::find(SubId p, SubId q, std::size_t payload) const {
  const MorId m = find_or_none(p, q, payload);
  if (m == kNoMor)
    throw NoSuchRestriction("no morphism " + std::to_string(payload) + " from " + label(p) +
                            " to " + label(q));
  return m;
}

MorId FiniteCategory::compose(MorId g, MorId f) const {
  const std::size_t q = pos_[mors_[f].dst];
  if (mors_[g].src != mors_[f].dst) throw NotATransporterSystem("composing non-composable pair");
  return comp_[f][g - first_out_[q]];
}

MorId FiniteCategory::delta(SubId p, SubId q, Elem s) const {
  const std::size_t i = fusion_->sylow().position(s);
  if (i == kNoElem) throw NotASubgroup("δ of an element outside S");
  return delta_[pos_[p] * objects_.size() + pos_[q]][i];
}

bool FiniteCategory::is_iso(MorId m) const {
  return fusion_->sub(mors_[m].src).order() == fusion_->sub(mors_[m].dst).order();
}

MorId FiniteCategory::inverse(MorId m) const {
  const Morphism& x = mors_[m];
  if (!is_iso(m)) return kNoMor;
  for (MorId g : hom(x.dst, x.src))
    if (compose(g, m) == identity(x.src)) return g;
  return kNoMor;
}

void FiniteCategory::set_composition(MorId g, MorId f, MorId value) {
  const std::size_t q = pos_[mors_[f].dst];
  comp_[f][g - first_out_[q]] = value;
}

// ---------------------------------------------------------------- constructions

void validate_object_set(const FusionSystem& f, const std::vector<SubId>& objects) {
  if (objects.empty()) throw BadObjectSet("empty object set");
  std::vector<bool> in(f.subgroups().size(), false);
  for (SubId p : objects) {
    if (p >= in.size()) throw BadObjectSet("unknown subgroup id");
    in[p] = true;
  }
  for (SubId p : objects) {
    for (SubId q = 0; q < in.size(); ++q) {
      if (in[q]) continue;
      if (f.sub(p).is_subgroup_of(f.sub(q)))
        throw BadObjectSet("not closed under overgroups: " + label(p) + " <= " + label(q));
      if (f.sub(p).order() == f.sub(q).order() && !f.hom(p, q).empty())
        throw BadObjectSet("not closed under F-conjugacy: " + label(p) + " ~ " + label(q));
    }
  }
}

FiniteCategory build_transporter(std::shared_ptr<const FusionSystem> f,
                                 std::vector<SubId> objects) {
  validate_object_set(*f, objects);
  const FusionSystem& F = *f;
  const FiniteGroup& G = F.group();
  std::vector<Morphism> mors;
  for (SubId p : objects)
    for (SubId q : objects)
      for (Elem g : transporter_set(G, F.sub(p), F.sub(q), F.ambient())) mors.push_back({p, q, g});
  return FiniteCategory(
      f, std::move(objects), std::move(mors),
      [&G](const Morphism& g, const Morphism& h) {
        return static_cast<std::size_t>(G.mul(static_cast<Elem>(g.payload), static_cast<Elem>(h.payload)));
      },
      [](SubId, SubId, Elem s) { return static_cast<std::size_t>(s); },
      [&F, &G](const Morphism& m) {
        std::vector<Elem> im;
        for (Elem y : F.sub(m.src).members()) im.push_back(G.conj(static_cast<Elem>(m.payload), y));
        return im;
      });
}

Subgroup linking_kernel(const FusionSystem& f, SubId p) {
  const Subgroup c = centralizer(f.group(), f.sub(p), f.ambient());
  return cores(f.group(), c, f.prime()).op_prime;
}

FiniteCategory build_centric_linking(std::shared_ptr<const FusionSystem> f) {
  const FusionSystem& F = *f;
  const FiniteGroup& G = F.group();
  const std::vector<SubId> objects = F.classification().centric();
  validate_object_set(F, objects);

  std::vector<Subgroup> kernel(F.subgroups().size());
  for (SubId p : objects) kernel[p] = linking_kernel(F, p);
  auto canonical = [&G, &kernel](SubId p, Elem g) {
    Elem best = kNoElem;
    for (Elem k : kernel[p].members()) best = std::min(best, G.mul(g, k));
    return best;
  };

  std::vector<Morphism> mors;
  for (SubId p : objects)
    for (SubId q : objects) {
      std::set<Elem> reps;
      for (Elem g : transporter_set(G, F.sub(p), F.sub(q), F.ambient())) reps.insert(canonical(p, g));
      for (Elem r : reps) mors.push_back({p, q, r});
    }
  return FiniteCategory(
      f, objects, std::move(mors),
      [&G, &kernel, &canonical](const Morphism& g, const Morphism& h) {
        const Elem a = static_cast<Elem>(g.payload);
        const Elem b = static_cast<Elem>(h.payload);
        const Elem out = canonical(h.src, G.mul(a, b));
        for (Elem k : kernel[g.src].members())
          if (canonical(h.src, G.mul({a, k, b})) != out)
            throw NotATransporterSystem("coset composition is not well defined");
        return static_cast<std::size_t>(out);
      },
      [&canonical](SubId p, SubId, Elem s) { return static_cast<std::size_t>(canonical(p, s)); },
      [&F, &G](const Morphism& m) {
        std::vector<Elem> im;
        for (Elem y : F.sub(m.src).members()) im.push_back(G.conj(static_cast<Elem>(m.payload), y));
        return im;
      });
}

// ---------------------------------------------------------------- axioms

bool all_pass(const AxiomReport& r) {
  return std::all_of(r.begin(), r.end(), [](const AxiomResult& a) { return a.pass; });
}

TableGroup automizer_group(const FiniteCategory& t, SubId p) {
  const auto& h = t.hom(p, p);
  std::map<MorId, std::size_t> index;
  for (std::size_t i = 0; i < h.size(); ++i) index[h[i]] = i;
  return group_from_table(h.size(), [&](std::size_t a, std::size_t b) {
    return index.at(t.compose(h[a], h[b]));
  });
}

namespace {

class Checker {
 public:
  explicit Checker(std::string name) { result_.name = std::move(name); }
  bool fail(const std::string& witness) {
    if (result_.pass) result_.witness = witness;
    result_.pass = false;
    return false;
  }
  bool ok() const { return result_.pass; }
  AxiomResult done() { return std::move(result_); }

 private:
  AxiomResult result_;
};

AxiomResult check_category(const FiniteCategory& t) {
  Checker c("category");
  for (MorId f = 0; f < t.size() && c.ok(); ++f) {
    const Morphism& m = t.mor(f);
    if (t.compose(t.identity(m.dst), f) != f || t.compose(f, t.identity(m.src)) != f)
      c.fail("identity law at " + mor_label(t, f));
  }
  for (MorId f = 0; f < t.size() && c.ok(); ++f) {
    const Morphism& mf = t.mor(f);
    for (SubId r : t.objects())
      for (MorId g : t.hom(mf.dst, r)) {
        const MorId gf = t.compose(g, f);
        for (SubId u : t.objects())
          for (MorId h : t.hom(r, u))
            if (t.compose(h, gf) != t.compose(t.compose(h, g), f))
              c.fail("associativity at " + mor_label(t, h) + mor_label(t, g) + mor_label(t, f));
      }
  }
  return c.done();
}

AxiomResult check_a1(const FiniteCategory& t) {
  Checker c("A1");
  try {
    validate_object_set(t.fusion(), t.objects());
  } catch (const BadObjectSet& e) {
    c.fail(e.what());
  }
  return c.done();
}

std::vector<MorId> kernel_of_pi(const FiniteCategory& t, SubId p) {
  std::vector<MorId> e;
  const auto& id = t.pi(t.identity(p));
  for (MorId m : t.hom(p, p))
    if (t.pi(m) == id) e.push_back(m);
  return e;
}

AxiomResult check_a2(const FiniteCategory& t) {
  Checker c("A2");
  const FusionSystem& F = t.fusion();
  for (SubId p : t.objects()) {
    const std::vector<MorId> e = kernel_of_pi(t, p);
    for (SubId q : t.objects()) {
      std::vector<bool> hit(F.hom(p, q).size(), false);
      for (MorId m : t.hom(p, q)) hit[t.pi_index(m)] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end())
        c.fail("π not surjective onto Hom_F(" + label(p) + "," + label(q) + ")");
      for (MorId m : t.hom(p, q)) {
        std::set<MorId> orbit;
        for (MorId x : e) orbit.insert(t.compose(m, x));
        if (orbit.size() != e.size()) c.fail("E(P) does not act freely at " + mor_label(t, m));
        std::set<MorId> fiber;
        for (MorId n : t.hom(p, q))
          if (t.pi_index(n) == t.pi_index(m)) fiber.insert(n);
        if (fiber != orbit) c.fail("fiber of π is not an E(P)-orbit at " + mor_label(t, m));
      }
    }
  }
  return c.done();
}

AxiomResult check_b(const FiniteCategory& t) {
  Checker c("B");
  const FusionSystem& F = t.fusion();
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow();
  for (SubId p : t.objects())
    for (SubId q : t.objects()) {
      std::set<MorId> seen;
      const auto nsp = transporter_set(G, F.sub(p), F.sub(q), S);
      for (Elem s : nsp) {
        const MorId d = t.delta(p, q, s);
        if (d == kNoMor) {
          c.fail("δ undefined");
          continue;
        }
        seen.insert(d);
        std::vector<Elem> cs;
        for (Elem y : F.sub(p).members()) cs.push_back(G.conj(s, y));
        if (t.pi(d) != cs) c.fail("π∘δ != c_s at " + mor_label(t, d));
        for (SubId r : t.objects())
          for (Elem u : transporter_set(G, F.sub(q), F.sub(r), S))
            if (t.compose(t.delta(q, r, u), d) != t.delta(p, r, G.mul(u, s)))
              c.fail("δ is not a functor at " + label(p) + "->" + label(q) + "->" + label(r));
      }
      if (seen.size() != nsp.size()) c.fail("δ not injective on N_S(" + label(p) + "," + label(q) + ")");
    }
  for (MorId f = 0; f < t.size() && c.ok(); ++f)
    for (SubId r : t.objects())
      for (MorId g : t.hom(t.mor(f).dst, r)) {
        std::vector<Elem> composite;
        const FusionMorphism& pg = F.hom(t.mor(g).src, r)[t.pi_index(g)];
        for (Elem y : t.pi(f)) composite.push_back(F.apply(pg, y));
        if (t.pi(t.compose(g, f)) != composite) c.fail("π is not a functor at " + mor_label(t, g));
      }
  return c.done();
}

AxiomResult check_c(const FiniteCategory& t) {
  Checker c("C");
  const FusionSystem& F = t.fusion();
  for (MorId f = 0; f < t.size(); ++f) {
    const Morphism& m = t.mor(f);
    const auto& members = F.sub(m.src).members();
    for (std::size_t i = 0; i < members.size(); ++i)
      if (t.compose(f, t.delta(m.src, m.src, members[i])) !=
          t.compose(t.delta(m.dst, m.dst, t.pi(f)[i]), f))
        c.fail("φ∘δ(g) != δ(π(φ)(g))∘φ at " + mor_label(t, f));
  }
  return c.done();
}

AxiomResult check_i(const FiniteCategory& t) {
  Checker c("I");
  const FusionSystem& F = t.fusion();
  const SubId s = F.sylow_id();
  if (!t.has_object(s)) {
    c.fail("S is not an object");
    return c.done();
  }
  const std::size_t aut = t.hom(s, s).size();
  if (p_part(aut, F.prime()) != F.sylow().order())
    c.fail("|Aut_T(S)| = " + std::to_string(aut) + " has p-part != |S|");
  return c.done();
}

AxiomResult check_ii(const FiniteCategory& t) {
  Checker c("II");
  const FusionSystem& F = t.fusion();
  const FiniteGroup& G = F.group();
  for (MorId f = 0; f < t.size(); ++f) {
    if (!t.is_iso(f)) continue;
    const Morphism& m = t.mor(f);
    const MorId finv = t.inverse(f);
    if (finv == kNoMor) {
      c.fail("isomorphism without inverse " + mor_label(t, f));
      continue;
    }
    const Subgroup np = normalizer(G, F.sub(m.src), F.sylow());
    const Subgroup nq = normalizer(G, F.sub(m.dst), F.sylow());
    for (SubId pb : t.objects()) {
      if (!F.sub(m.src).is_subgroup_of(F.sub(pb)) || !F.sub(pb).is_subgroup_of(np)) continue;
      for (SubId qb : t.objects()) {
        if (!F.sub(m.dst).is_subgroup_of(F.sub(qb)) || !F.sub(qb).is_subgroup_of(nq)) continue;
        std::set<MorId> allowed;
        for (Elem y : F.sub(qb).members()) allowed.insert(t.delta(m.dst, m.dst, y));
        bool hyp = true;
        for (Elem x : F.sub(pb).members())
          if (!allowed.count(t.compose(t.compose(f, t.delta(m.src, m.src, x)), finv))) {
            hyp = false;
            break;
          }
        if (!hyp) continue;
        const MorId lhs = t.compose(t.inclusion(m.dst, qb), f);
        bool found = false;
        for (MorId g : t.hom(pb, qb))
          if (t.compose(g, t.inclusion(m.src, pb)) == lhs) {
            found = true;
            break;
          }
        if (!found)
          c.fail("no extension of " + mor_label(t, f) + " to " + label(pb) + "->" + label(qb));
      }
    }
  }
  return c.done();
}

AxiomResult check_mono_epi(const FiniteCategory& t) {
  Checker c("monic-epic");
  for (MorId f = 0; f < t.size(); ++f) {
    const Morphism& m = t.mor(f);
    for (SubId r : t.objects()) {
      std::set<MorId> left, right;
      for (MorId a : t.hom(r, m.src)) left.insert(t.compose(f, a));
      if (left.size() != t.hom(r, m.src).size()) c.fail("not monic: " + mor_label(t, f));
      for (MorId b : t.hom(m.dst, r)) right.insert(t.compose(b, f));
      if (right.size() != t.hom(m.dst, r).size()) c.fail("not epic: " + mor_label(t, f));
    }
  }
  return c.done();
}

AxiomResult check_linking(const FiniteCategory& t) {
  Checker c("linking");
  const FusionSystem& F = t.fusion();
  for (SubId p : t.objects()) {
    std::vector<MorId> e = kernel_of_pi(t, p);
    std::vector<MorId> z;
    const Subgroup zp = center(F.group(), F.sub(p));
    for (Elem x : zp.members()) z.push_back(t.delta(p, p, x));
    std::sort(e.begin(), e.end());
    std::sort(z.begin(), z.end());
    if (e != z) c.fail("E(" + label(p) + ") != δ(Z(" + label(p) + "))");
    const TableGroup a = automizer_group(t, p);
    if (!is_characteristic_p(a.group, F.prime()))
      c.fail("Aut_T(" + label(p) + ") is not of characteristic p");
  }
  return c.done();
}

}  // namespace

AxiomReport verify_transporter_axioms(const FiniteCategory& t, bool linking) {
  using Check = AxiomResult (*)(const FiniteCategory&);
  std::vector<std::pair<const char*, Check>> checks{
      {"category", check_category}, {"A1", check_a1}, {"A2", check_a2},
      {"B", check_b},               {"C", check_c},   {"I", check_i},
      {"II", check_ii},             {"monic-epic", check_mono_epi}};
  if (linking) checks.emplace_back("linking", check_linking);
  AxiomReport r;
  for (const auto& [name, check] : checks) {
    try {
      r.push_back(check(t));
    } catch (const Error& e) {
      r.push_back({name, false, e.what()});
    }
  }
  return r;
}

MorId restrict_morphism(const FiniteCategory& t, MorId phi, SubId p0, SubId q0) {
  const FusionSystem& F = t.fusion();
  const Morphism& m = t.mor(phi);
  if (!t.has_object(p0) || !t.has_object(q0) || !F.sub(p0).is_subgroup_of(F.sub(m.src)) ||
      !F.sub(q0).is_subgroup_of(F.sub(m.dst)))
    throw NoSuchRestriction("restriction to non-objects or non-subgroups");
  const Subgroup& P = F.sub(m.src);
  for (Elem y : F.sub(p0).members())
    if (!F.sub(q0).contains(t.pi(phi)[P.position(y)]))
      throw NoSuchRestriction("π(φ)(P0) is not contained in Q0");
  const MorId rhs = t.compose(phi, t.inclusion(p0, m.src));
  MorId out = kNoMor;
  for (MorId psi : t.hom(p0, q0))
    if (t.compose(t.inclusion(q0, m.dst), psi) == rhs) {
      if (out != kNoMor) throw NotATransporterSystem("restriction is not unique");
      out = psi;
    }
  if (out == kNoMor) throw NoSuchRestriction("no restriction of " + mor_label(t, phi));
  return out;
}

MorId extend_morphism(const FiniteCategory& t, MorId phi, SubId p, SubId q) {
  const FusionSystem& F = t.fusion();
  const Morphism& m = t.mor(phi);
  if (!t.has_object(p) || !t.has_object(q) || !F.sub(m.src).is_subgroup_of(F.sub(p)) ||
      !F.sub(m.dst).is_subgroup_of(F.sub(q)))
    throw NoSuchExtension("extension to non-objects or non-overgroups");
  const MorId rhs = t.compose(t.inclusion(m.dst, q), phi);
  MorId out = kNoMor;
  for (MorId psi : t.hom(p, q))
    if (t.compose(psi, t.inclusion(m.src, p)) == rhs) {
      if (out != kNoMor) throw NotATransporterSystem("extension is not unique");
      out = psi;
    }
  if (out == kNoMor) throw NoSuchExtension("no extension of " + mor_label(t, phi));
  return out;
}

// ---------------------------------------------------------------- automorphisms

CatAutomorphism identity_automorphism(const FiniteCategory& t) {
  CatAutomorphism a;
  a.objects.resize(t.fusion().subgroups().size());
  for (SubId p = 0; p < a.objects.size(); ++p) a.objects[p] = p;
  a.morphisms.resize(t.size());
  for (MorId m = 0; m < t.size(); ++m) a.morphisms[m] = m;
  return a;
}

CatAutomorphism compose(const CatAutomorphism& a, const CatAutomorphism& b) {
  CatAutomorphism out;
  out.objects.resize(b.objects.size());
  for (std::size_t p = 0; p < b.objects.size(); ++p) out.objects[p] = a.objects[b.objects[p]];
  out.morphisms.resize(b.morphisms.size());
  for (std::size_t m = 0; m < b.morphisms.size(); ++m) out.morphisms[m] = a.morphisms[b.morphisms[m]];
  return out;
}

CatAutomorphism inverse(const FiniteCategory& t, const CatAutomorphism& a) {
  CatAutomorphism out = identity_automorphism(t);
  for (SubId p : t.objects()) out.objects[a.objects[p]] = p;
  for (MorId m = 0; m < t.size(); ++m) out.morphisms[a.morphisms[m]] = m;
  return out;
}

std::string check_automorphism(const FiniteCategory& t, const CatAutomorphism& a) {
  const FusionSystem& F = t.fusion();
  if (a.objects.size() != F.subgroups().size() || a.morphisms.size() != t.size())
    return "wrong shape";
  std::set<SubId> objs;
  for (SubId p : t.objects()) {
    if (!t.has_object(a.objects[p])) return "object " + label(p) + " mapped outside Δ";
    objs.insert(a.objects[p]);
  }
  if (objs.size() != t.objects().size()) return "not bijective on objects";
  std::vector<bool> hit(t.size(), false);
  for (MorId m = 0; m < t.size(); ++m) {
    const MorId x = a.morphisms[m];
    if (x >= t.size()) return "morphism " + mor_label(t, m) + " mapped outside T";
    if (hit[x]) return "not injective on morphisms";
    hit[x] = true;
    const Morphism& mm = t.mor(m);
    if (t.mor(x).src != a.objects[mm.src] || t.mor(x).dst != a.objects[mm.dst])
      return "morphism " + mor_label(t, m) + " not mapped between image objects";
  }
  for (SubId p : t.objects())
    if (a.morphisms[t.identity(p)] != t.identity(a.objects[p]))
      return "identity of " + label(p) + " not preserved";
  for (MorId f = 0; f < t.size(); ++f) {
    const Morphism& mf = t.mor(f);
    for (SubId r : t.objects())
      for (MorId g : t.hom(mf.dst, r))
        if (a.morphisms[t.compose(g, f)] != t.compose(a.morphisms[g], a.morphisms[f]))
          return "not a functor at " + mor_label(t, g) + mor_label(t, f);
  }
  for (SubId p : t.objects()) {
    std::set<MorId> image, target;
    const SubId q = a.objects[p];
    for (Elem x : F.sub(p).members()) image.insert(a.morphisms[t.delta(p, p, x)]);
    for (Elem x : F.sub(q).members()) target.insert(t.delta(q, q, x));
    if (image != target) return "not isotypical at " + label(p);
    for (SubId r : t.objects())
      if (F.sub(p).is_subgroup_of(F.sub(r)) &&
          a.morphisms[t.inclusion(p, r)] != t.inclusion(q, a.objects[r]))
        return "inclusion " + label(p) + "->" + label(r) + " not sent to an inclusion";
  }
  return "";
}

bool is_rigid(const FiniteCategory& t, const CatAutomorphism& a) {
  for (SubId p : t.objects())
    if (a.objects[p] != p) return false;
  const SubId s = t.fusion().sylow_id();
  for (Elem x : t.fusion().sylow().members())
    if (a.morphisms[t.delta(s, s, x)] != t.delta(s, s, x)) return false;
  return true;
}

CatAutomorphism conjugation_by(const FiniteCategory& t, MorId gamma) {
  const FusionSystem& F = t.fusion();
  const SubId s = F.sylow_id();
  if (t.mor(gamma).src != s || t.mor(gamma).dst != s || !t.is_iso(gamma))
    throw NoSuchRestriction("conjugation by a non-automorphism of S");
  const Subgroup& S = F.sylow();
  CatAutomorphism a = identity_automorphism(t);
  std::vector<MorId> res(F.subgroups().size(), kNoMor), res_inv(F.subgroups().size(), kNoMor);
  for (SubId p : t.objects()) {
    std::vector<Elem> im;
    for (Elem y : F.sub(p).members()) im.push_back(t.pi(gamma)[S.position(y)]);
    std::sort(im.begin(), im.end());
    a.objects[p] = F.id_of(Subgroup(im, F.group().order()));
    res[p] = restrict_morphism(t, gamma, p, a.objects[p]);
    res_inv[p] = t.inverse(res[p]);
  }
  for (MorId m = 0; m < t.size(); ++m) {
    const Morphism& x = t.mor(m);
    a.morphisms[m] = t.compose(res[x.dst], t.compose(m, res_inv[x.src]));
  }
  return a;
}

}  // namespace fusionkit
