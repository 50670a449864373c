#include "fusionkit/cohom.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fusionkit/errors.hpp"

namespace fusionkit {

// ---------------------------------------------------------------- abelian groups

namespace {

std::size_t element_order(const FiniteGroup& g, Elem x) {
  std::size_t n = 1;
  for (Elem y = x; y != g.identity(); y = g.mul(y, x)) ++n;
  return n;
}

Elem power(const FiniteGroup& g, Elem x, Int k) {
  Elem out = g.identity();
  for (Int i = 0; i < k; ++i) out = g.mul(out, x);
  return out;
}

bool is_prime_power(std::size_t n) {
  for (unsigned p = 2; p <= n; ++p)
    if (n % p == 0) return is_p_power(n, p);
  return false;
}

}  // namespace

AbelianPresentation::AbelianPresentation(const FiniteGroup& g, Subgroup a) : group_(std::move(a)) {
  if (!g.is_abelian(group_)) throw NotASubgroup("presentation requested for a nonabelian group");
  Subgroup span = g.trivial();
  while (span.order() < group_.order()) {
    Elem best = kNoElem;
    std::size_t best_order = 0;
    for (Elem x : group_.members()) {
      const std::size_t o = element_order(g, x);
      if (o <= best_order || !is_prime_power(o)) continue;
      if (intersect(g, g.generate(std::span<const Elem>(&x, 1)), span).order() != 1) continue;
      best = x;
      best_order = o;
    }
    if (best == kNoElem) throw std::logic_error("greedy abelian basis got stuck");
    gens_.push_back(best);
    orders_.push_back(static_cast<Int>(best_order));
    span = g.generate(gens_);
  }

  std::size_t total = 1;
  for (Int o : orders_) total *= static_cast<std::size_t>(o);
  if (total != group_.order()) throw std::logic_error("abelian basis does not span freely");
  coords_.assign(group_.order(), {});
  by_index_.assign(total, kNoElem);
  std::vector<Int> c(gens_.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    Elem x = g.identity();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      c[i] = static_cast<Int>(rest % static_cast<std::size_t>(orders_[i]));
      rest /= static_cast<std::size_t>(orders_[i]);
      x = g.mul(x, power(g, gens_[i], c[i]));
    }
    const std::size_t pos = group_.position(x);
    if (pos == kNoElem || (!coords_[pos].empty() && !gens_.empty()))
      throw std::logic_error("coordinates are not bijective");
    coords_[pos] = c;
    by_index_[idx] = x;
  }
}

std::vector<Int> AbelianPresentation::invariants() const { return invariant_factors(orders_); }

Elem AbelianPresentation::element(std::span<const Int> c) const {
  std::size_t idx = 0;
  for (std::size_t i = gens_.size(); i-- > 0;)
    idx = idx * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(mod(c[i], orders_[i]));
  return by_index_[idx];
}

std::vector<Int> invariant_factors(const std::vector<Int>& cyclic_orders) {
  if (cyclic_orders.empty()) return {};
  IntMatrix d = IntMatrix::Zero(static_cast<Eigen::Index>(cyclic_orders.size()),
                                static_cast<Eigen::Index>(cyclic_orders.size()));
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i)
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = cyclic_orders[i];
  std::vector<Int> out;
  for (Int x : smith_normal_form(d, false).diagonal())
    if (x > 1) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------- orbit category

OrbitCategory::OrbitCategory(std::shared_ptr<const FusionSystem> f, std::vector<SubId> objects)
    : fusion_(std::move(f)), objects_(std::move(objects)) {
  std::sort(objects_.begin(), objects_.end());
  const FusionSystem& F = *fusion_;
  const FiniteGroup& G = F.group();
  for (SubId p : objects_)
    for (SubId q : objects_) {
      const auto& h = F.hom(p, q);
      if (h.empty()) continue;
      auto& index = orbit_index_[{p, q}];
      index.assign(h.size(), kNoElem);
      for (std::size_t i = 0; i < h.size(); ++i) {
        if (index[i] != kNoElem) continue;
        OrbitMorphism m{p, q, i, {}, false};
        std::set<std::size_t> orbit;
        for (Elem y : F.sub(q).members()) {
          std::vector<Elem> im;
          im.reserve(h[i].images.size());
          for (Elem x : h[i].images) im.push_back(G.conj(y, x));
          orbit.insert(F.find(p, q, im));
        }
        m.members.assign(orbit.begin(), orbit.end());
        m.rep = m.members.front();
        for (std::size_t j : m.members) {
          index[j] = mors_.size();
          if (h[j].images == F.sub(p).members()) m.inclusion = true;
        }
        mors_.push_back(std::move(m));
      }
    }

  for (std::size_t fi = 0; fi < mors_.size(); ++fi)
    for (std::size_t gi = 0; gi < mors_.size(); ++gi) {
      if (mors_[gi].src != mors_[fi].dst) continue;
      const SubId p = mors_[fi].src, r = mors_[gi].dst;
      const std::size_t k = F.find(p, r, F.compose(rep(gi), rep(fi)));
      if (k == kNoElem) throw std::logic_error("composite outside Hom_F");
      comp_[{gi, fi}] = orbit_of(p, r, k);
      pairs_.emplace_back(gi, fi);
    }
}

const FusionMorphism& OrbitCategory::rep(std::size_t m) const {
  return fusion_->hom(mors_[m].src, mors_[m].dst)[mors_[m].rep];
}

std::vector<std::size_t> OrbitCategory::hom(SubId p, SubId q) const {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < mors_.size(); ++m)
    if (mors_[m].src == p && mors_[m].dst == q) out.push_back(m);
  return out;
}

std::size_t OrbitCategory::orbit_of(SubId p, SubId q, std::size_t index) const {
  return orbit_index_.at({p, q}).at(index);
}

OrbitCategory orbit_category(std::shared_ptr<const FusionSystem> f) {
  std::vector<SubId> objects = f->classification().centric();
  return OrbitCategory(std::move(f), std::move(objects));
}

AxiomReport verify_orbit_category(const OrbitCategory& o) {
  const FusionSystem& F = o.fusion();
  const FiniteGroup& G = F.group();
  AxiomResult partition{"orbit-partition", true, ""};
  AxiomResult orbits{"orbit-inn-closed", true, ""};
  AxiomResult welldef{"orbit-composition", true, ""};
  AxiomResult assoc{"orbit-associativity", true, ""};

  for (SubId p : o.objects())
    for (SubId q : o.objects()) {
      std::vector<int> seen(F.hom(p, q).size(), 0);
      for (std::size_t m : o.hom(p, q))
        for (std::size_t j : o.mor(m).members) ++seen[j];
      for (std::size_t j = 0; j < seen.size(); ++j)
        if (seen[j] != 1 && partition.pass) {
          partition.pass = false;
          partition.witness = "Hom(" + std::to_string(p) + "," + std::to_string(q) + ")[" +
                              std::to_string(j) + "] lies in " + std::to_string(seen[j]) + " orbits";
        }
    }

  for (std::size_t m = 0; m < o.size() && orbits.pass; ++m) {
    const OrbitMorphism& om = o.mor(m);
    const auto& h = F.hom(om.src, om.dst);
    for (std::size_t j : om.members)
      for (Elem y : F.sub(om.dst).members()) {
        std::vector<Elem> im;
        for (Elem x : h[j].images) im.push_back(G.conj(y, x));
        if (o.orbit_of(om.src, om.dst, F.find(om.src, om.dst, im)) != m) {
          orbits.pass = false;
          orbits.witness = "orbit " + std::to_string(m) + " is not Inn(Q)-stable";
        }
      }
  }

  for (const auto& [g, f] : o.composable()) {
    if (!welldef.pass) break;
    const OrbitMorphism& mf = o.mor(f);
    const OrbitMorphism& mg = o.mor(g);
    const auto& hf = F.hom(mf.src, mf.dst);
    const auto& hg = F.hom(mg.src, mg.dst);
    for (std::size_t a : mg.members)
      for (std::size_t b : mf.members) {
        const std::size_t k = F.find(mf.src, mg.dst, F.compose(hg[a], hf[b]));
        if (o.orbit_of(mf.src, mg.dst, k) != o.compose(g, f)) {
          welldef.pass = false;
          welldef.witness = "[" + std::to_string(g) + "]∘[" + std::to_string(f) +
                            "] depends on representatives";
        }
      }
  }

  for (const auto& [g, f] : o.composable()) {
    if (!assoc.pass) break;
    const std::size_t gf = o.compose(g, f);
    for (std::size_t h = 0; h < o.size(); ++h) {
      if (o.mor(h).src != o.mor(g).dst) continue;
      if (o.compose(h, gf) != o.compose(o.compose(h, g), f)) {
        assoc.pass = false;
        assoc.witness = "(" + std::to_string(h) + "," + std::to_string(g) + "," +
                        std::to_string(f) + ")";
        break;
      }
    }
  }
  return {partition, orbits, welldef, assoc};
}

// ---------------------------------------------------------------- center functor

namespace {

// φ^-1 on Z(Q), as a table by position in Z(Q).
std::vector<Elem> inverse_on_center(const FusionSystem& F, const FusionMorphism& phi,
                                    const Subgroup& zq) {
  std::unordered_map<Elem, Elem> back;
  const auto& pm = F.sub(phi.src).members();
  for (std::size_t i = 0; i < pm.size(); ++i) back.emplace(phi.images[i], pm[i]);
  std::vector<Elem> out;
  out.reserve(zq.order());
  for (Elem z : zq.members()) {
    auto it = back.find(z);
    if (it == back.end()) throw std::logic_error("Z(Q) not inside the image of a centric source");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

CenterFunctor::CenterFunctor(OrbitCategory o) : o_(std::move(o)) {
  const FusionSystem& F = o_.fusion();
  const FiniteGroup& G = F.group();
  for (SubId p : o_.objects()) z_.emplace(p, AbelianPresentation(G, center(G, F.sub(p))));
  matrices_.reserve(o_.size());
  for (std::size_t m = 0; m < o_.size(); ++m) {
    const OrbitMorphism& om = o_.mor(m);
    const AbelianPresentation& zp = z_.at(om.src);
    const AbelianPresentation& zq = z_.at(om.dst);
    const std::vector<Elem> inv = inverse_on_center(F, o_.rep(m), zq.group());
    IntMatrix a(static_cast<Eigen::Index>(zp.rank()), static_cast<Eigen::Index>(zq.rank()));
    for (std::size_t j = 0; j < zq.rank(); ++j) {
      const Elem x = inv[zq.group().position(zq.generators()[j])];
      if (!zp.group().contains(x)) throw std::logic_error("induced map leaves Z(P)");
      const auto& c = zp.coordinates(x);
      for (std::size_t i = 0; i < zp.rank(); ++i)
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[i];
    }
    matrices_.push_back(std::move(a));
  }
}

Elem CenterFunctor::apply(std::size_t m, Elem x) const {
  const OrbitMorphism& om = o_.mor(m);
  const AbelianPresentation& zp = z_.at(om.src);
  const AbelianPresentation& zq = z_.at(om.dst);
  const auto& c = zq.coordinates(x);
  std::vector<Int> out(zp.rank(), 0);
  const IntMatrix& a = matrices_[m];
  for (std::size_t i = 0; i < zp.rank(); ++i) {
    Int v = 0;
    for (std::size_t j = 0; j < zq.rank(); ++j)
      v = mod(checked_add(v, checked_mul(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), c[j])),
              zp.orders()[i]);
    out[i] = v;
  }
  return zp.element(out);
}

void CenterFunctor::set_matrix(std::size_t m, IntMatrix a) {
  if (a.rows() != matrices_[m].rows() || a.cols() != matrices_[m].cols())
    throw std::invalid_argument("matrix shape mismatch");
  matrices_[m] = std::move(a);
}

AxiomReport verify_center_functor(const CenterFunctor& zf) {
  const OrbitCategory& o = zf.category();
  const FusionSystem& F = o.fusion();
  AxiomResult elements{"center-maps", true, ""};
  AxiomResult hom{"center-homomorphism", true, ""};
  AxiomResult functor{"center-functoriality", true, ""};
  AxiomResult identity{"center-identity", true, ""};
  const FiniteGroup& G = F.group();

  for (std::size_t m = 0; m < o.size(); ++m) {
    const OrbitMorphism& om = o.mor(m);
    const Subgroup& zq = zf.z(om.dst).group();
    const std::vector<Elem> inv = inverse_on_center(F, o.rep(m), zq);
    for (std::size_t k = 0; k < zq.order() && elements.pass; ++k)
      if (zf.apply(m, zq.members()[k]) != inv[k]) {
        elements.pass = false;
        elements.witness = "morphism " + std::to_string(m) + " disagrees with φ^-1 on Z(Q)";
      }
    for (Elem a : zq.members())
      for (Elem b : zq.members())
        if (hom.pass && zf.apply(m, G.mul(a, b)) != G.mul(zf.apply(m, a), zf.apply(m, b))) {
          hom.pass = false;
          hom.witness = "morphism " + std::to_string(m);
        }
    if (om.src == om.dst && om.inclusion)
      for (Elem z : zq.members())
        if (identity.pass && zf.apply(m, z) != z) {
          identity.pass = false;
          identity.witness = "identity of object " + std::to_string(om.src);
        }
  }

  for (const auto& [g, f] : o.composable()) {
    if (!functor.pass) break;
    const std::size_t h = o.compose(g, f);
    for (Elem z : zf.z(o.mor(g).dst).group().members())
      if (zf.apply(h, z) != zf.apply(f, zf.apply(g, z))) {
        functor.pass = false;
        functor.witness = "Z([" + std::to_string(g) + "]∘[" + std::to_string(f) + "])";
        break;
      }
  }
  return {elements, hom, functor, identity};
}

// ---------------------------------------------------------------- cochains

Cochain0 constant_cochain(const OrbitCategory& o, Elem z) {
  Cochain0 u;
  for (SubId p : o.objects()) u[p] = z;
  return u;
}

Cochain1 coboundary(const CenterFunctor& zf, const Cochain0& u) {
  const OrbitCategory& o = zf.category();
  const FiniteGroup& G = o.fusion().group();
  Cochain1 t(o.size());
  for (std::size_t m = 0; m < o.size(); ++m) {
    const OrbitMorphism& om = o.mor(m);
    t[m] = G.mul(zf.apply(m, u.at(om.dst)), G.inv(u.at(om.src)));
  }
  return t;
}

bool is_inclusion_normalized(const OrbitCategory& o, const Cochain1& t) {
  for (std::size_t m = 0; m < o.size(); ++m)
    if (o.mor(m).inclusion && t[m] != o.fusion().group().identity()) return false;
  return true;
}

namespace {

// Raw group data for the oracle and the direct cocycle test: φ^-1 on Z(Q)
// for every representative, independent of the center functor.
struct RawCenters {
  std::vector<Subgroup> zq;                                  // Z(target), by morphism
  std::vector<std::unordered_map<Elem, Elem>> inverse;       // by morphism
  std::vector<Subgroup> zp;                                  // Z(source), by morphism

  explicit RawCenters(const OrbitCategory& o) {
    const FusionSystem& F = o.fusion();
    const FiniteGroup& G = F.group();
    for (std::size_t m = 0; m < o.size(); ++m) {
      const OrbitMorphism& om = o.mor(m);
      zq.push_back(center(G, F.sub(om.dst)));
      zp.push_back(center(G, F.sub(om.src)));
      const FusionMorphism& phi = o.rep(m);
      const auto& pm = F.sub(om.src).members();
      std::unordered_map<Elem, Elem> back;
      for (std::size_t i = 0; i < pm.size(); ++i)
        if (zq.back().contains(phi.images[i])) back.emplace(phi.images[i], pm[i]);
      inverse.push_back(std::move(back));
    }
  }
};

bool pair_holds(const OrbitCategory& o, const RawCenters& raw, const Cochain1& t, std::size_t g,
                std::size_t f) {
  const FiniteGroup& G = o.fusion().group();
  const std::size_t h = o.compose(g, f);
  return t[h] == G.mul(t[f], raw.inverse[f].at(t[g]));
}

}  // namespace

bool is_cocycle(const OrbitCategory& o, const Cochain1& t) {
  if (t.size() != o.size()) return false;
  const RawCenters raw(o);
  for (std::size_t m = 0; m < o.size(); ++m)
    if (!raw.zp[m].contains(t[m])) return false;
  for (const auto& [g, f] : o.composable())
    if (!pair_holds(o, raw, t, g, f)) return false;
  return true;
}

// ---------------------------------------------------------------- Ẑ¹ by SNF

Int CocycleSolution::z1_order() const {
  Int n = 1;
  for (Int x : z1_invariants) n = checked_mul(n, x);
  return n;
}

Int CocycleSolution::b1_order() const {
  Int n = 1;
  for (Int x : b1_invariants) n = checked_mul(n, x);
  return n;
}

Int CocycleSolution::lim1_order() const {
  Int n = 1;
  for (Int x : lim1_invariants) n = checked_mul(n, x);
  return n;
}

IntVector cochain_vector(const CenterFunctor& zf, const CocycleSolution& s, const Cochain1& t) {
  const OrbitCategory& o = zf.category();
  IntVector v = IntVector::Zero(static_cast<Eigen::Index>(s.unknowns));
  for (std::size_t m = 0; m < o.size(); ++m) {
    if (s.offsets[m] == CocycleSolution::kNone) continue;
    const auto& c = zf.z(o.mor(m).src).coordinates(t[m]);
    for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(s.offsets[m] + i)) = c[i];
  }
  return v;
}

Cochain1 vector_cochain(const CenterFunctor& zf, const CocycleSolution& s, const IntVector& v) {
  const OrbitCategory& o = zf.category();
  Cochain1 t(o.size(), o.fusion().group().identity());
  for (std::size_t m = 0; m < o.size(); ++m) {
    if (s.offsets[m] == CocycleSolution::kNone) continue;
    const AbelianPresentation& zp = zf.z(o.mor(m).src);
    std::vector<Int> c(zp.rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = v(static_cast<Eigen::Index>(s.offsets[m] + i));
    t[m] = zp.element(c);
  }
  return t;
}

namespace {

IntMatrix columns(const std::vector<IntVector>& cols, std::size_t n) {
  IntMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols[j];
  return out;
}

}  // namespace

CocycleSolution solve_z1hat(const CenterFunctor& zf) {
  const OrbitCategory& o = zf.category();
  const FusionSystem& F = o.fusion();
  CocycleSolution s;
  s.offsets.assign(o.size(), CocycleSolution::kNone);
  for (std::size_t m = 0; m < o.size(); ++m) {
    if (o.mor(m).inclusion) continue;
    s.offsets[m] = s.unknowns;
    const auto& orders = zf.z(o.mor(m).src).orders();
    s.unknowns += orders.size();
    s.unknown_orders.insert(s.unknown_orders.end(), orders.begin(), orders.end());
  }
  const std::size_t n = s.unknowns;

  // t(h) - t(f) - M_f t(g) ≡ 0 in Z(P), coordinate by coordinate.
  std::set<std::pair<Int, std::vector<Int>>> rows;
  for (const auto& [g, f] : o.composable()) {
    const std::size_t h = o.compose(g, f);
    const AbelianPresentation& zp = zf.z(o.mor(f).src);
    const IntMatrix& mf = zf.matrix(f);
    for (std::size_t i = 0; i < zp.rank(); ++i) {
      const Int modulus = zp.orders()[i];
      std::vector<Int> row(n, 0);
      if (s.offsets[h] != CocycleSolution::kNone) row[s.offsets[h] + i] += 1;
      if (s.offsets[f] != CocycleSolution::kNone) row[s.offsets[f] + i] -= 1;
      if (s.offsets[g] != CocycleSolution::kNone)
        for (Eigen::Index j = 0; j < mf.cols(); ++j)
          row[s.offsets[g] + static_cast<std::size_t>(j)] -= mf(static_cast<Eigen::Index>(i), j);
      bool zero = true;
      for (Int& x : row) {
        x = mod(x, modulus);
        zero = zero && x == 0;
      }
      if (!zero) rows.emplace(modulus, std::move(row));
    }
  }
  s.equations = IntMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  {
    Eigen::Index r = 0;
    for (const auto& [modulus, row] : rows) {
      for (std::size_t j = 0; j < n; ++j) s.equations(r, static_cast<Eigen::Index>(j)) = row[j];
      s.moduli.push_back(modulus);
      ++r;
    }
  }

  const SubId S = F.sylow_id();
  const AbelianPresentation& zs = zf.z(S);
  for (Elem z : zs.generators()) s.b1_generators.push_back(coboundary(zf, constant_cochain(o, z)));
  if (n == 0) {
    for (const Cochain1& b : s.b1_generators)
      if (!is_inclusion_normalized(o, b)) throw NotACocycle("du_z is not inclusion-normalized");
    s.b1_generators.clear();
    return s;
  }

  // Everything lives in p-groups, so all lattices contain qZ^n for q the
  // largest order around; the kernel and quotients are taken over Z/q.
  Int q = 1;
  for (Int x : s.unknown_orders) q = std::max(q, x);
  for (Int x : s.moduli) q = std::max(q, x);
  const std::size_t r = rows.size();
  IntMatrix dn = IntMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    dn(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = s.unknown_orders[j];
  IntMatrix scaled = s.equations;
  for (std::size_t i = 0; i < r; ++i) scaled.row(static_cast<Eigen::Index>(i)) *= q / s.moduli[i];
  const IntMatrix k = r == 0 ? IntMatrix(IntMatrix::Identity(static_cast<Eigen::Index>(n),
                                                             static_cast<Eigen::Index>(n)))
                             : kernel_mod(scaled, q);
  IntMatrix l_gens(static_cast<Eigen::Index>(n), k.cols() + static_cast<Eigen::Index>(n));
  l_gens.leftCols(k.cols()) = k;
  l_gens.rightCols(static_cast<Eigen::Index>(n)) = dn;

  const LatticeQuotient z1(l_gens, dn, q);
  s.z1_invariants = z1.invariants();
  for (const IntVector& v : z1.generators()) s.z1_generators.push_back(vector_cochain(zf, s, v));

  std::vector<IntVector> b_cols;
  for (const Cochain1& t : s.b1_generators) {
    if (!is_inclusion_normalized(o, t)) throw NotACocycle("du_z is not inclusion-normalized");
    IntVector v = cochain_vector(zf, s, t);
    if (!z1.contains(v)) throw NotACocycle("du_z violates the cocycle system");
    b_cols.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < n; ++j) b_cols.push_back(dn.col(static_cast<Eigen::Index>(j)));
  const IntMatrix b_gens = columns(b_cols, n);
  const LatticeQuotient b1(b_gens, dn, q);
  s.b1_invariants = b1.invariants();
  const LatticeQuotient lim1(l_gens, b_gens, q);
  s.lim1_invariants = lim1.invariants();
  for (const IntVector& v : lim1.generators()) s.lim1_generators.push_back(vector_cochain(zf, s, v));
  return s;
}

std::vector<Cochain1> enumerate_z1hat(const CenterFunctor& zf, const CocycleSolution& s) {
  std::set<Cochain1> out;
  std::vector<IntVector> gens;
  for (const Cochain1& t : s.z1_generators) gens.push_back(cochain_vector(zf, s, t));
  std::vector<Int> c(gens.size(), 0);
  while (true) {
    IntVector v = IntVector::Zero(static_cast<Eigen::Index>(s.unknowns));
    for (std::size_t i = 0; i < gens.size(); ++i) v += c[i] * gens[i];
    for (std::size_t j = 0; j < s.unknowns; ++j)
      v(static_cast<Eigen::Index>(j)) = mod(v(static_cast<Eigen::Index>(j)), s.unknown_orders[j]);
    out.insert(vector_cochain(zf, s, v));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == s.z1_invariants[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  return {out.begin(), out.end()};
}

std::optional<Z1Complement> z1_complement(const CenterFunctor& zf, const CocycleSolution& s) {
  const FiniteGroup& G = zf.category().fusion().group();
  const std::vector<Cochain1> z1 = enumerate_z1hat(zf, s);
  std::map<Cochain1, std::size_t> index;
  for (std::size_t i = 0; i < z1.size(); ++i) index.emplace(z1[i], i);
  const TableGroup t = group_from_table(z1.size(), [&](std::size_t a, std::size_t b) {
    Cochain1 c(z1[a].size());
    for (std::size_t m = 0; m < c.size(); ++m) c[m] = G.mul(z1[a][m], z1[b][m]);
    return index.at(c);
  });
  std::vector<Elem> b;
  const Subgroup zs = zf.z(zf.category().fusion().sylow_id()).group();
  for (Elem z : zs.members())
    b.push_back(t.to_group[index.at(coboundary(zf, constant_cochain(zf.category(), z)))]);
  const Subgroup all = t.group.whole();
  const auto c = find_complement(t.group, all, t.group.generate(b));
  if (!c) return std::nullopt;
  Z1Complement out;
  out.order = c->order();
  for (Elem x : minimal_generating_tuple(t.group, *c)) out.generators.push_back(z1[t.from_group[x]]);
  return out;
}

// ---------------------------------------------------------------- oracle

std::vector<Cochain1> brute_z1hat(const OrbitCategory& o, std::size_t bound) {
  const RawCenters raw(o);
  const Elem one = o.fusion().group().identity();
  std::vector<std::size_t> vars;
  double space = 1;
  for (std::size_t m = 0; m < o.size(); ++m)
    if (!o.mor(m).inclusion) {
      vars.push_back(m);
      space *= static_cast<double>(raw.zp[m].order());
    }
  if (space > static_cast<double>(bound))
    throw SearchSpaceTooLarge("cochain space of size " + std::to_string(space) + " exceeds " +
                              std::to_string(bound));

  // An equation is checked as soon as its last unknown is assigned.
  std::vector<std::size_t> depth_of(o.size(), 0);
  for (std::size_t d = 0; d < vars.size(); ++d) depth_of[vars[d]] = d + 1;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(vars.size() + 1);
  for (const auto& [g, f] : o.composable()) {
    const std::size_t h = o.compose(g, f);
    checks[std::max({depth_of[g], depth_of[f], depth_of[h]})].emplace_back(g, f);
  }

  Cochain1 t(o.size(), one);
  std::vector<Cochain1> out;
  for (const auto& [g, f] : checks[0])
    if (!pair_holds(o, raw, t, g, f)) return out;

  std::vector<std::size_t> choice(vars.size(), 0);
  std::size_t d = 0;
  if (vars.empty()) {
    out.push_back(t);
    return out;
  }
  while (true) {
    const std::size_t m = vars[d];
    if (choice[d] == raw.zp[m].order()) {
      choice[d] = 0;
      t[m] = one;
      if (d == 0) break;
      --d;
      ++choice[d];
      continue;
    }
    t[m] = raw.zp[m].members()[choice[d]];
    bool ok = true;
    for (const auto& [g, f] : checks[d + 1])
      if (!pair_holds(o, raw, t, g, f)) {
        ok = false;
        break;
      }
    if (!ok) {
      ++choice[d];
      continue;
    }
    if (d + 1 == vars.size()) {
      out.push_back(t);
      ++choice[d];
    } else {
      ++d;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- lim⁰

AbelianPresentation lim0(const CenterFunctor& zf) {
  const OrbitCategory& o = zf.category();
  const FusionSystem& F = o.fusion();
  std::vector<Elem> fixed;
  for (Elem z : zf.z(F.sylow_id()).group().members()) {
    bool ok = true;
    for (std::size_t m = 0; m < o.size() && ok; ++m) ok = zf.apply(m, z) == z;
    if (ok) fixed.push_back(z);
  }
  return AbelianPresentation(F.group(), Subgroup(std::move(fixed), F.group().order()));
}

std::string dump_system(const CocycleSolution& s) {
  std::ostringstream out;
  out << "unknowns " << s.unknowns << " orders";
  for (Int x : s.unknown_orders) out << ' ' << x;
  out << "\nequations " << s.moduli.size() << '\n';
  for (Eigen::Index i = 0; i < s.equations.rows(); ++i) {
    out << s.moduli[static_cast<std::size_t>(i)] << ':';
    for (Eigen::Index j = 0; j < s.equations.cols(); ++j) out << ' ' << s.equations(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace fusionkit
