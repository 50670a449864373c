#include "fusionkit/fusion.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fusionkit/errors.hpp"

namespace fusionkit {

FusionSystem::FusionSystem(std::shared_ptr<const FiniteGroup> g, unsigned p)
    : FusionSystem(g, g->whole(), fusionkit::sylow(*g, p), p) {}

FusionSystem::FusionSystem(std::shared_ptr<const FiniteGroup> g, Subgroup h, Subgroup s,
                           unsigned p)
    : group_(std::move(g)), p_(p), ambient_(std::move(h)) {
  if (!is_prime(p)) throw NotAPGroup(std::to_string(p) + " is not a prime");
  if (!is_p_power(s.order(), p)) throw NotAPGroup("S is not a p-group");
  if (!s.is_subgroup_of(ambient_)) throw NotASubgroup("S is not contained in the ambient group");
  const FiniteGroup& G = *group_;
  subgroups_ = all_subgroups(G, s);
  const std::size_t n = subgroups_.size();
  hom_.assign(n * n, {});

  std::map<Subgroup, SubId> ids;
  for (SubId i = 0; i < n; ++i) ids.emplace(subgroups_[i], i);

  for (SubId pi = 0; pi < n; ++pi) {
    const Subgroup& P = subgroups_[pi];
    std::map<std::vector<Elem>, Elem> maps;  // images -> least witness
    for (Elem x : ambient_.members()) {
      std::vector<Elem> im;
      im.reserve(P.order());
      bool inside = true;
      for (Elem y : P.members()) {
        const Elem z = G.conj(x, y);
        if (!s.contains(z)) {
          inside = false;
          break;
        }
        im.push_back(z);
      }
      if (inside) maps.emplace(std::move(im), x);
    }
    for (auto& [im, x] : maps) {
      const Subgroup image(im, G.order());
      for (SubId qi = 0; qi < n; ++qi)
        if (image.is_subgroup_of(subgroups_[qi])) hom_[pi * n + qi].push_back({pi, qi, im, x});
    }
  }
}

SubId FusionSystem::id_of(const Subgroup& x) const {
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), x);
  if (it == subgroups_.end() || *it != x) throw NotASubgroup("not a subgroup of S");
  return static_cast<SubId>(it - subgroups_.begin());
}

std::size_t FusionSystem::find(SubId p, SubId q, const std::vector<Elem>& images) const {
  const auto& h = hom(p, q);
  auto it = std::lower_bound(h.begin(), h.end(), images,
                             [](const FusionMorphism& m, const std::vector<Elem>& v) {
                               return m.images < v;
                             });
  if (it == h.end() || it->images != images) return kNoElem;
  return static_cast<std::size_t>(it - h.begin());
}

SubId FusionSystem::image_of(const FusionMorphism& m) const {
  return id_of(Subgroup(m.images, group_->order()));
}

std::vector<Elem> FusionSystem::compose(const FusionMorphism& psi,
                                        const FusionMorphism& phi) const {
  std::vector<Elem> out;
  out.reserve(phi.images.size());
  for (Elem y : phi.images) out.push_back(apply(psi, y));
  return out;
}

FusionSystem::Automizer FusionSystem::automizer(SubId p) const {
  const Subgroup& P = sub(p);
  std::vector<Perm> gens;
  for (const FusionMorphism& m : hom(p, p)) {
    std::vector<Point> im;
    for (Elem y : m.images) im.push_back(static_cast<Point>(P.position(y)));
    gens.emplace_back(std::move(im));
  }
  Automizer out{FiniteGroup::from_generators(P.order(), gens), {}};
  std::vector<Elem> inner;
  for (Elem x : P.members()) {
    std::vector<Point> im;
    for (Elem y : P.members()) im.push_back(static_cast<Point>(P.position(group_->conj(x, y))));
    inner.push_back(out.group.index_of(Perm(std::move(im))));
  }
  out.inner = Subgroup(std::move(inner), out.group.order());
  return out;
}

const Classification& FusionSystem::classification() const {
  if (!classification_) classification_ = std::make_shared<const Classification>(classify(*this));
  return *classification_;
}

std::vector<SubId> Classification::centric() const {
  std::vector<SubId> out;
  for (SubId i = 0; i < flags.size(); ++i)
    if (flags[i].centric) out.push_back(i);
  return out;
}

std::vector<SubId> Classification::subcentric() const {
  std::vector<SubId> out;
  for (SubId i = 0; i < flags.size(); ++i)
    if (flags[i].subcentric) out.push_back(i);
  return out;
}

std::vector<SubId> Classification::centric_radical() const {
  std::vector<SubId> out;
  for (SubId i = 0; i < flags.size(); ++i)
    if (flags[i].centric_radical) out.push_back(i);
  return out;
}

namespace {

// Brute force: some proper H < X with p | |H| and H ∩ xHx^-1 a p'-group for x outside H.
bool has_strongly_p_embedded(const FiniteGroup& x, unsigned p) {
  const Subgroup all = x.whole();
  for (const Subgroup& h : all_subgroups(x, all)) {
    if (h.order() == x.order() || coprime_to(h.order(), p)) continue;
    bool ok = true;
    for (Elem g : all.members()) {
      if (h.contains(g)) continue;
      if (!coprime_to(intersect(x, h, x.conjugate(g, h)).order(), p)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

Classification classify(const FusionSystem& f) {
  const FiniteGroup& G = f.group();
  const std::size_t n = f.subgroups().size();
  const Subgroup& S = f.sylow();
  Classification out;
  out.flags.resize(n);

  std::vector<bool> assigned(n, false);
  for (SubId i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    std::vector<SubId> cls;
    for (SubId j = i; j < n; ++j)
      if (!assigned[j] && f.sub(j).order() == f.sub(i).order() && !f.hom(i, j).empty()) {
        assigned[j] = true;
        out.flags[j].cls = out.classes.size();
        cls.push_back(j);
      }
    out.classes.push_back(std::move(cls));
  }

  for (const auto& cls : out.classes) {
    std::size_t best = 0;
    bool centric = true;
    for (SubId q : cls) {
      best = std::max(best, normalizer(G, f.sub(q), S).order());
      if (!centralizer(G, f.sub(q), S).is_subgroup_of(f.sub(q))) centric = false;
    }
    const auto automizer = f.automizer(cls.front());
    const bool radical = cores(automizer.group, f.prime()).op == automizer.inner;
    bool essential = false;
    if (centric && cls.front() != f.sylow_id()) {
      const auto out_f = quotient(automizer.group, automizer.group.whole(), automizer.inner);
      essential = has_strongly_p_embedded(out_f.group, f.prime());
    }
    for (SubId q : cls) {
      auto& fl = out.flags[q];
      fl.fully_normalized = normalizer(G, f.sub(q), S).order() == best;
      fl.centric = centric;
      fl.radical = radical;
      fl.centric_radical = centric && radical;
      fl.essential_candidate = essential;
    }
  }

  for (const auto& cls : out.classes) {
    bool subcentric = true;
    for (SubId q : cls) {
      if (!out.flags[q].fully_normalized) continue;
      const Subgroup r = op_of_fusion(normalizer_fusion(f, q));
      if (!out.flags[f.id_of(r)].centric) subcentric = false;
    }
    for (SubId q : cls) out.flags[q].subcentric = subcentric;
  }
  return out;
}

FusionSystem normalizer_fusion(const FusionSystem& f, SubId q) {
  const FiniteGroup& G = f.group();
  const Subgroup& Q = f.sub(q);
  const std::size_t nq = normalizer(G, Q, f.sylow()).order();
  for (const FusionMorphism& m : f.hom(q, f.sylow_id()))
    if (normalizer(G, Subgroup(m.images, G.order()), f.sylow()).order() > nq)
      throw NotFullyNormalized("subgroup " + describe(G, Q) + " is not fully normalized");
  return FusionSystem(f.group_ptr(), normalizer(G, Q, f.ambient()), normalizer(G, Q, f.sylow()),
                      f.prime());
}

Subgroup op_of_fusion(const FusionSystem& f) {
  const FiniteGroup& G = f.group();
  const Subgroup& S = f.sylow();
  std::vector<Subgroup> candidates = normal_subgroups(G, S);
  std::sort(candidates.begin(), candidates.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() > b.order() : a < b;
  });
  for (const Subgroup& R : candidates) {
    const Subgroup nr = normalizer(G, R, f.ambient());
    bool normal = true;
    for (SubId pi = 0; pi < f.subgroups().size() && normal; ++pi) {
      const Subgroup& P = f.sub(pi);
      const Subgroup pr = join(G, P, R);
      const Subgroup cp = centralizer(G, P, f.ambient());
      for (const FusionMorphism& m : f.hom(pi, f.sylow_id())) {
        bool extends = false;
        for (Elem c : cp.members()) {
          const Elem h = G.mul(m.witness, c);
          if (!nr.contains(h)) continue;
          bool inside = true;
          for (Elem y : pr.members())
            if (!S.contains(G.conj(h, y))) {
              inside = false;
              break;
            }
          if (inside) {
            extends = true;
            break;
          }
        }
        if (!extends) {
          normal = false;
          break;
        }
      }
    }
    if (normal) return R;
  }
  return G.trivial();
}

bool verify_conjugation_family(const FusionSystem& f, const std::vector<SubId>& c) {
  const SubId s = f.sylow_id();
  for (SubId pi = 0; pi < f.subgroups().size(); ++pi) {
    std::set<std::vector<Elem>> reached{f.sub(pi).members()};
    std::vector<std::vector<Elem>> todo{f.sub(pi).members()};
    while (!todo.empty()) {
      const std::vector<Elem> cur = std::move(todo.back());
      todo.pop_back();
      const Subgroup image(cur, f.group().order());
      for (SubId r : c) {
        if (!image.is_subgroup_of(f.sub(r))) continue;
        for (const FusionMorphism& a : f.hom(r, r)) {
          std::vector<Elem> next;
          next.reserve(cur.size());
          for (Elem y : cur) next.push_back(f.apply(a, y));
          if (reached.insert(next).second) todo.push_back(std::move(next));
        }
      }
    }
    for (const FusionMorphism& m : f.hom(pi, s))
      if (!reached.count(m.images)) return false;
  }
  return true;
}

std::string describe(const FiniteGroup& g, const Subgroup& x) {
  std::string out = "<";
  bool first = true;
  for (Elem e : minimal_generating_tuple(g, x)) {
    if (!first) out += ", ";
    out += g.perm(e).cycles();
    first = false;
  }
  return out + ">";
}

}  // namespace fusionkit
