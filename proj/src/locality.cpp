#include "fusionkit/locality.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::string word_label(std::span<const LocElem> w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + std::to_string(w[i]);
  return out + ")";
}

SubId image_subgroup(const FusionSystem& f, const std::vector<Elem>& images) {
  std::vector<Elem> im = images;
  std::sort(im.begin(), im.end());
  return f.id_of(Subgroup(std::move(im), f.group().order()));
}

}  // namespace

// ---------------------------------------------------------------- Locality

Locality::Locality(std::shared_ptr<const FusionSystem> f, std::vector<SubId> delta,
                   std::vector<LocElem> inverse, std::vector<std::uint8_t> conj,
                   std::vector<LocElem> s_embed, const ProductFn& product,
                   std::vector<std::size_t> tags)
    : fusion_(std::move(f)),
      delta_(std::move(delta)),
      inverse_(std::move(inverse)),
      conj_(std::move(conj)),
      s_embed_(std::move(s_embed)),
      tags_(std::move(tags)) {
  const FusionSystem& F = *fusion_;
  const Subgroup& S = F.sylow();
  s_order_ = S.order();
  if (s_order_ > 64) throw TooLarge("localities need |S| <= 64");
  const std::size_t n = inverse_.size();
  if (conj_.size() != n * s_order_ || tags_.size() != n || s_embed_.size() != s_order_)
    throw NotASubgroup("inconsistent locality data");
  std::sort(delta_.begin(), delta_.end());
  delta_.erase(std::unique(delta_.begin(), delta_.end()), delta_.end());
  in_delta_.assign(F.subgroups().size(), false);
  for (SubId p : delta_) in_delta_.at(p) = true;

  masks_.resize(F.subgroups().size());
  for (SubId p = 0; p < masks_.size(); ++p) {
    std::uint64_t m = 0;
    for (Elem x : F.sub(p).members()) m |= std::uint64_t{1} << S.position(x);
    masks_[p] = m;
    mask_ids_.emplace(m, p);
  }
  s_pos_.assign(n, kNoElem);
  for (std::size_t i = 0; i < s_order_; ++i) s_pos_.at(s_embed_[i]) = i;
  for (LocElem x = 0; x < n; ++x) tag_ids_.emplace(tags_[x], x);

  sf_mask_.resize(n);
  s_f_.resize(n);
  for (LocElem x = 0; x < n; ++x) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < s_order_; ++i)
      if (conj_[x * s_order_ + i] != kOutside) m |= std::uint64_t{1} << i;
    sf_mask_[x] = m;
    s_f_[x] = sub_of_mask(m);
  }

  pair_.assign(n * n, kUndefined);
  for (LocElem a = 0; a < n; ++a)
    for (LocElem b = 0; b < n; ++b) {
      const LocElem w[2] = {a, b};
      if (in_domain(w)) pair_[a * n + b] = product(a, b);
    }
}

LocElem Locality::find_tag(std::size_t tag) const {
  auto it = tag_ids_.find(tag);
  return it == tag_ids_.end() ? kUndefined : it->second;
}

LocElem Locality::from_s_elem(Elem s) const {
  const std::size_t i = fusion_->sylow().position(s);
  if (i == kNoElem) throw NotASubgroup("element outside S");
  return s_embed_[i];
}

SubId Locality::sub_of_mask(std::uint64_t m) const {
  auto it = mask_ids_.find(m);
  if (it == mask_ids_.end()) throw NotASubgroup("subset of S is not a subgroup");
  return it->second;
}

std::uint64_t Locality::push(LocElem f, std::uint64_t mask) const {
  std::uint64_t m = mask & sf_mask_[f];
  std::uint64_t out = 0;
  const std::uint8_t* row = conj_.data() + f * s_order_;
  while (m) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    out |= std::uint64_t{1} << row[i];
  }
  return out;
}

SubId Locality::conj_sub(LocElem f, SubId p) const {
  if ((masks_[p] & ~sf_mask_[f]) != 0) throw NoSuchRestriction("P is not contained in S_f");
  return sub_of_mask(push(f, masks_[p]));
}

std::optional<SubId> Locality::via(std::span<const LocElem> w) const {
  std::uint64_t mask = full_mask(s_order_);
  for (std::size_t i = w.size(); i-- > 0;) {
    mask = push(w[i], mask);
    auto it = mask_ids_.find(mask);
    if (it == mask_ids_.end() || !in_delta_[it->second]) return std::nullopt;
  }
  auto it = mask_ids_.find(mask);
  if (it == mask_ids_.end() || !in_delta_[it->second]) return std::nullopt;
  return it->second;
}

LocElem Locality::product(std::span<const LocElem> w) const {
  if (!in_domain(w)) return kUndefined;
  if (w.empty()) return identity();
  LocElem acc = w.back();
  for (std::size_t i = w.size() - 1; i-- > 0 && acc != kUndefined;) acc = product(w[i], acc);
  return acc;
}

std::vector<LocElem> Locality::normalizer(SubId p) const {
  std::vector<LocElem> out;
  const std::uint64_t m = masks_[p];
  for (LocElem f = 0; f < size(); ++f)
    if ((m & ~sf_mask_[f]) == 0 && push(f, m) == m) out.push_back(f);
  return out;
}

// ---------------------------------------------------------------- constructions

Locality build_group_locality(std::shared_ptr<const FusionSystem> f, std::vector<SubId> delta) {
  const FusionSystem& F = *f;
  validate_object_set(F, delta);
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow();
  std::vector<bool> in(F.subgroups().size(), false);
  for (SubId p : delta) in[p] = true;

  std::vector<Elem> carrier;
  std::vector<std::uint8_t> conj;
  std::vector<LocElem> index(G.order(), kUndefined);
  for (Elem g : F.ambient().members()) {
    std::vector<std::uint8_t> row(S.order(), Locality::kOutside);
    std::vector<Elem> sg;
    for (std::size_t i = 0; i < S.order(); ++i) {
      const std::size_t j = S.position(G.conj(g, S.members()[i]));
      if (j == kNoElem) continue;
      row[i] = static_cast<std::uint8_t>(j);
      sg.push_back(S.members()[i]);
    }
    if (!in[F.id_of(Subgroup(sg, G.order()))]) continue;
    index[g] = static_cast<LocElem>(carrier.size());
    carrier.push_back(g);
    conj.insert(conj.end(), row.begin(), row.end());
  }
  std::vector<LocElem> inverse, s_embed;
  for (Elem g : carrier) inverse.push_back(index[G.inv(g)]);
  for (Elem s : S.members()) s_embed.push_back(index[s]);
  if (std::count(inverse.begin(), inverse.end(), kUndefined) ||
      std::count(s_embed.begin(), s_embed.end(), kUndefined))
    throw BadObjectSet("carrier not closed under inverses");
  return Locality(
      std::move(f), std::move(delta), std::move(inverse), std::move(conj), std::move(s_embed),
      [&](LocElem a, LocElem b) {
        const LocElem c = index[G.mul(carrier[a], carrier[b])];
        if (c == kUndefined) throw BadObjectSet("product leaves the carrier");
        return c;
      },
      std::vector<std::size_t>(carrier.begin(), carrier.end()));
}

Locality restrict_locality(const Locality& l, std::vector<SubId> delta) {
  const FusionSystem& F = l.fusion();
  validate_object_set(F, delta);
  std::vector<bool> in(F.subgroups().size(), false);
  for (SubId p : delta) in[p] = true;
  for (SubId p : delta)
    if (!l.in_delta(p)) throw BadObjectSet("restriction to objects outside Δ");
  const std::size_t so = F.sylow().order();
  std::vector<LocElem> kept, index(l.size(), kUndefined);
  for (LocElem x = 0; x < l.size(); ++x)
    if (in[l.s_f(x)]) {
      index[x] = static_cast<LocElem>(kept.size());
      kept.push_back(x);
    }
  std::vector<LocElem> inverse, s_embed;
  std::vector<std::uint8_t> conj;
  for (LocElem x : kept) {
    inverse.push_back(index[l.inverse(x)]);
    for (std::size_t i = 0; i < so; ++i) conj.push_back(l.conj_pos(x, i));
  }
  for (std::size_t i = 0; i < so; ++i) s_embed.push_back(index[l.from_s(i)]);
  return Locality(
      l.fusion_ptr(), std::move(delta), std::move(inverse), std::move(conj), std::move(s_embed),
      [&](LocElem a, LocElem b) {
        const LocElem c = l.product(kept[a], kept[b]);
        if (c == kUndefined || index[c] == kUndefined)
          throw BadObjectSet("restricted product undefined");
        return index[c];
      },
      std::vector<std::size_t>(kept.begin(), kept.end()));
}

TableGroup normalizer_group(const Locality& l, SubId p) {
  const std::vector<LocElem> e = l.normalizer(p);
  std::vector<std::size_t> pos(l.size(), kNoElem);
  for (std::size_t i = 0; i < e.size(); ++i) pos[e[i]] = i;
  return group_from_table(e.size(), [&](std::size_t a, std::size_t b) {
    const LocElem c = l.product(e[a], e[b]);
    if (c == kUndefined || pos[c] == kNoElem) throw NotASubgroup("N_L(P) is not closed");
    return pos[c];
  });
}

// ---------------------------------------------------------------- axioms

namespace {

struct Check {
  AxiomResult r;
  explicit Check(std::string name) { r.name = std::move(name); }
  void fail(const std::string& w) {
    if (r.pass) r.witness = w;
    r.pass = false;
  }
  bool ok() const { return r.pass; }
};

// Every word of D of length <= max_len, shortest first. Longer words are
// grown on the left, which the closure axiom makes exhaustive.
std::vector<std::vector<LocElem>> domain_words(const Locality& l, std::size_t max_len) {
  std::vector<std::vector<LocElem>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (LocElem f = 0; f < l.size(); ++f) {
        std::vector<LocElem> w{f};
        w.insert(w.end(), out[k].begin(), out[k].end());
        if (l.in_domain(w)) out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

void check_partial_group(const Locality& l, std::size_t max_len, AxiomReport& report) {
  Check unary("PG-unary"), closure("PG-subwords"), splice("PG-splice"), inv("PG-inverse"),
      inv_word("PG-inverse-words");
  for (LocElem f = 0; f < l.size(); ++f) {
    const LocElem w[1] = {f};
    if (l.product(w) != f) unary.fail("Π(" + std::to_string(f) + ") != " + std::to_string(f));
    if (l.inverse(f) >= l.size() || l.inverse(l.inverse(f)) != f)
      inv.fail("inversion is not an involution at " + std::to_string(f));
  }
  if (l.product(std::span<const LocElem>{}) != l.identity()) unary.fail("Π(∅) != 1");

  // Length-4 words can be numerous; the short-word axioms cover all splices of
  // words up to that length.
  const auto words = domain_words(l, max_len);
  for (const auto& w : words) {
    const LocElem pw = l.product(w);
    if (pw == kUndefined) {
      splice.fail("Π undefined on " + word_label(w));
      continue;
    }
    const std::size_t n = w.size();
    for (std::size_t i = 0; i <= n && closure.ok(); ++i)
      for (std::size_t j = i; j <= n; ++j)
        if (!l.in_domain(std::span<const LocElem>(w).subspan(i, j - i)))
          closure.fail("subword of " + word_label(w) + " outside D");
    for (std::size_t i = 0; i <= n && splice.ok(); ++i)
      for (std::size_t j = i; j <= n; ++j) {
        const LocElem v = l.product(std::span<const LocElem>(w).subspan(i, j - i));
        if (v == kUndefined) continue;  // reported above
        std::vector<LocElem> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        u.push_back(v);
        u.insert(u.end(), w.begin() + static_cast<std::ptrdiff_t>(j), w.end());
        if (l.product(u) != pw) splice.fail("Π(u∘Π(v)∘w) != Π(u∘v∘w) at " + word_label(w));
      }
    if (inv_word.ok()) {
      std::vector<LocElem> u;
      for (std::size_t i = n; i-- > 0;) u.push_back(l.inverse(w[i]));
      u.insert(u.end(), w.begin(), w.end());
      if (l.product(u) != l.identity()) inv_word.fail("Π(w^-1∘w) != 1 at " + word_label(w));
    }
  }
  for (Check* c : {&unary, &closure, &splice, &inv, &inv_word}) report.push_back(c->r);
}

}  // namespace

AxiomReport verify_locality_axioms(const Locality& l, bool linking, std::size_t max_len) {
  AxiomReport report;
  const FusionSystem& F = l.fusion();
  const FiniteGroup& G = F.group();
  const Subgroup& S = F.sylow();
  const std::size_t n = l.size();
  auto guarded = [&report](const char* name, const auto& body) {
    Check c(name);
    try {
      body(c);
    } catch (const Error& e) {
      c.fail(e.what());
    }
    report.push_back(c.r);
  };

  try {
    check_partial_group(l, max_len, report);
  } catch (const Error& e) {
    report.push_back({"PG", false, e.what()});
  }

  guarded("S-subgroup", [&](Check& c) {
    for (std::size_t i = 0; i < S.order(); ++i)
      for (std::size_t j = 0; j < S.order(); ++j)
        if (l.product(l.from_s(i), l.from_s(j)) !=
            l.from_s_elem(G.mul(S.members()[i], S.members()[j])))
          c.fail("product on S differs from the group product");
  });

  guarded("S_f", [&](Check& c) {
    for (LocElem f = 0; f < n; ++f) {
      if (!l.in_delta(l.s_f(f))) c.fail("S_" + std::to_string(f) + " not in Δ");
      for (std::size_t i = 0; i < S.order(); ++i) {
        const LocElem x = l.product(std::vector<LocElem>{f, l.from_s(i), l.inverse(f)});
        const std::uint8_t j = l.conj_pos(f, i);
        if (j == Locality::kOutside) {
          if (x != kUndefined && l.s_position(x) != kNoElem)
            c.fail("f s f^-1 in S for s outside S_f, f = " + std::to_string(f));
        } else if (x != l.from_s(j)) {
          c.fail("c_f(s) != Π(f, s, f^-1) for f = " + std::to_string(f));
        }
      }
    }
  });

  // Independent chain search: c_f applied object by object through Subgroup.
  std::vector<std::vector<SubId>> step(n, std::vector<SubId>(F.subgroups().size(), kNoElem));
  for (LocElem f = 0; f < n; ++f)
    for (SubId p : l.delta()) {
      if (!F.sub(p).is_subgroup_of(F.sub(l.s_f(f)))) continue;
      std::vector<Elem> im;
      for (Elem x : F.sub(p).members())
        im.push_back(S.members()[l.conj_pos(f, S.position(x))]);
      step[f][p] = image_subgroup(F, im);
    }

  guarded("L1a", [&](Check& c) {
    const std::size_t len = std::min<std::size_t>(max_len, 3);
    std::vector<LocElem> w;
    std::function<void()> rec = [&]() {
      bool chain = false;
      for (SubId x0 : l.delta()) {
        SubId x = x0;
        for (std::size_t i = w.size(); i-- > 0 && x != kNoElem;) {
          x = step[w[i]][x];
          if (x != kNoElem && !l.in_delta(x)) x = kNoElem;
        }
        if (x != kNoElem) {
          chain = true;
          break;
        }
      }
      if (chain != l.in_domain(w)) c.fail("D and object chains disagree at " + word_label(w));
      if (w.size() == len || !c.ok()) return;
      for (LocElem f = 0; f < n; ++f) {
        w.push_back(f);
        rec();
        w.pop_back();
      }
    };
    rec();
  });

  guarded("L1b", [&](Check& c) {
    for (LocElem f = 0; f < n; ++f)
      for (SubId p : l.delta()) {
        const SubId q = step[f][p];
        if (q == kNoElem) continue;
        for (SubId r = 0; r < F.subgroups().size(); ++r)
          if (F.sub(q).is_subgroup_of(F.sub(r)) && !l.in_delta(r))
            c.fail("overgroup of a conjugate object is not in Δ");
      }
  });

  guarded("L2", [&](Check& c) {
    const TableGroup ns = normalizer_group(l, F.sylow_id());
    if (p_part(ns.group.order(), F.prime()) != S.order())
      c.fail("S is not Sylow in N_L(S) (|N_L(S)| = " + std::to_string(ns.group.order()) + ")");
  });

  guarded("fusion", [&](Check& c) {
    for (SubId p : l.delta())
      for (SubId q : l.delta()) {
        std::set<std::vector<Elem>> maps;
        for (LocElem f = 0; f < n; ++f) {
          if (step[f][p] == kNoElem || !F.sub(step[f][p]).is_subgroup_of(F.sub(q))) continue;
          std::vector<Elem> im;
          for (Elem x : F.sub(p).members()) im.push_back(S.members()[l.conj_pos(f, S.position(x))]);
          maps.insert(std::move(im));
        }
        std::set<std::vector<Elem>> expected;
        for (const FusionMorphism& m : F.hom(p, q)) expected.insert(m.images);
        if (maps != expected) c.fail("F_S(L) differs from F on Hom(P" + std::to_string(p) + ", P" +
                                     std::to_string(q) + ")");
      }
  });

  if (linking) {
    guarded("linking", [&](Check& c) {
      for (SubId p : F.classification().centric_radical())
        if (!l.in_delta(p)) c.fail("centric radical P" + std::to_string(p) + " not in Δ");
      for (SubId p : l.delta())
        if (!is_characteristic_p(normalizer_group(l, p).group, F.prime()))
          c.fail("N_L(P" + std::to_string(p) + ") is not of characteristic p");
    });
  }
  return report;
}

// ---------------------------------------------------------------- Θ and Λ

FiniteCategory theta(const Locality& l) {
  const FusionSystem& F = l.fusion();
  const Subgroup& S = F.sylow();
  std::vector<Morphism> mors;
  for (SubId p : l.delta())
    for (SubId q : l.delta())
      for (LocElem f = 0; f < l.size(); ++f) {
        if ((l.mask_of(p) & ~l.mask_of(l.s_f(f))) != 0) continue;
        if ((l.push(f, l.mask_of(p)) & ~l.mask_of(q)) == 0) mors.push_back({p, q, f});
      }
  return FiniteCategory(
      l.fusion_ptr(), l.delta(), std::move(mors),
      [&l](const Morphism& g, const Morphism& h) {
        const LocElem c = l.product(static_cast<LocElem>(g.payload), static_cast<LocElem>(h.payload));
        if (c == kUndefined) throw NotATransporterSystem("composite undefined in the locality");
        return static_cast<std::size_t>(c);
      },
      [&l](SubId, SubId, Elem s) { return static_cast<std::size_t>(l.from_s_elem(s)); },
      [&l, &F, &S](const Morphism& m) {
        std::vector<Elem> im;
        const LocElem f = static_cast<LocElem>(m.payload);
        for (Elem y : F.sub(m.src).members()) im.push_back(S.members()[l.conj_pos(f, S.position(y))]);
        return im;
      });
}

LambdaLocality lambda(const FiniteCategory& t) {
  const FusionSystem& F = t.fusion();
  const Subgroup& S = F.sylow();
  const SubId sid = F.sylow_id();
  if (!t.has_object(sid)) throw NotATransporterSystem("S is not an object");

  std::vector<MorId> parent(t.size());
  std::iota(parent.begin(), parent.end(), MorId{0});
  std::function<MorId(MorId)> root = [&](MorId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<MorId> isos;
  for (MorId m = 0; m < t.size(); ++m)
    if (t.is_iso(m)) isos.push_back(m);
  for (MorId m : isos) {
    const Morphism& x = t.mor(m);
    const Subgroup& P = F.sub(x.src);
    for (SubId p0 : t.objects()) {
      if (p0 == x.src || !F.sub(p0).is_subgroup_of(P)) continue;
      std::vector<Elem> im;
      for (Elem y : F.sub(p0).members()) im.push_back(t.pi(m)[P.position(y)]);
      const MorId r = restrict_morphism(t, m, p0, image_subgroup(F, im));
      parent[root(r)] = root(m);
    }
  }
  // Representative: the unique member with the largest source.
  std::map<MorId, MorId> rep;  // root -> maximal member
  for (MorId m : isos) {
    const MorId r = root(m);
    auto it = rep.find(r);
    if (it == rep.end()) {
      rep.emplace(r, m);
      continue;
    }
    const std::size_t a = F.sub(t.mor(m).src).order(), b = F.sub(t.mor(it->second).src).order();
    if (a > b) it->second = m;
  }
  for (MorId m : isos) {
    const MorId top = rep.at(root(m));
    if (m != top && F.sub(t.mor(m).src).order() >= F.sub(t.mor(top).src).order())
      throw NotATransporterSystem("≡-class without a unique maximal member");
  }
  std::vector<MorId> reps;
  for (const auto& [r, m] : rep) reps.push_back(m);
  std::sort(reps.begin(), reps.end());
  std::map<MorId, LocElem> index_of_root;
  for (LocElem i = 0; i < reps.size(); ++i) index_of_root[root(reps[i])] = i;

  LambdaLocality out;
  out.class_of.assign(t.size(), kUndefined);
  for (MorId m : isos) out.class_of[m] = index_of_root.at(root(m));
  const std::size_t n = reps.size();

  std::vector<LocElem> inverse(n), s_embed;
  std::vector<std::uint8_t> conj(n * S.order(), Locality::kOutside);
  for (LocElem i = 0; i < n; ++i) {
    const MorId r = reps[i];
    inverse[i] = out.class_of[t.inverse(r)];
    const Subgroup& P = F.sub(t.mor(r).src);
    for (std::size_t k = 0; k < P.order(); ++k)
      conj[i * S.order() + S.position(P.members()[k])] =
          static_cast<std::uint8_t>(S.position(t.pi(r)[k]));
  }
  for (Elem s : S.members()) s_embed.push_back(out.class_of[t.delta(sid, sid, s)]);

  std::vector<LocElem> pairs(n * n, kUndefined);
  for (MorId phi : isos)
    for (MorId psi : isos) {
      if (t.mor(psi).src != t.mor(phi).dst) continue;
      const LocElem a = out.class_of[psi], b = out.class_of[phi];
      const LocElem c = out.class_of[t.compose(psi, phi)];
      LocElem& slot = pairs[a * n + b];
      if (slot != kUndefined && slot != c)
        throw NotATransporterSystem("product of ≡-classes is not well defined");
      slot = c;
    }
  out.locality = std::make_shared<const Locality>(
      t.fusion_ptr(), t.objects(), std::move(inverse), std::move(conj), std::move(s_embed),
      [&](LocElem a, LocElem b) {
        if (pairs[a * n + b] == kUndefined)
          throw NotATransporterSystem("defined pair of classes without composable representatives");
        return pairs[a * n + b];
      },
      std::vector<std::size_t>(reps.begin(), reps.end()));
  return out;
}

// ---------------------------------------------------------------- automorphisms

LocAutomorphism identity_automorphism(const Locality& l) {
  LocAutomorphism a;
  a.map.resize(l.size());
  std::iota(a.map.begin(), a.map.end(), LocElem{0});
  return a;
}

LocAutomorphism compose(const LocAutomorphism& a, const LocAutomorphism& b) {
  LocAutomorphism out;
  out.map.resize(b.map.size());
  for (std::size_t i = 0; i < b.map.size(); ++i) out.map[i] = a.map[b.map[i]];
  return out;
}

LocAutomorphism inverse(const LocAutomorphism& a) {
  LocAutomorphism out;
  out.map.resize(a.map.size());
  for (std::size_t i = 0; i < a.map.size(); ++i) out.map[a.map[i]] = static_cast<LocElem>(i);
  return out;
}

std::optional<SubId> image_sub(const Locality& l, const LocAutomorphism& a, SubId p) {
  const Subgroup& S = l.fusion().sylow();
  std::uint64_t m = 0;
  for (Elem x : l.fusion().sub(p).members()) {
    const std::size_t j = l.s_position(a.map[l.from_s(S.position(x))]);
    if (j == kNoElem) return std::nullopt;
    m |= std::uint64_t{1} << j;
  }
  try {
    return l.sub_of_mask(m);
  } catch (const NotASubgroup&) {
    return std::nullopt;
  }
}

std::string check_automorphism(const Locality& l, const LocAutomorphism& a) {
  const std::size_t n = l.size();
  const std::size_t so = l.fusion().sylow().order();
  if (a.map.size() != n) return "wrong size";
  std::vector<bool> hit(n, false);
  for (LocElem x : a.map) {
    if (x >= n || hit[x]) return "not a bijection";
    hit[x] = true;
  }
  for (std::size_t i = 0; i < so; ++i)
    if (l.s_position(a.map[l.from_s(i)]) == kNoElem) return "S not mapped onto S";
  std::set<SubId> objs;
  for (SubId p : l.delta()) {
    const auto q = image_sub(l, a, p);
    if (!q || !l.in_delta(*q)) return "object P" + std::to_string(p) + " not mapped into Δ";
    objs.insert(*q);
  }
  if (objs.size() != l.delta().size()) return "Δ not mapped onto Δ";
  for (LocElem x = 0; x < n; ++x) {
    const LocElem y = a.map[x];
    if (a.map[l.inverse(x)] != l.inverse(y)) return "inversion not preserved at " + std::to_string(x);
    const auto sf = image_sub(l, a, l.s_f(x));
    if (!sf || *sf != l.s_f(y)) return "S_f not preserved at " + std::to_string(x);
    for (std::size_t i = 0; i < so; ++i) {
      const std::uint8_t j = l.conj_pos(x, i);
      if (j == Locality::kOutside) continue;
      const std::size_t bi = l.s_position(a.map[l.from_s(i)]);
      if (l.conj_pos(y, bi) == Locality::kOutside ||
          l.from_s(l.conj_pos(y, bi)) != a.map[l.from_s(j)])
        return "conjugation not preserved at " + std::to_string(x);
    }
    for (LocElem z = 0; z < n; ++z) {
      const LocElem xz = l.product(x, z);
      const LocElem yz = l.product(y, a.map[z]);
      if ((xz == kUndefined) != (yz == kUndefined) || (xz != kUndefined && a.map[xz] != yz))
        return "product not preserved at (" + std::to_string(x) + "," + std::to_string(z) + ")";
    }
  }
  return "";
}

bool is_rigid(const Locality& l, const LocAutomorphism& a) {
  for (std::size_t i = 0; i < l.fusion().sylow().order(); ++i)
    if (a.map[l.from_s(i)] != l.from_s(i)) return false;
  return true;
}

LocAutomorphism conjugation_by(const Locality& l, LocElem f) {
  if (l.s_f(f) != l.fusion().sylow_id() || l.conj_sub(f, l.fusion().sylow_id()) != l.fusion().sylow_id())
    throw NoSuchRestriction("conjugation by an element outside N_L(S)");
  LocAutomorphism a;
  a.map.resize(l.size());
  for (LocElem x = 0; x < l.size(); ++x) {
    const LocElem y = l.product(std::vector<LocElem>{f, x, l.inverse(f)});
    if (y == kUndefined) throw NotATransporterSystem("f x f^-1 undefined for f in N_L(S)");
    a.map[x] = y;
  }
  return a;
}

namespace {

class RigidSearcher {
 public:
  RigidSearcher(const Locality& l, std::size_t cap) : l_(l), cap_(cap), n_(l.size()) {
    const std::size_t so = l.fusion().sylow().order();
    // Candidates for β(f): same S_f and the same conjugation map on it.
    std::map<std::vector<std::uint8_t>, std::vector<LocElem>> by_sig;
    sig_.resize(n_);
    for (LocElem f = 0; f < n_; ++f) {
      std::vector<std::uint8_t> s;
      for (std::size_t i = 0; i < so; ++i) s.push_back(l.conj_pos(f, i));
      by_sig[s].push_back(f);
      sig_[f] = s;
    }
    cand_.resize(n_);
    for (LocElem f = 0; f < n_; ++f) cand_[f] = by_sig[sig_[f]];
    beta_.assign(n_, kUndefined);
    used_.assign(n_, false);
  }

  std::vector<LocAutomorphism> run() {
    for (std::size_t i = 0; i < l_.fusion().sylow().order(); ++i)
      if (!assign(l_.from_s(i), l_.from_s(i)))
        throw NotATransporterSystem("identity on S does not propagate");
    dfs();
    std::sort(found_.begin(), found_.end());
    return found_;
  }
  std::size_t nodes() const { return nodes_; }

 private:
  bool assign(LocElem x, LocElem y) {
    std::vector<std::pair<LocElem, LocElem>> queue{{x, y}};
    while (!queue.empty()) {
      auto [a, b] = queue.back();
      queue.pop_back();
      if (beta_[a] != kUndefined) {
        if (beta_[a] != b) return false;
        continue;
      }
      if (used_[b] || sig_[a] != sig_[b]) return false;
      beta_[a] = b;
      used_[b] = true;
      trail_.push_back(a);
      queue.emplace_back(l_.inverse(a), l_.inverse(b));
      for (LocElem c : trail_) {
        const LocElem bc = beta_[c];
        for (int side = 0; side < 2; ++side) {
          const LocElem u = side ? l_.product(c, a) : l_.product(a, c);
          if (u == kUndefined) continue;
          const LocElem v = side ? l_.product(bc, b) : l_.product(b, bc);
          if (v == kUndefined) return false;
          queue.emplace_back(u, v);
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const LocElem a = trail_.back();
      trail_.pop_back();
      used_[beta_[a]] = false;
      beta_[a] = kUndefined;
    }
  }

  void dfs() {
    if (++nodes_ > cap_) throw SearchSpaceTooLarge("rigid automorphism search exceeded its node cap");
    LocElem next = kUndefined;
    for (LocElem f = 0; f < n_; ++f)
      if (beta_[f] == kUndefined) {
        next = f;
        break;
      }
    if (next == kUndefined) {
      LocAutomorphism a{beta_};
      if (check_automorphism(l_, a).empty()) found_.push_back(std::move(a));
      return;
    }
    for (LocElem y : cand_[next]) {
      if (used_[y]) continue;
      const std::size_t mark = trail_.size();
      if (assign(next, y)) dfs();
      undo(mark);
    }
  }

  const Locality& l_;
  std::size_t cap_;
  std::size_t n_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::uint8_t>> sig_;
  std::vector<std::vector<LocElem>> cand_;
  std::vector<LocElem> beta_;
  std::vector<bool> used_;
  std::vector<LocElem> trail_;
  std::vector<LocAutomorphism> found_;
};

}  // namespace

RigidSearch rigid_automorphisms_bruteforce(const Locality& l, std::size_t node_cap) {
  RigidSearcher searcher(l, node_cap);
  RigidSearch out;
  out.automorphisms = searcher.run();
  out.nodes = searcher.nodes();
  const FusionSystem& F = l.fusion();
  std::set<LocAutomorphism> z;
  const Subgroup zs = center(F.group(), F.sylow());
  for (Elem x : zs.members())
    z.insert(conjugation_by(l, l.from_s_elem(x)));
  out.z_conjugations.assign(z.begin(), z.end());
  return out;
}

RestrictionReport verify_restriction_iso(const Locality& plus, const Locality& base) {
  RestrictionReport out;
  const RigidSearch rp = rigid_automorphisms_bruteforce(plus);
  const RigidSearch rb = rigid_automorphisms_bruteforce(base);
  out.plus = rp.automorphisms.size();
  out.base = rb.automorphisms.size();
  out.z_plus = rp.z_conjugations.size();
  out.z_base = rb.z_conjugations.size();

  AxiomResult defined{"restriction-defined", true, ""};
  auto restrict = [&](const LocAutomorphism& b) {
    LocAutomorphism r{std::vector<LocElem>(base.size(), kUndefined)};
    for (LocElem x = 0; x < base.size(); ++x) {
      const LocElem y = plus.find_tag(base.tag(x));
      r.map[x] = y == kUndefined ? kUndefined : base.find_tag(b.map[y]);
      if (r.map[x] == kUndefined && defined.pass) {
        defined.pass = false;
        defined.witness = "β does not preserve the smaller carrier";
      }
    }
    return r;
  };
  std::map<LocAutomorphism, LocAutomorphism> res;
  for (const auto& b : rp.automorphisms) {
    LocAutomorphism r = restrict(b);
    if (defined.pass && (!check_automorphism(base, r).empty() || !is_rigid(base, r))) {
      defined.pass = false;
      defined.witness = "restriction is not a rigid automorphism";
    }
    res.emplace(b, std::move(r));
  }

  AxiomResult bijective{"restriction-bijective", true, ""};
  std::set<LocAutomorphism> images;
  for (const auto& [b, r] : res) images.insert(r);
  if (images.size() != rp.automorphisms.size() ||
      images != std::set<LocAutomorphism>(rb.automorphisms.begin(), rb.automorphisms.end())) {
    bijective.pass = false;
    bijective.witness = std::to_string(images.size()) + " distinct restrictions, |Aut₀(L)| = " +
                        std::to_string(out.base);
  }

  AxiomResult hom{"restriction-multiplicative", true, ""};
  for (const auto& [a, ra] : res) {
    for (const auto& [b, rb2] : res) {
      auto it = res.find(compose(a, b));
      if (it == res.end() || it->second != compose(ra, rb2)) {
        hom.pass = false;
        hom.witness = "res(αβ) ≠ res(α)res(β)";
        break;
      }
    }
    if (!hom.pass) break;
  }

  AxiomResult z{"restriction-center", true, ""};
  std::set<LocAutomorphism> zi;
  for (const auto& c : rp.z_conjugations) {
    auto it = res.find(c);
    if (it != res.end()) zi.insert(it->second);
  }
  if (zi != std::set<LocAutomorphism>(rb.z_conjugations.begin(), rb.z_conjugations.end()) ||
      zi.size() != rp.z_conjugations.size()) {
    z.pass = false;
    z.witness = "Aut_Z(S)(L⁺) is not carried onto Aut_Z(S)(L)";
  }
  out.checks = {defined, bijective, hom, z};
  return out;
}

CatAutomorphism theta_of(const FiniteCategory& tl, const Locality& l, const LocAutomorphism& b) {
  CatAutomorphism a = identity_automorphism(tl);
  for (SubId p : tl.objects()) {
    const auto q = image_sub(l, b, p);
    if (!q) throw NotASubgroup("β(P) is not a subgroup of S");
    a.objects[p] = *q;
  }
  for (MorId m = 0; m < tl.size(); ++m) {
    const Morphism& x = tl.mor(m);
    a.morphisms[m] = tl.find(a.objects[x.src], a.objects[x.dst], b.map[x.payload]);
  }
  return a;
}

LocAutomorphism lambda_of(const FiniteCategory& t, const LambdaLocality& lt,
                          const CatAutomorphism& a) {
  LocAutomorphism out;
  out.map.assign(lt.locality->size(), kUndefined);
  for (MorId m = 0; m < t.size(); ++m) {
    const LocElem c = lt.class_of[m];
    if (c == kUndefined) continue;
    const LocElem d = lt.class_of[a.morphisms[m]];
    if (d == kUndefined || (out.map[c] != kUndefined && out.map[c] != d))
      throw NotATransporterSystem("Λ(α) is not well defined on ≡-classes");
    out.map[c] = d;
  }
  return out;
}

// ---------------------------------------------------------------- round trips

std::vector<MorId> eta(const FiniteCategory& t, const LambdaLocality& lt,
                       const FiniteCategory& tlt) {
  const FusionSystem& F = t.fusion();
  std::vector<MorId> out(t.size());
  for (MorId m = 0; m < t.size(); ++m) {
    const Morphism& x = t.mor(m);
    const MorId m0 = restrict_morphism(t, m, x.src, image_subgroup(F, t.pi(m)));
    out[m] = tlt.find(x.src, x.dst, lt.class_of[m0]);
  }
  return out;
}

std::vector<LocElem> zeta(const Locality& l, const FiniteCategory& tl, const LambdaLocality& ltl) {
  std::vector<LocElem> out(l.size());
  for (LocElem f = 0; f < l.size(); ++f) {
    const SubId p = l.s_f(f);
    out[f] = ltl.class_of[tl.find(p, l.conj_sub(f, p), f)];
  }
  return out;
}

AxiomReport roundtrip_check(const FiniteCategory& t, const std::vector<CatAutomorphism>& tests) {
  AxiomReport report;
  LambdaLocality lt;
  FiniteCategory tlt;
  std::vector<MorId> e;
  try {
    lt = lambda(t);
    tlt = theta(*lt.locality);
    e = eta(t, lt, tlt);
  } catch (const Error& err) {
    report.push_back({"eta", false, err.what()});
    return report;
  }
  const FusionSystem& F = t.fusion();

  Check bij("eta-bijective"), fun("eta-functor"), rig("eta-rigid"), pi("eta-pi"), nat("eta-natural");
  if (tlt.size() != t.size() || tlt.objects() != t.objects()) bij.fail("sizes differ");
  std::vector<bool> hit(tlt.size(), false);
  for (MorId m = 0; m < t.size() && bij.ok(); ++m) {
    if (e[m] >= tlt.size() || hit[e[m]]) bij.fail("not injective");
    else hit[e[m]] = true;
  }
  for (MorId f = 0; f < t.size() && bij.ok(); ++f) {
    const Morphism& mf = t.mor(f);
    if (tlt.mor(e[f]).src != mf.src || tlt.mor(e[f]).dst != mf.dst) fun.fail("objects not fixed");
    if (tlt.pi(e[f]) != t.pi(f)) pi.fail("π(η φ) != π(φ)");
    for (SubId r : t.objects())
      for (MorId g : t.hom(mf.dst, r))
        if (e[t.compose(g, f)] != tlt.compose(e[g], e[f]))
          fun.fail("η(g∘f) != η(g)∘η(f)");
  }
  for (SubId p : t.objects())
    for (SubId q : t.objects())
      for (Elem s : transporter_set(F.group(), F.sub(p), F.sub(q), F.sylow()))
        if (bij.ok() && e[t.delta(p, q, s)] != tlt.delta(p, q, s)) rig.fail("η∘δ != δ'");
  for (const CatAutomorphism& a : tests) {
    if (!bij.ok()) break;
    try {
      const CatAutomorphism a2 = theta_of(tlt, *lt.locality, lambda_of(t, lt, a));
      for (MorId m = 0; m < t.size(); ++m)
        if (e[a.morphisms[m]] != a2.morphisms[e[m]]) {
          nat.fail("η∘α != Θ(Λ(α))∘η");
          break;
        }
    } catch (const Error& err) {
      nat.fail(err.what());
    }
  }
  for (Check* c : {&bij, &fun, &rig, &pi, &nat}) report.push_back(c->r);
  return report;
}

AxiomReport roundtrip_check(std::shared_ptr<const Locality> lp,
                            const std::vector<LocAutomorphism>& tests) {
  AxiomReport report;
  const Locality& l = *lp;
  FiniteCategory tl;
  LambdaLocality ltl;
  std::vector<LocElem> z;
  try {
    tl = theta(l);
    ltl = lambda(tl);
    z = zeta(l, tl, ltl);
  } catch (const Error& err) {
    report.push_back({"zeta", false, err.what()});
    return report;
  }
  const Locality& l2 = *ltl.locality;
  const std::size_t n = l.size();
  const std::size_t so = l.fusion().sylow().order();

  Check bij("zeta-bijective"), prod("zeta-products"), conj("zeta-conjugation"),
      rig("zeta-rigid"), nat("zeta-natural");
  if (l2.size() != n || l2.delta() != l.delta()) bij.fail("sizes or object sets differ");
  std::vector<bool> hit(l2.size(), false);
  for (LocElem f = 0; f < n && bij.ok(); ++f) {
    if (z[f] >= l2.size() || hit[z[f]]) bij.fail("not injective");
    else hit[z[f]] = true;
  }
  for (LocElem a = 0; a < n && bij.ok(); ++a) {
    if (l2.inverse(z[a]) != z[l.inverse(a)]) prod.fail("inverse not preserved");
    if (l2.s_f(z[a]) != l.s_f(a)) conj.fail("S_f not preserved");
    for (std::size_t i = 0; i < so; ++i)
      if (l2.conj_pos(z[a], i) != l.conj_pos(a, i)) conj.fail("c_f not preserved");
    for (LocElem b = 0; b < n; ++b) {
      const LocElem ab = l.product(a, b);
      const LocElem zab = l2.product(z[a], z[b]);
      if ((ab == kUndefined) != (zab == kUndefined) || (ab != kUndefined && z[ab] != zab))
        prod.fail("ζ(ab) != ζ(a)ζ(b)");
    }
  }
  for (std::size_t i = 0; i < so && bij.ok(); ++i)
    if (z[l.from_s(i)] != l2.from_s(i)) rig.fail("ζ is not the identity on S");
  for (const LocAutomorphism& b : tests) {
    if (!bij.ok()) break;
    try {
      const LocAutomorphism b2 = lambda_of(tl, ltl, theta_of(tl, l, b));
      for (LocElem f = 0; f < n; ++f)
        if (z[b.map[f]] != b2.map[z[f]]) {
          nat.fail("ζ∘β != Λ(Θ(β))∘ζ");
          break;
        }
    } catch (const Error& err) {
      nat.fail(err.what());
    }
  }
  for (Check* c : {&bij, &prod, &conj, &rig, &nat}) report.push_back(c->r);
  return report;
}

}  // namespace fusionkit
