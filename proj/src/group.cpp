#include "fusionkit/group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fusionkit/errors.hpp"

namespace fusionkit {

namespace {

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

constexpr std::size_t kTableWork = 200'000'000;

}  // namespace

// ---------------------------------------------------------------- Perm

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw InvalidPermutation("image sequence is not a bijection of {1.." +
                               std::to_string(images_.size()) + "}");
    seen[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  return Perm(std::move(im));
}

Perm Perm::from_one_based(std::span<const long> images) {
  std::vector<Point> im;
  im.reserve(images.size());
  for (long x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size())
      throw InvalidPermutation("image " + std::to_string(x) + " out of range 1.." +
                               std::to_string(images.size()));
    im.push_back(static_cast<Point>(x - 1));
  }
  return Perm(std::move(im));
}

Perm Perm::from_cycles(std::size_t degree, const std::string& cycles) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::size_t pos = 0;
  while ((pos = cycles.find('(', pos)) != std::string::npos) {
    const auto end = cycles.find(')', pos);
    if (end == std::string::npos) throw InvalidPermutation("unbalanced cycle: " + cycles);
    std::string body = cycles.substr(pos + 1, end - pos - 1);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<long> pts;
    for (long x; in >> x;) {
      if (x < 1 || static_cast<std::size_t>(x) > degree)
        throw InvalidPermutation("point " + std::to_string(x) + " out of range");
      pts.push_back(x - 1);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      im[pts[i]] = static_cast<Point>(pts[(i + 1) % pts.size()]);
    pos = end + 1;
  }
  return Perm(std::move(im));
}

Perm Perm::operator*(const Perm& rhs) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = images_[rhs.images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Perm::cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(std::vector<Elem> members, std::size_t group_order)
    : members_(std::move(members)), bits_((group_order + 63) / 64, 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Elem x : members_) bits_[x / 64] |= std::uint64_t{1} << (x % 64);
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (order() > other.order()) return false;
  for (Elem x : members_)
    if (!other.contains(x)) return false;
  return true;
}

std::size_t Subgroup::position(Elem x) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), x);
  if (it == members_.end() || *it != x) return kNoElem;
  return static_cast<std::size_t>(it - members_.begin());
}

std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return a.members_ <=> b.members_;
}

std::size_t SubgroupHash::operator()(const Subgroup& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Elem x : s.members()) h = (h ^ x) * 1099511628211ull;
  return h;
}

// ---------------------------------------------------------------- FiniteGroup

FiniteGroup FiniteGroup::from_generators(std::size_t degree, const std::vector<Perm>& gens,
                                         std::size_t cap) {
  for (const Perm& g : gens)
    if (g.degree() != degree)
      throw InvalidPermutation("generator of degree " + std::to_string(g.degree()) +
                               " in a group of degree " + std::to_string(degree));
  FiniteGroup out;
  out.degree_ = degree;
  out.generators_ = gens;

  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> frontier{Perm::identity(degree)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& x : frontier) {
      for (const Perm& g : gens) {
        Perm y = g * x;
        if (seen.insert(y).second) {
          if (seen.size() > cap)
            throw ClosureTooLarge("group order exceeds cap " + std::to_string(cap));
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  out.elements_.assign(seen.begin(), seen.end());
  std::sort(out.elements_.begin(), out.elements_.end());

  const std::size_t n = out.elements_.size();
  if (n * n * std::max<std::size_t>(degree, 1) <= kTableWork && n <= 4096) {
    out.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        out.table_[a * n + b] = *out.find(out.elements_[a] * out.elements_[b]);
  }
  out.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) out.inverse_[a] = *out.find(out.elements_[a].inverse());
  return out;
}

std::vector<Elem> FiniteGroup::generator_elems() const {
  std::vector<Elem> out;
  for (const Perm& g : generators_) out.push_back(index_of(g));
  return out;
}

Elem FiniteGroup::mul(Elem a, Elem b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return *find(elements_[a] * elements_[b]);
}

Elem FiniteGroup::mul(std::initializer_list<Elem> word) const {
  Elem acc = identity();
  for (Elem x : word) acc = mul(acc, x);
  return acc;
}

std::optional<Elem> FiniteGroup::find(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<Elem>(it - elements_.begin());
}

Elem FiniteGroup::index_of(const Perm& p) const {
  if (auto x = find(p)) return *x;
  throw NotASubgroup("permutation " + p.cycles() + " is not an element of the group");
}

std::size_t FiniteGroup::element_order(Elem x) const {
  std::size_t k = 1;
  for (Elem y = x; y != identity(); y = mul(y, x)) ++k;
  return k;
}

Subgroup FiniteGroup::whole() const {
  std::vector<Elem> all(order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup(std::move(all), order());
}

Subgroup FiniteGroup::trivial() const { return Subgroup({identity()}, order()); }

Subgroup FiniteGroup::generate(std::span<const Elem> gens) const {
  std::vector<bool> in(order(), false);
  std::vector<Elem> members{identity()};
  in[identity()] = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem g : gens) {
      const Elem y = mul(members[i], g);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
  return Subgroup(std::move(members), order());
}

Subgroup FiniteGroup::subgroup(std::vector<Elem> members) const {
  Subgroup s(std::move(members), order());
  if (!s.contains(identity())) throw NotASubgroup("missing identity");
  for (Elem a : s.members()) {
    if (!s.contains(inv(a))) throw NotASubgroup("not closed under inverses");
    for (Elem b : s.members())
      if (!s.contains(mul(a, b))) throw NotASubgroup("not closed under products");
  }
  return s;
}

Subgroup FiniteGroup::conjugate(Elem g, const Subgroup& h) const {
  std::vector<Elem> out;
  out.reserve(h.order());
  const Elem gi = inv(g);
  for (Elem x : h.members()) out.push_back(mul(mul(g, x), gi));
  return Subgroup(std::move(out), order());
}

bool FiniteGroup::is_abelian(const Subgroup& h) const {
  for (Elem a : h.members())
    for (Elem b : h.members())
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------- arithmetic

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::size_t p_part(std::size_t n, unsigned p) {
  std::size_t out = 1;
  while (n > 0 && n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

bool is_p_power(std::size_t n, unsigned p) { return n > 0 && p_part(n, p) == n; }

bool coprime_to(std::size_t n, unsigned p) { return n % p != 0; }

// ---------------------------------------------------------------- subgroup calculus

Subgroup normalizer(const FiniteGroup& g, const Subgroup& x, const Subgroup& ambient) {
  std::vector<Elem> out;
  for (Elem a : ambient.members()) {
    bool ok = true;
    for (Elem y : x.members())
      if (!x.contains(g.conj(a, y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return Subgroup(std::move(out), g.order());
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& x) { return normalizer(g, x, g.whole()); }

Subgroup centralizer(const FiniteGroup& g, const Subgroup& x, const Subgroup& ambient) {
  std::vector<Elem> out;
  for (Elem a : ambient.members()) {
    bool ok = true;
    for (Elem y : x.members())
      if (g.mul(a, y) != g.mul(y, a)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return Subgroup(std::move(out), g.order());
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& x) {
  return centralizer(g, x, g.whole());
}

Subgroup center(const FiniteGroup& g, const Subgroup& x) { return centralizer(g, x, x); }

std::vector<Elem> transporter_set(const FiniteGroup& g, const Subgroup& p, const Subgroup& q,
                                  const Subgroup& ambient) {
  std::vector<Elem> out;
  for (Elem a : ambient.members()) {
    bool ok = true;
    for (Elem y : p.members())
      if (!q.contains(g.conj(a, y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(a);
  }
  return out;
}

std::vector<Elem> transporter_set(const FiniteGroup& g, const Subgroup& p, const Subgroup& q) {
  return transporter_set(g, p, q, g.whole());
}

bool is_normal(const FiniteGroup& g, const Subgroup& n, const Subgroup& ambient) {
  for (Elem a : ambient.members())
    for (Elem y : n.members())
      if (!n.contains(g.conj(a, y))) return false;
  return true;
}

Subgroup intersect(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  for (Elem x : a.members())
    if (b.contains(x)) out.push_back(x);
  return Subgroup(std::move(out), g.order());
}

Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens = minimal_generating_tuple(g, a);
  for (Elem x : minimal_generating_tuple(g, b)) gens.push_back(x);
  return g.generate(gens);
}

std::vector<Elem> minimal_generating_tuple(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> gens;
  Subgroup current = g.trivial();
  for (Elem x : h.members()) {
    if (current.order() == h.order()) break;
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = g.generate(gens);
  }
  return gens;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, const Subgroup& h) {
  std::map<Subgroup, Elem> cyc;  // cyclic subgroup -> a generator
  for (Elem x : h.members()) cyc.emplace(g.generate(std::span<const Elem>(&x, 1)), x);
  std::set<Subgroup> found;
  std::deque<Subgroup> queue;
  for (const auto& [c, x] : cyc)
    if (found.insert(c).second) queue.push_back(c);
  while (!queue.empty()) {
    Subgroup k = std::move(queue.front());
    queue.pop_front();
    std::vector<Elem> gens = minimal_generating_tuple(g, k);
    gens.push_back(g.identity());
    for (const auto& [c, x] : cyc) {
      if (c.is_subgroup_of(k)) continue;
      gens.back() = x;
      Subgroup j = g.generate(gens);
      if (found.insert(j).second) queue.push_back(std::move(j));
    }
  }
  return {found.begin(), found.end()};
}

std::optional<Subgroup> find_complement(const FiniteGroup& g, const Subgroup& h, const Subgroup& n) {
  if (h.order() % n.order() != 0) return std::nullopt;
  const std::size_t want = h.order() / n.order();
  for (const Subgroup& k : all_subgroups(g, h))
    if (k.order() == want && intersect(g, k, n).order() == 1) return k;
  return std::nullopt;
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g, const Subgroup& h) {
  std::set<Subgroup> closures;
  for (Elem x : h.members()) {
    std::vector<Elem> cls;
    for (Elem a : h.members()) cls.push_back(g.conj(a, x));
    closures.insert(g.generate(cls));
  }
  std::set<Subgroup> found(closures.begin(), closures.end());
  found.insert(g.trivial());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> current(found.begin(), found.end());
    for (const Subgroup& a : current)
      for (const Subgroup& c : closures) {
        if (c.is_subgroup_of(a)) continue;
        if (found.insert(join(g, a, c)).second) grew = true;
      }
  }
  return {found.begin(), found.end()};
}

Subgroup sylow(const FiniteGroup& g, const Subgroup& h, unsigned p) {
  const std::size_t target = p_part(h.order(), p);
  Subgroup current = g.trivial();
  std::vector<Elem> gens;
  while (current.order() < target) {
    bool grew = false;
    for (Elem x : h.members()) {
      if (current.contains(x)) continue;
      if (!is_p_power(g.element_order(x), p)) continue;
      bool normalizes = true;
      for (Elem y : current.members())
        if (!current.contains(g.conj(x, y))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      gens.push_back(x);
      Subgroup next = g.generate(gens);
      if (is_p_power(next.order(), p)) {
        current = std::move(next);
        grew = true;
        break;
      }
      gens.pop_back();
    }
    if (!grew) break;
  }
  Subgroup best = current;
  for (Elem a : h.members()) {
    Subgroup c = g.conjugate(a, current);
    if (c < best) best = std::move(c);
  }
  return best;
}

Subgroup sylow(const FiniteGroup& g, unsigned p) { return sylow(g, g.whole(), p); }

Cores cores(const FiniteGroup& g, const Subgroup& h, unsigned p) {
  Cores out{g.trivial(), g.trivial()};
  for (const Subgroup& n : normal_subgroups(g, h)) {
    if (is_p_power(n.order(), p) && n.order() > out.op.order()) out.op = n;
    if (coprime_to(n.order(), p) && n.order() > out.op_prime.order()) out.op_prime = n;
  }
  return out;
}

Cores cores(const FiniteGroup& g, unsigned p) { return cores(g, g.whole(), p); }

bool is_characteristic_p(const FiniteGroup& g, const Subgroup& h, unsigned p) {
  const Subgroup op = cores(g, h, p).op;
  return centralizer(g, op, h).is_subgroup_of(op);
}

bool is_characteristic_p(const FiniteGroup& g, unsigned p) {
  return is_characteristic_p(g, g.whole(), p);
}

ThompsonSubgroup thompson_j(const FiniteGroup& g, const Subgroup& p_group, unsigned p) {
  if (!is_p_power(p_group.order(), p))
    throw NotAPGroup("order " + std::to_string(p_group.order()) + " is not a power of " +
                     std::to_string(p));
  std::vector<Subgroup> abelian;
  std::size_t d = 1;
  for (Subgroup& a : all_subgroups(g, p_group)) {
    if (!g.is_abelian(a)) continue;
    d = std::max(d, a.order());
    abelian.push_back(std::move(a));
  }
  std::vector<Elem> gens;
  for (const Subgroup& a : abelian)
    if (a.order() == d) gens.insert(gens.end(), a.members().begin(), a.members().end());
  return {g.generate(gens), d};
}

bool j_less(const ThompsonSubgroup& q, const ThompsonSubgroup& p) {
  return q.d < p.d || (q.d == p.d && q.j.order() < p.j.order());
}

// ---------------------------------------------------------------- homomorphisms

Elem GroupHom::operator()(Elem x) const {
  const std::size_t i = domain.position(x);
  if (i == kNoElem) throw NotASubgroup("element outside the domain of a homomorphism");
  return images[i];
}

bool GroupHom::is_multiplicative(const FiniteGroup& g) const {
  const auto& m = domain.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if ((*this)(g.mul(m[i], m[j])) != g.mul(images[i], images[j])) return false;
  return true;
}

bool GroupHom::is_injective() const {
  std::vector<Elem> im = images;
  std::sort(im.begin(), im.end());
  return std::adjacent_find(im.begin(), im.end()) == im.end();
}

GroupHom conjugation_hom(const FiniteGroup& g, Elem x, const Subgroup& p, const Subgroup& q) {
  GroupHom h{p, q, {}};
  h.images.reserve(p.order());
  for (Elem y : p.members()) h.images.push_back(g.conj(x, y));
  return h;
}

Elem AutomorphismGroup::inner_of(const FiniteGroup& g, Elem x) const {
  std::vector<Point> im(g.order());
  for (Elem y = 0; y < g.order(); ++y) im[y] = static_cast<Point>(g.conj(x, y));
  return perm_group.index_of(Perm(std::move(im)));
}

AutomorphismGroup automorphism_group(const FiniteGroup& g, std::size_t cap) {
  if (g.order() > cap)
    throw TooLarge("automorphism search needs |G| <= " + std::to_string(cap) + ", got " +
                   std::to_string(g.order()));
  if (g.order() > 0xffff) throw TooLarge("group too large for a permutation action on elements");
  AutomorphismGroup out;
  out.generating_tuple = minimal_generating_tuple(g, g.whole());
  const auto& tuple = out.generating_tuple;
  const std::size_t n = g.order();

  std::vector<std::vector<Elem>> candidates(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const std::size_t o = g.element_order(tuple[i]);
    for (Elem y = 0; y < n; ++y)
      if (g.element_order(y) == o) candidates[i].push_back(y);
  }

  std::vector<Perm> autos;
  std::vector<Elem> image(tuple.size());
  std::vector<Elem> map(n);
  std::vector<bool> visited(n);
  auto try_tuple = [&]() -> bool {
    std::fill(visited.begin(), visited.end(), false);
    std::vector<Elem> queue{g.identity()};
    visited[g.identity()] = true;
    map[g.identity()] = g.identity();
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Elem h = queue[q];
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        const Elem t = g.mul(tuple[i], h);
        const Elem im = g.mul(image[i], map[h]);
        if (!visited[t]) {
          visited[t] = true;
          map[t] = im;
          queue.push_back(t);
        } else if (map[t] != im) {
          return false;
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (Elem x = 0; x < n; ++x) {
      if (hit[map[x]]) return false;
      hit[map[x]] = true;
    }
    return true;
  };
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (depth == tuple.size()) {
      if (try_tuple()) {
        std::vector<Point> im(n);
        for (Elem x = 0; x < n; ++x) im[x] = static_cast<Point>(map[x]);
        autos.emplace_back(std::move(im));
      }
      return;
    }
    for (Elem y : candidates[depth]) {
      image[depth] = y;
      search(depth + 1);
    }
  };
  search(0);

  out.perm_group = FiniteGroup::from_generators(n, autos, autos.size());
  const Subgroup all = g.whole();
  for (const Perm& a : out.perm_group.elements()) {
    GroupHom h{all, all, {}};
    h.images.assign(a.images().begin(), a.images().end());
    out.automorphisms.push_back(std::move(h));
  }
  std::vector<Elem> inner;
  for (Elem x = 0; x < n; ++x) inner.push_back(out.inner_of(g, x));
  out.inner = Subgroup(std::move(inner), out.perm_group.order());

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.out_class.assign(out.automorphisms.size(), kUnset);
  for (Elem a = 0; a < out.automorphisms.size(); ++a) {
    if (out.out_class[a] != kUnset) continue;
    for (Elem c : out.inner.members()) out.out_class[out.perm_group.mul(a, c)] = out.out_order;
    ++out.out_order;
  }
  return out;
}

// ---------------------------------------------------------------- quotients

Quotient quotient(const FiniteGroup& g, const Subgroup& h, const Subgroup& n) {
  if (!n.is_subgroup_of(h) || !is_normal(g, n, h))
    throw NotASubgroup("quotient by a subgroup that is not normal");
  Quotient out;
  std::vector<std::size_t> coset(h.order(), kNoElem);
  std::vector<Elem> reps;
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (coset[i] != kNoElem) continue;
    const Elem x = h.members()[i];
    for (Elem y : n.members()) coset[h.position(g.mul(x, y))] = reps.size();
    reps.push_back(x);
  }
  if (reps.size() > 0xffff) throw TooLarge("quotient too large");
  std::vector<Perm> action;
  for (Elem r : reps) {
    std::vector<Point> im(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      im[c] = static_cast<Point>(coset[h.position(g.mul(r, reps[c]))]);
    action.emplace_back(std::move(im));
  }
  out.group = FiniteGroup::from_generators(reps.size(), action, reps.size());
  std::vector<Elem> of_coset(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) of_coset[c] = out.group.index_of(action[c]);
  out.project.resize(h.order());
  for (std::size_t i = 0; i < h.order(); ++i) out.project[i] = of_coset[coset[i]];
  out.lift.resize(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) out.lift[of_coset[c]] = reps[c];
  return out;
}

TableGroup group_from_table(std::size_t n,
                            const std::function<std::size_t(std::size_t, std::size_t)>& mul) {
  if (n > 0xffff) throw TooLarge("table group too large");
  std::vector<Perm> action;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<Point> im(n);
    for (std::size_t x = 0; x < n; ++x) im[x] = static_cast<Point>(mul(a, x));
    action.emplace_back(std::move(im));  // throws unless a permutation
  }
  TableGroup out;
  out.group = FiniteGroup::from_generators(n, action, n);
  if (out.group.order() != n) throw NotASubgroup("multiplication table is not a group");
  out.to_group.resize(n);
  out.from_group.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    out.to_group[a] = out.group.index_of(action[a]);
    out.from_group[out.to_group[a]] = a;
  }
  return out;
}

// ---------------------------------------------------------------- text input

FiniteGroup parse_group(const std::string& text, std::size_t cap) {
  std::istringstream in(text);
  std::string line;
  std::size_t degree = 0;
  bool have_degree = false;
  std::vector<Perm> gens;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<long> values;
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stol(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": not an integer: " + tok);
      }
    }
    if (!have_degree) {
      if (values.size() != 1 || values[0] < 1 || values[0] > 64)
        throw ParseError("line " + std::to_string(lineno) + ": expected a degree in 1..64");
      degree = static_cast<std::size_t>(values[0]);
      have_degree = true;
      continue;
    }
    if (values.size() != degree)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(degree) + " images, got " + std::to_string(values.size()));
    gens.push_back(Perm::from_one_based(values));
  }
  if (!have_degree) throw ParseError("empty group file");
  return FiniteGroup::from_generators(degree, gens, cap);
}

FiniteGroup load_group(const std::string& path, std::size_t cap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group(buf.str(), cap);
}

}  // namespace fusionkit
