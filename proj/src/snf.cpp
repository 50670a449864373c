#include "fusionkit/snf.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "fusionkit/errors.hpp"

namespace fusionkit {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer addition overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer multiplication overflow");
  return r;
}

namespace {

Int checked_axpy(Int y, Int q, Int x) {  // y - q x
  const __int128 r = static_cast<__int128>(y) - static_cast<__int128>(q) * x;
  if (r > INT64_MAX || r < INT64_MIN) throw ArithmeticOverflow("integer overflow in elimination");
  return static_cast<Int>(r);
}

// Row i -= q row t, mirrored on U (rows) and U^-1 (columns).
struct Elimination {
  IntMatrix& d;
  IntMatrix& u;
  IntMatrix& ui;
  IntMatrix& v;
  bool want_u;

  void row_sub(Eigen::Index i, Eigen::Index t, Int q) {
    if (q == 0) return;
    for (Eigen::Index j = 0; j < d.cols(); ++j) d(i, j) = checked_axpy(d(i, j), q, d(t, j));
    if (!want_u) return;
    for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) = checked_axpy(u(i, j), q, u(t, j));
    for (Eigen::Index j = 0; j < ui.rows(); ++j) ui(j, t) = checked_axpy(ui(j, t), -q, ui(j, i));
  }
  void col_sub(Eigen::Index j, Eigen::Index t, Int q) {
    if (q == 0) return;
    for (Eigen::Index i = 0; i < d.rows(); ++i) d(i, j) = checked_axpy(d(i, j), q, d(i, t));
    for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = checked_axpy(v(i, j), q, v(i, t));
  }
  void row_swap(Eigen::Index i, Eigen::Index t) {
    if (i == t) return;
    d.row(i).swap(d.row(t));
    if (!want_u) return;
    u.row(i).swap(u.row(t));
    ui.col(i).swap(ui.col(t));
  }
  void col_swap(Eigen::Index j, Eigen::Index t) {
    if (j == t) return;
    d.col(j).swap(d.col(t));
    v.col(j).swap(v.col(t));
  }
  void row_negate(Eigen::Index t) {
    d.row(t) = -d.row(t);
    if (!want_u) return;
    u.row(t) = -u.row(t);
    ui.col(t) = -ui.col(t);
  }
};

// Floor-style quotient that keeps remainders small in absolute value.
Int near_quotient(Int a, Int b) {
  Int q = a / b;
  const Int r = a - q * b;
  if (r != 0 && 2 * (r < 0 ? -r : r) > (b < 0 ? -b : b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace

IntMatrix checked_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c = IntMatrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
    }
  return c;
}

std::vector<Int> SmithForm::diagonal() const {
  std::vector<Int> out;
  for (Eigen::Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& a, bool want_u) {
  SmithForm s;
  s.d = a;
  const Eigen::Index m = a.rows(), n = a.cols();
  if (want_u) {
    s.u = IntMatrix::Identity(m, m);
    s.u_inv = IntMatrix::Identity(m, m);
  }
  s.v = IntMatrix::Identity(n, n);
  Elimination e{s.d, s.u, s.u_inv, s.v, want_u};
  IntMatrix& d = s.d;

  for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    Eigen::Index pi = -1, pj = -1;
    Int best = 0;
    for (Eigen::Index j = t; j < n; ++j)
      for (Eigen::Index i = t; i < m; ++i) {
        const Int x = d(i, j) < 0 ? -d(i, j) : d(i, j);
        if (x != 0 && (best == 0 || x < best)) {
          best = x;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    e.row_swap(pi, t);
    e.col_swap(pj, t);

    for (;;) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        e.row_sub(i, t, near_quotient(d(i, t), d(t, t)));
        if (d(i, t) != 0) {
          e.row_swap(i, t);
          clean = false;
        }
      }
      for (Eigen::Index j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        e.col_sub(j, t, near_quotient(d(t, j), d(t, t)));
        if (d(t, j) != 0) {
          e.col_swap(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      e.row_sub(t, bad, -1);
    }
    if (d(t, t) < 0) e.row_negate(t);
    s.rank = static_cast<std::size_t>(t + 1);
  }
  return s;
}

namespace {

Int prime_of(Int q) {
  if (q < 2) throw std::invalid_argument("modulus must be a prime power");
  Int p = 2;
  while (q % p != 0) ++p;
  Int r = q;
  while (r % p == 0) r /= p;
  if (r != 1) throw std::invalid_argument("modulus must be a prime power");
  return p;
}

int valuation(Int x, Int p, Int q) {  // of x mod q; large for 0
  x = mod(x, q);
  if (x == 0) return 1 << 20;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Int inverse_mod(Int a, Int q) {
  Int r0 = q, r1 = mod(a, q), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const Int t = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - t * r1);
    std::tie(s0, s1) = std::pair(s1, s0 - t * s1);
  }
  if (r0 != 1) throw std::logic_error("not a unit");
  return mod(s0, q);
}

Int mulmod(Int a, Int b, Int q) {
  return static_cast<Int>(static_cast<__int128>(mod(a, q)) * mod(b, q) % q);
}

IntVector reduced_product(const IntMatrix& a, const IntVector& x, Int q) {
  IntVector y = IntVector::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) y(i) = mod(y(i) + mulmod(a(i, j), x(j), q), q);
  return y;
}

}  // namespace

SmithForm smith_normal_form_mod(const IntMatrix& a, Int q) {
  const Int p = prime_of(q);
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithForm s;
  s.d = a.unaryExpr([q](Int x) { return mod(x, q); });
  s.u = IntMatrix::Identity(rows, rows);
  s.u_inv = IntMatrix::Identity(rows, rows);
  s.v = IntMatrix::Identity(cols, cols);
  IntMatrix& d = s.d;

  // row i += c row t, mirrored as U^-1 column t -= c column i.
  auto row_add = [&](Eigen::Index i, Eigen::Index t, Int c) {
    if (c == 0) return;
    for (Eigen::Index j = 0; j < cols; ++j) d(i, j) = mod(d(i, j) + mulmod(c, d(t, j), q), q);
    for (Eigen::Index j = 0; j < rows; ++j) s.u(i, j) = mod(s.u(i, j) + mulmod(c, s.u(t, j), q), q);
    for (Eigen::Index j = 0; j < rows; ++j)
      s.u_inv(j, t) = mod(s.u_inv(j, t) - mulmod(c, s.u_inv(j, i), q), q);
  };
  auto col_add = [&](Eigen::Index j, Eigen::Index t, Int c) {
    if (c == 0) return;
    for (Eigen::Index i = 0; i < rows; ++i) d(i, j) = mod(d(i, j) + mulmod(c, d(i, t), q), q);
    for (Eigen::Index i = 0; i < cols; ++i) s.v(i, j) = mod(s.v(i, j) + mulmod(c, s.v(i, t), q), q);
  };

  const Eigen::Index n = std::min(rows, cols);
  for (Eigen::Index t = 0; t < n; ++t) {
    int best = 1 << 20;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index j = t; j < cols && best > 0; ++j)
      for (Eigen::Index i = t; i < rows; ++i) {
        const int v = valuation(d(i, j), p, q);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;
    if (bi != t) {
      d.row(t).swap(d.row(bi));
      s.u.row(t).swap(s.u.row(bi));
      s.u_inv.col(t).swap(s.u_inv.col(bi));
    }
    if (bj != t) {
      d.col(t).swap(d.col(bj));
      s.v.col(t).swap(s.v.col(bj));
    }
    // Normalize the pivot to p^k: scale row t by the inverse of its unit part.
    Int unit = d(t, t);
    Int pk = 1;
    for (int k = 0; k < best; ++k) {
      unit /= p;
      pk *= p;
    }
    const Int w = inverse_mod(unit, q);
    const Int w_inv = mod(unit, q);
    for (Eigen::Index j = 0; j < cols; ++j) d(t, j) = mulmod(w, d(t, j), q);
    for (Eigen::Index j = 0; j < rows; ++j) s.u(t, j) = mulmod(w, s.u(t, j), q);
    for (Eigen::Index j = 0; j < rows; ++j) s.u_inv(j, t) = mulmod(w_inv, s.u_inv(j, t), q);
    // Every other entry of row and column t is a multiple of p^k.
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != t && d(i, t) != 0) row_add(i, t, mod(-(d(i, t) / pk), q));
    for (Eigen::Index j = 0; j < cols; ++j)
      if (j != t && d(t, j) != 0) col_add(j, t, mod(-(d(t, j) / pk), q));
    s.rank = static_cast<std::size_t>(t + 1);
  }
  return s;
}

IntMatrix kernel_mod(const IntMatrix& a, Int q) {
  const SmithForm s = smith_normal_form_mod(a, q);
  IntMatrix out = s.v;
  for (std::size_t k = 0; k < s.rank; ++k) {
    const Int dk = s.d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    const Int scale = q / dk;
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      out(i, static_cast<Eigen::Index>(k)) = mulmod(out(i, static_cast<Eigen::Index>(k)), scale, q);
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a, false);
  const Eigen::Index r = static_cast<Eigen::Index>(s.rank);
  return s.v.rightCols(a.cols() - r);
}

LatticeQuotient::LatticeQuotient(const IntMatrix& l_gens, const IntMatrix& m_gens)
    : n_(static_cast<std::size_t>(l_gens.rows())) {
  const SmithForm sl = smith_normal_form(l_gens, true);
  u_ = sl.u;
  const std::size_t r = sl.rank;
  if (r != n_) throw std::invalid_argument("L does not have full rank");
  for (std::size_t i = 0; i < r; ++i) d_.push_back(sl.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));

  // Coordinates of M's generators in the basis K = U^-1 diag(d) of L.
  IntMatrix c(static_cast<Eigen::Index>(r), m_gens.cols());
  for (Eigen::Index j = 0; j < m_gens.cols(); ++j) {
    const IntVector y = checked_product(u_, m_gens.col(j));
    for (std::size_t i = 0; i < r; ++i) {
      const Int yi = y(static_cast<Eigen::Index>(i));
      if (yi % d_[i] != 0) throw std::invalid_argument("M is not contained in L");
      c(static_cast<Eigen::Index>(i), j) = yi / d_[i];
    }
  }
  const SmithForm sm = smith_normal_form(c, true);
  if (sm.rank != r) throw std::invalid_argument("L/M is infinite");
  u2_ = sm.u;
  for (std::size_t i = 0; i < r; ++i) e_.push_back(sm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));

  // Generator j of the quotient: K U2^-1 e_j.
  IntMatrix k = sl.u_inv;
  for (std::size_t i = 0; i < r; ++i) for (Eigen::Index j = 0; j < k.rows(); ++j)
      k(j, static_cast<Eigen::Index>(i)) = checked_mul(k(j, static_cast<Eigen::Index>(i)), d_[i]);
  const IntMatrix g = checked_product(k, sm.u_inv);
  for (std::size_t i = 0; i < r; ++i)
    if (e_[i] != 1) {
      kept_.push_back(i);
      invariants_.push_back(e_[i]);
      generators_.push_back(g.col(static_cast<Eigen::Index>(i)));
    }
}

LatticeQuotient::LatticeQuotient(const IntMatrix& l_gens, const IntMatrix& m_gens, Int q)
    : n_(static_cast<std::size_t>(l_gens.rows())), q_(q) {
  const Eigen::Index n = l_gens.rows();
  const SmithForm sl = smith_normal_form_mod(l_gens, q);
  u_ = sl.u;
  for (Eigen::Index i = 0; i < n; ++i)
    d_.push_back(static_cast<std::size_t>(i) < sl.rank && sl.d(i, i) != 0 ? sl.d(i, i) : q);

  // L/qZ^n = ⊕ Z/(q/d_i); M's generators in those coordinates, plus the relations.
  IntMatrix c = IntMatrix::Zero(n, m_gens.cols() + n);
  for (Eigen::Index j = 0; j < m_gens.cols(); ++j) {
    const IntVector y = reduced_product(u_, m_gens.col(j), q);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Int di = d_[static_cast<std::size_t>(i)];
      if (y(i) % di != 0) throw std::invalid_argument("M is not contained in L");
      c(i, j) = y(i) / di;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) c(i, m_gens.cols() + i) = q / d_[static_cast<std::size_t>(i)];
  const SmithForm sm = smith_normal_form_mod(c, q);
  u2_ = sm.u;
  for (Eigen::Index i = 0; i < n; ++i)
    e_.push_back(static_cast<std::size_t>(i) < sm.rank && sm.d(i, i) != 0 ? sm.d(i, i) : q);

  IntMatrix k = sl.u_inv;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) k(j, i) = mulmod(k(j, i), d_[static_cast<std::size_t>(i)], q);
  IntMatrix g = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Int acc = 0;
      for (Eigen::Index t = 0; t < n; ++t) acc = mod(acc + mulmod(k(i, t), sm.u_inv(t, j), q), q);
      g(i, j) = acc;
    }
  for (Eigen::Index i = 0; i < n; ++i)
    if (e_[static_cast<std::size_t>(i)] != 1) {
      kept_.push_back(static_cast<std::size_t>(i));
      invariants_.push_back(e_[static_cast<std::size_t>(i)]);
      generators_.push_back(g.col(i));
    }
  // Ascending, as in the exact mode.
  std::vector<std::size_t> order(kept_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return invariants_[a] < invariants_[b]; });
  std::vector<std::size_t> kept;
  std::vector<Int> inv;
  std::vector<IntVector> gens;
  for (std::size_t i : order) {
    kept.push_back(kept_[i]);
    inv.push_back(invariants_[i]);
    gens.push_back(generators_[i]);
  }
  kept_ = std::move(kept);
  invariants_ = std::move(inv);
  generators_ = std::move(gens);
}

Int LatticeQuotient::order() const {
  Int o = 1;
  for (Int x : invariants_) o = checked_mul(o, x);
  return o;
}

bool LatticeQuotient::contains(const IntVector& x) const {
  const IntVector y = q_ ? reduced_product(u_, x, q_) : IntVector(checked_product(u_, x));
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (y(static_cast<Eigen::Index>(i)) % d_[i] != 0) return false;
  return true;
}

std::vector<Int> LatticeQuotient::coordinates(const IntVector& x) const {
  const IntVector y0 = q_ ? reduced_product(u_, x, q_) : IntVector(checked_product(u_, x));
  IntVector y(y0.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (y0(static_cast<Eigen::Index>(i)) % d_[i] != 0) throw std::invalid_argument("vector outside L");
    y(static_cast<Eigen::Index>(i)) = y0(static_cast<Eigen::Index>(i)) / d_[i];
  }
  const IntVector z = q_ ? reduced_product(u2_, y, q_) : IntVector(checked_product(u2_, y));
  std::vector<Int> out;
  for (std::size_t k = 0; k < kept_.size(); ++k)
    out.push_back(mod(z(static_cast<Eigen::Index>(kept_[k])), invariants_[k]));
  return out;
}

}  // namespace fusionkit
