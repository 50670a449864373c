#pragma once

// Integer Smith normal form with overflow-checked 64-bit arithmetic, and the
// finite abelian quotients L/M of integer lattices built on it.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace fusionkit {

using Int = std::int64_t;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

/// U A V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (nonnegative).
/// `u_inv` is U^-1. U/u_inv are only computed when requested.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix u_inv;
  IntMatrix v;
  std::size_t rank = 0;

  std::vector<Int> diagonal() const;
};

/// Throws ArithmeticOverflow if an intermediate value leaves int64.
SmithForm smith_normal_form(const IntMatrix& a, bool want_u = true);

/// Smith form over Z/q for a prime power q: U A V ≡ D (mod q) with U, V
/// invertible mod q, entries in [0, q), and the nonzero diagonal entries
/// ascending powers of p. Throws std::invalid_argument unless q is a prime power.
SmithForm smith_normal_form_mod(const IntMatrix& a, Int q);

/// Generators of {x : A x ≡ 0 (mod q)} modulo q, as columns (q a prime power).
IntMatrix kernel_mod(const IntMatrix& a, Int q);

/// Basis of the integer kernel {x : A x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& a);

/// The finite quotient L/M for lattices M ⊆ L ⊆ Z^n given by generating
/// columns. Throws ArithmeticOverflow, or std::invalid_argument if M ⊄ L or
/// the quotient is infinite.
class LatticeQuotient {
 public:
  LatticeQuotient() = default;
  LatticeQuotient(const IntMatrix& l_gens, const IntMatrix& m_gens);
  /// The same quotient when M is known to contain qZ^n for a prime power q;
  /// every intermediate is reduced mod q, so entries stay below q.
  LatticeQuotient(const IntMatrix& l_gens, const IntMatrix& m_gens, Int q);

  /// Invariant factors > 1, ascending (each divides the next).
  const std::vector<Int>& invariants() const { return invariants_; }
  /// Representatives in Z^n of the cyclic generators, one per invariant.
  const std::vector<IntVector>& generators() const { return generators_; }
  Int order() const;
  /// Coordinates of x ∈ L in the quotient, reduced modulo the invariants.
  std::vector<Int> coordinates(const IntVector& x) const;
  bool contains(const IntVector& x) const;  // x ∈ L

 private:
  std::size_t n_ = 0;
  Int q_ = 0;             // modulus of the reduced mode, 0 for exact arithmetic
  IntMatrix u_;           // SNF row transform of L's generators
  std::vector<Int> d_;    // L's elementary divisors (rank many)
  IntMatrix u2_;          // row transform of M in L-coordinates
  std::vector<Int> e_;    // all quotient divisors (rank many, may be 1)
  std::vector<std::size_t> kept_;
  std::vector<Int> invariants_;
  std::vector<IntVector> generators_;
};

/// Checked helpers.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
IntMatrix checked_product(const IntMatrix& a, const IntMatrix& b);
/// Nonnegative residue.
inline Int mod(Int a, Int m) {
  const Int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace fusionkit
