#pragma once

// Exact linear algebra over the integers and rationals. Nothing here touches
// floating point.

#include "crn/types.hpp"

#include <vector>

namespace crn {

template <typename Derived>
IntMatrix to_big(const Eigen::MatrixBase<Derived>& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = BigInt(m(i, j));
  return out;
}

/// Scales every row of a rational matrix by the lcm of its denominators.
/// `row_scale[i]` receives the factor applied to row i.
IntMatrix clear_denominators(const RationalMatrix& m, IntVector* row_scale = nullptr);

/// Fraction-free (Bareiss) elimination to row echelon form. Returns the pivot
/// columns in order; their count is the rank.
std::vector<Eigen::Index> bareiss_echelon(IntMatrix& m);

Eigen::Index rank(const IntMatrix& m);
Eigen::Index rank(const RationalMatrix& m);

BigInt determinant(const IntMatrix& m);
Rational determinant(const RationalMatrix& m);

/// Row-style Hermite normal form: rows are a basis of the same lattice, pivots
/// positive, entries above each pivot reduced into [0, pivot). Zero rows are
/// dropped.
IntMatrix hermite_normal_form(IntMatrix rows);

/// Basis (as columns) of ker_Z(m) = ker_Q(m) ∩ Z^cols. The basis is saturated
/// and returned in Hermite normal form, so it depends only on the lattice.
IntMatrix integer_kernel(const IntMatrix& m);

}  // namespace crn
