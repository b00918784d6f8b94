#include "crn/linalg.hpp"


#include <utility>

namespace crn {

IntMatrix clear_denominators(const RationalMatrix& m, IntVector* row_scale) {
  IntMatrix out(m.rows(), m.cols());
  if (row_scale) row_scale->resize(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m(i, j)));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = numerator(m(i, j)) * (l / denominator(m(i, j)));
    if (row_scale) (*row_scale)(i) = l;
  }
  return out;
}

std::vector<Eigen::Index> bareiss_echelon(IntMatrix& a) {
  std::vector<Eigen::Index> pivots;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Eigen::Index rank(const IntMatrix& m) {
  IntMatrix work = m;
  return static_cast<Eigen::Index>(bareiss_echelon(work).size());
}

Eigen::Index rank(const RationalMatrix& m) { return rank(clear_denominators(m)); }

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return BigInt(1);
  IntMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return BigInt(0);
    if (p != k) {
      a.row(p).swap(a.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : BigInt(-a(n - 1, n - 1));
}

Rational determinant(const RationalMatrix& m) {
  IntVector scale;
  IntMatrix ints = clear_denominators(m, &scale);
  BigInt denom = 1;
  for (Eigen::Index i = 0; i < scale.size(); ++i) denom *= scale(i);
  return Rational(determinant(ints), denom);
}

namespace {

// Row reduction by unimodular operations (extended gcd on pairs of rows).
// Operates on the first `cols` columns of `a`; the remaining columns ride
// along. Returns the number of nonzero rows, which end up on top.
Eigen::Index unimodular_echelon(IntMatrix& a, Eigen::Index cols, bool reduce_above) {
  const Eigen::Index rows = a.rows();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      if (a(r, c) == 0) {
        a.row(r).swap(a.row(i));
        continue;
      }
      const BigInt x = a(r, c), y = a(i, c);
      BigInt g, s, t;
      mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), x.backend().data(),
                 y.backend().data());
      const BigInt xg = x / g, yg = y / g;
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const BigInt top = a(r, j), bottom = a(i, j);
        a(r, j) = s * top + t * bottom;
        a(i, j) = xg * bottom - yg * top;
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.row(r) = -a.row(r);
    if (reduce_above) {
      for (Eigen::Index i = 0; i < r; ++i) {
        if (a(i, c) == 0) continue;
        BigInt q = a(i, c) / a(r, c);
        if (a(i, c) - q * a(r, c) < 0) q -= 1;
        if (q != 0)
          for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) -= q * a(r, j);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  Eigen::Index r = unimodular_echelon(rows, rows.cols(), true);
  return rows.topRows(r);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const Eigen::Index cols = m.cols();
  // [m^t | I]: row operations keep the right block unimodular, and right-block
  // rows whose left block vanishes span the kernel.
  IntMatrix aug(cols, m.rows() + cols);
  aug.leftCols(m.rows()) = m.transpose();
  aug.rightCols(cols).setZero();
  for (Eigen::Index i = 0; i < cols; ++i) aug(i, m.rows() + i) = 1;
  Eigen::Index r = unimodular_echelon(aug, m.rows(), false);
  IntMatrix basis_rows = aug.bottomRows(cols - r).rightCols(cols);
  if (basis_rows.rows() == 0) return IntMatrix(cols, 0);
  return hermite_normal_form(basis_rows).transpose();
}

}  // namespace crn
