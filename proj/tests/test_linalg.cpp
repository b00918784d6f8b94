#include "crn/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace crn;

namespace {

// Cofactor expansion; exponential but independent of elimination.
Rational cofactor_det(const RationalMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational sum = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    RationalMatrix sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    const Rational term = m(0, j) * cofactor_det(sub);
    sum += (j % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, int rows, int cols, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("parse_rational accepts integers, fractions and exact decimals") {
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0.75") == Rational(3, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("2.") == Rational(2));
  CHECK(parse_rational("1.25e-2") == Rational(1, 80));
  CHECK(parse_rational("3E2") == Rational(300));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("1/-2"), InvalidInput);
  CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  CHECK(to_string(Rational(69, 22)) == "69/22");
  CHECK(to_string(Rational(-4, 2)) == "-2");
}

TEST_CASE("power and log_of on rationals") {
  CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(power(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(power(Rational(5), 0) == 1);
  CHECK_THROWS(power(Rational(0), -1));
  CHECK(log_of(Rational(1)) == doctest::Approx(0.0));
  CHECK(log_of(Rational(3, 4)) == doctest::Approx(std::log(0.75)));
  // numerator far beyond double range
  const Rational huge(boost::multiprecision::pow(BigInt(10), 400), BigInt(3));
  CHECK(log_of(huge) == doctest::Approx(400 * std::log(10.0) - std::log(3.0)));
}

TEST_CASE("Bareiss determinant matches cofactor expansion") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 6;
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Rational(d(rng), 1 + std::abs(d(rng)));
    if (trial % 7 == 0 && n > 1) m.row(n - 1) = m.row(0) * Rational(3, 2);  // singular
    CHECK(determinant(m) == cofactor_det(m));
  }
  CHECK(determinant(RationalMatrix(0, 0)) == 1);
}

TEST_CASE("exact rank agrees with floating LU on small integer matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 5, cols = 1 + (trial / 5) % 6;
    IntMatrix m = random_int_matrix(rng, rows, cols, -2, 2);
    if (trial % 3 == 0 && rows > 1) m.row(rows - 1) = m.row(0) - m.row(rows > 2 ? 1 : 0);
    Matrix<double> md(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) md(i, j) = m(i, j).convert_to<double>();
    CHECK(rank(m) == Eigen::FullPivLU<Matrix<double>>(md).rank());
  }
}

TEST_CASE("integer_kernel examples") {
  IntMatrix row(1, 2);
  row << 1, 1;
  IntMatrix k = integer_kernel(row);
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == 1);
  CHECK(k(1, 0) == -1);

  CHECK(integer_kernel(IntMatrix::Identity(2, 2)).cols() == 0);

  // Saturation: ker of [2 4] is generated by (2,-1), not (4,-2).
  IntMatrix even(1, 2);
  even << 2, 4;
  k = integer_kernel(even);
  REQUIRE(k.cols() == 1);
  CHECK(k(0, 0) == 2);
  CHECK(k(1, 0) == -1);
}

TEST_CASE("integer_kernel is a saturated basis of the kernel lattice") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const int rows = 1 + trial % 3, cols = 3 + trial % 2;
    const IntMatrix m = random_int_matrix(rng, rows, cols, -3, 3);
    const IntMatrix k = integer_kernel(m);
    CHECK(k.cols() == cols - rank(m));
    CHECK((m * k).isZero());
    if (k.cols() == 0) continue;

    // Every small integer kernel vector must be an integer combination of the basis.
    RationalMatrix kq = k.cast<Rational>();
    std::vector<int> v(static_cast<std::size_t>(cols), -3);
    for (;;) {
      IntVector x(cols);
      for (int j = 0; j < cols; ++j) x(j) = v[static_cast<std::size_t>(j)];
      if ((m * x).isZero()) {
        // Solve on k.cols() independent rows of k by Cramer's rule.
        IntMatrix kt = k.transpose();
        const std::vector<Eigen::Index> rows_used = bareiss_echelon(kt);
        const Eigen::Index r = k.cols();
        RationalMatrix sq(r, r);
        RationalVector rhs(r);
        for (Eigen::Index t = 0; t < r; ++t) {
          sq.row(t) = kq.row(rows_used[static_cast<std::size_t>(t)]);
          rhs(t) = Rational(x(rows_used[static_cast<std::size_t>(t)]));
        }
        const Rational det = determinant(sq);
        RationalVector a(r);
        for (Eigen::Index t = 0; t < r; ++t) {
          RationalMatrix replaced = sq;
          replaced.col(t) = rhs;
          a(t) = determinant(replaced) / det;
          CHECK(denominator(a(t)) == 1);
        }
        CHECK(((kq * a) - x.cast<Rational>()).isZero());
      }
      int j = 0;
      while (j < cols && ++v[static_cast<std::size_t>(j)] > 3) v[static_cast<std::size_t>(j++)] = -3;
      if (j == cols) break;
    }
  }
}

TEST_CASE("hermite_normal_form is canonical for a lattice") {
  IntMatrix a(2, 3);
  a << 2, 4, 6, 1, 1, 1;
  IntMatrix b(2, 3);
  b << 3, 5, 7, 1, 1, 1;  // row0 + row1 of a, row1
  CHECK(hermite_normal_form(a) == hermite_normal_form(b));
}
