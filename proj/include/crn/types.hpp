#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace crn {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Input rejected by a constructor or parser.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal identity that must always hold was violated.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <typename Scalar>
inline constexpr bool is_exact_v = !std::is_floating_point_v<Scalar>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Accepts INT, INT/POSINT and finite decimals (optionally with an exponent);
/// decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// x^k for integer k of either sign. Zero to a negative power throws.
Rational power(const Rational& base, long exponent);

double to_double(const Rational& value);

/// Natural log of a positive rational, accurate even when numerator or
/// denominator overflow a double.
double log_of(const Rational& value);

Rational to_rational(double value);

}  // namespace crn
