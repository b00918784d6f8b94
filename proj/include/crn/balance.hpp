#pragma once

#include "crn/lattice.hpp"
#include "crn/trees.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

/// prod_e base_e^{lambda_e}, exact.
Rational lattice_power(const RationalVector& base, const IntVector& lambda);

struct CycleWitness {
  CycleVector cycle;
  Rational forward_product;   // product of kappa along C+
  Rational backward_product;  // product of kappa along C-
};

struct FormalBalanceResult {
  bool balanced = true;
  std::optional<CycleWitness> witness;  // first violating fundamental cycle
};

struct LatticeWitness {
  IntVector lambda;  // length e
  Rational value;    // q^lambda or Q^lambda, != 1
};

struct LatticeCheckResult {
  bool balanced = true;
  std::optional<LatticeWitness> witness;  // first violating basis vector
};

/// Cycle conditions prod_{C+} kappa = prod_{C-} kappa on the fundamental cycles.
FormalBalanceResult check_formal_balance(const Network& net, const RateAssignment& rates);
FormalBalanceResult check_formal_balance(const Network& net, const RateAssignment& rates,
                                         const SpanningForest& forest);

/// q^lambda = 1 on the N1 and N2 bases (N0 holds identically).
LatticeCheckResult check_detailed_balance(const Network& net, const RateAssignment& rates);
LatticeCheckResult check_detailed_balance(const Network& net, const RateAssignment& rates,
                                          const LatticeDecomposition& lattice);

/// Q^lambda = 1 on the N2 basis.
LatticeCheckResult check_complex_balance(const Network& net, const RateAssignment& rates);
LatticeCheckResult check_complex_balance(const Network& net, const RationalVector& tree_constants,
                                         const LatticeDecomposition& lattice);

struct SteadyStateSolution {
  Vector<double> c0;
  /// max over edges of |c0^{y_j - y_i} / Q_ij - 1|.
  double residual = 0.0;
  /// Integer basis (columns) of S-perp; log c0 + span(S-perp) are all steady states.
  IntMatrix s_perp;
};

class NotComplexBalanced : public std::runtime_error {
 public:
  explicit NotComplexBalanced(LatticeWitness w);
  const LatticeWitness& witness() const { return witness_; }

 private:
  LatticeWitness witness_;
};

/// Solves (y_j - y_i) . x = log Q_ij in the minimum-norm least-squares sense
/// and returns c0 = exp(x). Throws NotComplexBalanced otherwise.
SteadyStateSolution find_steady_state(const Network& net, const RateAssignment& rates);

/// Integer basis of the orthogonal complement of S in species space.
IntMatrix conservation_laws(const Network& net);

struct SteadyStateCheck {
  bool complex_balanced = false;  // Psi(c0) A_kappa == 0
  RationalVector psi_a;           // length n
  RationalVector rhs;             // Psi(c0) A_kappa Y, length s
};

SteadyStateCheck verify_steady_state(const Network& net, const RateAssignment& rates, const RationalVector& c0);

struct BalanceReport {
  FormalBalanceResult formal;
  LatticeCheckResult detailed;
  LatticeCheckResult complex;
  std::optional<SteadyStateSolution> steady_state;
};

BalanceReport analyze_balance(const Network& net, const RateAssignment& rates, bool with_steady_state = true);

/// Truth table of the three verdicts plus the implications that must hold.
struct TheoremRecord {
  bool formally_balanced = false;
  bool detailed_balanced = false;
  bool complex_balanced = false;
  /// Set only when formally balanced: whether Q_ij == q_ij on every edge.
  std::optional<bool> ratios_agree;
  std::vector<std::string> failures;

  bool consistent() const { return failures.empty(); }
};

TheoremRecord verify_main_theorem(const Network& net, const RateAssignment& rates);

/// a/b with a, b uniform in 1..64.
Rational random_rate(std::mt19937_64& rng);

RateAssignment random_rates(const Network& net, std::uint64_t seed);

/// Random rates on forest pairs and on the forward edge of every other pair;
/// the remaining reverse rates are solved so every fundamental cycle is balanced.
RateAssignment sample_formally_balanced_rates(const Network& net, std::uint64_t seed);

}  // namespace crn
