#include "crn/balance.hpp"

#include "crn/linalg.hpp"

#include <cmath>

namespace crn {

Rational lattice_power(const RationalVector& base, const IntVector& lambda) {
  Rational out = 1;
  for (Eigen::Index e = 0; e < lambda.size(); ++e) {
    if (lambda(e) == 0) continue;
    if (abs(lambda(e)) > BigInt(1) << 20) throw std::overflow_error("lattice exponent too large");
    out *= power(base(e), lambda(e).convert_to<long>());
  }
  return out;
}

namespace {

LatticeCheckResult check_lattice(const RationalVector& base, const IntMatrix& basis) {
  LatticeCheckResult out;
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    IntVector lambda = basis.col(c);
    Rational v = lattice_power(base, lambda);
    if (v != 1) {
      out.balanced = false;
      out.witness = LatticeWitness{std::move(lambda), v};
      return out;
    }
  }
  return out;
}

RationalVector rate_ratios(const Network& net, const RateAssignment& rates) {
  RationalVector q(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) q(e) = rates[e] / rates[Network::reverse(e)];
  return q;
}

RationalVector tree_ratios(const Network& net, const RationalVector& k) {
  RationalVector out(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) out(e) = k(net.edge(e).target) / k(net.edge(e).source);
  return out;
}

}  // namespace

FormalBalanceResult check_formal_balance(const Network& net, const RateAssignment& rates) {
  return check_formal_balance(net, rates, spanning_forest(net));
}

FormalBalanceResult check_formal_balance(const Network& net, const RateAssignment& rates,
                                         const SpanningForest& forest) {
  FormalBalanceResult out;
  for (CycleVector& cycle : fundamental_cycles(net, forest)) {
    Rational forward = 1, backward = 1;
    for (int e : cycle.forward_edges(net)) {
      forward *= rates[e];
      backward *= rates[Network::reverse(e)];
    }
    if (forward != backward) {
      out.balanced = false;
      out.witness = CycleWitness{std::move(cycle), forward, backward};
      return out;
    }
  }
  return out;
}

LatticeCheckResult check_detailed_balance(const Network& net, const RateAssignment& rates) {
  return check_detailed_balance(net, rates, lattice_decomposition(net));
}

LatticeCheckResult check_detailed_balance(const Network& net, const RateAssignment& rates,
                                          const LatticeDecomposition& lattice) {
  const RationalVector q = rate_ratios(net, rates);
  LatticeCheckResult r = check_lattice(q, lattice.n1);
  if (!r.balanced) return r;
  return check_lattice(q, lattice.n2);
}

LatticeCheckResult check_complex_balance(const Network& net, const RateAssignment& rates) {
  return check_complex_balance(net, tree_constants(net, rates), lattice_decomposition(net));
}

LatticeCheckResult check_complex_balance(const Network& net, const RationalVector& tree_constants,
                                         const LatticeDecomposition& lattice) {
  return check_lattice(tree_ratios(net, tree_constants), lattice.n2);
}

NotComplexBalanced::NotComplexBalanced(LatticeWitness w)
    : std::runtime_error("system is not complex balanced: Q^lambda = " + to_string(w.value) + " != 1"),
      witness_(std::move(w)) {}

IntMatrix conservation_laws(const Network& net) {
  return integer_kernel(to_big(pair_reaction_vectors(net)).transpose());
}

SteadyStateSolution find_steady_state(const Network& net, const RateAssignment& rates) {
  const RationalVector k = tree_constants(net, rates);
  const LatticeCheckResult cb = check_complex_balance(net, k, lattice_decomposition(net));
  if (!cb.balanced) throw NotComplexBalanced(*cb.witness);

  const Matrix<double> a = pair_reaction_vectors(net).cast<double>().transpose();
  Vector<double> b(net.pair_count());
  for (int p = 0; p < net.pair_count(); ++p) {
    const Edge& ed = net.edge(2 * p);
    b(p) = log_of(k(ed.target)) - log_of(k(ed.source));
  }
  Vector<double> x = Vector<double>::Zero(net.species_count());
  if (a.rows() > 0 && a.cols() > 0) x = a.completeOrthogonalDecomposition().solve(b);

  SteadyStateSolution out;
  out.c0 = x.array().exp();
  for (int p = 0; p < net.pair_count(); ++p) {
    const double mismatch = a.row(p).dot(x) - b(p);
    out.residual = std::max(out.residual, std::abs(std::expm1(mismatch)));
    out.residual = std::max(out.residual, std::abs(std::expm1(-mismatch)));
  }
  out.s_perp = conservation_laws(net);
  return out;
}

SteadyStateCheck verify_steady_state(const Network& net, const RateAssignment& rates, const RationalVector& c0) {
  SteadyStateCheck out;
  const RationalVector p = psi<Rational>(net, c0);
  out.psi_a = (p.transpose() * laplacian(net, rates)).transpose();
  out.rhs = (out.psi_a.transpose() * net.stoichiometry().cast<Rational>()).transpose();
  out.complex_balanced = true;
  for (Eigen::Index i = 0; i < out.psi_a.size(); ++i)
    if (out.psi_a(i) != 0) out.complex_balanced = false;
  return out;
}

BalanceReport analyze_balance(const Network& net, const RateAssignment& rates, bool with_steady_state) {
  const SpanningForest forest = spanning_forest(net);
  const LatticeDecomposition lattice = lattice_decomposition(net, forest);
  BalanceReport out;
  out.formal = check_formal_balance(net, rates, forest);
  out.detailed = check_detailed_balance(net, rates, lattice);
  out.complex = check_complex_balance(net, tree_constants(net, rates), lattice);
  if (with_steady_state && out.complex.balanced) out.steady_state = find_steady_state(net, rates);
  return out;
}

TheoremRecord verify_main_theorem(const Network& net, const RateAssignment& rates) {
  const SpanningForest forest = spanning_forest(net);
  const LatticeDecomposition lattice = lattice_decomposition(net, forest);
  const RationalVector k = tree_constants(net, rates);

  TheoremRecord rec;
  rec.formally_balanced = check_formal_balance(net, rates, forest).balanced;
  rec.detailed_balanced = check_detailed_balance(net, rates, lattice).balanced;
  rec.complex_balanced = check_complex_balance(net, k, lattice).balanced;

  if (rec.detailed_balanced && !rec.complex_balanced) rec.failures.push_back("detailed balanced but not complex balanced");
  if (rec.detailed_balanced && !rec.formally_balanced) rec.failures.push_back("detailed balanced but not formally balanced");
  if (rec.complex_balanced && rec.formally_balanced && !rec.detailed_balanced)
    rec.failures.push_back("complex and formally balanced but not detailed balanced");

  if (rec.formally_balanced) {
    const RatioVectors r = ratio_vectors(net, rates, k);
    rec.ratios_agree = true;
    for (int e = 0; e < net.edge_count(); ++e) {
      if (r.q(e) == r.Q(e)) continue;
      rec.ratios_agree = false;
      rec.failures.push_back("formally balanced but Q != q on edge (" + std::to_string(net.edge(e).source + 1) +
                             "," + std::to_string(net.edge(e).target + 1) + "): " + to_string(r.Q(e)) +
                             " vs " + to_string(r.q(e)));
      break;
    }
  }
  return rec;
}

Rational random_rate(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(1, 64);
  const int num = dist(rng);
  const int den = dist(rng);
  return Rational(num, den);
}

RateAssignment random_rates(const Network& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RationalVector kappa(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) kappa(e) = random_rate(rng);
  return RateAssignment(net, std::move(kappa));
}

RateAssignment sample_formally_balanced_rates(const Network& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const SpanningForest forest = spanning_forest(net);
  RationalVector kappa(net.edge_count());
  for (int p = 0; p < net.pair_count(); ++p) {
    kappa(2 * p) = random_rate(rng);
    if (forest.in_forest[static_cast<std::size_t>(p)]) kappa(2 * p + 1) = random_rate(rng);
  }
  // Each fundamental cycle contains exactly one non-forest pair, so the
  // reverse rates can be solved independently.
  for (const CycleVector& cycle : fundamental_cycles(net, forest)) {
    const std::vector<int> path = cycle.forward_edges(net);
    Rational forward = 1, backward = 1;
    for (int e : path) {
      forward *= kappa(e);
      if (e != 2 * cycle.closing_pair) backward *= kappa(Network::reverse(e));
    }
    kappa(2 * cycle.closing_pair + 1) = forward / backward;
  }
  return RateAssignment(net, std::move(kappa));
}

}  // namespace crn
