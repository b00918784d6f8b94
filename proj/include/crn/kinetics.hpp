#pragma once

#include "crn/balance.hpp"
#include "crn/lattice.hpp"
#include "crn/trees.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace crn {

/// Relative tolerance for point checks on floating-point data.
inline constexpr double kPointTolerance = 1e-12;

template <typename Scalar>
bool nearly_equal(const Scalar& a, const Scalar& b) {
  if constexpr (is_exact_v<Scalar>) {
    return a == b;
  } else {
    using std::abs;
    return abs(a - b) <= kPointTolerance * std::max(abs(a), abs(b));
  }
}

/// Values R_ij(c0) of general rate functions at one state, one per edge.
template <typename Scalar>
struct RateValuesAtPoint {
  Vector<Scalar> c0;
  Vector<Scalar> rates;
};

/// R_ij = kappa_ij c^{y_i}.
template <typename Scalar>
RateValuesAtPoint<Scalar> mass_action_values(const Network& net, const Vector<Scalar>& kappa,
                                             const Vector<Scalar>& c0) {
  const Vector<Scalar> p = psi<Scalar>(net, c0, true);
  RateValuesAtPoint<Scalar> out{c0, Vector<Scalar>(net.edge_count())};
  for (int e = 0; e < net.edge_count(); ++e) out.rates(e) = kappa(e) * p(net.edge(e).source);
  return out;
}

/// dc/dt = R C_G^t Y: each edge contributes R_e (y_target - y_source).
template <typename Scalar>
Vector<Scalar> general_rhs(const Network& net, const Vector<Scalar>& rates) {
  if (rates.size() != net.edge_count())
    throw InvalidInput("rate value vector has length " + std::to_string(rates.size()) + ", expected " +
                       std::to_string(net.edge_count()));
  Vector<Scalar> out = Vector<Scalar>::Zero(net.species_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    for (int k = 0; k < net.species_count(); ++k) {
      const int d = net.stoichiometry()(ed.target, k) - net.stoichiometry()(ed.source, k);
      if (d != 0) out(k) += rates(e) * Scalar(d);
    }
  }
  return out;
}

/// dc/dt = Psi(c) A_kappa Y. Zero concentrations are allowed.
template <typename Scalar>
Vector<Scalar> mass_action_rhs(const Network& net, const Vector<Scalar>& kappa, const Vector<Scalar>& c) {
  return general_rhs<Scalar>(net, mass_action_values<Scalar>(net, kappa, c).rates);
}

/// Largest single flux term |R_e (y_target - y_source)_k|, the natural scale
/// for a right-hand side residual.
double max_flux_term(const Network& net, const Vector<double>& kappa, const Vector<double>& c);

struct PointBalance {
  bool complex = false;   // R C_G^t = 0
  bool detailed = false;  // R_ij = R_ji on every pair
  bool formal = false;    // cycle products agree on every fundamental cycle
};

template <typename Scalar>
PointBalance point_balance(const Network& net, const RateValuesAtPoint<Scalar>& values) {
  const Vector<Scalar>& r = values.rates;
  if (r.size() != net.edge_count()) throw InvalidInput("rate value vector has wrong length");
  for (Eigen::Index k = 0; k < values.c0.size(); ++k)
    if (values.c0(k) <= 0) throw InvalidInput("point balance needs a positive state");
  PointBalance out;

  std::vector<Scalar> in(static_cast<std::size_t>(net.complex_count()), Scalar(0));
  std::vector<Scalar> outflow(static_cast<std::size_t>(net.complex_count()), Scalar(0));
  for (int e = 0; e < net.edge_count(); ++e) {
    outflow[static_cast<std::size_t>(net.edge(e).source)] += r(e);
    in[static_cast<std::size_t>(net.edge(e).target)] += r(e);
  }
  out.complex = true;
  for (int i = 0; i < net.complex_count(); ++i)
    if (!nearly_equal(in[static_cast<std::size_t>(i)], outflow[static_cast<std::size_t>(i)])) out.complex = false;

  out.detailed = true;
  for (int p = 0; p < net.pair_count(); ++p)
    if (!nearly_equal(r(2 * p), r(2 * p + 1))) out.detailed = false;

  out.formal = true;
  for (const CycleVector& cycle : fundamental_cycles(net, spanning_forest(net))) {
    Scalar forward(1), backward(1);
    for (int e : cycle.forward_edges(net)) {
      forward *= r(e);
      backward *= r(Network::reverse(e));
    }
    if (!nearly_equal(forward, backward)) out.formal = false;
  }
  return out;
}

template <typename Scalar>
struct GeneralTheoremRecord {
  bool detailed = false;
  bool formal = false;
  /// kappa_ij = R_ij(c0) c0^{-y_i}.
  Vector<Scalar> induced_kappa;
  /// Exact mass-action analysis of the induced rates (rational input only).
  std::optional<BalanceReport> induced_report;
  std::optional<TheoremRecord> induced_theorem;
  std::vector<std::string> failures;

  bool consistent() const { return failures.empty(); }
};

/// At a complex balancing point: detailed at c0 iff formally balanced at c0.
/// Throws InvalidInput if the point is not complex balancing.
template <typename Scalar>
GeneralTheoremRecord<Scalar> general_theorem_check(const Network& net, const RateValuesAtPoint<Scalar>& values) {
  const PointBalance pb = point_balance(net, values);
  if (!pb.complex) throw InvalidInput("state is not a complex balancing equilibrium of the given rate values");
  GeneralTheoremRecord<Scalar> rec;
  rec.detailed = pb.detailed;
  rec.formal = pb.formal;
  const Vector<Scalar> p = psi<Scalar>(net, values.c0);
  rec.induced_kappa.resize(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) rec.induced_kappa(e) = values.rates(e) / p(net.edge(e).source);
  if (rec.detailed != rec.formal) rec.failures.push_back("detailed and formal verdicts at the point differ");

  if constexpr (is_exact_v<Scalar>) {
    const RateAssignment induced(net, rec.induced_kappa);
    rec.induced_report = analyze_balance(net, induced, false);
    rec.induced_theorem = verify_main_theorem(net, induced);
    if (!rec.induced_report->complex.balanced) rec.failures.push_back("induced mass-action rates are not complex balanced");
    if (rec.induced_report->detailed.balanced != rec.detailed)
      rec.failures.push_back("induced detailed balance disagrees with the point verdict");
    if (rec.induced_report->formal.balanced != rec.formal)
      rec.failures.push_back("induced formal balance disagrees with the point verdict");
    for (const auto& f : rec.induced_theorem->failures) rec.failures.push_back("induced: " + f);
  }
  return rec;
}

struct CycleEdgeResult {
  /// Every cycle, equivalently every basic cycle of every spanning forest, has
  /// an edge with R_ij = R_ji: the pairs with R_ij != R_ji form a forest.
  bool verdict = false;
  /// The weaker test on the basic cycles of the BFS forest alone. A theta
  /// graph whose basic cycles share their only balanced pair passes it
  /// without being detailed balancing.
  bool bfs_basic_cycles = false;
  /// Per basic cycle of the BFS forest, the first balanced pair (pair index).
  std::vector<std::optional<int>> balanced_pair;
  bool detailed = false;
  bool matches_detailed = false;
};

/// Throws InvalidInput if the point is not complex balancing.
template <typename Scalar>
CycleEdgeResult cycle_edge_criterion(const Network& net, const RateValuesAtPoint<Scalar>& values) {
  const PointBalance pb = point_balance(net, values);
  if (!pb.complex) throw InvalidInput("state is not a complex balancing equilibrium of the given rate values");
  const Vector<Scalar>& r = values.rates;
  std::vector<bool> balanced(static_cast<std::size_t>(net.pair_count()));
  for (int p = 0; p < net.pair_count(); ++p) balanced[static_cast<std::size_t>(p)] = nearly_equal(r(2 * p), r(2 * p + 1));

  CycleEdgeResult out;
  out.bfs_basic_cycles = true;
  for (const CycleVector& cycle : fundamental_cycles(net, spanning_forest(net))) {
    std::optional<int> hit;
    for (int k = 0; k < net.pair_count() && !hit; ++k)
      if (cycle.coords(k) != 0 && balanced[static_cast<std::size_t>(k)]) hit = k;
    if (!hit) out.bfs_basic_cycles = false;
    out.balanced_pair.push_back(hit);
  }

  std::vector<int> comp(static_cast<std::size_t>(net.complex_count()));
  for (int v = 0; v < net.complex_count(); ++v) comp[static_cast<std::size_t>(v)] = v;
  const auto find = [&](int v) {
    while (comp[static_cast<std::size_t>(v)] != v) v = comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    return v;
  };
  out.verdict = true;
  for (int p = 0; p < net.pair_count(); ++p) {
    if (balanced[static_cast<std::size_t>(p)]) continue;
    const int a = find(net.edge(2 * p).source), b = find(net.edge(2 * p).target);
    if (a == b) out.verdict = false;
    comp[static_cast<std::size_t>(a)] = b;
  }

  out.detailed = pb.detailed;
  out.matches_detailed = out.verdict == out.detailed;
  return out;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector<double>> states;
  /// max-norm of dc/dt at the final state.
  double final_residual = 0.0;
};

struct SimulationOptions {
  /// Record every k-th accepted step (the first and last states are always kept).
  std::size_t record_every = 1;
  int max_halvings = 40;
};

/// Raised when the positivity guard halves a step max_halvings times.
class StepCollapse : public std::runtime_error {
 public:
  StepCollapse(double time, Vector<double> last_state);
  double time() const { return time_; }
  const Vector<double>& last_state() const { return last_state_; }

 private:
  double time_;
  Vector<double> last_state_;
};

/// One classical Runge-Kutta step of the mass-action system.
Vector<double> rk4_step(const Network& net, const Vector<double>& kappa, const Vector<double>& c, double h);

/// Fixed-step RK4 from c_init (non-negative) to t_end. A step that would make
/// any concentration non-positive is retried with half the step size.
Trajectory simulate(const Network& net, const Vector<double>& kappa, const Vector<double>& c_init, double t_end,
                    double dt, const SimulationOptions& options = {});

/// CSV with header "t,<species...>" and 17 significant digits.
void write_csv(std::ostream& out, const Network& net, const Trajectory& trajectory);

}  // namespace crn
