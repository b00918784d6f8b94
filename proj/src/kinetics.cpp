#include "crn/kinetics.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>

namespace crn {

double max_flux_term(const Network& net, const Vector<double>& kappa, const Vector<double>& c) {
  const Vector<double> r = mass_action_values<double>(net, kappa, c).rates;
  double out = 0.0;
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    for (int k = 0; k < net.species_count(); ++k) {
      const int d = net.stoichiometry()(ed.target, k) - net.stoichiometry()(ed.source, k);
      out = std::max(out, std::abs(r(e) * d));
    }
  }
  return out;
}

StepCollapse::StepCollapse(double time, Vector<double> last_state)
    : std::runtime_error("step size collapsed at t = " + std::to_string(time)),
      time_(time),
      last_state_(std::move(last_state)) {}

namespace {

// nullopt if an intermediate stage leaves the non-negative orthant.
std::optional<Vector<double>> try_rk4_step(const Network& net, const Vector<double>& kappa, const Vector<double>& c,
                                           double h) {
  const auto stage = [&](const Vector<double>& x) -> std::optional<Vector<double>> {
    if ((x.array() < 0.0).any() || !x.allFinite()) return std::nullopt;
    return mass_action_rhs<double>(net, kappa, x);
  };
  const auto k1 = stage(c);
  if (!k1) return std::nullopt;
  const auto k2 = stage(c + 0.5 * h * *k1);
  if (!k2) return std::nullopt;
  const auto k3 = stage(c + 0.5 * h * *k2);
  if (!k3) return std::nullopt;
  const auto k4 = stage(c + h * *k3);
  if (!k4) return std::nullopt;
  return Vector<double>(c + (h / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4));
}

}  // namespace

Vector<double> rk4_step(const Network& net, const Vector<double>& kappa, const Vector<double>& c, double h) {
  auto next = try_rk4_step(net, kappa, c, h);
  if (!next) throw InvalidInput("Runge-Kutta stage left the non-negative orthant");
  return *next;
}

Trajectory simulate(const Network& net, const Vector<double>& kappa, const Vector<double>& c_init, double t_end,
                    double dt, const SimulationOptions& options) {
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  if (!(t_end >= 0.0)) throw InvalidInput("t_end must be non-negative");
  if (kappa.size() != net.edge_count()) throw InvalidInput("rate vector has wrong length");
  if (c_init.size() != net.species_count()) throw InvalidInput("initial state has wrong length");
  if ((c_init.array() < 0.0).any() || !c_init.allFinite()) throw InvalidInput("initial state must be non-negative");

  Trajectory traj;
  Vector<double> c = c_init;
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(c);
  const std::size_t stride = std::max<std::size_t>(1, options.record_every);
  std::size_t accepted = 0;
  while (t < t_end) {
    double h = std::min(dt, t_end - t);
    // Avoid a sliver of a final step due to roundoff in t.
    if (t_end - (t + h) < 1e-12 * dt) h = t_end - t;
    Vector<double> next;
    int halvings = 0;
    for (;;) {
      if (auto step = try_rk4_step(net, kappa, c, h); step && (step->array() > 0.0).all()) {
        next = std::move(*step);
        break;
      }
      if (++halvings > options.max_halvings) throw StepCollapse(t, c);
      h *= 0.5;
    }
    c = std::move(next);
    t = (h == t_end - t) ? t_end : t + h;
    ++accepted;
    if (accepted % stride == 0 || t >= t_end) {
      traj.times.push_back(t);
      traj.states.push_back(c);
    }
  }
  traj.final_residual = mass_action_rhs<double>(net, kappa, c).cwiseAbs().maxCoeff();
  return traj;
}

void write_csv(std::ostream& out, const Network& net, const Trajectory& trajectory) {
  out << "t";
  for (const auto& name : net.species()) out << ',' << name;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (std::size_t r = 0; r < trajectory.times.size(); ++r) {
    out << trajectory.times[r];
    for (Eigen::Index k = 0; k < trajectory.states[r].size(); ++k) out << ',' << trajectory.states[r](k);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace crn
