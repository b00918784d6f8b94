#include "crn/fuzz.hpp"
#include "crn/kinetics.hpp"
#include "crn/linalg.hpp"

#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace crn;
using namespace crn::testing;

namespace {

RationalVector rvec(std::initializer_list<Rational> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

Vector<double> dvec(std::initializer_list<double> xs) {
  Vector<double> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Oracle: the matrix product Y^t C_G R^t.
RationalVector rhs_by_matrices(const Network& net, const RationalVector& r) {
  const RationalMatrix y = net.stoichiometry().cast<Rational>();
  const RationalMatrix c = incidence_matrix(net).cast<Rational>();
  return y.transpose() * c * r;
}

// Complex balancing rate values at a rational point: a symmetric part plus
// circulations along the fundamental cycles.
RateValuesAtPoint<Rational> circulating_values(const Network& net, std::mt19937_64& rng, bool with_flow) {
  RateValuesAtPoint<Rational> v;
  v.c0.resize(net.species_count());
  for (int k = 0; k < net.species_count(); ++k) v.c0(k) = random_rate(rng);
  RationalVector flow = RationalVector::Zero(net.pair_count());
  if (with_flow)
    for (const CycleVector& cycle : fundamental_cycles(net, spanning_forest(net)))
      if (rng() % 3 != 0) flow += random_rate(rng) * cycle.coords.cast<Rational>();
  v.rates.resize(net.edge_count());
  for (int p = 0; p < net.pair_count(); ++p) {
    const Rational base = random_rate(rng);
    v.rates(2 * p) = base + (flow(p) > 0 ? flow(p) : Rational(0));
    v.rates(2 * p + 1) = base + (flow(p) < 0 ? Rational(-flow(p)) : Rational(0));
  }
  return v;
}

double ab_exact_a(double t) { return 1.0 + 2.0 * std::exp(-3.0 * t); }

}  // namespace

TEST_CASE("mass_action_rhs examples") {
  const auto [a, a_rates] = ab();
  CHECK(mass_action_rhs<Rational>(a, a_rates.values(), rvec({1, 2})).isZero());
  CHECK(mass_action_rhs<Rational>(a, a_rates.values(), rvec({1, 0})) == rvec({-2, 2}));

  const auto [p, p_rates] = phos2();
  CHECK(mass_action_rhs<Rational>(p, p_rates.values(), phos2_steady_state()).isZero());
  CHECK_FALSE(mass_action_rhs<Rational>(p, p_rates.values(), RationalVector::Ones(12)).isZero());

  const Vector<double> d = mass_action_rhs<double>(a, a_rates.to_double(), dvec({1, 0}));
  CHECK(d(0) == -2.0);
  CHECK(d(1) == 2.0);
}

TEST_CASE("general_rhs examples") {
  const Network a = ab().network;
  CHECK(general_rhs<Rational>(a, rvec({5, 5})).isZero());
  CHECK_THROWS_AS(general_rhs<Rational>(a, rvec({5})), InvalidInput);

  const Network t = tri().network;
  RationalVector r = RationalVector::Zero(t.edge_count());
  r(edge(t, 1, 2)) = 1;
  CHECK(general_rhs<Rational>(t, r) == rvec({-1, 1}));
}

TEST_CASE("rhs agrees with the matrix product and conserves S-perp") {
  std::mt19937_64 rng(11);
  std::vector<Network> nets{phos2().network, tri().network, hex().network};
  for (int i = 0; i < 20; ++i) nets.push_back(random_network(4, 7, rng));
  for (const Network& net : nets) {
    const RateAssignment k = random_rates(net, rng());
    RationalVector c(net.species_count());
    for (int s = 0; s < net.species_count(); ++s) c(s) = random_rate(rng);
    const RateValuesAtPoint<Rational> values = mass_action_values<Rational>(net, k.values(), c);
    const RationalVector rhs = mass_action_rhs<Rational>(net, k.values(), c);
    CHECK(rhs == general_rhs<Rational>(net, values.rates));
    CHECK(rhs == rhs_by_matrices(net, values.rates));
    const IntMatrix laws = conservation_laws(net);
    CHECK((laws.cast<Rational>().transpose() * rhs).isZero());
  }
}

TEST_CASE("point_balance") {
  const auto [p, p_rates] = phos2();
  const auto values = mass_action_values<Rational>(p, p_rates.values(), phos2_steady_state());
  CHECK(values.rates(edge(p, 4, 6)) == 11);
  CHECK(values.rates(edge(p, 6, 4)) == Rational(39, 4));
  const PointBalance pb = point_balance(p, values);
  CHECK(pb.complex);
  CHECK_FALSE(pb.detailed);
  CHECK_FALSE(pb.formal);

  const auto dvalues = mass_action_values<double>(p, p_rates.to_double(), phos2_steady_state().unaryExpr([](const Rational& x) { return to_double(x); }));
  const PointBalance dpb = point_balance(p, dvalues);
  CHECK(dpb.complex);
  CHECK_FALSE(dpb.detailed);
  CHECK_FALSE(dpb.formal);

  const Network a = ab().network;
  const PointBalance ab_pb = point_balance(a, RateValuesAtPoint<Rational>{rvec({1, 1}), rvec({3, 3})});
  CHECK(ab_pb.complex);
  CHECK(ab_pb.detailed);
  CHECK(ab_pb.formal);
  CHECK_THROWS_AS(point_balance(a, RateValuesAtPoint<Rational>{rvec({1, 0}), rvec({3, 3})}), InvalidInput);

  // Detailed forces complex and formal, for any values.
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    const Network net = random_network(4, 7, rng);
    const RateValuesAtPoint<Rational> v = circulating_values(net, rng, false);
    const PointBalance r = point_balance(net, v);
    CHECK(r.detailed);
    CHECK(r.complex);
    CHECK(r.formal);
  }
}

TEST_CASE("nearly_equal") {
  CHECK(nearly_equal(1.0, 1.0 + 1e-13));
  CHECK_FALSE(nearly_equal(1.0, 1.0 + 1e-11));
  CHECK(nearly_equal(0.0, 0.0));
  CHECK_FALSE(nearly_equal(Rational(1, 3), Rational(1, 3) + Rational(1, 1000000000)));
}

TEST_CASE("general_theorem_check examples") {
  const auto [p, p_rates] = phos2();
  const auto values = mass_action_values<Rational>(p, p_rates.values(), phos2_steady_state());
  const auto rec = general_theorem_check(p, values);
  CHECK_FALSE(rec.detailed);
  CHECK_FALSE(rec.formal);
  CHECK(rec.consistent());
  CHECK(rec.induced_kappa == p_rates.values());
  REQUIRE(rec.induced_report);
  CHECK(rec.induced_report->complex.balanced);

  const Network a = ab().network;
  const auto ab_rec = general_theorem_check(a, RateValuesAtPoint<Rational>{rvec({1, 1}), rvec({5, 5})});
  CHECK(ab_rec.detailed);
  CHECK(ab_rec.formal);
  CHECK(ab_rec.consistent());
  CHECK_THROWS_AS(general_theorem_check(a, RateValuesAtPoint<Rational>{rvec({1, 1}), rvec({5, 4})}), InvalidInput);

  const auto drec = general_theorem_check(a, RateValuesAtPoint<double>{dvec({1, 1}), dvec({5, 5})});
  CHECK(drec.consistent());
  CHECK_FALSE(drec.induced_report.has_value());
}

TEST_CASE("general_theorem_check on complex balancing rate values") {
  std::mt19937_64 rng(19);
  int detailed = 0, not_detailed = 0;
  for (int seed = 0; seed < 150; ++seed) {
    const Network net = random_network(5, 8, rng);
    const RateValuesAtPoint<Rational> v = circulating_values(net, rng, seed % 4 != 0);
    const auto rec = general_theorem_check(net, v);
    CHECK(rec.consistent());
    CHECK(rec.detailed == rec.formal);
    for (const auto& f : rec.failures) MESSAGE(f);
    rec.detailed ? ++detailed : ++not_detailed;

    RateValuesAtPoint<double> dv{v.c0.unaryExpr([](const Rational& x) { return to_double(x); }),
                                 v.rates.unaryExpr([](const Rational& x) { return to_double(x); })};
    const auto drec = general_theorem_check(net, dv);
    CHECK(drec.detailed == rec.detailed);
    CHECK(drec.formal == rec.formal);
  }
  CHECK(detailed > 0);
  CHECK(not_detailed > 0);
}

TEST_CASE("cycle_edge_criterion") {
  const auto [p, p_rates] = phos2();
  const CycleEdgeResult pr = cycle_edge_criterion(p, mass_action_values<Rational>(p, p_rates.values(), phos2_steady_state()));
  CHECK_FALSE(pr.verdict);
  CHECK_FALSE(pr.detailed);
  CHECK(pr.matches_detailed);
  CHECK_FALSE(pr.bfs_basic_cycles);

  const Network a = ab().network;
  const CycleEdgeResult ar = cycle_edge_criterion(a, RateValuesAtPoint<Rational>{rvec({1, 1}), rvec({2, 2})});
  CHECK(ar.verdict);
  CHECK(ar.detailed);
  CHECK(ar.balanced_pair.empty());

  // A, B, 2A, A+B, 2B: a single pair next to a triangle, all rates 1.
  Matrix<int> y(5, 2);
  y << 1, 0, 0, 1, 2, 0, 1, 1, 0, 2;
  const Network joined = build_network_from_pairs({"A", "B"}, y, {{0, 1}, {2, 3}, {3, 4}, {2, 4}});
  const RateValuesAtPoint<Rational> ones =
      mass_action_values<Rational>(joined, RationalVector::Ones(joined.edge_count()), RationalVector::Ones(2));
  const CycleEdgeResult jr = cycle_edge_criterion(joined, ones);
  CHECK(jr.verdict);
  CHECK(jr.detailed);
  REQUIRE(jr.balanced_pair.size() == 1);
  CHECK(jr.balanced_pair[0].has_value());

  CHECK_THROWS_AS(cycle_edge_criterion(a, RateValuesAtPoint<Rational>{rvec({1, 1}), rvec({2, 1})}), InvalidInput);

  // Theta graph: 1 joined to 2, 3, 4 and 2 joined to 3, 4. Both basic cycles of
  // the BFS forest pass through {1,2}; a circulation 1->3->2->4->1 leaves that
  // pair balanced yet the point is not detailed balancing.
  const Network theta =
      build_network_from_pairs({"x1", "x2", "x3", "x4"}, Matrix<int>::Identity(4, 4), {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  RateValuesAtPoint<Rational> flow{RationalVector::Ones(4), RationalVector::Constant(theta.edge_count(), 2)};
  for (const auto& [i, j] : std::vector<std::pair<int, int>>{{1, 3}, {3, 2}, {2, 4}, {4, 1}}) flow.rates(edge(theta, i, j)) += 1;
  const CycleEdgeResult tr = cycle_edge_criterion(theta, flow);
  CHECK(point_balance(theta, flow).complex);
  CHECK(tr.bfs_basic_cycles);
  CHECK_FALSE(tr.verdict);
  CHECK_FALSE(tr.detailed);
  CHECK(tr.matches_detailed);

  std::mt19937_64 rng(23);
  for (int seed = 0; seed < 150; ++seed) {
    const Network net = random_network(5, 8, rng);
    const CycleEdgeResult r = cycle_edge_criterion(net, circulating_values(net, rng, seed % 4 != 0));
    CHECK(r.verdict == r.detailed);
    CHECK(r.matches_detailed);
    if (r.verdict) CHECK(r.bfs_basic_cycles);
  }
}

TEST_CASE("simulate AB") {
  const auto [a, a_rates] = ab();
  const Trajectory traj = simulate(a, a_rates.to_double(), dvec({3, 0}), 20.0, 1e-3);
  const Vector<double>& last = traj.states.back();
  CHECK(traj.times.back() == 20.0);
  CHECK(std::abs(last(0) - 1.0) < 1e-6);
  CHECK(std::abs(last(1) - 2.0) < 1e-6);
  for (const auto& s : traj.states) CHECK(std::abs(s.sum() - 3.0) < 1e-12);
  for (std::size_t i = 0; i < traj.times.size(); i += 997)
    CHECK(std::abs(traj.states[i](0) - ab_exact_a(traj.times[i])) < 1e-11);
  CHECK(traj.final_residual < 1e-8);
  CHECK_THROWS_AS(simulate(a, a_rates.to_double(), dvec({3, -1}), 1.0, 1e-3), InvalidInput);
  CHECK_THROWS_AS(simulate(a, a_rates.to_double(), dvec({3, 1}), 1.0, 0.0), InvalidInput);
}

TEST_CASE("integrator order") {
  const auto [a, a_rates] = ab();
  const auto error_at_one = [&](double dt) {
    const Trajectory t = simulate(a, a_rates.to_double(), dvec({3, 0}), 1.0, dt);
    return std::abs(t.states.back()(0) - ab_exact_a(1.0));
  };
  const double ratio = error_at_one(0.05) / error_at_one(0.025);
  CHECK(ratio > 12);
  CHECK(ratio < 20);

  // One step: local error is fifth order.
  const auto one_step = [&](double h) {
    const Vector<double> next = rk4_step(a, a_rates.to_double(), dvec({3, 0}), h);
    return std::abs(next(0) - ab_exact_a(h));
  };
  CHECK(one_step(0.1) / one_step(0.05) > 24);
}

TEST_CASE("simulate PHOS2") {
  const auto [p, p_rates] = phos2();
  const Vector<double> kappa = p_rates.to_double();
  const Vector<double> c0 = phos2_steady_state().unaryExpr([](const Rational& x) { return to_double(x); });
  const Trajectory still = simulate(p, kappa, c0, 1.0, 1e-2);
  CHECK((still.states.back() - c0).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(still.final_residual < 1e-10);

  const IntMatrix laws = conservation_laws(p);
  const Eigen::MatrixXd w = laws.unaryExpr([](const BigInt& x) { return x.convert_to<double>(); });
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int start = 0; start < 3; ++start) {
    Vector<double> c(12);
    for (int k = 0; k < 12; ++k) c(k) = u(rng);
    SimulationOptions opts;
    opts.record_every = 100;
    const Trajectory traj = simulate(p, kappa, c, 5.0, 1e-3, opts);
    CHECK(traj.states.size() == 51);
    const Eigen::VectorXd start_totals = w.transpose() * traj.states.front();
    for (const auto& s : traj.states) {
      const Eigen::VectorXd drift = w.transpose() * s - start_totals;
      CHECK((drift.cwiseAbs().array() / start_totals.cwiseAbs().array()).maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("step collapse") {
  const auto [a, a_rates] = ab();
  SimulationOptions opts;
  opts.max_halvings = 1;
  try {
    simulate(a, a_rates.to_double(), dvec({3, 1}), 100.0, 50.0, opts);
    FAIL("expected a step collapse");
  } catch (const StepCollapse& e) {
    CHECK(e.time() == 0.0);
    CHECK(e.last_state() == dvec({3, 1}));
  }
}

TEST_CASE("write_csv") {
  const auto [a, a_rates] = ab();
  const Trajectory traj = simulate(a, a_rates.to_double(), dvec({1, 2}), 0.3, 0.1);
  std::ostringstream out;
  write_csv(out, a, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,a,b");
  std::getline(in, line);
  CHECK(line == "0,1,2");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);

  Trajectory one{{0.1}, {dvec({1.0 / 3.0, 2.0})}, 0.0};
  std::ostringstream precise;
  write_csv(precise, a, one);
  CHECK(precise.str() == "t,a,b\n0.10000000000000001,0.33333333333333331,2\n");
}
