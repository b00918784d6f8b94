#include "crn/fuzz.hpp"

#include "crn/kinetics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace crn {

Network random_network(int max_species, int max_complexes, std::mt19937_64& rng) {
  if (max_species < 1 || max_complexes < 2) throw InvalidInput("fuzz needs at least 1 species and 2 complexes");
  const auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int s = uniform(1, max_species);
  int capacity = 1;
  for (int k = 0; k < s && capacity < max_complexes; ++k) capacity *= 3;
  const int n = uniform(2, std::min(max_complexes, capacity));

  std::set<std::vector<int>> used;
  Matrix<int> y(n, s);
  for (int i = 0; i < n; ++i) {
    std::vector<int> row(static_cast<std::size_t>(s));
    do {
      for (int& v : row) v = uniform(0, 2);
    } while (!used.insert(row).second);
    for (int k = 0; k < s; ++k) y(i, k) = row[static_cast<std::size_t>(k)];
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int classes = n >= 4 ? uniform(1, 2) : 1;
  const int split = classes == 2 ? uniform(2, n - 2) : n;

  std::set<std::pair<int, int>> pairs;
  const auto add = [&](int a, int b) { pairs.emplace(std::min(a, b), std::max(a, b)); };
  const auto connect = [&](int lo, int hi) {
    for (int t = lo + 1; t < hi; ++t) add(order[static_cast<std::size_t>(t)], order[static_cast<std::size_t>(uniform(lo, t - 1))]);
    const int m = hi - lo;
    const int extra = uniform(0, m);
    for (int x = 0; x < extra; ++x) {
      const int a = uniform(lo, hi - 1), b = uniform(lo, hi - 1);
      if (a != b) add(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
    }
  };
  connect(0, split);
  if (classes == 2) connect(split, n);

  std::vector<std::string> names;
  for (int k = 0; k < s; ++k) names.push_back(std::string(1, static_cast<char>('A' + k)));
  return build_network_from_pairs(std::move(names), y, {pairs.begin(), pairs.end()});
}

FuzzTrial run_fuzz_trial(const FuzzOptions& options, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  FuzzTrial trial;
  trial.seed = trial_seed;
  trial.network = random_network(options.max_species, options.max_complexes, rng);
  const Network& net = trial.network;
  const std::uint64_t rate_seed = rng();
  trial.rates = options.formally_balanced ? sample_formally_balanced_rates(net, rate_seed) : random_rates(net, rate_seed);
  trial.deficiency = summarize(net).deficiency;
  trial.theorem = verify_main_theorem(net, trial.rates);
  const TheoremRecord& th = trial.theorem;
  auto& bad = trial.violations;
  for (const auto& f : th.failures) bad.push_back(f);

  if (options.formally_balanced) {
    if (!th.formally_balanced) bad.push_back("sampled rates are not formally balanced");
    if (th.detailed_balanced != th.complex_balanced) bad.push_back("formally balanced but DB != CB");
    if (th.ratios_agree != std::optional<bool>(true)) bad.push_back("formally balanced but Q != q");
  }

  if (tree_constants(net, trial.rates, TreeMethod::enumeration) != tree_constants(net, trial.rates, TreeMethod::minor))
    bad.push_back("tree constants differ between enumeration and minor");

  if (th.complex_balanced) {
    const SteadyStateSolution ss = find_steady_state(net, trial.rates);
    const Vector<double> kappa = trial.rates.to_double();
    trial.steady_state_residual = ss.residual;
    const double scale = max_flux_term(net, kappa, ss.c0);
    const double rhs = mass_action_rhs<double>(net, kappa, ss.c0).cwiseAbs().maxCoeff();
    trial.steady_state_rhs = scale > 0 ? rhs / scale : rhs;
    if (!(ss.residual < kSteadyStateResidualLimit)) bad.push_back("steady-state residual " + std::to_string(ss.residual));
    if (!(*trial.steady_state_rhs < kSteadyStateRhsLimit))
      bad.push_back("steady-state rhs " + std::to_string(*trial.steady_state_rhs));

    const auto values = mass_action_values<double>(net, kappa, ss.c0);
    const PointBalance pb = point_balance(net, values);
    if (!pb.complex) {
      bad.push_back("solved steady state is not complex balancing at point tolerance");
    } else {
      const CycleEdgeResult ce = cycle_edge_criterion(net, values);
      trial.cycle_edge_verdict = ce.verdict;
      if (!ce.matches_detailed) bad.push_back("cycle-edge criterion disagrees with the detailed verdict at c0");
      if (ce.verdict && !ce.bfs_basic_cycles) bad.push_back("cycle-edge verdict holds but a BFS basic cycle has no balanced edge");
      if (pb.detailed != th.detailed_balanced) bad.push_back("point detailed verdict disagrees with exact verdict");
      if (pb.formal != th.formally_balanced) bad.push_back("point formal verdict disagrees with exact verdict");
    }
  }
  return trial;
}

FuzzSummary run_fuzz(const FuzzOptions& options, const std::function<void(const FuzzTrial&)>& on_trial) {
  FuzzSummary summary;
  for (int t = 0; t < options.trials; ++t) {
    const FuzzTrial trial = run_fuzz_trial(options, options.seed + static_cast<std::uint64_t>(t));
    ++summary.trials;
    summary.formally_balanced += trial.theorem.formally_balanced;
    summary.detailed_balanced += trial.theorem.detailed_balanced;
    summary.complex_balanced += trial.theorem.complex_balanced;
    summary.max_residual = std::max(summary.max_residual, trial.steady_state_residual.value_or(0.0));
    summary.max_rhs = std::max(summary.max_rhs, trial.steady_state_rhs.value_or(0.0));
    for (const auto& v : trial.violations)
      summary.violations.push_back("seed " + std::to_string(trial.seed) + ": " + v);
    if (on_trial) on_trial(trial);
  }
  return summary;
}

}  // namespace crn
