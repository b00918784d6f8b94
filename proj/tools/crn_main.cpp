// crn: command-line front end for the reaction network analyzer.
//
// Exit codes: 0 success, 2 unreadable input (file, grammar, or arguments),
// 3 an internal consistency check failed.

#include "crn/analysis.hpp"
#include "crn/crn_format.hpp"
#include "crn/fuzz.hpp"
#include "crn/kinetics.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConsistency = 3;

struct AnalyzeArgs {
  std::string file;
  std::string json_path;
  bool no_steady_state = false;
};

struct SimulateArgs {
  std::string file;
  std::string c0;
  double t_end = 0.0;
  double dt = 0.0;
  std::string out_path;
};

struct TreesArgs {
  std::string file;
  std::optional<int> vertex;
};

std::vector<double> parse_state(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(crn::to_double(crn::parse_rational(item)));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw crn::InvalidInput("cannot write " + path);
  out << text;
}

int run_analyze(const AnalyzeArgs& args) {
  const crn::ParsedNetwork parsed = crn::to_network(crn::read_crn_file(args.file));
  crn::AnalysisOptions options;
  options.steady_state = !args.no_steady_state;
  const crn::AnalysisReport report = crn::analyze(parsed.network, parsed.rates, options);
  if (!args.json_path.empty()) write_text(args.json_path, crn::to_json(parsed.network, report).dump(2) + "\n");
  if (args.json_path != "-") std::cout << crn::human_summary(parsed.network, report);
  return report.consistent() ? 0 : kExitConsistency;
}

int run_simulate(const SimulateArgs& args) {
  const crn::ParsedNetwork parsed = crn::to_network(crn::read_crn_file(args.file));
  const std::vector<double> values = parse_state(args.c0);
  if (static_cast<int>(values.size()) != parsed.network.species_count())
    throw crn::InvalidInput("--c0 has " + std::to_string(values.size()) + " entries, the network has " +
                            std::to_string(parsed.network.species_count()) + " species");
  const crn::Vector<double> c0 = Eigen::Map<const crn::Vector<double>>(values.data(), static_cast<Eigen::Index>(values.size()));
  const crn::Trajectory traj = crn::simulate(parsed.network, parsed.rates.to_double(), c0, args.t_end, args.dt);
  std::ostringstream csv;
  crn::write_csv(csv, parsed.network, traj);
  write_text(args.out_path.empty() ? "-" : args.out_path, csv.str());
  if (!args.out_path.empty()) {
    std::cout.precision(17);
    std::cout << "steps " << traj.times.size() - 1 << ", final residual " << traj.final_residual << '\n';
  }
  return 0;
}

int run_trees(const TreesArgs& args) {
  const crn::ParsedNetwork parsed = crn::to_network(crn::read_crn_file(args.file));
  const crn::Network& net = parsed.network;
  const crn::RationalVector K = crn::tree_constants(net, parsed.rates);
  int first = 0, last = net.complex_count() - 1;
  if (args.vertex) {
    if (*args.vertex < 1 || *args.vertex > net.complex_count())
      throw crn::InvalidInput("--vertex must lie in 1.." + std::to_string(net.complex_count()));
    first = last = *args.vertex - 1;
  }
  for (int i = first; i <= last; ++i)
    std::cout << "vertex " << i + 1 << ": trees " << crn::count_i_trees(net, i) << ", K = " << crn::to_string(K(i))
              << '\n';
  return 0;
}

int run_fuzz_command(const crn::FuzzOptions& options) {
  const crn::FuzzSummary summary = crn::run_fuzz(options, [](const crn::FuzzTrial& t) {
    const auto yn = [](bool b) { return b ? 'y' : 'n'; };
    std::cout << "seed " << t.seed << ": n=" << t.network.complex_count() << " s=" << t.network.species_count()
              << " e=" << t.network.edge_count() << " deficiency=" << t.deficiency
              << " FB=" << yn(t.theorem.formally_balanced) << " DB=" << yn(t.theorem.detailed_balanced)
              << " CB=" << yn(t.theorem.complex_balanced) << (t.violations.empty() ? "" : " VIOLATION") << '\n';
  });
  std::cout << "trials " << summary.trials << ", formally balanced " << summary.formally_balanced
            << ", detailed balanced " << summary.detailed_balanced << ", complex balanced "
            << summary.complex_balanced << '\n';
  std::cout << "max steady-state residual " << summary.max_residual << ", max relative rhs " << summary.max_rhs
            << '\n';
  std::cout << "violations " << summary.violations.size() << '\n';
  for (const auto& v : summary.violations) std::cerr << v << '\n';
  return summary.violations.empty() ? 0 : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of reversible chemical reaction networks"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Balance verdicts, tree constants, lattice ranks, steady state");
  analyze->add_option("file", analyze_args.file, ".crn network file")->required();
  analyze->add_option("--json", analyze_args.json_path, "Write the JSON report to PATH ('-' for stdout)");
  analyze->add_flag("--no-steady-state", analyze_args.no_steady_state, "Skip the steady-state solver");

  SimulateArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "Integrate the mass-action system with fixed-step RK4");
  simulate->add_option("file", simulate_args.file, ".crn network file")->required();
  simulate->add_option("--c0", simulate_args.c0, "Initial state v1,v2,... in species order")->required();
  simulate->add_option("--t-end", simulate_args.t_end, "Final time")->required();
  simulate->add_option("--dt", simulate_args.dt, "Step size")->required();
  simulate->add_option("--out", simulate_args.out_path, "Write the CSV trajectory to PATH (default stdout)");

  TreesArgs trees_args;
  auto* trees = app.add_subcommand("trees", "i-tree counts and tree constants K_i");
  trees->add_option("file", trees_args.file, ".crn network file")->required();
  trees->add_option("--vertex", trees_args.vertex, "Only this vertex (1-based)");

  crn::FuzzOptions fuzz_options;
  auto* fuzz = app.add_subcommand("fuzz", "Random networks checked against the balancing implications");
  fuzz->add_option("--species", fuzz_options.max_species, "Maximum number of species")->required();
  fuzz->add_option("--complexes", fuzz_options.max_complexes, "Maximum number of complexes")->required();
  fuzz->add_option("--seed", fuzz_options.seed, "First seed; trial t uses seed + t")->required();
  fuzz->add_option("--trials", fuzz_options.trials, "Number of trials")->required();
  fuzz->add_flag("--formally-balanced", fuzz_options.formally_balanced, "Sample formally balanced rates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) return run_analyze(analyze_args);
    if (*simulate) return run_simulate(simulate_args);
    if (*trees) return run_trees(trees_args);
    return run_fuzz_command(fuzz_options);
  } catch (const crn::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const crn::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const crn::StepCollapse& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
