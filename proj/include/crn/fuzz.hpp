#pragma once

#include "crn/balance.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace crn {

/// Random reversible network with 1..max_species species and 2..max_complexes
/// distinct complexes (coefficients in 0..2). One or two linkage classes, each
/// a random spanning tree plus extra pairs.
Network random_network(int max_species, int max_complexes, std::mt19937_64& rng);

struct FuzzOptions {
  int max_species = 5;
  int max_complexes = 8;
  std::uint64_t seed = 1;
  int trials = 100;
  bool formally_balanced = false;
};

struct FuzzTrial {
  std::uint64_t seed = 0;
  Network network;
  RateAssignment rates;
  TheoremRecord theorem;
  int deficiency = 0;
  std::optional<double> steady_state_residual;
  std::optional<double> steady_state_rhs;  // relative to the largest flux term
  std::optional<bool> cycle_edge_verdict;
  std::vector<std::string> violations;
};

/// Thresholds every trial is held to.
inline constexpr double kSteadyStateResidualLimit = 1e-9;
inline constexpr double kSteadyStateRhsLimit = 1e-8;

FuzzTrial run_fuzz_trial(const FuzzOptions& options, std::uint64_t trial_seed);

struct FuzzSummary {
  int trials = 0;
  int formally_balanced = 0;
  int detailed_balanced = 0;
  int complex_balanced = 0;
  double max_residual = 0.0;
  double max_rhs = 0.0;
  std::vector<std::string> violations;
};

/// Trial t uses seed options.seed + t.
FuzzSummary run_fuzz(const FuzzOptions& options, const std::function<void(const FuzzTrial&)>& on_trial = {});

}  // namespace crn
