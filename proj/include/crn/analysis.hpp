#pragma once

#include "crn/balance.hpp"
#include "crn/network.hpp"
#include "crn/trees.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace crn {

struct AnalysisOptions {
  bool steady_state = true;
};

/// Everything `crn analyze` reports for one network and rate assignment.
struct AnalysisReport {
  NetworkSummary summary;
  LatticeDecomposition lattice;
  RationalVector tree_constants;           // minor method
  std::optional<bool> enumeration_agrees;  // set when every class is small enough to enumerate
  BalanceReport balance;
  TheoremRecord theorem;
  /// max-norm of the mass-action right-hand side at the solved steady state,
  /// relative to the largest flux term.
  std::optional<double> steady_state_rhs;

  /// Internal identities all held.
  bool consistent() const;
};

AnalysisReport analyze(const Network& net, const RateAssignment& rates, const AnalysisOptions& options = {});

/// Stable JSON: fixed keys, rationals as "p/q" strings, 1-based vertices.
nlohmann::ordered_json to_json(const Network& net, const AnalysisReport& report);

std::string human_summary(const Network& net, const AnalysisReport& report);

}  // namespace crn
