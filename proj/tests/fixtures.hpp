#pragma once

#include "crn/crn_format.hpp"

#include <string>

#ifndef CRN_DATA_DIR
#error "CRN_DATA_DIR must point at the fixture directory"
#endif

namespace crn::testing {

inline ParsedNetwork load(const std::string& name) {
  return to_network(read_crn_file(std::string(CRN_DATA_DIR) + "/" + name + ".crn"));
}

inline ParsedNetwork phos2() { return load("phos2"); }
inline ParsedNetwork hex() { return load("hex"); }
inline ParsedNetwork ab() { return load("ab"); }
inline ParsedNetwork tri() { return load("tri"); }

/// Edge index for 1-based vertices.
inline int edge(const Network& net, int i, int j) { return *net.edge_index(i - 1, j - 1); }

/// Replaces the rate of 1-based edge (i, j).
inline RateAssignment with_rate(const Network& net, const RateAssignment& rates, int i, int j, const Rational& v) {
  RationalVector k = rates.values();
  k(edge(net, i, j)) = v;
  return RateAssignment(net, k);
}

/// A known positive steady state of the phosphorylation network.
inline RationalVector phos2_steady_state() {
  RationalVector c(12);
  c << 23, 17, 11, 47, 1, 2, 4, 8, 14, 11, 13, 16;
  return c;
}

}  // namespace crn::testing
