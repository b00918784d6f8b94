#pragma once

#include "crn/network.hpp"

#include <vector>

namespace crn {

/// Breadth-first spanning forest: one tree per linkage class, rooted at the
/// class's smallest vertex, neighbours visited in increasing order.
struct SpanningForest {
  std::vector<int> pairs;   // forest edges as pair indices, increasing
  std::vector<int> parent;  // parent vertex, -1 at roots
  std::vector<int> depth;
  std::vector<int> roots;
  std::vector<bool> in_forest;  // per pair index

  int edge_count() const { return static_cast<int>(pairs.size()); }
};

SpanningForest spanning_forest(const Network& net);

/// An undirected cycle in pair coordinates: +1 where the cycle traverses the
/// pair in its forward (i < j) direction, -1 where it runs backwards.
struct CycleVector {
  int closing_pair = 0;       // the non-forest pair that closes the cycle
  std::vector<int> vertices;  // traversal order, starting at the closing pair's smaller vertex
  Vector<int> coords;         // length e/2

  /// The directed edges of C+ in traversal order (edge indices).
  std::vector<int> forward_edges(const Network& net) const;
};

/// One cycle per non-forest pair, in pair order; the closing pair carries +1.
std::vector<CycleVector> fundamental_cycles(const Network& net, const SpanningForest& forest);

/// Lifts a pair-indexed vector to edge coordinates (forward edges only).
template <typename Derived>
IntVector lift_to_edges(const Network& net, const Eigen::MatrixBase<Derived>& pair_coords) {
  IntVector out = IntVector::Zero(net.edge_count());
  for (int k = 0; k < net.pair_count(); ++k) out(2 * k) = BigInt(pair_coords(k));
  return out;
}

/// N = ker_Z(Y^t C_G) split as N0 + N1 + N2. Bases are stored as columns of
/// length e.
struct LatticeDecomposition {
  IntMatrix n0;
  IntMatrix n1;
  IntMatrix n2;

  Eigen::Index rank_n0() const { return n0.cols(); }
  Eigen::Index rank_n1() const { return n1.cols(); }
  Eigen::Index rank_n2() const { return n2.cols(); }
  /// All three bases side by side.
  IntMatrix combined() const;
};

/// N0 from the reversal pairs, N1 from the fundamental cycles of `forest`, and
/// N2 as the saturated kernel of Y^t C_{G'} restricted to the forest columns.
/// Throws ConsistencyError if the ranks disagree with (e/2, e/2 - n + l, deficiency).
LatticeDecomposition lattice_decomposition(const Network& net, const SpanningForest& forest);
LatticeDecomposition lattice_decomposition(const Network& net);

}  // namespace crn
