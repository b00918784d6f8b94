#pragma once

#include "crn/network.hpp"

#include <vector>

namespace crn {

/// Positive rate constants, one per edge in the network's edge numbering.
class RateAssignment {
 public:
  RateAssignment() = default;
  /// Throws InvalidInput if the length does not match or a rate is not positive.
  RateAssignment(const Network& net, RationalVector kappa);

  /// Sets every rate to `value`.
  static RateAssignment constant(const Network& net, const Rational& value);

  const RationalVector& values() const { return kappa_; }
  const Rational& operator[](int e) const { return kappa_(e); }
  int size() const { return static_cast<int>(kappa_.size()); }
  Vector<double> to_double() const;

 private:
  RationalVector kappa_;
};

/// A_kappa, the negative Laplacian: off-diagonal (i, j) = kappa_ij, zero row sums.
template <typename Scalar>
Matrix<Scalar> laplacian(const Network& net, const Vector<Scalar>& kappa) {
  if (kappa.size() != net.edge_count())
    throw InvalidInput("rate vector has length " + std::to_string(kappa.size()) + ", expected " +
                       std::to_string(net.edge_count()));
  Matrix<Scalar> a = Matrix<Scalar>::Zero(net.complex_count(), net.complex_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    a(ed.source, ed.target) += kappa(e);
    a(ed.source, ed.source) -= kappa(e);
  }
  return a;
}

inline RationalMatrix laplacian(const Network& net, const RateAssignment& rates) {
  return laplacian<Rational>(net, rates.values());
}

/// A spanning tree of one linkage class with every edge directed towards `root`.
struct DirectedTree {
  int root = 0;
  std::vector<Edge> edges;  // sorted lexicographically by (source, target)

  friend bool operator==(const DirectedTree&, const DirectedTree&) = default;
  friend auto operator<=>(const DirectedTree&, const DirectedTree&) = default;
};

/// Classes larger than this are not enumerated.
inline constexpr int kMaxEnumerationClassSize = 12;

/// Undirected spanning trees of the class containing `members`, each as a
/// sorted list of pair indices.
std::vector<std::vector<int>> undirected_spanning_trees(const Network& net, const std::vector<int>& members);

/// Orients a spanning tree (pair indices) of a class towards `root`.
DirectedTree orient_towards(const Network& net, const std::vector<int>& tree_pairs, int root);

/// All i-trees of the linkage class of i, in canonical order (lexicographic
/// on the sorted edge lists). Throws InvalidInput if the class has more than
/// kMaxEnumerationClassSize vertices.
std::vector<DirectedTree> enumerate_i_trees(const Network& net, int i);

/// Number of i-trees, from the unit-weight Matrix-Tree minor. Never enumerates.
BigInt count_i_trees(const Network& net, int i);

/// True iff `tree` is an i-tree of the class of i for i = tree.root.
bool is_rooted_tree(const Network& net, const DirectedTree& tree);

/// kappa^T, the product of the rates on the tree's edges.
Rational tree_weight(const Network& net, const RateAssignment& rates, const DirectedTree& tree);

enum class TreeMethod { minor, enumeration };

/// K_i for every vertex. The minor method takes |det| of the class block of
/// A_kappa with row i and column i removed; the enumeration method sums
/// kappa^T over the i-trees.
RationalVector tree_constants(const Network& net, const RateAssignment& rates,
                              TreeMethod method = TreeMethod::minor);

/// |det| of A_kappa restricted to the class of i, with row i and column `column`
/// (any class vertex) removed.
Rational tree_minor(const Network& net, const RateAssignment& rates, int i, int column);

/// q_ij = kappa_ij / kappa_ji and Q_ij = K_j / K_i, per edge.
struct RatioVectors {
  RationalVector q;
  RationalVector Q;
};

RatioVectors ratio_vectors(const Network& net, const RateAssignment& rates, const RationalVector& tree_constants);

/// Maps a j-tree to an i-tree for the edge (i, j): the edge is flipped if it
/// is in the tree, otherwise the tree path from i to j is reversed. The map is
/// a bijection from j-trees onto i-trees. Throws InvalidInput if `j_tree` is
/// not rooted at j or (i, j) is not an edge.
DirectedTree tree_bijection(const Network& net, const DirectedTree& j_tree, Edge edge);

}  // namespace crn
