#pragma once

#include "crn/types.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace crn {

/// A directed reaction between complexes (0-based indices).
struct Edge {
  int source = 0;
  int target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Reversible reaction network G = (V, E) with complexes labelled by the rows
/// of the stoichiometric matrix Y (n x s).
///
/// Edges come in reversible pairs. Pairs are numbered by (min, max) of their
/// endpoints; pair k owns edge 2k = (min, max) and edge 2k+1 = (max, min), so
/// the reverse of edge e is e ^ 1 and the even edges form the half graph G'.
class Network {
 public:
  Network() = default;

  int species_count() const { return static_cast<int>(species_.size()); }
  int complex_count() const { return static_cast<int>(stoichiometry_.rows()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int pair_count() const { return edge_count() / 2; }

  const std::vector<std::string>& species() const { return species_; }
  /// Y: row i holds the stoichiometric coefficients of complex i.
  const Matrix<int>& stoichiometry() const { return stoichiometry_; }
  Eigen::Ref<const Eigen::RowVectorXi> complex(int i) const { return stoichiometry_.row(i); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  static int reverse(int e) { return e ^ 1; }
  static bool is_forward(int e) { return (e & 1) == 0; }

  std::optional<int> edge_index(int source, int target) const;
  /// Neighbours of vertex v in the undirected graph, increasing.
  const std::vector<int>& neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  /// "2*a + b" style label, "0" for the zero complex.
  std::string complex_label(int i) const;

 private:
  friend Network build_network(std::vector<std::string>, const Matrix<int>&,
                               const std::vector<Edge>&);
  std::vector<std::string> species_;
  Matrix<int> stoichiometry_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::map<std::pair<int, int>, int> index_;
};

/// Builds a network from directed reactions. Every reaction must appear
/// together with its reverse. Throws InvalidInput on duplicate or invalid
/// species names, duplicate complexes, negative coefficients, dangling
/// indices, self loops, duplicate reactions and irreversible pairs.
Network build_network(std::vector<std::string> species, const Matrix<int>& complexes,
                      const std::vector<Edge>& reactions);

/// Convenience for reversible pairs {i, j}; both directions are added.
Network build_network_from_pairs(std::vector<std::string> species, const Matrix<int>& complexes,
                                 const std::vector<std::pair<int, int>>& pairs);

struct LinkageClasses {
  std::vector<int> class_of;                 // vertex -> class index
  std::vector<std::vector<int>> members;     // ordered by smallest vertex
  int count() const { return static_cast<int>(members.size()); }
};

LinkageClasses linkage_classes(const Network& net);

/// C_G (n x e): column for edge (i, j) has -1 in row i and +1 in row j.
Matrix<int> incidence_matrix(const Network& net);

/// Y^t C_G (s x e), the reaction vectors y_j - y_i as columns.
Matrix<int> reaction_vectors(const Network& net);

/// Y^t C_{G'} (s x e/2), one column per reversible pair (forward direction).
Matrix<int> pair_reaction_vectors(const Network& net);

struct NetworkSummary {
  int n = 0;
  int s = 0;
  int e = 0;
  int ell = 0;
  int dim_s = 0;
  int deficiency = 0;
  /// Rational basis of the stoichiometric subspace S (columns).
  RationalMatrix s_basis;
};

NetworkSummary summarize(const Network& net);

/// Psi(c) = (c^{y_1}, ..., c^{y_n}). Exact for rational input. Zero entries
/// of c are allowed when `allow_zero` is set (monomials then evaluate to 0 or 1).
template <typename Scalar>
Vector<Scalar> psi(const Network& net, const Vector<Scalar>& c, bool allow_zero = false) {
  if (c.size() != net.species_count())
    throw InvalidInput("concentration vector has length " + std::to_string(c.size()) +
                       ", expected " + std::to_string(net.species_count()));
  for (Eigen::Index k = 0; k < c.size(); ++k)
    if (c(k) < 0 || (!allow_zero && c(k) == 0))
      throw InvalidInput("concentration of species '" + net.species()[static_cast<std::size_t>(k)] +
                         "' must be positive");
  Vector<Scalar> out(net.complex_count());
  for (int i = 0; i < net.complex_count(); ++i) {
    Scalar m(1);
    for (int k = 0; k < net.species_count(); ++k)
      for (int p = 0; p < net.stoichiometry()(i, k); ++p) m *= c(k);
    out(i) = m;
  }
  return out;
}

}  // namespace crn
