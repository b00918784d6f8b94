#include "crn/lattice.hpp"

#include "crn/linalg.hpp"

#include <algorithm>
#include <queue>

namespace crn {

SpanningForest spanning_forest(const Network& net) {
  const int n = net.complex_count();
  SpanningForest f;
  f.parent.assign(static_cast<std::size_t>(n), -1);
  f.depth.assign(static_cast<std::size_t>(n), -1);
  f.in_forest.assign(static_cast<std::size_t>(net.pair_count()), false);
  for (int start = 0; start < n; ++start) {
    if (f.depth[static_cast<std::size_t>(start)] >= 0) continue;
    f.roots.push_back(start);
    f.depth[static_cast<std::size_t>(start)] = 0;
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (int w : net.neighbours(v)) {
        if (f.depth[static_cast<std::size_t>(w)] >= 0) continue;
        f.depth[static_cast<std::size_t>(w)] = f.depth[static_cast<std::size_t>(v)] + 1;
        f.parent[static_cast<std::size_t>(w)] = v;
        const int pair = *net.edge_index(v, w) / 2;
        f.in_forest[static_cast<std::size_t>(pair)] = true;
        f.pairs.push_back(pair);
        frontier.push(w);
      }
    }
  }
  std::sort(f.pairs.begin(), f.pairs.end());
  return f;
}

std::vector<int> CycleVector::forward_edges(const Network& net) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < vertices.size(); ++k)
    out.push_back(*net.edge_index(vertices[k], vertices[(k + 1) % vertices.size()]));
  return out;
}

std::vector<CycleVector> fundamental_cycles(const Network& net, const SpanningForest& forest) {
  std::vector<CycleVector> out;
  for (int k = 0; k < net.pair_count(); ++k) {
    if (forest.in_forest[static_cast<std::size_t>(k)]) continue;
    const int a = net.edge(2 * k).source, b = net.edge(2 * k).target;
    // Tree paths from a and b up to their lowest common ancestor.
    std::vector<int> up_a{a}, up_b{b};
    int x = a, y = b;
    while (x != y) {
      if (forest.depth[static_cast<std::size_t>(x)] >= forest.depth[static_cast<std::size_t>(y)]) {
        x = forest.parent[static_cast<std::size_t>(x)];
        up_a.push_back(x);
      } else {
        y = forest.parent[static_cast<std::size_t>(y)];
        up_b.push_back(y);
      }
    }
    // a -> b, then b up to the ancestor, then down to a.
    CycleVector c;
    c.closing_pair = k;
    std::vector<int> walk = up_b;
    for (auto idx = static_cast<std::ptrdiff_t>(up_a.size()) - 2; idx >= 0; --idx)
      walk.push_back(up_a[static_cast<std::size_t>(idx)]);
    c.vertices.push_back(a);
    c.vertices.insert(c.vertices.end(), walk.begin(), walk.end() - 1);
    c.coords = Vector<int>::Zero(net.pair_count());
    for (std::size_t s = 0; s < c.vertices.size(); ++s) {
      const int u = c.vertices[s], v = c.vertices[(s + 1) % c.vertices.size()];
      const int e = *net.edge_index(u, v);
      c.coords(e / 2) += Network::is_forward(e) ? 1 : -1;
    }
    out.push_back(std::move(c));
  }
  return out;
}

IntMatrix LatticeDecomposition::combined() const {
  IntMatrix out(n0.rows(), n0.cols() + n1.cols() + n2.cols());
  out << n0, n1, n2;
  return out;
}

LatticeDecomposition lattice_decomposition(const Network& net, const SpanningForest& forest) {
  const int e = net.edge_count(), pairs = net.pair_count();
  LatticeDecomposition d;

  d.n0 = IntMatrix::Zero(e, pairs);
  for (int k = 0; k < pairs; ++k) d.n0(2 * k, k) = d.n0(2 * k + 1, k) = 1;

  const auto cycles = fundamental_cycles(net, forest);
  d.n1.resize(e, static_cast<Eigen::Index>(cycles.size()));
  for (std::size_t c = 0; c < cycles.size(); ++c)
    d.n1.col(static_cast<Eigen::Index>(c)) = lift_to_edges(net, cycles[c].coords);

  const Matrix<int> gamma = pair_reaction_vectors(net);
  IntMatrix restricted(gamma.rows(), forest.edge_count());
  for (int t = 0; t < forest.edge_count(); ++t)
    restricted.col(t) = to_big(gamma.col(forest.pairs[static_cast<std::size_t>(t)]));
  const IntMatrix kernel = integer_kernel(restricted);
  d.n2 = IntMatrix::Zero(e, kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c)
    for (int t = 0; t < forest.edge_count(); ++t)
      d.n2(2 * forest.pairs[static_cast<std::size_t>(t)], c) = kernel(t, c);

  const NetworkSummary summary = summarize(net);
  const int expected_n1 = pairs - summary.n + summary.ell;
  if (d.rank_n1() != expected_n1 || d.rank_n2() != summary.deficiency)
    throw ConsistencyError("lattice ranks (" + std::to_string(d.rank_n0()) + "," + std::to_string(d.rank_n1()) +
                           "," + std::to_string(d.rank_n2()) + ") disagree with (" + std::to_string(pairs) + "," +
                           std::to_string(expected_n1) + "," + std::to_string(summary.deficiency) + ")");
  return d;
}

LatticeDecomposition lattice_decomposition(const Network& net) {
  return lattice_decomposition(net, spanning_forest(net));
}

}  // namespace crn
