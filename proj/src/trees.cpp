#include "crn/trees.hpp"

#include "crn/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace crn {

RateAssignment::RateAssignment(const Network& net, RationalVector kappa) : kappa_(std::move(kappa)) {
  if (kappa_.size() != net.edge_count())
    throw InvalidInput("rate vector has length " + std::to_string(kappa_.size()) + ", expected " +
                       std::to_string(net.edge_count()));
  for (int e = 0; e < kappa_.size(); ++e)
    if (kappa_(e) <= 0)
      throw InvalidInput("rate of edge (" + std::to_string(net.edge(e).source + 1) + "," +
                         std::to_string(net.edge(e).target + 1) + ") must be positive");
}

RateAssignment RateAssignment::constant(const Network& net, const Rational& value) {
  return RateAssignment(net, RationalVector::Constant(net.edge_count(), value));
}

Vector<double> RateAssignment::to_double() const {
  Vector<double> out(kappa_.size());
  for (Eigen::Index e = 0; e < kappa_.size(); ++e) out(e) = crn::to_double(kappa_(e));
  return out;
}

namespace {

std::vector<int> class_members_of(const Network& net, int i) {
  LinkageClasses lc = linkage_classes(net);
  return lc.members[static_cast<std::size_t>(lc.class_of[static_cast<std::size_t>(i)])];
}

std::vector<int> class_pairs(const Network& net, const std::vector<int>& members) {
  std::vector<int> pairs;
  for (int k = 0; k < net.pair_count(); ++k)
    if (std::binary_search(members.begin(), members.end(), net.edge(2 * k).source)) pairs.push_back(k);
  return pairs;
}

// Union-find with undo, for backtracking.
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) const {
    while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    history_.push_back(b);
    return true;
  }
  void undo() {
    int b = history_.back();
    history_.pop_back();
    int a = parent_[static_cast<std::size_t>(b)];
    size_[static_cast<std::size_t>(a)] -= size_[static_cast<std::size_t>(b)];
    parent_[static_cast<std::size_t>(b)] = b;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> history_;
};

}  // namespace

std::vector<std::vector<int>> undirected_spanning_trees(const Network& net, const std::vector<int>& members) {
  const std::vector<int> pairs = class_pairs(net, members);
  const int needed = static_cast<int>(members.size()) - 1;
  std::vector<std::vector<int>> out;
  RollbackDsu dsu(net.complex_count());
  std::vector<int> chosen;

  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (static_cast<int>(chosen.size()) == needed) {
      out.push_back(chosen);
      return;
    }
    if (static_cast<int>(pairs.size() - idx) < needed - static_cast<int>(chosen.size())) return;
    const Edge& ed = net.edge(2 * pairs[idx]);
    if (dsu.unite(ed.source, ed.target)) {
      chosen.push_back(pairs[idx]);
      walk(idx + 1);
      chosen.pop_back();
      dsu.undo();
    }
    walk(idx + 1);
  };
  walk(0);
  return out;
}

DirectedTree orient_towards(const Network& net, const std::vector<int>& tree_pairs, int root) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(net.complex_count()));
  for (int k : tree_pairs) {
    const Edge& ed = net.edge(2 * k);
    adj[static_cast<std::size_t>(ed.source)].push_back(ed.target);
    adj[static_cast<std::size_t>(ed.target)].push_back(ed.source);
  }
  DirectedTree tree{root, {}};
  std::vector<bool> seen(static_cast<std::size_t>(net.complex_count()), false);
  std::queue<int> frontier;
  frontier.push(root);
  seen[static_cast<std::size_t>(root)] = true;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      tree.edges.push_back({w, v});
      frontier.push(w);
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

std::vector<DirectedTree> enumerate_i_trees(const Network& net, int i) {
  if (i < 0 || i >= net.complex_count()) throw InvalidInput("vertex out of range");
  const std::vector<int> members = class_members_of(net, i);
  if (static_cast<int>(members.size()) > kMaxEnumerationClassSize)
    throw InvalidInput("linkage class of vertex " + std::to_string(i + 1) + " has " +
                       std::to_string(members.size()) + " vertices; enumeration is limited to " +
                       std::to_string(kMaxEnumerationClassSize));
  std::vector<DirectedTree> out;
  for (const auto& t : undirected_spanning_trees(net, members)) out.push_back(orient_towards(net, t, i));
  std::sort(out.begin(), out.end());
  return out;
}

BigInt count_i_trees(const Network& net, int i) {
  Rational k = tree_minor(net, RateAssignment::constant(net, 1), i, i);
  return numerator(k);
}

bool is_rooted_tree(const Network& net, const DirectedTree& tree) {
  const int n = net.complex_count();
  if (tree.root < 0 || tree.root >= n) return false;
  const std::vector<int> members = class_members_of(net, tree.root);
  if (tree.edges.size() + 1 != members.size()) return false;
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  for (const Edge& ed : tree.edges) {
    if (!net.edge_index(ed.source, ed.target)) return false;
    if (ed.source == tree.root) return false;
    if (next[static_cast<std::size_t>(ed.source)] != -1) return false;
    next[static_cast<std::size_t>(ed.source)] = ed.target;
  }
  for (int v : members) {
    if (v == tree.root) continue;
    int u = v;
    for (std::size_t steps = 0; u != tree.root; ++steps) {
      if (u < 0 || steps > members.size()) return false;
      u = next[static_cast<std::size_t>(u)];
    }
  }
  return true;
}

Rational tree_weight(const Network& net, const RateAssignment& rates, const DirectedTree& tree) {
  Rational w = 1;
  for (const Edge& ed : tree.edges) w *= rates[*net.edge_index(ed.source, ed.target)];
  return w;
}

Rational tree_minor(const Network& net, const RateAssignment& rates, int i, int column) {
  const std::vector<int> members = class_members_of(net, i);
  const RationalMatrix a = laplacian(net, rates);
  const auto pos = [&](int v) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) throw InvalidInput("column vertex outside the class of the row vertex");
    return static_cast<Eigen::Index>(it - members.begin());
  };
  const Eigen::Index row_skip = pos(i), col_skip = pos(column);
  const Eigen::Index m = static_cast<Eigen::Index>(members.size());
  RationalMatrix minor(m - 1, m - 1);
  for (Eigen::Index r = 0, rr = 0; r < m; ++r) {
    if (r == row_skip) continue;
    for (Eigen::Index c = 0, cc = 0; c < m; ++c) {
      if (c == col_skip) continue;
      minor(rr, cc++) = a(members[static_cast<std::size_t>(r)], members[static_cast<std::size_t>(c)]);
    }
    ++rr;
  }
  return abs(determinant(minor));
}

RationalVector tree_constants(const Network& net, const RateAssignment& rates, TreeMethod method) {
  const int n = net.complex_count();
  RationalVector k(n);
  if (method == TreeMethod::minor) {
    for (int i = 0; i < n; ++i) k(i) = tree_minor(net, rates, i, i);
    return k;
  }
  const LinkageClasses lc = linkage_classes(net);
  for (const auto& members : lc.members) {
    if (static_cast<int>(members.size()) > kMaxEnumerationClassSize)
      throw InvalidInput("linkage class too large for enumeration (" + std::to_string(members.size()) +
                         " vertices)");
    const auto trees = undirected_spanning_trees(net, members);
    for (int root : members) {
      Rational sum = 0;
      for (const auto& t : trees) sum += tree_weight(net, rates, orient_towards(net, t, root));
      k(root) = sum;
    }
  }
  return k;
}

RatioVectors ratio_vectors(const Network& net, const RateAssignment& rates, const RationalVector& tree_constants) {
  if (tree_constants.size() != net.complex_count()) throw InvalidInput("tree constant vector has wrong length");
  RatioVectors out{RationalVector(net.edge_count()), RationalVector(net.edge_count())};
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge& ed = net.edge(e);
    out.q(e) = rates[e] / rates[Network::reverse(e)];
    out.Q(e) = tree_constants(ed.target) / tree_constants(ed.source);
  }
  return out;
}

DirectedTree tree_bijection(const Network& net, const DirectedTree& j_tree, Edge edge) {
  if (!net.edge_index(edge.source, edge.target))
    throw InvalidInput("(" + std::to_string(edge.source + 1) + "," + std::to_string(edge.target + 1) +
                       ") is not an edge");
  if (j_tree.root != edge.target || !is_rooted_tree(net, j_tree))
    throw InvalidInput("input is not a " + std::to_string(edge.target + 1) + "-tree");

  DirectedTree out{edge.source, j_tree.edges};
  auto it = std::find(out.edges.begin(), out.edges.end(), edge);
  if (it != out.edges.end()) {
    *it = Edge{edge.target, edge.source};
  } else {
    // The fundamental cycle of (i, j) is that edge plus the tree path i -> j;
    // reversing the path makes i the sink.
    std::vector<int> next(static_cast<std::size_t>(net.complex_count()), -1);
    for (const Edge& ed : j_tree.edges) next[static_cast<std::size_t>(ed.source)] = ed.target;
    for (int u = edge.source; u != edge.target; u = next[static_cast<std::size_t>(u)]) {
      const Edge step{u, next[static_cast<std::size_t>(u)]};
      *std::find(out.edges.begin(), out.edges.end(), step) = Edge{step.target, step.source};
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  if (!is_rooted_tree(net, out)) throw ConsistencyError("tree bijection produced a non-tree");
  return out;
}

}  // namespace crn
