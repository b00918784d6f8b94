#include "crn/network.hpp"

#include "crn/linalg.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace crn {

namespace {

std::string pair_text(const Edge& e) {
  return "(" + std::to_string(e.source + 1) + "," + std::to_string(e.target + 1) + ")";
}

}  // namespace

std::optional<int> Network::edge_index(int source, int target) const {
  auto it = index_.find({source, target});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Network::complex_label(int i) const {
  std::string out;
  for (int k = 0; k < species_count(); ++k) {
    const int y = stoichiometry_(i, k);
    if (y == 0) continue;
    if (!out.empty()) out += " + ";
    if (y != 1) out += std::to_string(y) + "*";
    out += species_[static_cast<std::size_t>(k)];
  }
  return out.empty() ? "0" : out;
}

Network build_network(std::vector<std::string> species, const Matrix<int>& complexes,
                      const std::vector<Edge>& reactions) {
  const int s = static_cast<int>(species.size());
  const int n = static_cast<int>(complexes.rows());
  if (complexes.cols() != s)
    throw InvalidInput("complex matrix has " + std::to_string(complexes.cols()) + " columns, expected " +
                       std::to_string(s));
  std::set<std::string> names;
  for (const auto& name : species) {
    if (name.empty()) throw InvalidInput("empty species name");
    if (!names.insert(name).second) throw InvalidInput("duplicate species '" + name + "'");
  }
  if ((complexes.array() < 0).any()) throw InvalidInput("negative stoichiometric coefficient");
  std::map<std::vector<int>, int> seen;
  for (int i = 0; i < n; ++i) {
    std::vector<int> row;
    for (int k = 0; k < s; ++k) row.push_back(complexes(i, k));
    auto [it, fresh] = seen.emplace(row, i);
    if (!fresh)
      throw InvalidInput("duplicate complex: " + std::to_string(it->second + 1) + " and " +
                         std::to_string(i + 1));
  }

  std::set<std::pair<int, int>> directed;
  for (const Edge& r : reactions) {
    if (r.source < 0 || r.source >= n || r.target < 0 || r.target >= n)
      throw InvalidInput("reaction " + pair_text(r) + " references a missing complex");
    if (r.source == r.target) throw InvalidInput("self-loop at complex " + std::to_string(r.source + 1));
    if (!directed.emplace(r.source, r.target).second)
      throw InvalidInput("duplicate reaction " + pair_text(r));
  }
  for (const auto& [i, j] : directed)
    if (!directed.count({j, i})) throw InvalidInput("irreversible pair " + pair_text(Edge{i, j}));

  Network net;
  net.species_ = std::move(species);
  net.stoichiometry_ = complexes;
  for (const auto& [i, j] : directed) {
    if (i > j) continue;
    net.index_[{i, j}] = net.edge_count();
    net.edges_.push_back({i, j});
    net.index_[{j, i}] = net.edge_count();
    net.edges_.push_back({j, i});
  }
  net.adjacency_.assign(static_cast<std::size_t>(n), {});
  for (int e = 0; e < net.edge_count(); e += 2) {
    const Edge& ed = net.edges_[static_cast<std::size_t>(e)];
    net.adjacency_[static_cast<std::size_t>(ed.source)].push_back(ed.target);
    net.adjacency_[static_cast<std::size_t>(ed.target)].push_back(ed.source);
  }
  for (auto& adj : net.adjacency_) std::sort(adj.begin(), adj.end());
  return net;
}

Network build_network_from_pairs(std::vector<std::string> species, const Matrix<int>& complexes,
                                 const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> reactions;
  for (const auto& [i, j] : pairs) {
    reactions.push_back({i, j});
    reactions.push_back({j, i});
  }
  return build_network(std::move(species), complexes, reactions);
}

LinkageClasses linkage_classes(const Network& net) {
  LinkageClasses out;
  const int n = net.complex_count();
  out.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (out.class_of[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = out.count();
    std::vector<int> part;
    std::queue<int> frontier;
    frontier.push(start);
    out.class_of[static_cast<std::size_t>(start)] = id;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      part.push_back(v);
      for (int w : net.neighbours(v)) {
        if (out.class_of[static_cast<std::size_t>(w)] >= 0) continue;
        out.class_of[static_cast<std::size_t>(w)] = id;
        frontier.push(w);
      }
    }
    std::sort(part.begin(), part.end());
    out.members.push_back(std::move(part));
  }
  return out;
}

Matrix<int> incidence_matrix(const Network& net) {
  Matrix<int> c = Matrix<int>::Zero(net.complex_count(), net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) {
    c(net.edge(e).source, e) = -1;
    c(net.edge(e).target, e) = 1;
  }
  return c;
}

Matrix<int> reaction_vectors(const Network& net) {
  return net.stoichiometry().transpose() * incidence_matrix(net);
}

Matrix<int> pair_reaction_vectors(const Network& net) {
  Matrix<int> out(net.species_count(), net.pair_count());
  for (int k = 0; k < net.pair_count(); ++k) {
    const Edge& ed = net.edge(2 * k);
    out.col(k) = (net.complex(ed.target) - net.complex(ed.source)).transpose();
  }
  return out;
}

NetworkSummary summarize(const Network& net) {
  NetworkSummary out;
  out.n = net.complex_count();
  out.s = net.species_count();
  out.e = net.edge_count();
  out.ell = linkage_classes(net).count();

  IntMatrix gamma = to_big(pair_reaction_vectors(net));
  IntMatrix cols = gamma;
  std::vector<Eigen::Index> pivots = bareiss_echelon(cols);
  out.dim_s = static_cast<int>(pivots.size());
  out.s_basis.resize(out.s, out.dim_s);
  for (int j = 0; j < out.dim_s; ++j)
    for (int k = 0; k < out.s; ++k) out.s_basis(k, j) = Rational(gamma(k, pivots[static_cast<std::size_t>(j)]));

  out.deficiency = out.n - out.dim_s - out.ell;
  if (out.deficiency < 0) throw ConsistencyError("negative deficiency");
  return out;
}

}  // namespace crn
