#include "ctqw/graph.hpp"

#include <algorithm>
#include <queue>

namespace ctqw {

RootedGraph::RootedGraph(int vertex_count, std::vector<Edge> edges, int root,
                         std::string label)
    : vertex_count_(vertex_count), root_(root), label_(std::move(label)) {
  if (vertex_count <= 0)
    throw std::invalid_argument("RootedGraph: vertex_count must be positive");
  if (root < 0 || root >= vertex_count)
    throw std::invalid_argument("RootedGraph: root " + std::to_string(root) +
                                " out of range");
  for (auto& [a, b] : edges) {
    if (a == b)
      throw std::invalid_argument("RootedGraph: self-loop at vertex " +
                                  std::to_string(a));
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
      throw std::invalid_argument("RootedGraph: edge endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(vertex_count_, {});
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

std::vector<int> Stratification::sizes() const {
  std::vector<int> out(strata.size());
  for (std::size_t k = 0; k < strata.size(); ++k)
    out[k] = static_cast<int>(strata[k].size());
  return out;
}

RootedGraph build_path(int n) {
  if (n < 1) throw std::invalid_argument("build_path: n must be >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return RootedGraph(n, std::move(edges), 0, "path(" + std::to_string(n) + ")");
}

RootedGraph build_cycle(int n) {
  if (n < 3) throw std::invalid_argument("build_cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return RootedGraph(n, std::move(edges), 0,
                     "cycle(" + std::to_string(n) + ")");
}

RootedGraph star_product(const RootedGraph& g1, const RootedGraph& g2) {
  const int n1 = g1.vertex_count();
  // g2 vertex -> merged index; the root of g2 collapses onto g1's root.
  std::vector<int> map2(g2.vertex_count());
  int next = n1;
  for (int v = 0; v < g2.vertex_count(); ++v)
    map2[v] = (v == g2.root()) ? g1.root() : next++;

  std::vector<Edge> edges = g1.edges();
  for (const auto& [a, b] : g2.edges()) edges.emplace_back(map2[a], map2[b]);
  return RootedGraph(n1 + g2.vertex_count() - 1, std::move(edges), g1.root(),
                     g1.label() + "*" + g2.label());
}

RootedGraph star_power(const RootedGraph& g, int copies) {
  if (copies < 1) throw std::invalid_argument("star_power: N must be >= 1");
  const int per_copy = g.vertex_count() - 1;
  // Local index of each non-root vertex inside a copy block.
  std::vector<int> offset(g.vertex_count(), -1);
  int slot = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (v != g.root()) offset[v] = slot++;

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(copies) * g.edges().size());
  for (int c = 0; c < copies; ++c) {
    const int base = 1 + c * per_copy;
    auto map = [&](int v) { return v == g.root() ? 0 : base + offset[v]; };
    for (const auto& [a, b] : g.edges()) edges.emplace_back(map(a), map(b));
  }
  return RootedGraph(1 + copies * per_copy, std::move(edges), 0,
                     "star_power(" + g.label() + "," +
                         std::to_string(copies) + ")");
}

RootedGraph build_star_lattice(int rays, int ray_length) {
  if (rays < 1)
    throw std::invalid_argument("build_star_lattice: rays must be >= 1");
  if (ray_length < 1)
    throw std::invalid_argument("build_star_lattice: ray_length must be >= 1");
  RootedGraph g = star_power(build_path(ray_length + 1), rays);
  return RootedGraph(g.vertex_count(), g.edges(), g.root(),
                     "star_lattice(" + std::to_string(rays) + "," +
                         std::to_string(ray_length) + ")");
}

Stratification stratify(const RootedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> dist(n, -1);
  std::queue<int> queue;
  dist[g.root()] = 0;
  queue.push(g.root());
  int reached = 0, max_dist = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    ++reached;
    max_dist = std::max(max_dist, dist[v]);
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push(w);
      }
    }
  }
  if (reached != n) {
    int missing = 0;
    while (dist[missing] >= 0) ++missing;
    throw std::domain_error("stratify: graph is disconnected; vertex " +
                            std::to_string(missing) +
                            " is unreachable from root " +
                            std::to_string(g.root()));
  }
  Stratification s;
  s.strata.assign(max_dist + 1, {});
  for (int v = 0; v < n; ++v) s.strata[dist[v]].push_back(v);
  // Vertices were visited in index order per distance, but keep the sort
  // explicit: the ordering is part of the contract.
  for (auto& shell : s.strata) std::sort(shell.begin(), shell.end());
  return s;
}

bool is_connected(const RootedGraph& g) {
  try {
    stratify(g);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

Eigen::MatrixXd adjacency_matrix(const RootedGraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.vertex_count(), g.vertex_count());
  for (const auto& [i, j] : g.edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::VectorXd stratum_unit_vector(const Stratification& s, int k,
                                    int vertex_count) {
  const auto& shell = s.strata.at(k);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(vertex_count);
  const double coeff = 1.0 / std::sqrt(static_cast<double>(shell.size()));
  for (int v : shell) phi(v) = coeff;
  return phi;
}

}  // namespace ctqw
