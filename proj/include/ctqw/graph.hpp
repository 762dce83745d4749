#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace ctqw {

using Complex = std::complex<double>;

/// Coordinates in the stratum basis {|phi_k>}: one complex entry per stratum.
using StratumVector = Eigen::VectorXcd;

/// Unordered vertex pair, stored with first < second.
using Edge = std::pair<int, int>;

// Finite simple graph with a distinguished root vertex. Immutable after
// construction; the neighbor lists are built once so repeated adjacency
// application stays cheap.
class RootedGraph {
 public:
  RootedGraph() = default;

  // Edges may arrive in any order/orientation; they are normalized to
  // (min,max), sorted lexicographically and deduplicated. Self-loops and
  // out-of-range indices are rejected.
  RootedGraph(int vertex_count, std::vector<Edge> edges, int root,
              std::string label = {});

  int vertex_count() const { return vertex_count_; }
  int root() const { return root_; }
  const std::string& label() const { return label_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  int root_ = 0;
  std::string label_;
  std::vector<std::vector<int>> adjacency_;
};

// Partition of the vertices into shells V_k by shortest-path distance from
// the root; strata[0] = {root}, each stratum sorted by vertex index.
struct Stratification {
  std::vector<std::vector<int>> strata;

  int depth() const { return static_cast<int>(strata.size()); }
  int stratum_size(int k) const {
    return static_cast<int>(strata.at(k).size());
  }
  std::vector<int> sizes() const;
};

/// Path on n >= 1 vertices 0-1-...-(n-1), rooted at endpoint 0.
RootedGraph build_path(int n);

/// Cycle on n >= 3 vertices, rooted at vertex 0.
RootedGraph build_cycle(int n);

// Glue two rooted graphs at their roots: the connected component of
// (o1, o2) in the product adjacency. g1 keeps its vertex indices (and
// contributes the merged root); g2's non-root vertices are appended in
// their original order. The result has |V1| + |V2| - 1 vertices.
RootedGraph star_product(const RootedGraph& g1, const RootedGraph& g2);

// N copies of g glued at a common root. Vertex ordering is canonical so
// emitted artifacts are stable: merged root = 0, then copy-major with each
// copy's non-root vertices in their original relative order.
RootedGraph star_power(const RootedGraph& g, int copies);

/// rays paths of ray_length vertices each, glued at a common root vertex 0
/// (finite truncation of the star lattice).
RootedGraph build_star_lattice(int rays, int ray_length);

// BFS shells from the root. Throws std::domain_error naming an unreachable
// vertex if the graph is disconnected.
Stratification stratify(const RootedGraph& g);

bool is_connected(const RootedGraph& g);

/// Dense adjacency matrix of g (symmetric, 0/1, zero diagonal).
Eigen::MatrixXd adjacency_matrix(const RootedGraph& g);

// (Av)_a = sum of v_b over neighbors b of a. Accepts any dense vector
// expression; the scalar may be real or complex.
template <class Derived>
auto apply_adjacency(const RootedGraph& g, const Eigen::MatrixBase<Derived>& v)
    -> Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> {
  using Scalar = typename Derived::Scalar;
  if (v.size() != g.vertex_count())
    throw std::invalid_argument(
        "apply_adjacency: vector length " + std::to_string(v.size()) +
        " does not match vertex count " + std::to_string(g.vertex_count()));
  Eigen::Vector<Scalar, Eigen::Dynamic> out =
      Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(v.size());
  for (int a = 0; a < g.vertex_count(); ++a) {
    Scalar acc{};
    for (int b : g.neighbors(a)) acc += v(b);
    out(a) = acc;
  }
  return out;
}

/// Unit vector |phi_k> of stratum k in the full vertex space.
Eigen::VectorXd stratum_unit_vector(const Stratification& s, int k,
                                    int vertex_count);

}  // namespace ctqw
