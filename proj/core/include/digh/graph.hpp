#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace digh {

using Vertex = std::size_t;

struct Edge {
  Vertex src;
  Vertex dst;
  double weight;
};

/// @brief Weighted directed graph on vertices 0..n-1.
///
/// Parallel edges are merged by summing weights, zero weights are dropped and
/// negative or non-finite weights are rejected. Edges are kept sorted by
/// (src, dst).
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  Eigen::VectorXd out_degrees() const;
  Eigen::VectorXd in_degrees() const;
  Eigen::MatrixXd adjacency() const;

  // Indices into edges() of the out-edges of v.
  std::pair<std::size_t, std::size_t> out_range(Vertex v) const { return {offsets_[v], offsets_[v + 1]}; }

  bool has_self_loop() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
};

// Components sorted by smallest member; members sorted ascending.
std::vector<std::vector<Vertex>> strongly_connected_components(const DirectedGraph& g);
bool is_strongly_connected(const DirectedGraph& g);

struct Subgraph {
  DirectedGraph graph;
  std::vector<Vertex> to_original;  // new id -> original id
};

// Induced subgraph on the largest SCC; ties go to the component holding the
// smallest original vertex id.
Subgraph largest_scc_subgraph(const DirectedGraph& g);
Subgraph induced_subgraph(const DirectedGraph& g, const std::vector<Vertex>& vertices);

// W_sym = (W + W^T) / 2.
DirectedGraph symmetrize(const DirectedGraph& g);

// Edges i -> i+1 mod n.
DirectedGraph directed_cycle(std::size_t n);

// Cartesian product of directed cycles C_m and C_n; vertex (a, b) has id a*n + b.
DirectedGraph directed_torus(std::size_t m, std::size_t n);

// Directed Watts-Strogatz: each vertex starts linked to its k successors on the
// ring, then every edge is rewired with probability beta to a uniform target
// that is neither the source nor an existing target of the source.
DirectedGraph directed_watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed);

// Strongly connected random digraph: a random Hamiltonian cycle plus each
// remaining ordered pair with probability edge_prob, weights in [0.5, 1.5).
DirectedGraph random_strongly_connected(std::size_t n, double edge_prob, std::uint64_t seed);

}  // namespace digh
