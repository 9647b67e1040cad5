#include "digh/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digh/errors.hpp"
#include "digh/random.hpp"

namespace digh {

DirectedGraph::DirectedGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw InputError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") out of range for " + std::to_string(n) + " vertices");
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InputError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                       ") has invalid weight " + std::to_string(e.weight));
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.src != b.src ? a.src < b.src : a.dst < b.dst; });
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().src == e.src && edges_.back().dst == e.dst) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }
  std::erase_if(edges_, [](const Edge& e) { return e.weight == 0.0; });

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.src + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

Eigen::VectorXd DirectedGraph::out_degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  for (const Edge& e : edges_) d(static_cast<Eigen::Index>(e.src)) += e.weight;
  return d;
}

Eigen::VectorXd DirectedGraph::in_degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  for (const Edge& e : edges_) d(static_cast<Eigen::Index>(e.dst)) += e.weight;
  return d;
}

Eigen::MatrixXd DirectedGraph::adjacency() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) W(static_cast<Eigen::Index>(e.src), static_cast<Eigen::Index>(e.dst)) = e.weight;
  return W;
}

bool DirectedGraph::has_self_loop() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.src == e.dst; });
}

// Iterative Tarjan.
std::vector<std::vector<Vertex>> strongly_connected_components(const DirectedGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), next_edge(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Vertex> stack, call;
  std::vector<std::vector<Vertex>> comps;
  std::size_t counter = 0;
  const auto& edges = g.edges();

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back(root);
    while (!call.empty()) {
      const Vertex v = call.back();
      if (index[v] == unvisited) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        next_edge[v] = g.out_range(v).first;
      }
      const std::size_t end = g.out_range(v).second;
      bool descended = false;
      while (next_edge[v] < end) {
        const Vertex w = edges[next_edge[v]].dst;
        if (index[w] == unvisited) {
          call.push_back(w);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
        ++next_edge[v];
      }
      if (descended) continue;

      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) {
        const Vertex parent = call.back();
        low[parent] = std::min(low[parent], low[v]);
        ++next_edge[parent];
      }
    }
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

bool is_strongly_connected(const DirectedGraph& g) {
  return g.size() > 0 && strongly_connected_components(g).size() == 1;
}

Subgraph induced_subgraph(const DirectedGraph& g, const std::vector<Vertex>& vertices) {
  constexpr std::size_t absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> to_new(g.size(), absent);
  for (std::size_t i = 0; i < vertices.size(); ++i) to_new.at(vertices[i]) = i;
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (to_new[e.src] != absent && to_new[e.dst] != absent) edges.push_back({to_new[e.src], to_new[e.dst], e.weight});
  }
  return {DirectedGraph(vertices.size(), std::move(edges)), vertices};
}

Subgraph largest_scc_subgraph(const DirectedGraph& g) {
  if (g.size() == 0) throw InputError("largest_scc_subgraph: empty graph");
  const auto comps = strongly_connected_components(g);
  // comps are ordered by smallest member, so the first maximum wins ties.
  const auto best = std::max_element(comps.begin(), comps.end(),
                                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return induced_subgraph(g, *best);
}

DirectedGraph symmetrize(const DirectedGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    edges.push_back({e.src, e.dst, e.weight / 2});
    edges.push_back({e.dst, e.src, e.weight / 2});
  }
  return DirectedGraph(g.size(), std::move(edges));
}

DirectedGraph directed_cycle(std::size_t n) {
  if (n < 2) throw InputError("directed_cycle: need n >= 2");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph directed_torus(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) throw InputError("directed_torus: need m, n >= 2");
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t v = a * n + b;
      edges.push_back({v, ((a + 1) % m) * n + b, 1.0});
      edges.push_back({v, a * n + (b + 1) % n, 1.0});
    }
  }
  return DirectedGraph(m * n, std::move(edges));
}

DirectedGraph directed_watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
  if (k == 0 || n <= 2 * k) throw InputError("directed_watts_strogatz: need k >= 1 and n > 2k");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InputError("directed_watts_strogatz: beta must be in [0, 1]");

  std::vector<std::vector<Vertex>> targets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o = 1; o <= k; ++o) targets[i].push_back((i + o) % n);

  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto& t = targets[i];
    for (std::size_t o = 0; o < k; ++o) {
      if (!rng.bernoulli(beta)) continue;
      Vertex candidate;
      do {
        candidate = rng.below(n);
      } while (candidate == i || std::find(t.begin(), t.end(), candidate) != t.end());
      t[o] = candidate;
    }
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (Vertex v : targets[i]) edges.push_back({i, v, 1.0});
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph random_strongly_connected(std::size_t n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw InputError("random_strongly_connected: need n >= 2");
  Rng rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({order[i], order[(i + 1) % n], 0.5 + rng.uniform()});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && rng.bernoulli(edge_prob)) edges.push_back({u, v, 0.5 + rng.uniform()});
  return DirectedGraph(n, std::move(edges));
}

}  // namespace digh
