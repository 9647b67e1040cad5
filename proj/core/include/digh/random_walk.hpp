#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <memory>

#include "digh/graph.hpp"

namespace digh {

enum class StationaryMethod { automatic, power, direct };

struct StationaryOptions {
  StationaryMethod method = StationaryMethod::automatic;
  double tol = 1e-12;
  std::size_t max_iter = 1'000'000;
};

// Left Perron vector of a row-stochastic irreducible matrix, l1-normalized.
// automatic uses the direct solve for N <= 2000 and power iteration above.
// Power iteration switches to the lazy chain (P + I) / 2 when it detects
// oscillation; that chain has the same stationary distribution.
Eigen::VectorXd compute_stationary(const Eigen::MatrixXd& P, const StationaryOptions& opts = {});

// Period of the Markov chain on the support of P (assumed irreducible),
// via BFS levels: gcd over edges u->v of level(u) + 1 - level(v).
std::size_t chain_period(const Eigen::MatrixXd& P);

/// @brief Irreducible random walk with its stationary distribution.
class RandomWalk {
 public:
  // P = D^{-1} W. Throws DanglingNodeError or ConnectivityError.
  static RandomWalk from_graph(const DirectedGraph& g, const StationaryOptions& opts = {});

  // Validates row-stochasticity (1e-12) and irreducibility.
  static RandomWalk from_transition(Eigen::MatrixXd P, const StationaryOptions& opts = {});

  const Eigen::MatrixXd& transition() const { return P_; }
  const Eigen::VectorXd& stationary() const { return pi_; }
  bool ergodic() const { return ergodic_; }
  std::size_t period() const { return period_; }
  std::size_t size() const { return static_cast<std::size_t>(P_.rows()); }

  // Graph the walk was built from; null for derived walks.
  const std::shared_ptr<const DirectedGraph>& source_graph() const { return graph_; }

 private:
  RandomWalk(Eigen::MatrixXd P, Eigen::VectorXd pi, std::shared_ptr<const DirectedGraph> g);

  Eigen::MatrixXd P_;
  Eigen::VectorXd pi_;
  bool ergodic_ = false;
  std::size_t period_ = 1;
  std::shared_ptr<const DirectedGraph> graph_;

  friend RandomWalk with_transition(const RandomWalk&, Eigen::MatrixXd);
};

// Walk sharing the stationary distribution of base (no recomputation).
RandomWalk with_transition(const RandomWalk& base, Eigen::MatrixXd P);

// (1 - gamma) P + gamma I, gamma in [0, 1).
RandomWalk lazy(const RandomWalk& w, double gamma = 0.5);

// P* = Pi^{-1} P^T Pi.
RandomWalk time_reversal(const RandomWalk& w);

// (1 - alpha) P + alpha P*, alpha in [0, 1].
RandomWalk reversibilized(const RandomWalk& w, double alpha);

// Dangling rows become uniform, then (1 - damping) S + damping 11^T / N.
RandomWalk google_matrix(const DirectedGraph& g, double damping = 0.85);

// Walk on W + eps 11^T / N.
RandomWalk rank_one_walk(const DirectedGraph& g, double eps = 1e-4);

// T = Pi^{1/2} P Pi^{-1/2}.
Eigen::MatrixXd similar_operator(const RandomWalk& w);

// phi: l2(V) -> l2(V, pi), f -> Pi^{-1/2} f. Preserves inner products.
Eigen::VectorXd isometry_to_pi(const Eigen::VectorXd& f, const Eigen::VectorXd& pi);
// phi^{-1}: f -> Pi^{1/2} f.
Eigen::VectorXd isometry_from_pi(const Eigen::VectorXd& f, const Eigen::VectorXd& pi);

// <f, g>_pi = sum conj(f) g pi.
std::complex<double> inner_pi(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, const Eigen::VectorXd& pi);

}  // namespace digh
