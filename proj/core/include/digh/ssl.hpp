#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "digh/graph.hpp"
#include "digh/random_walk.hpp"
#include "digh/wavelet_frame.hpp"

namespace digh {

struct LabelProblem {
  Eigen::VectorXd labels;  // +1 / -1 on known vertices, 0 elsewhere
  double gamma = 0.0;

  Eigen::VectorXd known_mask() const;  // diagonal of M_l
  static LabelProblem from_known(const Eigen::VectorXd& truth, const std::vector<std::size_t>& known, double gamma);
};

struct SslResult {
  Eigen::VectorXd scores;  // continuous minimizer, before sign
  Eigen::VectorXd labels;  // sign(scores), sign(0) = +1
};

enum class SignalSpace { counting, stationary };

// counting:   (I + gamma X) f = M_l y, X symmetric PSD (normalized Laplacian).
// stationary: (I + gamma X) f = M_l y with X self-adjoint in l2(V, pi)
//             (random-walk Laplacian); solved as the SPD system
//             Pi (I + gamma X) f = Pi M_l y.
SslResult ssl_l2(const LabelProblem& problem, const Eigen::MatrixXd& X, SignalSpace space,
                 const Eigen::VectorXd& pi = Eigen::VectorXd());

// W / sigma_max(W).
Eigen::MatrixXd normalized_adjacency(const Eigen::MatrixXd& W);

// (M_l + gamma R_M) f = M_l y, R_M = (I - W_norm)^T (I - W_norm).
SslResult ssl_l2_moura(const LabelProblem& problem, const Eigen::MatrixXd& W_norm);

struct L1Options {
  double lambda = 0.1;
  std::size_t max_iter = 20000;
  double tol = 1e-12;
};

struct L1Result {
  SslResult solution;
  Eigen::VectorXd coefficients;   // w, length N (J+1)
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;
};

// min ||M_l y - M_l K w||^2 + lambda ||w||_1 by FISTA with restart,
// K the synthesis stack of the bank.
L1Result ssl_l1(const LabelProblem& problem, const FrameOperators& bank, const L1Options& opts = {});

// Objective value used by ssl_l1 (exposed for oracles).
double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double lambda);

// H_j = exp(-L t_j), G_1 = I - H_1, G_j = H_{j-1} - H_j; analysis filters are
// identities so the bank telescopes to I. L must be symmetric.
FrameOperators heat_kernel_bank(const Eigen::MatrixXd& L, const std::vector<double>& scales = {2.0, 4.0});

enum class SslMethod {
  normalized,            // directed normalized Laplacian, counting space
  random_walk,           // random-walk Laplacian, stationary space
  adjacency,             // R_M with normalized adjacency
  normalized_sym,        // same on W_sym
  random_walk_sym,
  adjacency_sym,
  wavelet_l1,            // heat-kernel frame, l1 synthesis
};

std::string method_name(SslMethod m);
SslMethod parse_method(const std::string& name);
std::vector<SslMethod> all_methods();

// 0 plus 21 log-spaced points in (1e-3, 10].
std::vector<double> default_gamma_grid();

struct SslConfig {
  std::vector<SslMethod> methods = all_methods();
  std::vector<double> known_fractions = {0.1};
  std::size_t realizations = 20;
  std::vector<double> gamma_grid = default_gamma_grid();
  std::vector<double> lambda_grid = {1e-3, 1e-2, 1e-1, 1.0};
  std::vector<double> heat_scales = {2.0, 4.0};
  std::uint64_t seed = 0;
};

struct SslRow {
  std::string method;
  double p = 0.0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  double best_param = 0.0;  // median of the per-realization choices
  std::size_t degenerate_splits = 0;
};

/// @brief Repeated random-split evaluation.
///
/// Per realization: ceil(pN) vertices are revealed; the parameter is picked
/// by two-fold cross-validation inside the revealed set; the method is then
/// refit on the whole revealed set and scored on the hidden vertices.
std::vector<SslRow> evaluate_ssl(const DirectedGraph& g, const Eigen::VectorXd& truth, const SslConfig& cfg);

struct SslOperators {
  Eigen::VectorXd pi, pi_sym;
  Eigen::MatrixXd normalized, random_walk, w_norm;
  Eigen::MatrixXd normalized_sym, random_walk_sym, w_norm_sym;
  FrameOperators bank;
  bool has_bank = false;

  static SslOperators from_graph(const DirectedGraph& g, const std::vector<double>& heat_scales, bool with_bank);
};

// One solve for one method and parameter; scores on all vertices.
Eigen::VectorXd solve_method(SslMethod method, const LabelProblem& problem, const SslOperators& ops,
                             double param);

}  // namespace digh
