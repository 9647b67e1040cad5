#include "digh/laplacians.hpp"

namespace digh {

Eigen::MatrixXd normalized_laplacian(const RandomWalk& w) {
  const Eigen::MatrixXd T = similar_operator(w);
  const auto n = T.rows();
  return Eigen::MatrixXd::Identity(n, n) - 0.5 * (T + T.transpose());
}

Eigen::MatrixXd random_walk_laplacian(const RandomWalk& w) {
  const Eigen::MatrixXd& P = w.transition();
  const auto n = P.rows();
  return Eigen::MatrixXd::Identity(n, n) - 0.5 * (P + time_reversal(w).transition());
}

Eigen::MatrixXd combinatorial_laplacian(const RandomWalk& w) {
  const Eigen::MatrixXd PiP = w.stationary().asDiagonal() * w.transition();
  Eigen::MatrixXd L = -0.5 * (PiP + PiP.transpose());
  L.diagonal() += w.stationary();
  return L;
}

Eigen::MatrixXd laplacian(const RandomWalk& w, LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::normalized:
      return normalized_laplacian(w);
    case LaplacianKind::random_walk:
      return random_walk_laplacian(w);
    case LaplacianKind::combinatorial:
      return combinatorial_laplacian(w);
  }
  return {};
}

}  // namespace digh
