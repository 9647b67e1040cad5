#pragma once

// Independent reference computations used only by tests. None of these call
// into the library's solvers.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline Eigen::VectorXcd random_complex(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {d(rng), d(rng)};
  return v;
}

// Plain conjugate gradient on A x = b for SPD A, given only a mat-vec.
inline Eigen::VectorXd conjugate_gradient(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                                          const Eigen::VectorXd& b, double tol = 1e-14, int max_iter = 100000) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b, p = r;
  double rr = r.squaredNorm();
  const double stop = tol * tol * std::max(b.squaredNorm(), 1e-300);
  for (int it = 0; it < max_iter && rr > stop; ++it) {
    const Eigen::VectorXd Ap = apply(p);
    const double a = rr / p.dot(Ap);
    x += a * p;
    r -= a * Ap;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  return x;
}

// Cyclic coordinate descent for min ||y - X w||^2 + lambda ||w||_1.
inline Eigen::VectorXd lasso_coordinate_descent(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda,
                                                int sweeps = 200000, double tol = 1e-15) {
  const Eigen::Index p = X.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd r = y;
  const Eigen::VectorXd col2 = X.colwise().squaredNorm();
  for (int s = 0; s < sweeps; ++s) {
    double max_step = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (col2(j) == 0.0) continue;
      const double rho = X.col(j).dot(r) + col2(j) * w(j);
      // d/dw_j: -2 rho + 2 col2 w_j + lambda sign(w_j) = 0
      double wj = 0.0;
      if (rho > lambda / 2) wj = (rho - lambda / 2) / col2(j);
      else if (rho < -lambda / 2) wj = (rho + lambda / 2) / col2(j);
      const double step = wj - w(j);
      if (step != 0.0) {
        r -= step * X.col(j);
        w(j) = wj;
        max_step = std::max(max_step, std::abs(step) * std::sqrt(col2(j)));
      }
    }
    if (max_step < tol) break;
  }
  return w;
}

// Direct DFT: X(k) = sum_x s(x) exp(-2 pi i k x / N).
inline std::complex<double> dft(const Eigen::VectorXcd& s, long k) {
  const auto n = static_cast<double>(s.size());
  std::complex<double> acc = 0.0;
  for (Eigen::Index x = 0; x < s.size(); ++x)
    acc += s(x) * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(x) / n);
  return acc;
}

// Edge-sum Dirichlet energy on an explicit transition matrix.
inline double edge_energy(const Eigen::VectorXcd& f, const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  double e = 0.0;
  for (Eigen::Index x = 0; x < P.rows(); ++x)
    for (Eigen::Index y = 0; y < P.cols(); ++y) e += pi(x) * P(x, y) * std::norm(f(x) - f(y));
  return e / 2;
}

// Gradient of the real edge-sum energy above, by differentiating each term.
inline Eigen::VectorXd edge_energy_gradient(const Eigen::VectorXd& f, const Eigen::MatrixXd& P,
                                            const Eigen::VectorXd& pi) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(f.size());
  for (Eigen::Index x = 0; x < P.rows(); ++x)
    for (Eigen::Index y = 0; y < P.cols(); ++y) {
      const double d = pi(x) * P(x, y) * (f(x) - f(y));
      g(x) += d;
      g(y) -= d;
    }
  return g;
}

// Stationary distribution by Gaussian elimination on pi (P - I) = 0, written
// out by hand (no library solver).
inline Eigen::VectorXd stationary_by_elimination(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  A.row(0).setOnes();
  b(0) = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(A(r, c)) > std::abs(A(piv, c))) piv = r;
    A.row(c).swap(A.row(piv));
    std::swap(b(c), b(piv));
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = A(r, c) / A(c, c);
      A.row(r) -= f * A.row(c);
      b(r) -= f * b(c);
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = b(r);
    for (Eigen::Index c = r + 1; c < n; ++c) s -= A(r, c) * x(c);
    x(r) = s / A(r, r);
  }
  return x;
}

}  // namespace oracle
