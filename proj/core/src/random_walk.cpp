#include "digh/random_walk.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "digh/errors.hpp"

namespace digh {
namespace {

constexpr double kRowTol = 1e-12;
constexpr double kPiFloor = 1e-14;

void check_positive(const Eigen::VectorXd& pi) {
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    if (!(pi(i) >= kPiFloor)) {
      throw DegenerateStationaryError("stationary entry " + std::to_string(i) + " = " + std::to_string(pi(i)) +
                                      " is below 1e-14");
    }
  }
}

// Support-graph reachability from 0 forwards and backwards.
bool irreducible(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Eigen::Index> stack{0};
    seen[0] = true;
    Eigen::Index count = 1;
    while (!stack.empty()) {
      const Eigen::Index u = stack.back();
      stack.pop_back();
      for (Eigen::Index v = 0; v < n; ++v) {
        const double p = dir == 0 ? P(u, v) : P(v, u);
        if (p > 0.0 && !seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    if (count != n) return false;
  }
  return true;
}

double stationarity_residual(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  return (P.transpose() * pi - pi).lpNorm<1>();
}

Eigen::VectorXd stationary_direct(const Eigen::MatrixXd& P, double tol) {
  const Eigen::Index n = P.rows();
  Eigen::MatrixXd A = P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd pi = lu.solve(b);
  for (int refine = 0; refine < 3; ++refine) {
    pi /= pi.sum();
    if (stationarity_residual(P, pi) <= tol) break;
    pi += lu.solve(b - A * pi);
  }
  return pi / pi.sum();
}

Eigen::VectorXd stationary_power(const Eigen::MatrixXd& P, double tol, std::size_t max_iter) {
  const Eigen::Index n = P.rows();
  Eigen::MatrixXd Pt = P.transpose();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  constexpr std::size_t window = 100;
  double window_start = std::numeric_limits<double>::infinity();
  bool lazy_chain = false;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = Pt * x;
    y /= y.lpNorm<1>();
    const double r = (y - x).lpNorm<1>();
    x = std::move(y);
    if (r <= tol && stationarity_residual(P, x) <= tol) return x;
    if (it % window == 0) {
      // A periodic chain keeps the same residual forever; (P + I)/2 has the
      // same stationary vector and no oscillation.
      if (!lazy_chain && r >= (1.0 - 1e-9) * window_start) {
        Pt = 0.5 * (Pt + Eigen::MatrixXd::Identity(n, n));
        lazy_chain = true;
      }
      window_start = r;
    }
  }
  throw ConvergenceError("power iteration for the stationary distribution did not converge", max_iter);
}

}  // namespace

Eigen::VectorXd compute_stationary(const Eigen::MatrixXd& P, const StationaryOptions& opts) {
  if (P.rows() != P.cols() || P.rows() == 0) throw InputError("compute_stationary: P must be square and nonempty");
  const bool direct = opts.method == StationaryMethod::direct ||
                      (opts.method == StationaryMethod::automatic && P.rows() <= 2000);
  return direct ? stationary_direct(P, opts.tol) : stationary_power(P, opts.tol, opts.max_iter);
}

std::size_t chain_period(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  std::vector<long> level(static_cast<std::size_t>(n), -1);
  std::queue<Eigen::Index> q;
  level[0] = 0;
  q.push(0);
  std::size_t g = 0;
  while (!q.empty()) {
    const Eigen::Index u = q.front();
    q.pop();
    for (Eigen::Index v = 0; v < n; ++v) {
      if (!(P(u, v) > 0.0)) continue;
      auto& lv = level[static_cast<std::size_t>(v)];
      if (lv < 0) {
        lv = level[static_cast<std::size_t>(u)] + 1;
        q.push(v);
      } else {
        const long d = level[static_cast<std::size_t>(u)] + 1 - lv;
        g = std::gcd(g, static_cast<std::size_t>(std::labs(d)));
      }
    }
  }
  return g == 0 ? 1 : g;
}

RandomWalk::RandomWalk(Eigen::MatrixXd P, Eigen::VectorXd pi, std::shared_ptr<const DirectedGraph> g)
    : P_(std::move(P)), pi_(std::move(pi)), graph_(std::move(g)) {
  period_ = chain_period(P_);
  ergodic_ = period_ == 1;
}

RandomWalk RandomWalk::from_graph(const DirectedGraph& g, const StationaryOptions& opts) {
  if (g.size() == 0) throw InputError("from_graph: empty graph");
  const Eigen::VectorXd d = g.out_degrees();
  for (Eigen::Index v = 0; v < d.size(); ++v)
    if (d(v) <= 0.0) throw DanglingNodeError(static_cast<std::size_t>(v));
  if (!is_strongly_connected(g)) {
    throw ConnectivityError(
        "graph is not strongly connected; restrict it with largest_scc_subgraph or make it ergodic with "
        "google_matrix / rank_one_walk");
  }
  Eigen::MatrixXd P = d.cwiseInverse().asDiagonal() * g.adjacency();
  Eigen::VectorXd pi = compute_stationary(P, opts);
  check_positive(pi);
  return RandomWalk(std::move(P), std::move(pi), std::make_shared<const DirectedGraph>(g));
}

RandomWalk RandomWalk::from_transition(Eigen::MatrixXd P, const StationaryOptions& opts) {
  if (P.rows() != P.cols() || P.rows() == 0) throw InputError("from_transition: P must be square and nonempty");
  if (P.minCoeff() < 0.0) throw InputError("from_transition: negative transition probability");
  const Eigen::VectorXd rows = P.rowwise().sum();
  for (Eigen::Index i = 0; i < rows.size(); ++i) {
    if (std::abs(rows(i) - 1.0) > kRowTol) {
      throw InputError("from_transition: row " + std::to_string(i) + " sums to " + std::to_string(rows(i)));
    }
  }
  if (!irreducible(P)) throw ConnectivityError("from_transition: chain is not irreducible");
  Eigen::VectorXd pi = compute_stationary(P, opts);
  check_positive(pi);
  return RandomWalk(std::move(P), std::move(pi), nullptr);
}

RandomWalk with_transition(const RandomWalk& base, Eigen::MatrixXd P) {
  return RandomWalk(std::move(P), base.stationary(), nullptr);
}

RandomWalk lazy(const RandomWalk& w, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("lazy: gamma must be in [0, 1)");
  const auto n = static_cast<Eigen::Index>(w.size());
  return with_transition(w, (1.0 - gamma) * w.transition() + gamma * Eigen::MatrixXd::Identity(n, n));
}

RandomWalk time_reversal(const RandomWalk& w) {
  const Eigen::VectorXd& pi = w.stationary();
  check_positive(pi);
  Eigen::MatrixXd Ps = pi.cwiseInverse().asDiagonal() * w.transition().transpose() * pi.asDiagonal();
  return with_transition(w, std::move(Ps));
}

RandomWalk reversibilized(const RandomWalk& w, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("reversibilized: alpha must be in [0, 1]");
  const RandomWalk rev = time_reversal(w);
  return with_transition(w, (1.0 - alpha) * w.transition() + alpha * rev.transition());
}

RandomWalk google_matrix(const DirectedGraph& g, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) throw InputError("google_matrix: gamma must be in (0, 1)");
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) throw InputError("google_matrix: empty graph");
  Eigen::MatrixXd W = g.adjacency();
  for (Eigen::Index i = 0; i < n; ++i)
    if (W.row(i).sum() <= 0.0) W.row(i).setOnes();
  const Eigen::MatrixXd S = W.rowwise().sum().cwiseInverse().asDiagonal() * W;
  Eigen::MatrixXd P = (1.0 - damping) * S + Eigen::MatrixXd::Constant(n, n, damping / static_cast<double>(n));
  RandomWalk out = RandomWalk::from_transition(std::move(P));
  return out;
}

RandomWalk rank_one_walk(const DirectedGraph& g, double eps) {
  if (!(eps > 0.0)) throw InputError("rank_one_walk: epsilon must be positive");
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) throw InputError("rank_one_walk: empty graph");
  const Eigen::MatrixXd W = g.adjacency() + Eigen::MatrixXd::Constant(n, n, eps / static_cast<double>(n));
  Eigen::MatrixXd P = W.rowwise().sum().cwiseInverse().asDiagonal() * W;
  return RandomWalk::from_transition(std::move(P));
}

Eigen::MatrixXd similar_operator(const RandomWalk& w) {
  const Eigen::VectorXd& pi = w.stationary();
  check_positive(pi);
  const Eigen::VectorXd s = pi.cwiseSqrt();
  return s.asDiagonal() * w.transition() * s.cwiseInverse().asDiagonal();
}

Eigen::VectorXd isometry_to_pi(const Eigen::VectorXd& f, const Eigen::VectorXd& pi) {
  check_positive(pi);
  return f.cwiseQuotient(pi.cwiseSqrt());
}

Eigen::VectorXd isometry_from_pi(const Eigen::VectorXd& f, const Eigen::VectorXd& pi) {
  check_positive(pi);
  return f.cwiseProduct(pi.cwiseSqrt());
}

std::complex<double> inner_pi(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, const Eigen::VectorXd& pi) {
  std::complex<double> s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += std::conj(f(i)) * g(i) * pi(i);
  return s;
}

}  // namespace digh
