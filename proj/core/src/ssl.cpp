#include "digh/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digh/errors.hpp"
#include "digh/filters.hpp"
#include "digh/laplacians.hpp"
#include "digh/parallel.hpp"
#include "digh/random.hpp"

namespace digh {
namespace {

void check_problem(const LabelProblem& p, Eigen::Index n) {
  if (p.labels.size() != n) throw InputError("ssl: label vector size does not match the operator");
  if (!(p.gamma >= 0.0)) throw InputError("ssl: gamma must be nonnegative");
}

bool symmetric(const Eigen::MatrixXd& A, double rel = 1e-12) {
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= rel * std::max(1.0, A.cwiseAbs().maxCoeff());
}

Eigen::VectorXd spd_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const char* what) {
  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw NumericalError(std::string(what) + ": system is not positive definite");
  return llt.solve(b);
}

SslResult finish(Eigen::VectorXd scores) {
  SslResult r;
  r.labels = sign_vector(scores);
  r.scores = std::move(scores);
  return r;
}

double soft(double x, double t) { return x > t ? x - t : (x < -t ? x + t : 0.0); }

}  // namespace

Eigen::VectorXd LabelProblem::known_mask() const {
  return labels.unaryExpr([](double y) { return y != 0.0 ? 1.0 : 0.0; });
}

LabelProblem LabelProblem::from_known(const Eigen::VectorXd& truth, const std::vector<std::size_t>& known,
                                      double gamma) {
  LabelProblem p{Eigen::VectorXd::Zero(truth.size()), gamma};
  for (std::size_t v : known) p.labels(static_cast<Eigen::Index>(v)) = truth(static_cast<Eigen::Index>(v));
  return p;
}

SslResult ssl_l2(const LabelProblem& problem, const Eigen::MatrixXd& X, SignalSpace space, const Eigen::VectorXd& pi) {
  const Eigen::Index n = X.rows();
  check_problem(problem, n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  if (space == SignalSpace::counting) {
    if (!symmetric(X)) throw InputError("ssl_l2: counting-space regularizer must be symmetric");
    return finish(spd_solve(I + problem.gamma * X, problem.labels, "ssl_l2"));
  }
  if (pi.size() != n || pi.minCoeff() <= 0.0) throw InputError("ssl_l2: stationary space needs a positive pi");
  // Pi X is symmetric when X is self-adjoint in l2(V, pi).
  Eigen::MatrixXd A = pi.asDiagonal() * (I + problem.gamma * X);
  if (!symmetric(A, 1e-10)) throw InputError("ssl_l2: regularizer is not self-adjoint in l2(V, pi)");
  A = 0.5 * (A + A.transpose()).eval();
  return finish(spd_solve(A, pi.cwiseProduct(problem.labels), "ssl_l2"));
}

Eigen::MatrixXd normalized_adjacency(const Eigen::MatrixXd& W) {
  const double smax = Eigen::BDCSVD<Eigen::MatrixXd>(W).singularValues()(0);
  if (!(smax > 0.0)) throw InputError("normalized_adjacency: zero matrix");
  return W / smax;
}

SslResult ssl_l2_moura(const LabelProblem& problem, const Eigen::MatrixXd& W_norm) {
  const Eigen::Index n = W_norm.rows();
  check_problem(problem, n);
  const Eigen::MatrixXd D = Eigen::MatrixXd::Identity(n, n) - W_norm;
  Eigen::MatrixXd A = problem.gamma * (D.transpose() * D);
  A.diagonal() += problem.known_mask();
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    A.diagonal().array() += 1e-12;
    llt.compute(A);
    if (llt.info() != Eigen::Success) throw NumericalError("ssl_l2_moura: system is singular after jitter");
  }
  return finish(llt.solve(problem.labels));
}

double lasso_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double lambda) {
  return (y - X * w).squaredNorm() + lambda * w.lpNorm<1>();
}

L1Result ssl_l1(const LabelProblem& problem, const FrameOperators& bank, const L1Options& opts) {
  const auto n = static_cast<Eigen::Index>(bank.signal_size());
  check_problem(problem, n);
  if (!(opts.lambda >= 0.0)) throw InputError("ssl_l1: lambda must be nonnegative");
  const Eigen::MatrixXd K = bank.synthesis_stack();
  const Eigen::MatrixXd X = problem.known_mask().asDiagonal() * K;
  const Eigen::VectorXd& y = problem.labels;

  // The smooth part ||y - Xw||^2 has gradient 2 X^T (Xw - y), Lipschitz 2 sigma_max(X)^2.
  const Eigen::MatrixXd XXt = X * X.transpose();
  const double smax2 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(XXt, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  const Eigen::VectorXd Xty = X.transpose() * y;

  L1Result out;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(K.cols());
  if (!(smax2 > 0.0)) {
    out.coefficients = w;
    out.objective = y.squaredNorm();
    out.converged = true;
    out.solution = finish(K * w);
    return out;
  }
  const double L = 2.0 * smax2;
  const double thresh = opts.lambda / L;
  auto prox_step = [&](const Eigen::VectorXd& z) {
    const Eigen::VectorXd g = 2.0 * (X.transpose() * (X * z) - Xty);
    return Eigen::VectorXd((z - g / L).unaryExpr([thresh](double v) { return soft(v, thresh); }));
  };

  Eigen::VectorXd z = w;
  double t = 1.0;
  double F = lasso_objective(X, y, w, opts.lambda);
  out.objective_history.push_back(F);
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Eigen::VectorXd w_next = prox_step(z);
    double F_next = lasso_objective(X, y, w_next, opts.lambda);
    double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    if (F_next > F) {
      // Restart: drop momentum and take a plain (monotone) proximal step.
      w_next = prox_step(w);
      F_next = lasso_objective(X, y, w_next, opts.lambda);
      t_next = 1.0;
      z = w_next;
    } else {
      z = w_next + ((t - 1.0) / t_next) * (w_next - w);
    }
    const double change = std::abs(F - F_next) / std::max(1.0, std::abs(F));
    w = std::move(w_next);
    F = std::min(F, F_next);
    t = t_next;
    out.iterations = it;
    out.objective_history.push_back(F_next);
    if (change < opts.tol) {
      out.converged = true;
      break;
    }
  }
  out.coefficients = w;
  out.objective = lasso_objective(X, y, w, opts.lambda);
  out.solution = finish(K * w);
  return out;
}

FrameOperators heat_kernel_bank(const Eigen::MatrixXd& L, const std::vector<double>& scales) {
  if (L.rows() != L.cols() || L.rows() == 0) throw InputError("heat_kernel_bank: L must be square and nonempty");
  if (!symmetric(L)) throw InputError("heat_kernel_bank: L must be symmetric");
  if (scales.empty()) throw InputError("heat_kernel_bank: need at least one scale");
  for (std::size_t j = 1; j < scales.size(); ++j)
    if (!(scales[j] > scales[j - 1])) throw InputError("heat_kernel_bank: scales must be strictly increasing");

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (L + L.transpose()));
  const Eigen::MatrixXd& U = es.eigenvectors();
  const auto n = L.rows();
  std::vector<Eigen::MatrixXd> H;
  for (double t : scales) {
    const Eigen::VectorXd d = (-t * es.eigenvalues().array()).exp();
    H.push_back(U * d.asDiagonal() * U.transpose());
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  std::vector<Eigen::MatrixXd> synthesis{H.back()};
  for (std::size_t j = 0; j < H.size(); ++j) synthesis.push_back((j == 0 ? I : H[j - 1]) - H[j]);
  std::vector<Eigen::MatrixXd> analysis(synthesis.size(), I);
  return make_bank(std::move(synthesis), std::move(analysis), scales);
}

std::string method_name(SslMethod m) {
  switch (m) {
    case SslMethod::normalized: return "L_norm";
    case SslMethod::random_walk: return "L_rw";
    case SslMethod::adjacency: return "R_M";
    case SslMethod::normalized_sym: return "L_norm_sym";
    case SslMethod::random_walk_sym: return "L_rw_sym";
    case SslMethod::adjacency_sym: return "R_M_sym";
    case SslMethod::wavelet_l1: return "l1_heat";
  }
  return "?";
}

SslMethod parse_method(const std::string& name) {
  for (SslMethod m : all_methods())
    if (method_name(m) == name) return m;
  throw InputError("unknown ssl method '" + name + "'");
}

std::vector<SslMethod> all_methods() {
  return {SslMethod::normalized,      SslMethod::random_walk,     SslMethod::adjacency, SslMethod::normalized_sym,
          SslMethod::random_walk_sym, SslMethod::adjacency_sym, SslMethod::wavelet_l1};
}

std::vector<double> default_gamma_grid() {
  std::vector<double> grid{0.0};
  for (int k = 1; k <= 21; ++k) grid.push_back(std::pow(10.0, -3.0 + 4.0 * k / 21.0));
  return grid;
}

SslOperators SslOperators::from_graph(const DirectedGraph& g, const std::vector<double>& heat_scales, bool with_bank) {
  SslOperators ops;
  const RandomWalk w = RandomWalk::from_graph(g);
  const DirectedGraph gs = symmetrize(g);
  const RandomWalk ws = RandomWalk::from_graph(gs);
  ops.pi = w.stationary();
  ops.pi_sym = ws.stationary();
  ops.normalized = normalized_laplacian(w);
  ops.random_walk = random_walk_laplacian(w);
  ops.w_norm = normalized_adjacency(g.adjacency());
  ops.normalized_sym = normalized_laplacian(ws);
  ops.random_walk_sym = random_walk_laplacian(ws);
  ops.w_norm_sym = normalized_adjacency(gs.adjacency());
  if (with_bank) {
    ops.bank = heat_kernel_bank(ops.normalized, heat_scales);
    ops.has_bank = true;
  }
  return ops;
}

Eigen::VectorXd solve_method(SslMethod method, const LabelProblem& base, const SslOperators& ops, double param) {
  LabelProblem problem = base;
  problem.gamma = param;
  switch (method) {
    case SslMethod::normalized:
      return ssl_l2(problem, ops.normalized, SignalSpace::counting).scores;
    case SslMethod::random_walk:
      return ssl_l2(problem, ops.random_walk, SignalSpace::stationary, ops.pi).scores;
    case SslMethod::adjacency:
      return ssl_l2_moura(problem, ops.w_norm).scores;
    case SslMethod::normalized_sym:
      return ssl_l2(problem, ops.normalized_sym, SignalSpace::counting).scores;
    case SslMethod::random_walk_sym:
      return ssl_l2(problem, ops.random_walk_sym, SignalSpace::stationary, ops.pi_sym).scores;
    case SslMethod::adjacency_sym:
      return ssl_l2_moura(problem, ops.w_norm_sym).scores;
    case SslMethod::wavelet_l1: {
      if (!ops.has_bank) throw InputError("solve_method: l1 method needs a heat-kernel bank");
      L1Options o;
      o.lambda = param;
      o.tol = 1e-10;
      return ssl_l1(problem, ops.bank, o).solution.scores;
    }
  }
  return {};
}

namespace {

double held_out_accuracy(const Eigen::VectorXd& scores, const Eigen::VectorXd& truth,
                         const std::vector<std::size_t>& vertices) {
  if (vertices.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t v : vertices) {
    const auto i = static_cast<Eigen::Index>(v);
    hits += (scores(i) >= 0.0 ? 1.0 : -1.0) == truth(i);
  }
  return static_cast<double>(hits) / static_cast<double>(vertices.size());
}

bool has_both_classes(const Eigen::VectorXd& truth, const std::vector<std::size_t>& vs) {
  bool pos = false, neg = false;
  for (std::size_t v : vs) (truth(static_cast<Eigen::Index>(v)) > 0 ? pos : neg) = true;
  return pos && neg;
}

struct Choice {
  double accuracy = 0.0;
  double param = 0.0;
  bool degenerate = false;
};

Choice run_method(SslMethod method, const SslOperators& ops, const Eigen::VectorXd& truth,
                  std::vector<std::size_t> known, const std::vector<std::size_t>& hidden,
                  const std::vector<double>& grid) {
  Choice c;
  c.degenerate = !has_both_classes(truth, known);
  // Two-fold split of the revealed set, in the (random) order it was drawn.
  const std::size_t half = known.size() / 2;
  std::vector<std::size_t> fold_a(known.begin(), known.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<std::size_t> fold_b(known.begin() + static_cast<std::ptrdiff_t>(half), known.end());
  if (fold_a.empty() || fold_b.empty()) {
    c.degenerate = true;
    c.param = grid[grid.size() / 2];
  } else {
    double best = -1.0;
    for (double param : grid) {
      const double acc =
          0.5 * (held_out_accuracy(solve_method(method, LabelProblem::from_known(truth, fold_a, 0.0), ops, param),
                                   truth, fold_b) +
                 held_out_accuracy(solve_method(method, LabelProblem::from_known(truth, fold_b, 0.0), ops, param),
                                   truth, fold_a));
      if (acc > best) {
        best = acc;
        c.param = param;
      }
    }
  }
  std::sort(known.begin(), known.end());
  c.accuracy = held_out_accuracy(solve_method(method, LabelProblem::from_known(truth, known, 0.0), ops, c.param),
                                 truth, hidden);
  return c;
}

}  // namespace

std::vector<SslRow> evaluate_ssl(const DirectedGraph& g, const Eigen::VectorXd& truth, const SslConfig& cfg) {
  const std::size_t n = g.size();
  if (static_cast<std::size_t>(truth.size()) != n) throw InputError("evaluate_ssl: label vector size mismatch");
  for (Eigen::Index i = 0; i < truth.size(); ++i)
    if (truth(i) != 1.0 && truth(i) != -1.0) throw InputError("evaluate_ssl: every vertex needs a +-1 label");
  if (cfg.realizations == 0) throw InputError("evaluate_ssl: need at least one realization");
  if (cfg.methods.empty()) throw InputError("evaluate_ssl: no methods selected");
  if (cfg.gamma_grid.empty() || cfg.lambda_grid.empty()) throw InputError("evaluate_ssl: empty parameter grid");

  const bool need_bank = std::find(cfg.methods.begin(), cfg.methods.end(), SslMethod::wavelet_l1) != cfg.methods.end();
  const SslOperators ops = SslOperators::from_graph(g, cfg.heat_scales, need_bank);

  std::vector<SslRow> rows;
  for (std::size_t pi_idx = 0; pi_idx < cfg.known_fractions.size(); ++pi_idx) {
    const double p = cfg.known_fractions[pi_idx];
    if (!(p > 0.0 && p < 1.0)) throw InputError("evaluate_ssl: known fraction must be in (0, 1)");
    const std::size_t m =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - 1e-9)), 1, n - 1);

    std::vector<std::vector<Choice>> results(cfg.realizations);
    parallel_for(cfg.realizations, [&](std::size_t r) {
      Rng rng(mix_seed(cfg.seed, pi_idx), r);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = 0; i < m; ++i) std::swap(perm[i], perm[i + rng.below(n - i)]);
      const std::vector<std::size_t> known(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
      std::vector<std::size_t> hidden(perm.begin() + static_cast<std::ptrdiff_t>(m), perm.end());
      std::sort(hidden.begin(), hidden.end());
      for (SslMethod method : cfg.methods) {
        const auto& grid = method == SslMethod::wavelet_l1 ? cfg.lambda_grid : cfg.gamma_grid;
        results[r].push_back(run_method(method, ops, truth, known, hidden, grid));
      }
    });

    for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
      SslRow row;
      row.method = method_name(cfg.methods[k]);
      row.p = p;
      std::vector<double> acc, params;
      for (const auto& res : results) {
        acc.push_back(res[k].accuracy);
        params.push_back(res[k].param);
        row.degenerate_splits += res[k].degenerate;
      }
      const double R = static_cast<double>(acc.size());
      row.mean_accuracy = std::accumulate(acc.begin(), acc.end(), 0.0) / R;
      double ss = 0.0;
      for (double a : acc) ss += (a - row.mean_accuracy) * (a - row.mean_accuracy);
      row.std_accuracy = acc.size() > 1 ? std::sqrt(ss / (R - 1.0)) : 0.0;
      std::nth_element(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(params.size() / 2), params.end());
      row.best_param = params[params.size() / 2];
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace digh
