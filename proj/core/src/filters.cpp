#include "digh/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "digh/errors.hpp"

namespace digh {

PolynomialFilter::PolynomialFilter(Eigen::VectorXd coeffs, Eigen::MatrixXd reference)
    : coeffs_(std::move(coeffs)), R_(std::move(reference)) {
  if (R_.rows() != R_.cols()) throw InputError("PolynomialFilter: reference operator must be square");
  if (coeffs_.size() == 0) throw InputError("PolynomialFilter: need at least one coefficient");
}

Eigen::VectorXd PolynomialFilter::apply(const Eigen::VectorXd& s) const {
  Eigen::VectorXd acc = coeffs_(coeffs_.size() - 1) * s;
  for (Eigen::Index t = coeffs_.size() - 2; t >= 0; --t) acc = R_ * acc + coeffs_(t) * s;
  return acc;
}

Eigen::MatrixXd PolynomialFilter::matrix() const {
  const auto n = R_.rows();
  Eigen::MatrixXd H = coeffs_(coeffs_.size() - 1) * Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index t = coeffs_.size() - 2; t >= 0; --t) {
    H = R_ * H;
    H.diagonal().array() += coeffs_(t);
  }
  return H;
}

Eigen::VectorXd apply_polynomial(const PolynomialFilter& pf, const Eigen::VectorXd& s) { return pf.apply(s); }

FrequencyResponseFilter build_frequency_filter(const SpectralDecomposition& dec, Response h, double t) {
  FrequencyResponseFilter f{h, t, {}};
  f.matrix = spectral_function(dec, [&](double w) { return h(t * w); });
  return f;
}

Eigen::VectorXd inclusion_probabilities(const SamplingModel& m, const Eigen::VectorXd& pi) {
  if (!(m.p > 0.0 && m.p <= 1.0)) throw InputError("sampling: p must be in (0, 1]");
  if (m.kind == SamplingKind::uniform) return Eigen::VectorXd::Constant(pi.size(), m.p);
  if (pi.size() == 0 || pi.minCoeff() <= 0.0) throw InputError("stationary sampling needs a positive measure");

  // Water-filling: the largest entries saturate at 1, the rest scale with pi.
  const Eigen::Index n = pi.size();
  const double target = m.p * static_cast<double>(n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return pi(a) > pi(b); });
  double rest = pi.sum();
  Eigen::Index clipped = 0;
  double scale = 0.0;
  for (; clipped < n; ++clipped) {
    scale = (target - static_cast<double>(clipped)) / rest;
    if (scale * pi(order[static_cast<std::size_t>(clipped)]) <= 1.0) break;
    rest -= pi(order[static_cast<std::size_t>(clipped)]);
  }
  Eigen::VectorXd delta(n);
  for (Eigen::Index i = 0; i < n; ++i) delta(i) = std::min(1.0, scale * pi(i));
  for (Eigen::Index k = 0; k < clipped; ++k) delta(order[static_cast<std::size_t>(k)]) = 1.0;
  return delta;
}

Eigen::VectorXd sample_signal(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta, Rng& rng) {
  Eigen::VectorXd y(f0.size());
  for (Eigen::Index j = 0; j < f0.size(); ++j) y(j) = rng.bernoulli(delta(j)) ? f0(j) : 0.0;
  return y;
}

SignalMoments bernoulli_moments(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta) {
  SignalMoments m;
  m.mean = delta.cwiseProduct(f0);
  m.second = m.mean * m.mean.transpose();
  m.second.diagonal() = delta.cwiseProduct(f0.cwiseAbs2());
  return m;
}

SignalMoments monte_carlo_moments(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta, std::size_t n,
                                  std::uint64_t seed) {
  if (n == 0) throw InputError("monte_carlo_moments: need at least one draw");
  const auto N = f0.size();
  SignalMoments m{Eigen::VectorXd::Zero(N), Eigen::MatrixXd::Zero(N, N)};
  for (std::size_t s = 0; s < n; ++s) {
    Rng rng(seed, s);
    const Eigen::VectorXd y = sample_signal(f0, delta, rng);
    m.mean += y;
    m.second.noalias() += y * y.transpose();
  }
  m.mean /= static_cast<double>(n);
  m.second /= static_cast<double>(n);
  return m;
}

Eigen::MatrixXd signal_model_gram(const Eigen::MatrixXd& R, const SignalMoments& m, const Eigen::VectorXd& mu,
                                  std::size_t K) {
  const auto N = R.rows();
  std::vector<Eigen::MatrixXd> powers{Eigen::MatrixXd::Identity(N, N)};
  for (std::size_t k = 1; k <= K; ++k) powers.push_back(R * powers.back());
  std::vector<Eigen::MatrixXd> weighted, moment;
  for (const auto& Rk : powers) {
    weighted.push_back(mu.asDiagonal() * Rk);
    moment.push_back(Rk * m.second);
  }
  // Tr(A^T M B E) = sum_ij (M A)_ij (B E)_ij.
  const auto K1 = static_cast<Eigen::Index>(K + 1);
  Eigen::MatrixXd Z(K1, K1);
  for (Eigen::Index k = 0; k < K1; ++k)
    for (Eigen::Index l = k; l < K1; ++l) {
      const double a = weighted[static_cast<std::size_t>(k)].cwiseProduct(moment[static_cast<std::size_t>(l)]).sum();
      const double b = weighted[static_cast<std::size_t>(l)].cwiseProduct(moment[static_cast<std::size_t>(k)]).sum();
      Z(k, l) = Z(l, k) = 0.5 * (a + b);
    }
  return Z;
}

Eigen::VectorXd signal_model_rhs(const Eigen::MatrixXd& R, const SignalMoments& m, const Eigen::VectorXd& mu,
                                 const Eigen::VectorXd& f0, std::size_t K) {
  Eigen::VectorXd b(static_cast<Eigen::Index>(K + 1));
  const Eigen::VectorXd target = mu.cwiseProduct(f0);
  Eigen::VectorXd q = m.mean;
  for (std::size_t k = 0; k <= K; ++k) {
    b(static_cast<Eigen::Index>(k)) = q.dot(target);
    q = R * q;
  }
  return b;
}

Eigen::VectorXd learn_signal_model(const Eigen::MatrixXd& R, const Eigen::VectorXd& f0, const SamplingModel& sampling,
                                   std::size_t K, const Eigen::VectorXd& mu, std::size_t n_mc,
                                   const Eigen::VectorXd& pi) {
  if (R.rows() != R.cols() || R.rows() != f0.size() || mu.size() != f0.size()) {
    throw InputError("learn_signal_model: dimension mismatch");
  }
  const Eigen::VectorXd measure = pi.size() ? pi : Eigen::VectorXd::Constant(f0.size(), 1.0 / f0.size());
  const Eigen::VectorXd delta = inclusion_probabilities(sampling, measure);
  const SignalMoments m =
      n_mc == 0 ? bernoulli_moments(f0, delta) : monte_carlo_moments(f0, delta, n_mc, sampling.seed);
  Eigen::MatrixXd Z = signal_model_gram(R, m, mu, K);
  const Eigen::VectorXd b = signal_model_rhs(R, m, mu, f0, K);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(Z);
  const bool ok = ldlt.info() == Eigen::Success && ldlt.isPositive() && ldlt.rcond() > 1e-13;
  if (!ok) {
    Z.diagonal().array() += 1e-10 * Z.trace() / static_cast<double>(K + 1);
    ldlt.compute(Z);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || !(ldlt.rcond() > 1e-16)) {
      throw SingularModelError("learn_signal_model: normal matrix is singular even after ridge jitter");
    }
  }
  return ldlt.solve(b);
}

Eigen::VectorXd sign_vector(const Eigen::VectorXd& v) {
  return v.unaryExpr([](double x) { return x >= 0.0 ? 1.0 : -1.0; });
}

Eigen::VectorXd reconstruct_labels(const Eigen::MatrixXd& H, const Eigen::VectorXd& y) { return sign_vector(H * y); }

double accuracy(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth) {
  if (predicted.size() != truth.size() || truth.size() == 0) throw InputError("accuracy: size mismatch");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < truth.size(); ++i) hits += predicted(i) == truth(i);
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace digh
