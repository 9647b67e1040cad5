#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "digh/random.hpp"
#include "digh/spectral.hpp"

namespace digh {

/// @brief H = sum_t coeffs[t] R^t.
class PolynomialFilter {
 public:
  PolynomialFilter(Eigen::VectorXd coeffs, Eigen::MatrixXd reference);

  // Horner: deg(H) matrix-vector products, no explicit powers.
  Eigen::VectorXd apply(const Eigen::VectorXd& s) const;
  Eigen::MatrixXd matrix() const;

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  const Eigen::MatrixXd& reference() const { return R_; }

 private:
  Eigen::VectorXd coeffs_;
  Eigen::MatrixXd R_;
};

Eigen::VectorXd apply_polynomial(const PolynomialFilter& pf, const Eigen::VectorXd& s);

using Response = std::function<double(double)>;

struct FrequencyResponseFilter {
  Response response;
  double dilation = 1.0;
  Eigen::MatrixXd matrix;  // sum_l h(t omega_l) S_l
};

FrequencyResponseFilter build_frequency_filter(const SpectralDecomposition& dec, Response h, double t = 1.0);

enum class SamplingKind { uniform, stationary };

struct SamplingModel {
  SamplingKind kind = SamplingKind::uniform;
  double p = 0.5;
  std::uint64_t seed = 0;
};

// Per-vertex inclusion probabilities delta_j. Stationary sampling uses
// min(1, a pi_j) with a chosen so that sum delta = pN.
Eigen::VectorXd inclusion_probabilities(const SamplingModel& m, const Eigen::VectorXd& pi);

// y_j = eps_j f0_j with eps_j ~ Ber(delta_j).
Eigen::VectorXd sample_signal(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta, Rng& rng);

struct SignalMoments {
  Eigen::VectorXd mean;    // E[y]
  Eigen::MatrixXd second;  // E[y y^T]
};

SignalMoments bernoulli_moments(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta);
// Sample moments over n draws of stream (seed, 0..n-1).
SignalMoments monte_carlo_moments(const Eigen::VectorXd& f0, const Eigen::VectorXd& delta, std::size_t n,
                                  std::uint64_t seed);

// Z_kl = Tr((R^k)^T M R^l E[yy^T]), M = diag(mu).
Eigen::MatrixXd signal_model_gram(const Eigen::MatrixXd& R, const SignalMoments& m, const Eigen::VectorXd& mu,
                                  std::size_t K);
// b_k = (R^k E[y])^T M f0.
Eigen::VectorXd signal_model_rhs(const Eigen::MatrixXd& R, const SignalMoments& m, const Eigen::VectorXd& mu,
                                 const Eigen::VectorXd& f0, std::size_t K);

// theta minimizing E || f0 - sum_k theta_k R^k y ||_mu^2. n_mc = 0 uses the
// closed-form Bernoulli moments. Singular Z gets a ridge of
// 1e-10 trace(Z) / (K+1); SingularModelError if that is not enough.
Eigen::VectorXd learn_signal_model(const Eigen::MatrixXd& R, const Eigen::VectorXd& f0, const SamplingModel& sampling,
                                   std::size_t K, const Eigen::VectorXd& mu, std::size_t n_mc = 0,
                                   const Eigen::VectorXd& pi = Eigen::VectorXd());

// sign(H y) with sign(0) = +1.
Eigen::VectorXd reconstruct_labels(const Eigen::MatrixXd& H, const Eigen::VectorXd& y);
Eigen::VectorXd sign_vector(const Eigen::VectorXd& v);
double accuracy(const Eigen::VectorXd& predicted, const Eigen::VectorXd& truth);

}  // namespace digh
