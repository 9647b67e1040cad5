#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "digh/random_walk.hpp"

namespace digh {

struct FrequencyGroup {
  double frequency = 0.0;                 // mean of 1 - Re(theta) over members
  std::vector<std::size_t> eigen_indices;
  Eigen::MatrixXd projector;              // empty unless materialized
};

struct DecomposeOptions {
  // <= 0 selects 1e-8 * (max Re - min Re), or 1e-8 when the spread is zero.
  double tol_freq = 0.0;
  // Projectors cost N^2 doubles per group; by default they are only stored
  // for N <= 512. group_projector() builds one on demand either way.
  std::optional<bool> materialize_projectors;
  double max_condition = 1e12;
  double max_residual = 1e-6;
};

/// @brief Eigendecomposition A = Xi diag(theta) Xi^{-1} with frequency groups.
///
/// Eigenvalues are sorted by real part descending, then imaginary part
/// ascending. Columns have unit l2 norm and their first non-negligible entry
/// is real and positive. Inside an eigenspace of dimension > 1 only the span
/// and the projector are meaningful.
struct SpectralDecomposition {
  Eigen::MatrixXcd eigvecs;
  Eigen::VectorXcd eigvals;
  Eigen::MatrixXcd inv_eigvecs;
  double cond_number = 1.0;
  Eigen::VectorXd frequencies;
  std::vector<FrequencyGroup> groups;
  // Frequency of the group each eigen-index belongs to.
  Eigen::VectorXd group_frequency_of_index() const;
};

// Throws NonDiagonalizableError when cond(Xi) or the residual is too large.
SpectralDecomposition decompose(const Eigen::MatrixXd& A, const DecomposeOptions& opts = {});

// Eigenbasis of Pbar (alpha = 1/2) orthonormal in l2(V, pi), obtained from the
// symmetric matrix Pi^{1/2} Pbar Pi^{-1/2}. Xi^T Pi Xi = I.
SpectralDecomposition decompose_reversible(const RandomWalk& w, const DecomposeOptions& opts = {});

// Clusters frequencies (sorted) whose consecutive gaps are <= tol.
std::vector<FrequencyGroup> frequency_groups(const SpectralDecomposition& dec, double tol,
                                             bool materialize_projectors);

// Xi[:, I] Xi^{-1}[I, :], checked to be real within 1e-8.
Eigen::MatrixXd group_projector(const SpectralDecomposition& dec, const FrequencyGroup& group);

// Re( Xi diag(h(omega_group(j))) Xi^{-1} ) = sum_groups h(omega) S_omega.
template <typename Response>
Eigen::MatrixXd spectral_function(const SpectralDecomposition& dec, Response&& h);

Eigen::VectorXcd gft(const SpectralDecomposition& dec, const Eigen::VectorXcd& s);
Eigen::VectorXcd igft(const SpectralDecomposition& dec, const Eigen::VectorXcd& shat);

// 1/2 sum_{x,y} pi(x) p(x,y) |f(x) - f(y)|^2.
double dirichlet_energy(const Eigen::VectorXcd& f, const RandomWalk& w);
double rayleigh_quotient(const Eigen::VectorXcd& f, const RandomWalk& w);

// (cos, sin) = (Re xi, Im xi) for each member with Im(theta) > 0 whose
// conjugate is also in the group.
std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> real_modes(const FrequencyGroup& group,
                                                                    const SpectralDecomposition& dec);

// Columns index,re,im,omega in decomposition order.
void write_spectrum_csv(std::ostream& out, const SpectralDecomposition& dec);

// ---------------------------------------------------------------------------

namespace detail {
Eigen::MatrixXd real_part_checked(const Eigen::MatrixXcd& M, double tol, const char* what);
// Relative tolerance for imaginary residue of Xi D Xi^{-1}: the inverse of a
// basis with condition number kappa is only good to about kappa * eps.
inline double imag_tolerance(double cond_number) {
  return std::max(1e-8, 10.0 * cond_number * std::numeric_limits<double>::epsilon());
}
}

template <typename Response>
Eigen::MatrixXd spectral_function(const SpectralDecomposition& dec, Response&& h) {
  const Eigen::VectorXd omega = dec.group_frequency_of_index();
  Eigen::VectorXcd d(omega.size());
  for (Eigen::Index j = 0; j < omega.size(); ++j) d(j) = h(omega(j));
  const Eigen::MatrixXcd M = dec.eigvecs * d.asDiagonal() * dec.inv_eigvecs;
  return detail::real_part_checked(M, detail::imag_tolerance(dec.cond_number) * std::max(1.0, M.cwiseAbs().maxCoeff()),
                                   "spectral filter");
}

}  // namespace digh
