#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace digh {

enum class WaveletMode { orthogonal, biorthogonal };

inline double default_eps(WaveletMode mode) { return mode == WaveletMode::orthogonal ? 1e-6 : 1e-4; }

struct ColumnSelection {
  std::vector<std::size_t> indices;  // in selection order
  Eigen::MatrixXd q;                 // orthonormal basis of the selected span
  double max_residual = 0.0;         // largest unselected residual at stop
};

// Modified Gram-Schmidt with column pivoting on the largest residual norm
// (ties: smallest index). Stops when every residual is <= eps, or after
// max_count columns if max_count > 0.
ColumnSelection select_columns(const Eigen::MatrixXd& C, double eps, std::size_t max_count = 0);

// Moore-Penrose inverse, singular values below 1e-12 sigma_max dropped.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol = 1e-12);

struct DiffusionCoefficients {
  std::vector<Eigen::VectorXd> wavelet;  // one block per scale 0..J-1
  Eigen::VectorXd scaling;               // coarsest scale J
};

/// @brief Multiresolution V_0 > V_1 > ... > V_J with wavelet spaces W_j.
///
/// Scale j+1 is spanned by columns selected from the compressed operator at
/// scale j (columns of T^{2^j} restricted to V_j). Orthogonal mode
/// orthonormalizes the selected columns; biorthogonal mode keeps them as
/// they are. Wavelets at scale j are columns of the complement projector of
/// V_{j+1} inside V_j, as many as dim V_j - dim V_{j+1}.
struct MultiResolution {
  WaveletMode mode = WaveletMode::orthogonal;
  double eps = 0.0;
  std::size_t n_scales = 0;
  std::vector<std::vector<std::size_t>> selected;  // I_1..I_J, indices into the previous basis
  std::vector<Eigen::MatrixXd> scaling_bases;      // [Phi_{j+1}]_{Phi_j}
  std::vector<Eigen::MatrixXd> scaling_in_v0;      // [Phi_j]_{Phi_0}, j = 0..J
  std::vector<Eigen::MatrixXd> compressed_ops;     // [T^{2^j}]_{Phi_j}, j = 0..J-1
  std::vector<Eigen::MatrixXd> wavelet_bases;      // Psi_j in V_0, j = 0..J-1
  std::vector<Eigen::MatrixXd> dual_wavelets;      // (Psi_j^+)^T
  Eigen::MatrixXd transform;                       // [Psi_0 .. Psi_{J-1} Phi_J]
  Eigen::MatrixXd analysis;                        // transform^+

  std::size_t signal_size() const { return static_cast<std::size_t>(transform.rows()); }
  std::size_t dim(std::size_t j) const { return static_cast<std::size_t>(scaling_in_v0.at(j).cols()); }
};

MultiResolution build(const Eigen::MatrixXd& T, std::size_t J, double eps, WaveletMode mode);
inline MultiResolution build(const Eigen::MatrixXd& T, std::size_t J, WaveletMode mode) {
  return build(T, J, default_eps(mode), mode);
}

// filters[j] replaces T^{2^j}: it is restricted to V_j and its columns
// select V_{j+1}.
MultiResolution build_generalized(const std::vector<Eigen::MatrixXd>& filters, double eps, WaveletMode mode);

struct WaveletScale {
  Eigen::MatrixXd basis;
  Eigen::MatrixXd dual;
};
WaveletScale wavelets_at_scale(const MultiResolution& mr, std::size_t j);

DiffusionCoefficients forward(const MultiResolution& mr, const Eigen::VectorXd& f);
Eigen::VectorXd inverse(const MultiResolution& mr, const DiffusionCoefficients& c);

// kappa_2 of transform; SingularTransformError if rank deficient.
double transform_condition_number(const MultiResolution& mr);

}  // namespace digh
