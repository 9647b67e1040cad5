#include "digh/diffusion_wavelets.hpp"

#include <cmath>
#include <string>

#include "digh/errors.hpp"

namespace digh {
namespace {

// Thin Q of the QR factorization with the sign of each R diagonal made positive.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& A) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(A.rows(), A.cols());
  const Eigen::MatrixXd R = Q.transpose() * A;
  for (Eigen::Index j = 0; j < Q.cols(); ++j)
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  return Q;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& A, const std::vector<std::size_t>& idx) {
  Eigen::MatrixXd out(A.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = A.col(static_cast<Eigen::Index>(idx[k]));
  return out;
}

// Coordinates in Phi_{j} of the orthogonal (coordinate-space) projection.
Eigen::MatrixXd left_inverse(const Eigen::MatrixXd& B, WaveletMode mode) {
  return mode == WaveletMode::orthogonal ? Eigen::MatrixXd(B.transpose()) : pseudo_inverse(B);
}

// One refinement step: given the compressed operator A at scale j, select
// V_{j+1} and the wavelets of W_j. Returns B = [Phi_{j+1}]_{Phi_j}.
Eigen::MatrixXd refine(MultiResolution& mr, const Eigen::MatrixXd& A) {
  const std::size_t j = mr.scaling_bases.size();
  const Eigen::MatrixXd& phi = mr.scaling_in_v0[j];
  const ColumnSelection sel = select_columns(phi * A, mr.eps);
  if (sel.indices.empty()) {
    throw EmptyBasisError("diffusion wavelets: no column of the scale-" + std::to_string(j) +
                          " operator exceeds eps = " + std::to_string(mr.eps));
  }
  const Eigen::MatrixXd raw = columns(A, sel.indices);
  Eigen::MatrixXd B = mr.mode == WaveletMode::orthogonal ? orthonormalize(raw) : raw;

  const Eigen::Index dj = A.rows();
  const Eigen::Index count = dj - B.cols();
  Eigen::MatrixXd psi(phi.rows(), 0);
  if (count > 0) {
    const Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(dj, dj) - B * left_inverse(B, mr.mode);
    const ColumnSelection wsel = select_columns(phi * complement, 0.0, static_cast<std::size_t>(count));
    psi = phi * columns(complement, wsel.indices);
  }
  mr.selected.push_back(sel.indices);
  mr.scaling_in_v0.push_back(phi * B);
  mr.dual_wavelets.push_back(psi.cols() ? Eigen::MatrixXd(pseudo_inverse(psi).transpose()) : psi);
  mr.wavelet_bases.push_back(std::move(psi));
  mr.scaling_bases.push_back(B);
  return B;
}

void assemble(MultiResolution& mr) {
  const Eigen::Index n = mr.scaling_in_v0.front().rows();
  Eigen::Index cols = mr.scaling_in_v0.back().cols();
  for (const auto& psi : mr.wavelet_bases) cols += psi.cols();
  mr.transform.resize(n, cols);
  Eigen::Index at = 0;
  for (const auto& psi : mr.wavelet_bases) {
    mr.transform.middleCols(at, psi.cols()) = psi;
    at += psi.cols();
  }
  mr.transform.rightCols(mr.scaling_in_v0.back().cols()) = mr.scaling_in_v0.back();
  mr.analysis = pseudo_inverse(mr.transform);
}

MultiResolution start(Eigen::Index n, double eps, WaveletMode mode, std::size_t J) {
  if (!(eps > 0.0)) throw InputError("diffusion wavelets: eps must be positive");
  if (J == 0) throw InputError("diffusion wavelets: need at least one scale");
  MultiResolution mr;
  mr.mode = mode;
  mr.eps = eps;
  mr.n_scales = J;
  mr.scaling_in_v0.push_back(Eigen::MatrixXd::Identity(n, n));
  return mr;
}

}  // namespace

ColumnSelection select_columns(const Eigen::MatrixXd& C, double eps, std::size_t max_count) {
  const Eigen::Index m = C.rows(), n = C.cols();
  Eigen::MatrixXd R = C;
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  ColumnSelection out;
  out.q.resize(m, 0);
  const double scale = n ? C.colwise().norm().maxCoeff() : 0.0;
  const double floor = 1e-13 * std::max(scale, 1e-300);
  std::vector<Eigen::VectorXd> basis;

  while (true) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (taken[static_cast<std::size_t>(k)]) continue;
      const double r = R.col(k).norm();
      if (r > best_norm) {
        best_norm = r;
        best = k;
      }
    }
    out.max_residual = std::max(best_norm, 0.0);
    if (best < 0) break;
    if (max_count > 0 ? out.indices.size() >= max_count : best_norm <= eps) break;
    if (best_norm <= floor) break;

    Eigen::VectorXd q = R.col(best) / best_norm;
    for (const auto& b : basis) q -= b * b.dot(q);  // second pass keeps q orthogonal
    q.normalize();
    taken[static_cast<std::size_t>(best)] = true;
    out.indices.push_back(static_cast<std::size_t>(best));
    for (Eigen::Index k = 0; k < n; ++k)
      if (!taken[static_cast<std::size_t>(k)]) R.col(k) -= q * q.dot(R.col(k));
    basis.push_back(std::move(q));
  }
  if (!basis.empty()) {
    out.q.resize(m, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) out.q.col(static_cast<Eigen::Index>(k)) = basis[k];
  }
  if (max_count > 0 && out.indices.size() >= max_count) {
    out.max_residual = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!taken[static_cast<std::size_t>(k)]) out.max_residual = std::max(out.max_residual, R.col(k).norm());
  }
  return out;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& A, double rel_tol) {
  if (A.size() == 0) return Eigen::MatrixXd(A.cols(), A.rows());
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cut = rel_tol * s(0);
  Eigen::VectorXd inv = s.unaryExpr([cut](double x) { return x > cut ? 1.0 / x : 0.0; });
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

MultiResolution build(const Eigen::MatrixXd& T, std::size_t J, double eps, WaveletMode mode) {
  if (T.rows() != T.cols() || T.rows() == 0) throw InputError("diffusion wavelets: T must be square and nonempty");
  MultiResolution mr = start(T.rows(), eps, mode, J);
  Eigen::MatrixXd A = T;
  for (std::size_t j = 0; j < J; ++j) {
    mr.compressed_ops.push_back(A);
    const Eigen::MatrixXd B = refine(mr, A);
    // Square at scale j, then restrict to V_{j+1}.
    A = left_inverse(B, mode) * (A * A) * B;
  }
  mr.compressed_ops.push_back(A);
  assemble(mr);
  return mr;
}

MultiResolution build_generalized(const std::vector<Eigen::MatrixXd>& filters, double eps, WaveletMode mode) {
  if (filters.empty()) throw InputError("diffusion wavelets: need at least one filter");
  const Eigen::Index n = filters[0].rows();
  for (const auto& H : filters)
    if (H.rows() != n || H.cols() != n) throw InputError("diffusion wavelets: filters must be N x N");
  MultiResolution mr = start(n, eps, mode, filters.size());
  for (std::size_t j = 0; j < filters.size(); ++j) {
    const Eigen::MatrixXd& phi = mr.scaling_in_v0[j];
    const Eigen::MatrixXd A = left_inverse(phi, mode) * filters[j] * phi;
    mr.compressed_ops.push_back(A);
    refine(mr, A);
  }
  assemble(mr);
  return mr;
}

WaveletScale wavelets_at_scale(const MultiResolution& mr, std::size_t j) {
  if (j >= mr.wavelet_bases.size()) throw InputError("wavelets_at_scale: scale out of range");
  return {mr.wavelet_bases[j], mr.dual_wavelets[j]};
}

DiffusionCoefficients forward(const MultiResolution& mr, const Eigen::VectorXd& f) {
  if (f.size() != mr.transform.rows()) throw InputError("forward: signal size mismatch");
  const Eigen::VectorXd c = mr.analysis * f;
  DiffusionCoefficients out;
  Eigen::Index at = 0;
  for (const auto& psi : mr.wavelet_bases) {
    out.wavelet.push_back(c.segment(at, psi.cols()));
    at += psi.cols();
  }
  out.scaling = c.tail(c.size() - at);
  return out;
}

Eigen::VectorXd inverse(const MultiResolution& mr, const DiffusionCoefficients& c) {
  if (c.wavelet.size() != mr.wavelet_bases.size()) throw InputError("inverse: wrong number of wavelet blocks");
  Eigen::VectorXd stacked(mr.transform.cols());
  Eigen::Index at = 0;
  for (std::size_t j = 0; j < c.wavelet.size(); ++j) {
    if (c.wavelet[j].size() != mr.wavelet_bases[j].cols()) throw InputError("inverse: wavelet block size mismatch");
    stacked.segment(at, c.wavelet[j].size()) = c.wavelet[j];
    at += c.wavelet[j].size();
  }
  if (c.scaling.size() != stacked.size() - at) throw InputError("inverse: scaling block size mismatch");
  stacked.tail(c.scaling.size()) = c.scaling;
  return mr.transform * stacked;
}

double transform_condition_number(const MultiResolution& mr) {
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXd>(mr.transform).singularValues();
  if (s.size() == 0 || mr.transform.cols() > mr.transform.rows() || !(s(s.size() - 1) > 1e-14 * s(0))) {
    throw SingularTransformError("diffusion wavelets: transform matrix is rank deficient");
  }
  return s(0) / s(s.size() - 1);
}

}  // namespace digh
