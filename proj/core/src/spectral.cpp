#include "digh/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "digh/errors.hpp"
#include "digh/io.hpp"

namespace digh {
namespace {

double condition_number(const Eigen::MatrixXcd& X) {
  const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXcd>(X).singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

// Unit l2 norm, first entry with |x| > 1e-12 ||x|| made real positive.
void fix_phase(Eigen::MatrixXcd& V) {
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    auto col = V.col(j);
    const double nrm = col.norm();
    if (nrm == 0.0) continue;
    col /= nrm;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > 1e-12) {
        col *= std::conj(col(i)) / mag;
        col(i) = mag;
        break;
      }
    }
  }
}

std::vector<Eigen::Index> sorted_order(const Eigen::VectorXcd& vals) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (vals(a).real() != vals(b).real()) return vals(a).real() > vals(b).real();
    return vals(a).imag() < vals(b).imag();
  });
  return order;
}

void finish(SpectralDecomposition& dec, const DecomposeOptions& opts) {
  const Eigen::Index n = dec.eigvals.size();
  dec.frequencies.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) dec.frequencies(j) = 1.0 - dec.eigvals(j).real();
  double tol = opts.tol_freq;
  if (tol <= 0.0) {
    const double spread = n > 0 ? dec.frequencies.maxCoeff() - dec.frequencies.minCoeff() : 0.0;
    tol = spread > 0.0 ? 1e-8 * spread : 1e-8;
  }
  const bool materialize = opts.materialize_projectors.value_or(n <= 512);
  dec.groups = frequency_groups(dec, tol, materialize);
}

bool is_symmetric(const Eigen::MatrixXd& A) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

}  // namespace

namespace detail {
Eigen::MatrixXd real_part_checked(const Eigen::MatrixXcd& M, double tol, const char* what) {
  const double imag = M.size() ? M.imag().cwiseAbs().maxCoeff() : 0.0;
  if (imag > tol) {
    throw NumericalError(std::string(what) + ": imaginary residual " + std::to_string(imag) + " exceeds " +
                         std::to_string(tol));
  }
  return M.real();
}
}  // namespace detail

Eigen::VectorXd SpectralDecomposition::group_frequency_of_index() const {
  Eigen::VectorXd out = frequencies;
  for (const auto& g : groups)
    for (std::size_t j : g.eigen_indices) out(static_cast<Eigen::Index>(j)) = g.frequency;
  return out;
}

SpectralDecomposition decompose(const Eigen::MatrixXd& A, const DecomposeOptions& opts) {
  if (A.rows() != A.cols() || A.rows() == 0) throw InputError("decompose: matrix must be square and nonempty");
  const Eigen::Index n = A.rows();
  SpectralDecomposition dec;
  Eigen::VectorXcd vals;
  Eigen::MatrixXcd vecs;
  const bool symmetric = is_symmetric(A);
  if (symmetric) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
    if (es.info() != Eigen::Success) throw NumericalError("decompose: symmetric eigensolver failed");
    vals = es.eigenvalues().cast<std::complex<double>>();
    vecs = es.eigenvectors().cast<std::complex<double>>();
  } else {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("decompose: eigensolver did not converge");
    vals = es.eigenvalues();
    vecs = es.eigenvectors();
  }

  const auto order = sorted_order(vals);
  dec.eigvals.resize(n);
  dec.eigvecs.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    dec.eigvals(j) = vals(order[static_cast<std::size_t>(j)]);
    dec.eigvecs.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
  }
  fix_phase(dec.eigvecs);

  const double scale = std::max(A.cwiseAbs().rowwise().sum().maxCoeff(), std::numeric_limits<double>::min());
  const double residual =
      (A.cast<std::complex<double>>() * dec.eigvecs - dec.eigvecs * dec.eigvals.asDiagonal()).cwiseAbs().maxCoeff() /
      scale;
  if (symmetric) {
    dec.cond_number = 1.0;
    dec.inv_eigvecs = dec.eigvecs.adjoint();
  } else {
    dec.cond_number = condition_number(dec.eigvecs);
    if (!(dec.cond_number <= opts.max_condition)) {
      throw NonDiagonalizableError("decompose: eigenvector matrix condition number " +
                                       std::to_string(dec.cond_number) + " exceeds " +
                                       std::to_string(opts.max_condition) + " (residual " +
                                       std::to_string(residual) + ")",
                                   dec.cond_number, residual);
    }
    dec.inv_eigvecs = dec.eigvecs.partialPivLu().inverse();
  }
  if (!(residual <= opts.max_residual)) {
    throw NonDiagonalizableError("decompose: eigen-residual " + std::to_string(residual) + " exceeds " +
                                     std::to_string(opts.max_residual),
                                 dec.cond_number, residual);
  }
  finish(dec, opts);
  return dec;
}

SpectralDecomposition decompose_reversible(const RandomWalk& w, const DecomposeOptions& opts) {
  const Eigen::MatrixXd Pbar = reversibilized(w, 0.5).transition();
  const Eigen::VectorXd s = w.stationary().cwiseSqrt();
  Eigen::MatrixXd Tbar = s.asDiagonal() * Pbar * s.cwiseInverse().asDiagonal();
  Tbar = 0.5 * (Tbar + Tbar.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tbar);
  if (es.info() != Eigen::Success) throw NumericalError("decompose_reversible: eigensolver failed");

  const Eigen::Index n = Tbar.rows();
  SpectralDecomposition dec;
  dec.eigvals.resize(n);
  Eigen::MatrixXd U(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // SelfAdjointEigenSolver sorts ascending; we want descending.
    dec.eigvals(j) = es.eigenvalues()(n - 1 - j);
    U.col(j) = es.eigenvectors().col(n - 1 - j);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(U(i, j)) > 1e-12) {
        if (U(i, j) < 0) U.col(j) *= -1.0;
        break;
      }
    }
  }
  dec.eigvecs = (s.cwiseInverse().asDiagonal() * U).cast<std::complex<double>>();
  dec.inv_eigvecs = (U.transpose() * s.asDiagonal()).cast<std::complex<double>>();
  dec.cond_number = s.maxCoeff() / s.minCoeff();
  finish(dec, opts);
  return dec;
}

std::vector<FrequencyGroup> frequency_groups(const SpectralDecomposition& dec, double tol, bool materialize) {
  const Eigen::Index n = dec.frequencies.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return dec.frequencies(a) < dec.frequencies(b); });

  std::vector<FrequencyGroup> groups;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Eigen::Index j = order[k];
    if (k == 0 || dec.frequencies(j) - dec.frequencies(order[k - 1]) > tol) groups.emplace_back();
    groups.back().eigen_indices.push_back(static_cast<std::size_t>(j));
  }
  for (auto& g : groups) {
    std::sort(g.eigen_indices.begin(), g.eigen_indices.end());
    double sum = 0.0;
    for (std::size_t j : g.eigen_indices) sum += dec.frequencies(static_cast<Eigen::Index>(j));
    g.frequency = sum / static_cast<double>(g.eigen_indices.size());
    if (materialize) g.projector = group_projector(dec, g);
  }
  return groups;
}

Eigen::MatrixXd group_projector(const SpectralDecomposition& dec, const FrequencyGroup& group) {
  const Eigen::Index n = dec.eigvecs.rows();
  const auto m = static_cast<Eigen::Index>(group.eigen_indices.size());
  Eigen::MatrixXcd left(n, m), right(m, n);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto j = static_cast<Eigen::Index>(group.eigen_indices[static_cast<std::size_t>(k)]);
    left.col(k) = dec.eigvecs.col(j);
    right.row(k) = dec.inv_eigvecs.row(j);
  }
  const Eigen::MatrixXcd S = left * right;
  return detail::real_part_checked(S, detail::imag_tolerance(dec.cond_number) * std::max(1.0, S.cwiseAbs().maxCoeff()),
                                   "frequency projector");
}

Eigen::VectorXcd gft(const SpectralDecomposition& dec, const Eigen::VectorXcd& s) { return dec.inv_eigvecs * s; }

Eigen::VectorXcd igft(const SpectralDecomposition& dec, const Eigen::VectorXcd& shat) { return dec.eigvecs * shat; }

double dirichlet_energy(const Eigen::VectorXcd& f, const RandomWalk& w) {
  const Eigen::MatrixXd& P = w.transition();
  const Eigen::VectorXd& pi = w.stationary();
  double e = 0.0;
  for (Eigen::Index x = 0; x < P.rows(); ++x)
    for (Eigen::Index y = 0; y < P.cols(); ++y)
      if (P(x, y) != 0.0) e += pi(x) * P(x, y) * std::norm(f(x) - f(y));
  return 0.5 * e;
}

double rayleigh_quotient(const Eigen::VectorXcd& f, const RandomWalk& w) {
  const double norm2 = (f.cwiseAbs2().array() * w.stationary().array()).sum();
  if (!(norm2 > 0.0)) throw InputError("rayleigh_quotient: zero signal");
  return dirichlet_energy(f, w) / norm2;
}

std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> real_modes(const FrequencyGroup& group,
                                                                    const SpectralDecomposition& dec) {
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> out;
  for (std::size_t a : group.eigen_indices) {
    const std::complex<double> t = dec.eigvals(static_cast<Eigen::Index>(a));
    if (!(t.imag() > 1e-12 * std::max(1.0, std::abs(t)))) continue;
    const bool paired = std::any_of(group.eigen_indices.begin(), group.eigen_indices.end(), [&](std::size_t b) {
      return std::abs(dec.eigvals(static_cast<Eigen::Index>(b)) - std::conj(t)) <= 1e-8 * std::max(1.0, std::abs(t));
    });
    if (!paired) continue;
    const Eigen::VectorXcd xi = dec.eigvecs.col(static_cast<Eigen::Index>(a));
    out.emplace_back(xi.real(), xi.imag());
  }
  if (out.empty()) throw NoConjugatePairError("real_modes: group has no conjugate eigenvalue pair");
  return out;
}

void write_spectrum_csv(std::ostream& out, const SpectralDecomposition& dec) {
  out << "index,re,im,omega\n";
  for (Eigen::Index j = 0; j < dec.eigvals.size(); ++j) {
    out << j << ',' << format_double(dec.eigvals(j).real()) << ',' << format_double(dec.eigvals(j).imag()) << ','
        << format_double(dec.frequencies(j)) << '\n';
  }
}

}  // namespace digh
