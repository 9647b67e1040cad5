#include "digh/wavelet_frame.hpp"

#include <cmath>
#include <string>

#include "digh/errors.hpp"

namespace digh {
namespace {

void validate(const FilterBankSpec& spec) {
  if (spec.scales.empty()) throw InputError("filter bank: need at least one scale");
  for (std::size_t j = 1; j < spec.scales.size(); ++j)
    if (!(spec.scales[j] > spec.scales[j - 1])) throw InputError("filter bank: scales must be strictly increasing");
  if (!spec.h || !spec.g) throw InputError("filter bank: h and g are required");
  if (!spec.dual_responses.empty() && spec.dual_responses.size() != spec.scales.size() + 1) {
    throw InputError("filter bank: need J+1 dual responses");
  }
}

// Synthesis responses as functions of the frequency.
std::vector<Kernel> synthesis_responses(const FilterBankSpec& spec) {
  std::vector<Kernel> r;
  const double tJ = spec.scales.back();
  r.emplace_back([h = spec.h, tJ](double w) { return h(tJ * w); });
  for (double t : spec.scales) r.emplace_back([g = spec.g, t](double w) { return g(t * w); });
  return r;
}

Eigen::VectorXd realized_frequencies(const SpectralDecomposition& dec) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(dec.groups.size()));
  for (std::size_t i = 0; i < dec.groups.size(); ++i) w(static_cast<Eigen::Index>(i)) = dec.groups[i].frequency;
  return w;
}

std::vector<Kernel> resolve_duals(const FilterBankSpec& spec, const SpectralDecomposition& dec) {
  return spec.dual_responses.empty() ? canonical_duals(spec, realized_frequencies(dec)) : spec.dual_responses;
}

double max_eigenvalue(const Eigen::MatrixXd& gram) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

}  // namespace

FilterBankSpec FilterBankSpec::exponential(std::size_t J) {
  FilterBankSpec spec;
  for (std::size_t j = 1; j <= J; ++j) spec.scales.push_back(std::ldexp(1.0, static_cast<int>(j)));
  spec.h = [](double x) { return std::exp(-x); };
  spec.g = [](double x) { return std::exp(-x / 2) - std::exp(-x); };
  return spec;
}

std::vector<Kernel> prototype_duals(const std::vector<double>& scales, const Kernel& h_dual, const Kernel& g_dual) {
  std::vector<Kernel> r;
  const double tJ = scales.back();
  r.emplace_back([h_dual, tJ](double w) { return h_dual(tJ * w); });
  for (double t : scales) r.emplace_back([g_dual, t](double w) { return g_dual(t * w); });
  return r;
}

std::vector<Kernel> canonical_duals(const FilterBankSpec& spec, const Eigen::VectorXd& realized) {
  validate(spec);
  const auto synth = synthesis_responses(spec);
  auto delta = [synth](double w) {
    double d = 0.0;
    for (const auto& r : synth) d += r(w) * r(w);
    return d;
  };
  for (Eigen::Index i = 0; i < realized.size(); ++i) {
    if (!(delta(realized(i)) >= 1e-12)) {
      throw DesignError("filter bank: h^2 + sum g^2 = " + std::to_string(delta(realized(i))) +
                        " < 1e-12 at frequency " + std::to_string(realized(i)));
    }
  }
  std::vector<Kernel> duals;
  for (const auto& r : synth) duals.emplace_back([r, delta](double w) { return r(w) / delta(w); });
  return duals;
}

Eigen::MatrixXd FrameOperators::synthesis_stack() const {
  const auto n = static_cast<Eigen::Index>(signal_size());
  Eigen::MatrixXd K(n, n * static_cast<Eigen::Index>(block_count()));
  for (std::size_t k = 0; k < synthesis.size(); ++k) K.middleCols(static_cast<Eigen::Index>(k) * n, n) = synthesis[k];
  return K;
}

FrameOperators make_bank(std::vector<Eigen::MatrixXd> synthesis, std::vector<Eigen::MatrixXd> analysis,
                         std::vector<double> scales) {
  if (synthesis.empty() || synthesis.size() != analysis.size()) {
    throw InputError("make_bank: need matching nonempty synthesis and analysis lists");
  }
  const auto n = synthesis[0].rows();
  Eigen::MatrixXd KKt = Eigen::MatrixXd::Zero(n, n), AtA = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < synthesis.size(); ++k) {
    if (synthesis[k].rows() != n || synthesis[k].cols() != n || analysis[k].rows() != n || analysis[k].cols() != n) {
      throw InputError("make_bank: all filters must be N x N");
    }
    KKt.noalias() += synthesis[k] * synthesis[k].transpose();
    AtA.noalias() += analysis[k].transpose() * analysis[k];
  }
  FrameOperators bank{std::move(scales), std::move(synthesis), std::move(analysis), 0.0, 0.0};
  bank.frame_lower = 1.0 / max_eigenvalue(KKt);
  bank.frame_upper = max_eigenvalue(AtA);
  return bank;
}

FrameOperators build_bank(const SpectralDecomposition& dec, const FilterBankSpec& spec) {
  validate(spec);
  const auto synth = synthesis_responses(spec);
  const auto duals = resolve_duals(spec, dec);
  std::vector<Eigen::MatrixXd> s, a;
  for (std::size_t k = 0; k < synth.size(); ++k) {
    s.push_back(spectral_function(dec, synth[k]));
    a.push_back(spectral_function(dec, duals[k]));
  }
  return make_bank(std::move(s), std::move(a), spec.scales);
}

PrCheck check_pr(const FrameOperators& bank, const SpectralDecomposition& dec, const FilterBankSpec& spec) {
  validate(spec);
  const auto synth = synthesis_responses(spec);
  const auto duals = resolve_duals(spec, dec);
  PrCheck out;
  for (const auto& group : dec.groups) {
    double sum = 0.0;
    for (std::size_t k = 0; k < synth.size(); ++k) sum += synth[k](group.frequency) * duals[k](group.frequency);
    out.scalar_residual = std::max(out.scalar_residual, std::abs(sum - 1.0));
  }
  const auto n = static_cast<Eigen::Index>(bank.signal_size());
  Eigen::MatrixXd M = -Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 0; k < bank.block_count(); ++k) M.noalias() += bank.synthesis[k] * bank.analysis[k];
  out.matrix_residual = M.cwiseAbs().rowwise().sum().maxCoeff();
  out.ok = out.scalar_residual <= 1e-10;
  return out;
}

std::vector<Eigen::VectorXd> analyze(const FrameOperators& bank, const Eigen::VectorXd& f) {
  if (static_cast<std::size_t>(f.size()) != bank.signal_size()) throw InputError("analyze: signal size mismatch");
  std::vector<Eigen::VectorXd> blocks;
  for (const auto& A : bank.analysis) blocks.push_back(A * f);
  return blocks;
}

Eigen::VectorXd synthesize(const FrameOperators& bank, const std::vector<Eigen::VectorXd>& blocks) {
  if (blocks.size() != bank.block_count()) throw InputError("synthesize: expected J+1 blocks");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(bank.signal_size()));
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (static_cast<std::size_t>(blocks[k].size()) != bank.signal_size()) {
      throw InputError("synthesize: block size mismatch");
    }
    f.noalias() += bank.synthesis[k] * blocks[k];
  }
  return f;
}

Eigen::VectorXd atom(const FrameOperators& bank, std::size_t block, std::size_t vertex) {
  if (block >= bank.block_count() || vertex >= bank.signal_size()) throw InputError("atom: index out of range");
  return bank.synthesis[block].col(static_cast<Eigen::Index>(vertex));
}

}  // namespace digh
