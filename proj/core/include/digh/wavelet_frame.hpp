#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "digh/spectral.hpp"

namespace digh {

using Kernel = std::function<double(double)>;

/// @brief Kernels and dilations of a spectral filter bank.
///
/// Synthesis filters are h(t_J w) and g(t_j w). The analysis side is given by
/// per-filter frequency responses (index 0 is the low-pass, index j the
/// band-pass at t_j). An empty dual list selects the canonical dual
/// h / Delta, g_j / Delta with Delta = h(t_J w)^2 + sum_j g(t_j w)^2.
struct FilterBankSpec {
  std::vector<double> scales;   // t_1 < ... < t_J
  Kernel h;
  Kernel g;
  std::vector<Kernel> dual_responses;  // functions of w, size J+1 or empty

  // h(x) = exp(-x), g(x) = exp(-x/2) - exp(-x), t_j = 2^j.
  static FilterBankSpec exponential(std::size_t J);
};

// Dual responses w -> h_dual(t_J w), w -> g_dual(t_j w) from prototype kernels.
std::vector<Kernel> prototype_duals(const std::vector<double>& scales, const Kernel& h_dual, const Kernel& g_dual);

// Canonical dual responses; DesignError if Delta < 1e-12 at a realized frequency.
std::vector<Kernel> canonical_duals(const FilterBankSpec& spec, const Eigen::VectorXd& realized_frequencies);

struct FrameOperators {
  std::vector<double> scales;
  std::vector<Eigen::MatrixXd> synthesis;  // H_{t_J}, G_{t_1}, ..., G_{t_J}
  std::vector<Eigen::MatrixXd> analysis;   // dual filters in the same order
  double frame_lower = 0.0;                // 1 / ||K||_2^2
  double frame_upper = 0.0;                // ||K~||_2^2

  std::size_t signal_size() const { return synthesis.empty() ? 0 : static_cast<std::size_t>(synthesis[0].rows()); }
  std::size_t block_count() const { return synthesis.size(); }
  // Horizontal stack [H, G_1, ..., G_J], N x N(J+1).
  Eigen::MatrixXd synthesis_stack() const;
};

FrameOperators build_bank(const SpectralDecomposition& dec, const FilterBankSpec& spec);

// Bank from explicit matrices; frame bounds computed from the stacks.
FrameOperators make_bank(std::vector<Eigen::MatrixXd> synthesis, std::vector<Eigen::MatrixXd> analysis,
                         std::vector<double> scales = {});

struct PrCheck {
  bool ok = false;                  // scalar residual <= 1e-10
  double scalar_residual = 0.0;     // max over realized frequencies
  double matrix_residual = 0.0;     // || sum synthesis*analysis - I ||_inf
};

PrCheck check_pr(const FrameOperators& bank, const SpectralDecomposition& dec, const FilterBankSpec& spec);

std::vector<Eigen::VectorXd> analyze(const FrameOperators& bank, const Eigen::VectorXd& f);
Eigen::VectorXd synthesize(const FrameOperators& bank, const std::vector<Eigen::VectorXd>& blocks);

// Column y of synthesis[block].
Eigen::VectorXd atom(const FrameOperators& bank, std::size_t block, std::size_t vertex);

}  // namespace digh
