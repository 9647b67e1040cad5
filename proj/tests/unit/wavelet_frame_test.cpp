#include <digh/errors.hpp>
#include <digh/graph.hpp>
#include <digh/random_walk.hpp>
#include <digh/spectral.hpp>
#include <digh/wavelet_frame.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace digh;

namespace {

SpectralDecomposition cycle_dec(int n) { return decompose(lazy(RandomWalk::from_graph(directed_cycle(n)), 0.5).transition()); }

SpectralDecomposition dws_dec() { return decompose(RandomWalk::from_graph(directed_watts_strogatz(64, 2, 0.02, 3)).transition()); }

double energy(const std::vector<Eigen::VectorXd>& blocks) {
  double e = 0.0;
  for (const auto& b : blocks) e += b.squaredNorm();
  return e;
}

}  // namespace

TEST(FilterBank, ExponentialSpecShape) {
  auto spec = FilterBankSpec::exponential(3);
  EXPECT_EQ(spec.scales, (std::vector<double>{2, 4, 8}));
  EXPECT_DOUBLE_EQ(spec.h(1.0), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(spec.g(2.0), std::exp(-1.0) - std::exp(-2.0));
}

TEST(FilterBank, ValidationErrors) {
  auto dec = cycle_dec(8);
  auto spec = FilterBankSpec::exponential(2);
  spec.scales = {4, 2};
  EXPECT_THROW(build_bank(dec, spec), InputError);
  spec = FilterBankSpec::exponential(2);
  spec.dual_responses = {[](double) { return 1.0; }};
  EXPECT_THROW(build_bank(dec, spec), InputError);
  spec.scales.clear();
  EXPECT_THROW(build_bank(dec, spec), InputError);
}

TEST(FilterBank, IdentityBankIsTriviallyPerfect) {
  auto dec = cycle_dec(16);
  FilterBankSpec spec;
  spec.scales = {1.0};
  spec.h = [](double) { return 1.0; };
  spec.g = [](double) { return 0.0; };
  spec.dual_responses = {[](double) { return 1.0; }, [](double) { return 0.0; }};
  auto bank = build_bank(dec, spec);
  EXPECT_LT((bank.synthesis[0] * bank.analysis[0] - Eigen::MatrixXd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-8);
  auto pr = check_pr(bank, dec, spec);
  EXPECT_TRUE(pr.ok);
  EXPECT_LT(pr.scalar_residual, 1e-15);
  EXPECT_LT(pr.matrix_residual, 1e-8);
}

TEST(FilterBank, CanonicalDualsGivePerfectReconstruction) {
  for (const auto& dec : {cycle_dec(64), dws_dec()}) {
    auto spec = FilterBankSpec::exponential(4);
    auto bank = build_bank(dec, spec);
    const auto n = static_cast<Eigen::Index>(bank.signal_size());
    ASSERT_EQ(bank.block_count(), 5u);
    for (const auto& m : bank.synthesis) EXPECT_EQ(m.rows(), n);
    auto pr = check_pr(bank, dec, spec);
    EXPECT_TRUE(pr.ok);
    EXPECT_LE(pr.scalar_residual, 1e-10);
    EXPECT_LE(pr.matrix_residual, 1e-8);

    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd f = oracle::random_vector(n, rng);
      EXPECT_LE((synthesize(bank, analyze(bank, f)) - f).norm(), 1e-8 * f.norm());
    }
  }
}

TEST(FilterBank, FrameSandwich) {
  auto dec = dws_dec();
  auto bank = build_bank(dec, FilterBankSpec::exponential(3));
  ASSERT_GT(bank.frame_lower, 0.0);
  ASSERT_GE(bank.frame_upper, bank.frame_lower);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd f = oracle::random_vector(64, rng);
    const double e = energy(analyze(bank, f));
    EXPECT_GE(e, bank.frame_lower * f.squaredNorm() * (1 - 1e-12));
    EXPECT_LE(e, bank.frame_upper * f.squaredNorm() * (1 + 1e-12));
  }
}

TEST(FilterBank, ViolatedDesignIsDetected) {
  auto dec = cycle_dec(64);
  auto spec = FilterBankSpec::exponential(3);
  const Eigen::VectorXd realized = [&] {
    Eigen::VectorXd w(static_cast<Eigen::Index>(dec.groups.size()));
    for (std::size_t i = 0; i < dec.groups.size(); ++i) w(static_cast<Eigen::Index>(i)) = dec.groups[i].frequency;
    return w;
  }();
  auto duals = canonical_duals(spec, realized);
  const double eps = 1e-3;
  auto g1_dual = duals[1];
  duals[1] = [g1_dual, eps](double w) { return g1_dual(w) + eps; };
  spec.dual_responses = duals;
  auto bank = build_bank(dec, spec);
  auto pr = check_pr(bank, dec, spec);
  EXPECT_FALSE(pr.ok);
  // The sum picks up eps * g(t_1 w); its maximum over realized frequencies.
  double expected = 0.0;
  for (Eigen::Index i = 0; i < realized.size(); ++i) expected = std::max(expected, eps * std::abs(spec.g(spec.scales[0] * realized(i))));
  EXPECT_NEAR(pr.scalar_residual, expected, 0.1 * expected);
  EXPECT_GT(pr.matrix_residual, 1e-8);
}

TEST(FilterBank, DegenerateDesignRaises) {
  auto dec = cycle_dec(8);
  FilterBankSpec spec;
  spec.scales = {1.0};
  spec.h = [](double x) { return x < 1e-9 ? 1.0 : 0.0; };
  spec.g = [](double) { return 0.0; };
  EXPECT_THROW(build_bank(dec, spec), DesignError);
}

TEST(Analyze, ZeroAndDcSignals) {
  auto dec = cycle_dec(32);
  auto bank = build_bank(dec, FilterBankSpec::exponential(3));
  for (const auto& b : analyze(bank, Eigen::VectorXd::Zero(32))) EXPECT_EQ(b.cwiseAbs().maxCoeff(), 0.0);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(32);
  auto blocks = analyze(bank, one);
  EXPECT_LT((blocks[0] - one).cwiseAbs().maxCoeff(), 1e-10);
  for (std::size_t j = 1; j < blocks.size(); ++j) EXPECT_LT(blocks[j].cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(analyze(bank, Eigen::VectorXd::Ones(3)), InputError);
}

TEST(Synthesize, ZeroBlocksAndAtoms) {
  auto dec = dws_dec();
  auto bank = build_bank(dec, FilterBankSpec::exponential(2));
  std::vector<Eigen::VectorXd> blocks(3, Eigen::VectorXd::Zero(64));
  EXPECT_EQ(synthesize(bank, blocks).cwiseAbs().maxCoeff(), 0.0);
  blocks[2](50) = 1.0;
  EXPECT_EQ(synthesize(bank, blocks), atom(bank, 2, 50));
  EXPECT_EQ(atom(bank, 0, 7), bank.synthesis[0].col(7));
  EXPECT_THROW(atom(bank, 3, 0), InputError);
  blocks.pop_back();
  EXPECT_THROW(synthesize(bank, blocks), InputError);
}

TEST(MakeBank, BoundsFromStacks) {
  std::vector<Eigen::MatrixXd> s{Eigen::MatrixXd::Identity(3, 3) * 0.5, Eigen::MatrixXd::Identity(3, 3) * 0.5};
  std::vector<Eigen::MatrixXd> a{Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3)};
  auto bank = make_bank(s, a);
  EXPECT_NEAR(bank.frame_lower, 2.0, 1e-14);
  EXPECT_NEAR(bank.frame_upper, 2.0, 1e-14);
  EXPECT_EQ(bank.synthesis_stack().cols(), 6);
  EXPECT_THROW(make_bank(s, {a[0]}), InputError);
}
