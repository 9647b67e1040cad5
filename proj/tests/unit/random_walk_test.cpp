#include <digh/errors.hpp>
#include <digh/graph.hpp>
#include <digh/random_walk.hpp>
#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "oracles.hpp"

using namespace digh;

namespace {

double max_row_sum_error(const Eigen::MatrixXd& P) {
  return (P.rowwise().sum() - Eigen::VectorXd::Ones(P.rows())).cwiseAbs().maxCoeff();
}

double stationarity_l1(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  return (P.transpose() * pi - pi).lpNorm<1>();
}

// Weighted undirected graph from a random symmetric weight pattern.
DirectedGraph random_undirected(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    const Vertex j = (i + 1) % n;
    const double x = w(rng);
    edges.push_back({i, j, x});
    edges.push_back({j, i, x});
  }
  for (int extra = 0; extra < 5; ++extra) {
    const Vertex a = rng() % n, b = rng() % n;
    if (a == b) continue;
    const double x = w(rng);
    edges.push_back({a, b, x});
    edges.push_back({b, a, x});
  }
  return DirectedGraph(n, edges);
}

}  // namespace

TEST(FromGraph, CycleIsShiftWithUniformPi) {
  auto w = RandomWalk::from_graph(directed_cycle(4));
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) shift(i, (i + 1) % 4) = 1.0;
  EXPECT_EQ(w.transition(), shift);
  EXPECT_LT((w.stationary() - Eigen::VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(w.period(), 4u);
  EXPECT_FALSE(w.ergodic());
  EXPECT_TRUE(w.source_graph() != nullptr);
}

TEST(FromGraph, UndirectedTriangle) {
  DirectedGraph g(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}, {2, 1, 1}, {0, 2, 1}, {2, 0, 1}});
  auto w = RandomWalk::from_graph(g);
  EXPECT_DOUBLE_EQ(w.transition()(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(w.transition()(0, 0), 0.0);
  EXPECT_LT((w.stationary() - Eigen::VectorXd::Constant(3, 1.0 / 3)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE(w.ergodic());
}

TEST(FromGraph, Errors) {
  EXPECT_THROW(RandomWalk::from_graph(DirectedGraph(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}})), DanglingNodeError);
  EXPECT_THROW(RandomWalk::from_graph(DirectedGraph(4, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}, {3, 2, 1}})),
               ConnectivityError);
  try {
    RandomWalk::from_graph(DirectedGraph(2, {{0, 1, 1}}));
    FAIL();
  } catch (const DanglingNodeError& e) {
    EXPECT_EQ(e.vertex(), 1u);
  }
}

TEST(Stationary, UndirectedIsProportionalToDegree) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto g = random_undirected(12, s);
    auto w = RandomWalk::from_graph(g);
    Eigen::VectorXd d = g.out_degrees();
    EXPECT_LT((w.stationary() - d / d.sum()).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Stationary, PeriodicTwoStateFallsBackToLazy) {
  Eigen::MatrixXd P(2, 2);
  P << 0, 1, 1, 0;
  for (auto m : {StationaryMethod::power, StationaryMethod::direct, StationaryMethod::automatic}) {
    StationaryOptions o;
    o.method = m;
    Eigen::VectorXd pi = compute_stationary(P, o);
    EXPECT_NEAR(pi(0), 0.5, 1e-12);
    EXPECT_NEAR(pi(1), 0.5, 1e-12);
  }
}

TEST(Stationary, PowerAndDirectAgreeWithEliminationOracle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto w = RandomWalk::from_graph(random_strongly_connected(40, 0.08, s));
    StationaryOptions power, direct;
    power.method = StationaryMethod::power;
    direct.method = StationaryMethod::direct;
    Eigen::VectorXd a = compute_stationary(w.transition(), power);
    Eigen::VectorXd b = compute_stationary(w.transition(), direct);
    Eigen::VectorXd c = oracle::stationary_by_elimination(w.transition());
    EXPECT_LT((a - b).lpNorm<1>(), 1e-10);
    EXPECT_LT((b - c).lpNorm<1>(), 1e-12);
    EXPECT_LT(stationarity_l1(w.transition(), a), 1e-12);
    EXPECT_NEAR(a.sum(), 1.0, 1e-14);
  }
}

TEST(Stationary, PowerIterationOnPeriodicCycle) {
  StationaryOptions o;
  o.method = StationaryMethod::power;
  Eigen::VectorXd pi = compute_stationary(RandomWalk::from_graph(directed_cycle(7)).transition(), o);
  EXPECT_LT((pi - Eigen::VectorXd::Constant(7, 1.0 / 7)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Stationary, ConvergenceErrorCarriesIterations) {
  StationaryOptions o;
  o.method = StationaryMethod::power;
  o.max_iter = 3;
  auto w = RandomWalk::from_graph(random_strongly_connected(30, 0.05, 1));
  try {
    compute_stationary(w.transition(), o);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.iterations(), 3u);
  }
}

TEST(Period, KnownChains) {
  EXPECT_EQ(chain_period(RandomWalk::from_graph(directed_cycle(5)).transition()), 5u);
  EXPECT_EQ(chain_period(RandomWalk::from_graph(directed_torus(4, 6)).transition()), 2u);
  EXPECT_EQ(chain_period(RandomWalk::from_graph(directed_torus(3, 4)).transition()), 1u);
  auto lz = lazy(RandomWalk::from_graph(directed_cycle(6)), 0.3);
  EXPECT_EQ(lz.period(), 1u);
  EXPECT_TRUE(lz.ergodic());
}

TEST(FromTransition, Validation) {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.6, 1, 0;
  EXPECT_THROW(RandomWalk::from_transition(bad), InputError);
  Eigen::MatrixXd neg(2, 2);
  neg << 1.5, -0.5, 1, 0;
  EXPECT_THROW(RandomWalk::from_transition(neg), InputError);
  Eigen::MatrixXd reducible = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(RandomWalk::from_transition(reducible), ConnectivityError);
}

TEST(Lazy, Formula) {
  auto w = RandomWalk::from_graph(directed_cycle(4));
  EXPECT_EQ(lazy(w, 0.0).transition(), w.transition());
  Eigen::MatrixXd P = lazy(w, 0.5).transition();
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(P(i, i), 0.5);
    EXPECT_EQ(P(i, (i + 1) % 4), 0.5);
  }
  EXPECT_THROW(lazy(w, 1.0), InputError);
  EXPECT_THROW(lazy(w, -0.1), InputError);
}

TEST(TimeReversal, ReversibleChainIsFixed) {
  auto w = RandomWalk::from_graph(random_undirected(10, 3));
  EXPECT_LT((time_reversal(w).transition() - w.transition()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TimeReversal, LazyCycleReversesDirection) {
  auto w = lazy(RandomWalk::from_graph(directed_cycle(4)), 0.5);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    expected(i, i) = 0.5;
    expected(i, (i + 3) % 4) = 0.5;
  }
  EXPECT_LT((time_reversal(w).transition() - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TimeReversal, InvolutionAndAdjointness) {
  std::mt19937_64 rng(5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto w = RandomWalk::from_graph(random_strongly_connected(20, 0.15, s));
    auto r = time_reversal(w);
    EXPECT_LT((time_reversal(r).transition() - w.transition()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(max_row_sum_error(r.transition()), 1e-12);
    const Eigen::VectorXd& pi = w.stationary();
    for (int k = 0; k < 10; ++k) {
      Eigen::VectorXcd f = oracle::random_complex(20, rng), g = oracle::random_complex(20, rng);
      const Eigen::VectorXcd Pg = w.transition().cast<std::complex<double>>() * g;
      const Eigen::VectorXcd Rf = r.transition().cast<std::complex<double>>() * f;
      EXPECT_LE(std::abs(inner_pi(f, Pg, pi) - inner_pi(Rf, g, pi)), 1e-10 * f.norm() * g.norm());
    }
  }
}

TEST(TimeReversal, DegenerateStationary) {
  Eigen::MatrixXd P(2, 2);
  P << 1.0 - 1e-17, 1e-17, 1, 0;
  // pi(1) ~ 1e-17: rejected when the walk is built, before any Pi^{-1} is formed.
  EXPECT_THROW(RandomWalk::from_transition(P), DegenerateStationaryError);
  const Eigen::VectorXd pi = (Eigen::VectorXd(2) << 1.0, 1e-17).finished();
  EXPECT_THROW(isometry_to_pi(Eigen::VectorXd::Ones(2), pi), DegenerateStationaryError);
}

TEST(Reversibilized, EndpointsAndSelfAdjointMidpoint) {
  auto w = RandomWalk::from_graph(random_strongly_connected(15, 0.2, 8));
  EXPECT_LT((reversibilized(w, 0.0).transition() - w.transition()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((reversibilized(w, 1.0).transition() - time_reversal(w).transition()).cwiseAbs().maxCoeff(), 1e-15);
  auto mid = reversibilized(w, 0.5);
  const Eigen::MatrixXd PiP = w.stationary().asDiagonal() * mid.transition();
  EXPECT_LT((PiP - PiP.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  Eigen::MatrixXd T = similar_operator(mid);
  EXPECT_LT((T - T.transpose()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_THROW(reversibilized(w, 1.5), InputError);
}

TEST(Families, RowStochasticAndSharedStationary) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto g = random_strongly_connected(25, 0.1, 100 + s);
    auto w = RandomWalk::from_graph(g);
    const Eigen::VectorXd& pi = w.stationary();
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      auto r = reversibilized(w, a);
      EXPECT_LT(max_row_sum_error(r.transition()), 1e-12);
      EXPECT_LE(stationarity_l1(r.transition(), pi), 1e-12);
    }
    for (double gm : {0.0, 0.5}) {
      auto l = lazy(w, gm);
      EXPECT_LT(max_row_sum_error(l.transition()), 1e-12);
      EXPECT_LE(stationarity_l1(l.transition(), pi), 1e-12);
    }
    EXPECT_LT(max_row_sum_error(time_reversal(w).transition()), 1e-12);
    EXPECT_LT(max_row_sum_error(google_matrix(g).transition()), 1e-12);
    EXPECT_LT(max_row_sum_error(rank_one_walk(g).transition()), 1e-12);
  }
}

TEST(PerronFrobenius, SubdominantEigenvaluesInsideUnitCircle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto w = lazy(RandomWalk::from_graph(random_strongly_connected(20, 0.1, 200 + s)), 0.2);
    ASSERT_TRUE(w.ergodic());
    Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(w.transition(), false).eigenvalues();
    std::vector<double> mags;
    for (auto z : ev) mags.push_back(std::abs(z));
    std::sort(mags.rbegin(), mags.rend());
    EXPECT_NEAR(mags[0], 1.0, 1e-12);
    EXPECT_LT(mags[1], 1.0 - 1e-12);
  }
}

TEST(GoogleMatrix, DanglingRowUniformAndSmallDampingLimit) {
  DirectedGraph g(3, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}});
  auto gm = google_matrix(g, 0.85);
  EXPECT_TRUE(gm.ergodic());
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(gm.transition()(2, j), 1.0 / 3, 1e-15);

  auto sc = random_strongly_connected(10, 0.2, 1);
  Eigen::MatrixXd P = RandomWalk::from_graph(sc).transition();
  EXPECT_LT((google_matrix(sc, 1e-9).transition() - P).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_THROW(google_matrix(sc, 0.0), InputError);
  EXPECT_THROW(google_matrix(sc, 1.0), InputError);
}

TEST(RankOne, EmptyGraphIsUniformAndSmallEpsLimit) {
  auto u = rank_one_walk(DirectedGraph(4, {}), 1e-4);
  EXPECT_LT((u.transition() - Eigen::MatrixXd::Constant(4, 4, 0.25)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(u.ergodic());
  auto sc = random_strongly_connected(10, 0.2, 2);
  Eigen::MatrixXd P = RandomWalk::from_graph(sc).transition();
  EXPECT_LT((rank_one_walk(sc, 1e-10).transition() - P).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(rank_one_walk(sc, 0.0), InputError);
}

TEST(SimilarOperator, UniformPiAndSameSpectrum) {
  auto c = lazy(RandomWalk::from_graph(directed_cycle(6)), 0.5);
  EXPECT_LT((similar_operator(c) - c.transition()).cwiseAbs().maxCoeff(), 1e-15);

  auto w = RandomWalk::from_graph(random_strongly_connected(15, 0.2, 3));
  auto sorted = [](Eigen::VectorXcd v) {
    std::vector<std::complex<double>> x(v.begin(), v.end());
    std::sort(x.begin(), x.end(), [](auto a, auto b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return x;
  };
  auto a = sorted(Eigen::EigenSolver<Eigen::MatrixXd>(w.transition(), false).eigenvalues());
  auto b = sorted(Eigen::EigenSolver<Eigen::MatrixXd>(similar_operator(w), false).eigenvalues());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-8);
}

TEST(Isometry, UniformScalingRoundTripAndInnerProducts) {
  std::mt19937_64 rng(1);
  Eigen::VectorXd f = oracle::random_vector(9, rng);
  Eigen::VectorXd uni = Eigen::VectorXd::Constant(9, 1.0 / 9);
  EXPECT_LT((isometry_to_pi(f, uni) - 3.0 * f).cwiseAbs().maxCoeff(), 1e-14);

  auto w = RandomWalk::from_graph(random_strongly_connected(9, 0.3, 4));
  const Eigen::VectorXd& pi = w.stationary();
  EXPECT_LT((isometry_from_pi(isometry_to_pi(f, pi), pi) - f).cwiseAbs().maxCoeff(), 1e-13);
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd a = oracle::random_vector(9, rng), b = oracle::random_vector(9, rng);
    const std::complex<double> lhs =
        inner_pi(isometry_to_pi(a, pi).cast<std::complex<double>>(), isometry_to_pi(b, pi).cast<std::complex<double>>(), pi);
    EXPECT_LT(std::abs(lhs - a.dot(b)), 1e-10);
  }
}
