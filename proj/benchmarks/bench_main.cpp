#include <benchmark/benchmark.h>

#include <digh/digh.hpp>

namespace {

using namespace digh;

Eigen::MatrixXd cycle_walk(std::size_t n) {
  return lazy(RandomWalk::from_graph(directed_cycle(n)), 0.5).transition();
}

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd P = RandomWalk::from_graph(directed_watts_strogatz(n, 2, 0.1, 1)).transition();
  for (auto _ : state) benchmark::DoNotOptimize(decompose(P));
}
BENCHMARK(BM_Decompose)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Stationary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd P = RandomWalk::from_graph(random_strongly_connected(n, 0.05, 2)).transition();
  for (auto _ : state) benchmark::DoNotOptimize(compute_stationary(P));
}
BENCHMARK(BM_Stationary)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_BuildBank(benchmark::State& state) {
  const auto dec = decompose(cycle_walk(static_cast<std::size_t>(state.range(0))));
  const auto spec = FilterBankSpec::exponential(4);
  for (auto _ : state) benchmark::DoNotOptimize(build_bank(dec, spec));
}
BENCHMARK(BM_BuildBank)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_DiffusionWavelets(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd T = similar_operator(lazy(RandomWalk::from_graph(directed_cycle(n)), 0.5));
  const auto mode = state.range(1) == 0 ? WaveletMode::orthogonal : WaveletMode::biorthogonal;
  for (auto _ : state) benchmark::DoNotOptimize(build(T, 6, mode));
}
BENCHMARK(BM_DiffusionWavelets)->Args({128, 0})->Args({128, 1})->Args({256, 0})->Unit(benchmark::kMillisecond);

void BM_SslSolve(benchmark::State& state) {
  const auto g = largest_scc_subgraph(directed_watts_strogatz(static_cast<std::size_t>(state.range(0)), 2, 0.1, 3)).graph;
  const std::size_t n = g.size();
  const auto ops = SslOperators::from_graph(g, {2.0, 4.0}, state.range(1) == 6);
  Eigen::VectorXd truth = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  truth.tail(static_cast<Eigen::Index>(n / 2)).setConstant(-1.0);
  std::vector<std::size_t> known;
  for (std::size_t v = 0; v < n; v += 5) known.push_back(v);
  const auto problem = LabelProblem::from_known(truth, known, 0.0);
  const auto method = all_methods()[static_cast<std::size_t>(state.range(1))];
  const double param = method == SslMethod::wavelet_l1 ? 0.01 : 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_method(method, problem, ops, param));
  state.SetLabel(method_name(method));
}
BENCHMARK(BM_SslSolve)->Args({128, 0})->Args({128, 1})->Args({128, 2})->Args({128, 6})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
