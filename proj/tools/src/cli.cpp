#include "digh_cli/cli.hpp"

#include <digh/digh.hpp>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace digh::cli {
namespace {

struct Config {
  std::string graph_path;
  std::string gen;
  std::string labels_path;
  std::string op;  // empty: per-command default
  double lazy = 0.0;
  std::string ergodicize;
  bool lscc = false;
  std::size_t scales = 6;
  double eps = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> gamma_grid;
  std::vector<double> lambda;
  std::vector<double> p;
  std::size_t realizations = 20;
  std::uint64_t seed = 0;
  std::string out;
  std::string sampling = "uniform";
  std::size_t K = 10;
  std::vector<std::string> methods;
  std::string mode = "both";
  std::string atoms;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError("bad number '" + s + "' in " + what);
}

std::size_t to_size(const std::string& s, const std::string& what) {
  const double x = to_double(s, what);
  if (!(x >= 0.0) || x != std::floor(x)) throw InputError("expected a nonnegative integer in " + what);
  return static_cast<std::size_t>(x);
}

DirectedGraph generate(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("--gen expects KIND:PARAMS, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  if (kind == "cycle" && args.size() == 1) {
    const std::size_t n = to_size(args[0], "--gen cycle");
    if (n < 2) throw InputError("--gen cycle: need N >= 2");
    return directed_cycle(n);
  }
  if (kind == "torus" && args.size() == 2) {
    const std::size_t m = to_size(args[0], "--gen torus"), n = to_size(args[1], "--gen torus");
    if (m < 2 || n < 2) throw InputError("--gen torus: need M, N >= 2");
    return directed_torus(m, n);
  }
  if (kind == "dws" && args.size() == 3)
    return directed_watts_strogatz(to_size(args[0], "--gen dws"), to_size(args[1], "--gen dws"),
                                   to_double(args[2], "--gen dws"), seed);
  throw InputError("unknown generator '" + spec + "'; use cycle:N, torus:M,N or dws:N,K,BETA");
}

Eigen::VectorXd two_block_labels(std::size_t n) {
  Eigen::VectorXd y = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
  y.tail(static_cast<Eigen::Index>(n - n / 2)).setConstant(-1.0);
  return y;
}

struct Input {
  DirectedGraph graph;
  Eigen::VectorXd labels;  // empty unless requested
};

Input load(const Config& c, bool want_labels) {
  Input in;
  std::size_t min_vertices = 0;
  if (!c.labels_path.empty()) {
    std::ifstream lf(c.labels_path);
    if (!lf) throw InputError("cannot open " + c.labels_path);
    min_vertices = static_cast<std::size_t>(max_label_vertex(lf) + 1);
  }
  in.graph = c.graph_path.empty() ? generate(c.gen, c.seed) : read_edge_list_file(c.graph_path, min_vertices);
  if (want_labels) {
    if (!c.labels_path.empty())
      in.labels = read_labels_file(c.labels_path, in.graph.size());
    else if (!c.gen.empty())
      in.labels = two_block_labels(in.graph.size());
    else
      throw InputError("--labels is required with --graph");
  }
  if (c.lscc) {
    Subgraph sub = largest_scc_subgraph(in.graph);
    if (in.labels.size() > 0) {
      Eigen::VectorXd y(static_cast<Eigen::Index>(sub.graph.size()));
      for (std::size_t i = 0; i < sub.graph.size(); ++i)
        y(static_cast<Eigen::Index>(i)) = in.labels(static_cast<Eigen::Index>(sub.to_original[i]));
      in.labels = y;
    }
    in.graph = std::move(sub.graph);
  }
  return in;
}

RandomWalk make_walk(const DirectedGraph& g, const Config& c) {
  std::optional<RandomWalk> w;
  if (c.ergodicize.empty()) {
    if (!is_strongly_connected(g))
      throw ConnectivityError(
          "graph is not strongly connected; restrict it with largest_scc_subgraph (--lscc) or make it ergodic "
          "with --ergodicize google:G (Google matrix) or --ergodicize rank1:EPS (rank-one perturbation)");
    w = RandomWalk::from_graph(g);
  } else {
    const auto colon = c.ergodicize.find(':');
    const std::string kind = c.ergodicize.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : c.ergodicize.substr(colon + 1);
    if (kind == "google")
      w = google_matrix(g, arg.empty() ? 0.85 : to_double(arg, "--ergodicize"));
    else if (kind == "rank1")
      w = rank_one_walk(g, arg.empty() ? 1e-4 : to_double(arg, "--ergodicize"));
    else
      throw InputError("--ergodicize expects google:G or rank1:EPS");
  }
  if (c.lazy != 0.0) w = lazy(*w, c.lazy);
  return *w;
}

enum class Family { walk, similar, adjacency };

struct Operator {
  Eigen::MatrixXd R;
  Eigen::VectorXd pi;  // stationary distribution of the underlying walk
  Family family = Family::walk;
};

// NAME[:alpha=A], NAME in P, Pstar, Pbar, P_alpha, T, Tbar, T_alpha, W_norm,
// each optionally suffixed with _sym to act on the symmetrized graph.
Operator make_operator(const DirectedGraph& graph, const Config& c, const std::string& fallback) {
  std::string name = c.op.empty() ? fallback : c.op;
  double alpha = 0.5;
  if (const auto colon = name.find(':'); colon != std::string::npos) {
    const std::string opt = name.substr(colon + 1);
    name = name.substr(0, colon);
    if (opt.rfind("alpha=", 0) != 0) throw InputError("--op options must be alpha=A");
    alpha = to_double(opt.substr(6), "--op");
  }
  const bool sym = name.size() > 4 && name.substr(name.size() - 4) == "_sym";
  if (sym) name = name.substr(0, name.size() - 4);
  const DirectedGraph g = sym ? symmetrize(graph) : graph;

  Operator op;
  if (name == "W_norm") {
    op.R = normalized_adjacency(g.adjacency());
    op.pi = make_walk(g, c).stationary();
    op.family = Family::adjacency;
    return op;
  }
  const RandomWalk w = make_walk(g, c);
  op.pi = w.stationary();
  if (name == "P") op.R = w.transition();
  else if (name == "Pstar") op.R = time_reversal(w).transition();
  else if (name == "Pbar") op.R = reversibilized(w, 0.5).transition();
  else if (name == "P_alpha") op.R = reversibilized(w, alpha).transition();
  else if (name == "T") op.R = similar_operator(w);
  else if (name == "Tbar") op.R = similar_operator(reversibilized(w, 0.5));
  else if (name == "T_alpha") op.R = similar_operator(reversibilized(w, alpha));
  else throw InputError("unknown operator '" + name + "'");
  op.family = name[0] == 'T' ? Family::similar : Family::walk;
  return op;
}

struct Output {
  std::ofstream file;
  std::ostream* stream;
  Output(const std::string& path, std::ostream& fallback) : stream(&fallback) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw InputError("cannot write " + path);
    stream = &file;
  }
  std::ostream& get() { return *stream; }
};

int cmd_spectrum(const Config& c, std::ostream& out) {
  const Input in = load(c, false);
  const Operator op = make_operator(in.graph, c, "P");
  const SpectralDecomposition dec = decompose(op.R);
  Output o(c.out, out);
  write_spectrum_csv(o.get(), dec);
  return 0;
}

int cmd_ssl(const Config& c, std::ostream& out) {
  const Input in = load(c, true);
  SslConfig cfg;
  if (!c.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : c.methods) cfg.methods.push_back(parse_method(m));
  }
  if (!c.p.empty()) cfg.known_fractions = c.p;
  cfg.realizations = c.realizations;
  if (!c.gamma_grid.empty()) cfg.gamma_grid = c.gamma_grid;
  if (!c.lambda.empty()) cfg.lambda_grid = c.lambda;
  cfg.seed = c.seed;
  if (!is_strongly_connected(in.graph))
    throw ConnectivityError(
        "graph is not strongly connected; restrict it with largest_scc_subgraph (--lscc); the ssl operators "
        "need a strongly connected graph");
  const auto rows = evaluate_ssl(in.graph, in.labels, cfg);
  Output o(c.out, out);
  o.get() << "method,p,mean_accuracy,std_accuracy,best_param,degenerate_splits\n";
  for (const auto& r : rows)
    o.get() << r.method << ',' << format_double(r.p) << ',' << format_double(r.mean_accuracy) << ','
            << format_double(r.std_accuracy) << ',' << format_double(r.best_param) << ',' << r.degenerate_splits
            << '\n';
  return 0;
}

int cmd_model(const Config& c, std::ostream& out) {
  const Input in = load(c, true);
  for (Eigen::Index i = 0; i < in.labels.size(); ++i)
    if (in.labels(i) == 0.0) throw InputError("model: every vertex needs a label");
  if (c.realizations == 0) throw InputError("--realizations must be positive");
  SamplingKind kind;
  if (c.sampling == "uniform") kind = SamplingKind::uniform;
  else if (c.sampling == "stationary") kind = SamplingKind::stationary;
  else throw InputError("--sampling must be uniform or stationary");

  const Operator op = make_operator(in.graph, c, "P");
  const auto n = in.labels.size();
  // Loss weight: pi for the P family, uniform for the T family and W_norm.
  const Eigen::VectorXd mu = op.family == Family::walk ? op.pi
                                                       : Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  const std::vector<double> ps = c.p.empty() ? std::vector<double>{0.1, 0.2, 0.3, 0.5} : c.p;

  Output o(c.out, out);
  o.get() << "operator,p,mean_accuracy,std_accuracy\n";
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const SamplingModel s{kind, ps[k], mix_seed(c.seed, k)};
    const Eigen::VectorXd theta = learn_signal_model(op.R, in.labels, s, c.K, mu, 0, op.pi);
    const Eigen::MatrixXd H = PolynomialFilter(theta, op.R).matrix();
    const Eigen::VectorXd delta = inclusion_probabilities(s, op.pi);
    std::vector<double> acc(c.realizations);
    parallel_for(c.realizations, [&](std::size_t r) {
      Rng rng(s.seed, r);
      acc[r] = accuracy(reconstruct_labels(H, sample_signal(in.labels, delta, rng)), in.labels);
    });
    const double R = static_cast<double>(acc.size());
    const double mean = std::accumulate(acc.begin(), acc.end(), 0.0) / R;
    double ss = 0.0;
    for (double a : acc) ss += (a - mean) * (a - mean);
    const double sd = acc.size() > 1 ? std::sqrt(ss / (R - 1.0)) : 0.0;
    o.get() << (c.op.empty() ? "P" : c.op) << ',' << format_double(ps[k]) << ',' << format_double(mean) << ',' << format_double(sd) << '\n';
  }
  return 0;
}

int cmd_wavelets(const Config& c, std::ostream& out) {
  if (c.scales == 0) throw InputError("--scales must be positive");
  const Input in = load(c, false);
  const Operator op = make_operator(in.graph, c, "T");
  std::vector<WaveletMode> modes;
  if (c.mode == "orthogonal" || c.mode == "both") modes.push_back(WaveletMode::orthogonal);
  if (c.mode == "biorthogonal" || c.mode == "both") modes.push_back(WaveletMode::biorthogonal);
  if (modes.empty()) throw InputError("--mode must be orthogonal, biorthogonal or both");

  Output o(c.out, out);
  std::optional<Output> atoms;
  if (!c.atoms.empty()) {
    atoms.emplace(c.atoms, out);
    atoms->get() << "mode,scale,kind,index,vertex,value\n";
  }
  o.get() << "mode,scale,scaling_dim,wavelet_count,kappa\n";
  for (WaveletMode mode : modes) {
    const double eps = std::isnan(c.eps) ? default_eps(mode) : c.eps;
    const MultiResolution mr = build(op.R, c.scales, eps, mode);
    const double kappa = transform_condition_number(mr);
    const char* name = mode == WaveletMode::orthogonal ? "orthogonal" : "biorthogonal";
    for (std::size_t j = 0; j <= mr.n_scales; ++j) {
      const std::size_t wc = j < mr.n_scales ? static_cast<std::size_t>(mr.wavelet_bases[j].cols()) : 0;
      o.get() << name << ',' << j << ',' << mr.dim(j) << ',' << wc << ',' << format_double(kappa) << '\n';
    }
    if (!atoms) continue;
    auto emit = [&](std::size_t j, const char* kind, const Eigen::MatrixXd& B) {
      for (Eigen::Index col = 0; col < B.cols(); ++col)
        for (Eigen::Index v = 0; v < B.rows(); ++v)
          atoms->get() << name << ',' << j << ',' << kind << ',' << col << ',' << v << ',' << format_double(B(v, col))
                       << '\n';
    };
    for (std::size_t j = 0; j <= mr.n_scales; ++j) emit(j, "scaling", mr.scaling_in_v0[j]);
    for (std::size_t j = 0; j < mr.n_scales; ++j) emit(j, "wavelet", mr.wavelet_bases[j]);
  }
  return 0;
}

void add_input(CLI::App* sub, Config& c) {
  auto* graph = sub->add_option("--graph", c.graph_path, "edge list file: src dst [weight] per line");
  auto* gen = sub->add_option("--gen", c.gen, "generator: cycle:N | torus:M,N | dws:N,K,BETA");
  graph->excludes(gen);
  gen->excludes(graph);
  sub->add_flag("--lscc", c.lscc, "restrict to the largest strongly connected component");
  sub->add_option("--ergodicize", c.ergodicize, "google:G or rank1:EPS");
  sub->add_option("--lazy", c.lazy, "lazy-walk holding probability");
  sub->add_option("--op", c.op, "operator NAME[:alpha=A]");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--out", c.out, "output CSV path (default stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Harmonic analysis on directed graphs"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and frequencies of a walk operator");
  add_input(spectrum, c);

  auto* ssl = app.add_subcommand("ssl", "semi-supervised classification accuracy over random splits");
  add_input(ssl, c);
  ssl->add_option("--labels", c.labels_path, "label file: vertex +-1 per line");
  ssl->add_option("--methods", c.methods, "methods (L_norm, L_rw, R_M, *_sym, l1_heat)")->delimiter(',');
  ssl->add_option("--p", c.p, "known fractions")->delimiter(',');
  ssl->add_option("--gamma-grid", c.gamma_grid, "regularization grid")->delimiter(',');
  ssl->add_option("--lambda", c.lambda, "l1 penalty grid")->delimiter(',');
  ssl->add_option("--realizations", c.realizations, "random splits per known fraction");

  auto* model = app.add_subcommand("model", "label reconstruction with learned polynomial filters");
  add_input(model, c);
  model->add_option("--labels", c.labels_path, "label file: vertex +-1 per line");
  model->add_option("--p", c.p, "sampling rates")->delimiter(',');
  model->add_option("--K", c.K, "polynomial degree");
  model->add_option("--sampling", c.sampling, "uniform or stationary");
  model->add_option("--realizations", c.realizations, "sampled signals per rate");

  auto* wavelets = app.add_subcommand("wavelets", "diffusion-wavelet dimensions, conditioning and atoms");
  add_input(wavelets, c);
  wavelets->add_option("--scales", c.scales, "number of dyadic scales J");
  wavelets->add_option("--eps", c.eps, "column-selection precision");
  wavelets->add_option("--mode", c.mode, "orthogonal, biorthogonal or both");
  wavelets->add_option("--atoms", c.atoms, "write scaling and wavelet columns to this CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (c.graph_path.empty() && c.gen.empty()) throw InputError("one of --graph or --gen is required");
    if (*spectrum) return cmd_spectrum(c, out);
    if (*ssl) return cmd_ssl(c, out);
    if (*model) return cmd_model(c, out);
    if (*wavelets) return cmd_wavelets(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace digh::cli
