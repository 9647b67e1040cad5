#include "digh/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "digh/errors.hpp"

namespace digh {
namespace {

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& s, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad vertex id '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw InputError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

}  // namespace

DirectedGraph read_edge_list(std::istream& in, std::size_t min_vertices) {
  std::vector<Edge> edges;
  std::size_t n = min_vertices;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skip_line(line)) continue;
    const auto f = split_fields(line);
    if (f.size() < 2 || f.size() > 3) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'src dst [weight]'");
    }
    const Vertex s = parse_index(f[0], line_no);
    const Vertex d = parse_index(f[1], line_no);
    const double w = f.size() == 3 ? parse_real(f[2], line_no) : 1.0;
    edges.push_back({s, d, w});
    n = std::max({n, s + 1, d + 1});
  }
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph read_edge_list_file(const std::string& path, std::size_t min_vertices) {
  auto in = open_file(path);
  return read_edge_list(in, min_vertices);
}

Eigen::VectorXd read_labels(std::istream& in, std::size_t n) {
  Eigen::VectorXd labels = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skip_line(line)) continue;
    const auto f = split_fields(line);
    if (f.size() != 2) throw InputError("line " + std::to_string(line_no) + ": expected 'vertex label'");
    const Vertex v = parse_index(f[0], line_no);
    const double y = parse_real(f[1], line_no);
    if (v >= n) throw InputError("line " + std::to_string(line_no) + ": vertex " + f[0] + " out of range");
    if (y != 1.0 && y != -1.0) throw InputError("line " + std::to_string(line_no) + ": label must be -1 or +1");
    labels(static_cast<Eigen::Index>(v)) = y;
  }
  return labels;
}

Eigen::VectorXd read_labels_file(const std::string& path, std::size_t n) {
  auto in = open_file(path);
  return read_labels(in, n);
}

long max_label_vertex(std::istream& in) {
  long best = -1;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (skip_line(line)) continue;
    const auto f = split_fields(line);
    if (f.empty()) continue;
    best = std::max(best, static_cast<long>(parse_index(f[0], line_no)));
  }
  return best;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace digh
