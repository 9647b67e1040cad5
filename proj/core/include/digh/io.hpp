#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "digh/graph.hpp"

namespace digh {

// Tab-separated "src dst [weight]" lines, '#' starts a comment line. The
// vertex count is max id + 1 unless min_vertices is larger.
DirectedGraph read_edge_list(std::istream& in, std::size_t min_vertices = 0);
DirectedGraph read_edge_list_file(const std::string& path, std::size_t min_vertices = 0);

// "vertex label" lines with label in {-1, +1}. Vertices without a line get 0.
Eigen::VectorXd read_labels(std::istream& in, std::size_t n);
Eigen::VectorXd read_labels_file(const std::string& path, std::size_t n);

// Largest vertex id mentioned in a label file, or -1 if empty.
long max_label_vertex(std::istream& in);

// "%.17g"; used by every CSV writer so values round-trip exactly.
std::string format_double(double x);

}  // namespace digh
