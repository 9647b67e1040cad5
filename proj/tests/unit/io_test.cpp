#include <digh/errors.hpp>
#include <digh/io.hpp>
#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

using namespace digh;

TEST(EdgeList, ParsesTabsCommentsAndDefaultWeight) {
  std::istringstream in("# header\n0\t1\t2.5\n1\t2\n\n  # indented comment\n2\t0\t1e-1\n");
  auto g = read_edge_list(in);
  EXPECT_EQ(g.size(), 3u);
  Eigen::MatrixXd W = g.adjacency();
  EXPECT_EQ(W(0, 1), 2.5);
  EXPECT_EQ(W(1, 2), 1.0);
  EXPECT_EQ(W(2, 0), 0.1);
}

TEST(EdgeList, SumsDuplicateLines) {
  std::istringstream in("0 1 1\n0 1 2\n1 0\n");
  auto g = read_edge_list(in);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.adjacency()(0, 1), 3.0);
}

TEST(EdgeList, MinVerticesPadsIsolatedIds) {
  std::istringstream in("0 1\n");
  EXPECT_EQ(read_edge_list(in, 5).size(), 5u);
}

TEST(EdgeList, RejectsMalformedLines) {
  for (const char* bad : {"0\n", "0 1 2 3\n", "a 1\n", "0 1 x\n", "-1 2\n", "0 1 -2\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_edge_list(in), InputError) << bad;
  }
  EXPECT_THROW(read_edge_list_file("/nonexistent/graph.tsv"), InputError);
}

TEST(Labels, MissingVerticesAreUnknown) {
  std::istringstream in("0\t1\n3\t-1\n");
  Eigen::VectorXd y = read_labels(in, 5);
  EXPECT_EQ(y, (Eigen::VectorXd(5) << 1, 0, 0, -1, 0).finished());
}

TEST(Labels, RejectsBadValues) {
  for (const char* bad : {"0 2\n", "0 0\n", "9 1\n", "0\n", "x 1\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(read_labels(in, 4), InputError) << bad;
  }
}

TEST(Labels, MaxVertex) {
  std::istringstream in("# c\n4 1\n12 -1\n3 1\n");
  EXPECT_EQ(max_label_vertex(in), 12);
  std::istringstream empty("");
  EXPECT_EQ(max_label_vertex(empty), -1);
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    const std::string s = format_double(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
  }
}
