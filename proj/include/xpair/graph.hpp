#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xpair {

// Simple undirected graph with adjacency lists.
struct GraphAdj {
  int n = 0;
  std::vector<std::vector<int>> adj;
  int max_degree = 0;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  long edge_count() const;
  bool has_edge(int u, int v) const;
};

GraphAdj graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

GraphAdj edgeless_graph(int n);
GraphAdj path_graph(int n);
GraphAdj cycle_graph(int n);
GraphAdj complete_graph(int n);
GraphAdj triangle_graph();
// rows x cols lattice; periodic=true gives the torus.
GraphAdj grid_graph(int rows, int cols, bool periodic = false);
// vertex i adjacent to i+-1, ..., i+-span (mod n); degree 2*span.
GraphAdj circulant_graph(int n, int span);

// One "u v" pair per line, 0-indexed, whitespace separated, '#' comments.
GraphAdj read_edge_list(std::istream& in);
GraphAdj read_edge_list_file(const std::string& path);

Eigen::MatrixXd adjacency_matrix(const GraphAdj& g);

}  // namespace xpair
