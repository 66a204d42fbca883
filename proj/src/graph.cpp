#include "xpair/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "xpair/errors.hpp"

namespace xpair {

long GraphAdj::edge_count() const {
  long twice = 0;
  for (const auto& nb : adj) twice += static_cast<long>(nb.size());
  return twice / 2;
}

bool GraphAdj::has_edge(int u, int v) const {
  return std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end();
}

GraphAdj graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw config_error("graph_from_edges: negative vertex count");
  GraphAdj g;
  g.n = n;
  g.adj.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw config_error("graph_from_edges: vertex index out of range");
    if (u == v) throw config_error("graph_from_edges: self loop");
    if (g.has_edge(u, v)) continue;
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) {
    std::sort(nb.begin(), nb.end());
    g.max_degree = std::max<int>(g.max_degree, static_cast<int>(nb.size()));
  }
  return g;
}

GraphAdj edgeless_graph(int n) { return graph_from_edges(n, {}); }

GraphAdj path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return graph_from_edges(n, e);
}

GraphAdj cycle_graph(int n) {
  if (n < 3) throw config_error("cycle_graph: need n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return graph_from_edges(n, e);
}

GraphAdj complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return graph_from_edges(n, e);
}

GraphAdj triangle_graph() { return complete_graph(3); }

GraphAdj grid_graph(int rows, int cols, bool periodic) {
  if (rows < 1 || cols < 1) throw config_error("grid_graph: empty grid");
  auto id = [cols](int r, int c) { return r * cols + c; };
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols)
        e.emplace_back(id(r, c), id(r, c + 1));
      else if (periodic && cols > 2)
        e.emplace_back(id(r, c), id(r, 0));
      if (r + 1 < rows)
        e.emplace_back(id(r, c), id(r + 1, c));
      else if (periodic && rows > 2)
        e.emplace_back(id(r, c), id(0, c));
    }
  return graph_from_edges(rows * cols, e);
}

GraphAdj circulant_graph(int n, int span) {
  if (span < 0 || 2 * span >= n)
    throw config_error("circulant_graph: span out of range");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int s = 1; s <= span; ++s) e.emplace_back(i, (i + s) % n);
  return graph_from_edges(n, e);
}

GraphAdj read_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u)) continue;  // blank/comment line
    if (!(ls >> v))
      throw config_error("edge list line " + std::to_string(line_no) +
                         ": expected two vertex indices");
    if (u < 0 || v < 0)
      throw config_error("edge list line " + std::to_string(line_no) +
                         ": negative vertex index");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_vertex = std::max({max_vertex, static_cast<int>(u), static_cast<int>(v)});
  }
  return graph_from_edges(max_vertex + 1, edges);
}

GraphAdj read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open edge list file: " + path);
  return read_edge_list(in);
}

Eigen::MatrixXd adjacency_matrix(const GraphAdj& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) a(u, v) = 1.0;
  return a;
}

}  // namespace xpair
