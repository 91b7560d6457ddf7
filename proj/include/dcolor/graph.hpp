#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcolor/common.hpp"

namespace dcolor {

using Edge = std::pair<Node, Node>;

// Immutable simple undirected graph. Adjacency lists are sorted.
class Graph {
 public:
  Graph() = default;
  // Throws IllegalSpec on self-loops, duplicate edges or out-of-range ids.
  static Graph from_edges(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  int max_degree() const { return delta_; }
  int degree(Node v) const { return int(adj_[v].size()); }
  const std::vector<Node>& neighbors(Node v) const { return adj_[v]; }
  bool adjacent(Node u, Node v) const;
  size_t num_edges() const { return m_; }
  std::vector<Edge> edges() const;  // u < v, lexicographic
  bool has_matrix() const { return !bits_.empty(); }
  // Row of the adjacency bit matrix (only when has_matrix()).
  const uint64_t* row(Node v) const { return bits_.data() + size_t(v) * words_; }
  size_t words() const { return words_; }
  int common_neighbors(Node u, Node v) const;

 private:
  int n_ = 0;
  int delta_ = 0;
  size_t m_ = 0;
  std::vector<std::vector<Node>> adj_;
  size_t words_ = 0;
  std::vector<uint64_t> bits_;
};

// Number of unordered pairs in s that are not edges of g.
long long count_non_edges(const Graph& g, const NodeSet& s);
// Non-edges inside N(v).
long long neighborhood_non_edges(const Graph& g, Node v);

// Maximum-cardinality bipartite matching (Hopcroft-Karp). Edges are
// (left id, right id); ids are arbitrary integers. Returns matched pairs.
std::vector<Edge> max_bipartite_matching(const NodeSet& left, const NodeSet& right, const std::vector<Edge>& edges);

struct Verdict {
  bool ok = true;
  std::string reason;
  NodeSet witness;  // offending component or edge endpoints
};

// Accepts iff Δ >= 3 and no connected component is K_{Δ+1}.
Verdict validate_delta_colorable(const Graph& g);
// Proper coloring with colors in 1..max_color, every node colored.
Verdict check_coloring(const Graph& g, const std::vector<int>& colors, int max_color);

std::vector<NodeSet> connected_components(const Graph& g);

// Graph file: header "n Δ", then one "u v" line per edge with u < v.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
// Coloring file: one "id color" line per node.
std::vector<int> read_coloring(std::istream& in, int n);
void write_coloring(std::ostream& out, const std::vector<int>& colors);

}  // namespace dcolor
