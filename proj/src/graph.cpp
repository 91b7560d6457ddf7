#include "dcolor/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace dcolor {

namespace {
constexpr int kMatrixLimit = 16384;
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  if (n < 0) throw IllegalSpec("negative node count");
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw IllegalSpec("edge endpoint out of range");
    if (u == v) throw IllegalSpec("self-loop at " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (Node v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw IllegalSpec("parallel edge at " + std::to_string(v));
    g.delta_ = std::max<int>(g.delta_, int(a.size()));
  }
  g.m_ = edges.size();
  if (n > 0 && n <= kMatrixLimit) {
    g.words_ = (size_t(n) + 63) / 64;
    g.bits_.assign(g.words_ * size_t(n), 0);
    for (Node v = 0; v < n; ++v)
      for (Node u : g.adj_[v]) g.bits_[size_t(v) * g.words_ + (u >> 6)] |= uint64_t(1) << (u & 63);
  }
  return g;
}

bool Graph::adjacent(Node u, Node v) const {
  if (!bits_.empty()) return (bits_[size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Node u = 0; u < n_; ++u)
    for (Node v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Graph::common_neighbors(Node u, Node v) const {
  if (!bits_.empty()) {
    const uint64_t* a = row(u);
    const uint64_t* b = row(v);
    int c = 0;
    for (size_t i = 0; i < words_; ++i) c += std::popcount(a[i] & b[i]);
    return c;
  }
  const auto& a = adj_[u];
  const auto& b = adj_[v];
  int c = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else { ++c; ++i; ++j; }
  }
  return c;
}

long long count_non_edges(const Graph& g, const NodeSet& s) {
  const long long k = (long long)s.size();
  long long inside = 0;  // ordered adjacent pairs inside s
  if (g.has_matrix() && k > 64) {
    std::vector<uint64_t> mask(g.words(), 0);
    for (Node v : s) mask[v >> 6] |= uint64_t(1) << (v & 63);
    for (Node v : s) {
      const uint64_t* r = g.row(v);
      for (size_t i = 0; i < g.words(); ++i) inside += std::popcount(r[i] & mask[i]);
    }
  } else {
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        if (g.adjacent(s[i], s[j])) inside += 2;
  }
  return k * (k - 1) / 2 - inside / 2;
}

long long neighborhood_non_edges(const Graph& g, Node v) { return count_non_edges(g, g.neighbors(v)); }

std::vector<Edge> max_bipartite_matching(const NodeSet& left, const NodeSet& right, const std::vector<Edge>& edges) {
  // Compact ids.
  std::vector<Node> ls(left), rs(right);
  std::sort(ls.begin(), ls.end());
  std::sort(rs.begin(), rs.end());
  auto li = [&](Node x) { return int(std::lower_bound(ls.begin(), ls.end(), x) - ls.begin()); };
  auto ri = [&](Node x) { return int(std::lower_bound(rs.begin(), rs.end(), x) - rs.begin()); };
  const int L = int(ls.size()), R = int(rs.size());
  std::vector<std::vector<int>> adj(L);
  for (auto [a, b] : edges) {
    int x = li(a), y = ri(b);
    if (x < L && ls[x] == a && y < R && rs[y] == b) adj[x].push_back(y);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<int> ml(L, -1), mr(R, -1), dist(L);
  const int INF = std::numeric_limits<int>::max();
  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int x = 0; x < L; ++x) {
      if (ml[x] < 0) { dist[x] = 0; q.push(x); }
      else dist[x] = INF;
    }
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int y : adj[x]) {
        int z = mr[y];
        if (z < 0) found = true;
        else if (dist[z] == INF) { dist[z] = dist[x] + 1; q.push(z); }
      }
    }
    return found;
  };
  std::vector<size_t> it(L);
  // Iterative DFS along the layered graph.
  auto dfs = [&](int root) {
    std::vector<int> stack{root};
    std::vector<int> via;  // right node chosen at each level
    while (!stack.empty()) {
      int x = stack.back();
      bool advanced = false;
      while (it[x] < adj[x].size()) {
        int y = adj[x][it[x]++];
        int z = mr[y];
        if (z < 0) {
          via.push_back(y);
          for (size_t k = 0; k < stack.size(); ++k) {
            ml[stack[k]] = via[k];
            mr[via[k]] = stack[k];
          }
          return true;
        }
        if (dist[z] == dist[x] + 1) {
          via.push_back(y);
          stack.push_back(z);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[x] = INF;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int x = 0; x < L; ++x)
      if (ml[x] < 0) dfs(x);
  }
  std::vector<Edge> out;
  for (int x = 0; x < L; ++x)
    if (ml[x] >= 0) out.emplace_back(ls[x], rs[ml[x]]);
  return out;
}

std::vector<NodeSet> connected_components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<NodeSet> out;
  for (Node s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    NodeSet c{s};
    comp[s] = int(out.size());
    for (size_t i = 0; i < c.size(); ++i)
      for (Node u : g.neighbors(c[i]))
        if (comp[u] < 0) { comp[u] = comp[s]; c.push_back(u); }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

Verdict validate_delta_colorable(const Graph& g) {
  Verdict v;
  const int D = g.max_degree();
  if (D < 3) {
    v.ok = false;
    v.reason = "max degree " + std::to_string(D) + " < 3";
    return v;
  }
  for (auto& c : connected_components(g)) {
    if (int(c.size()) != D + 1) continue;
    bool complete = std::all_of(c.begin(), c.end(), [&](Node x) { return g.degree(x) == D; });
    if (complete) {
      v.ok = false;
      v.reason = "component is K_" + std::to_string(D + 1);
      v.witness = c;
      return v;
    }
  }
  return v;
}

Verdict check_coloring(const Graph& g, const std::vector<int>& colors, int max_color) {
  Verdict v;
  if (int(colors.size()) != g.n()) {
    v.ok = false;
    v.reason = "coloring has " + std::to_string(colors.size()) + " entries for " + std::to_string(g.n()) + " nodes";
    return v;
  }
  for (Node u = 0; u < g.n(); ++u) {
    if (colors[u] < 1 || colors[u] > max_color) {
      v.ok = false;
      v.reason = "node " + std::to_string(u) + " has color " + std::to_string(colors[u]) + " outside 1.." +
                 std::to_string(max_color);
      v.witness = {u};
      return v;
    }
  }
  for (auto [a, b] : g.edges()) {
    if (colors[a] == colors[b]) {
      v.ok = false;
      v.reason = "monochromatic edge " + std::to_string(a) + " " + std::to_string(b);
      v.witness = {a, b};
      return v;
    }
  }
  return v;
}

Graph read_graph(std::istream& in) {
  long long n = -1, d = -1;
  if (!(in >> n >> d) || n < 0 || d < 0) throw IllegalSpec("bad graph header");
  std::vector<Edge> edges;
  long long u, v;
  while (in >> u) {
    if (!(in >> v)) throw IllegalSpec("truncated edge line");
    if (u >= v) throw IllegalSpec("edge line must have u < v");
    edges.emplace_back(Node(u), Node(v));
  }
  Graph g = Graph::from_edges(int(n), edges);
  if (g.max_degree() != d)
    throw IllegalSpec("header Δ=" + std::to_string(d) + " but max degree is " + std::to_string(g.max_degree()));
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.max_degree() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

std::vector<int> read_coloring(std::istream& in, int n) {
  std::vector<int> c(n, kNoColor);
  std::vector<char> seen(n, 0);
  long long id, col;
  while (in >> id) {
    if (!(in >> col)) throw IllegalSpec("truncated coloring line");
    if (id < 0 || id >= n) throw IllegalSpec("coloring node id out of range");
    if (seen[id]) throw IllegalSpec("node listed twice in coloring");
    seen[id] = 1;
    c[id] = int(col);
  }
  return c;
}

void write_coloring(std::ostream& out, const std::vector<int>& colors) {
  for (size_t v = 0; v < colors.size(); ++v) out << v << ' ' << colors[v] << '\n';
}

}  // namespace dcolor
