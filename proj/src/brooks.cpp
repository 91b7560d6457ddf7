#include "dcolor/brooks.hpp"

#include <algorithm>

namespace dcolor {

namespace {

// BFS order from root over nodes with allowed[v], skipping nodes already coloured.
NodeSet bfs_order(const Graph& g, Node root, const std::vector<char>& allowed) {
  NodeSet order{root};
  std::vector<char> seen(g.n(), 0);
  seen[root] = 1;
  for (size_t i = 0; i < order.size(); ++i)
    for (Node u : g.neighbors(order[i]))
      if (allowed[u] && !seen[u]) {
        seen[u] = 1;
        order.push_back(u);
      }
  return order;
}

int smallest_free(const Graph& g, const std::vector<int>& col, Node v, int D) {
  std::vector<char> used(D + 2, 0);
  for (Node u : g.neighbors(v))
    if (col[u] > 0 && col[u] <= D) used[col[u]] = 1;
  for (int c = 1; c <= D; ++c)
    if (!used[c]) return c;
  throw AssertFailed("no free color for node " + std::to_string(v));
}

void greedy_reverse(const Graph& g, std::vector<int>& col, const NodeSet& order, int D) {
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (col[*it] == 0) col[*it] = smallest_free(g, col, *it, D);
}

bool connected_without(const Graph& g, const NodeSet& comp, const std::vector<char>& in_comp, Node a, Node b) {
  std::vector<char> allowed(in_comp);
  allowed[a] = allowed[b] = 0;
  Node root = -1;
  for (Node v : comp)
    if (allowed[v]) { root = v; break; }
  if (root < 0) return true;
  return bfs_order(g, root, allowed).size() == comp.size() - 2;
}

void color_component(const Graph& g, const NodeSet& comp, std::vector<int>& col, int D) {
  const int n = g.n();
  std::vector<char> in(n, 0);
  for (Node v : comp) in[v] = 1;
  for (Node v : comp)
    if (g.degree(v) < D) {
      greedy_reverse(g, col, bfs_order(g, v, in), D);
      return;
    }
  if (int(comp.size()) == D + 1) throw IllegalSpec("component is K_{Δ+1}");
  if (D == 2) {
    if (comp.size() % 2) throw IllegalSpec("odd cycle component with Δ=2");
    const NodeSet order = bfs_order(g, comp[0], in);
    // BFS on an even cycle: parity of distance is a proper 2-colouring.
    std::vector<int> dist(n, -1);
    dist[comp[0]] = 0;
    for (Node v : order)
      for (Node u : g.neighbors(v))
        if (dist[u] < 0) dist[u] = dist[v] + 1;
    for (Node v : comp) col[v] = 1 + dist[v] % 2;
    return;
  }

  // Cut vertex x: colour each lobe together with x, x last, then align x's colour.
  Node x = -1;
  for (Node c : cut_vertices(g))
    if (in[c]) { x = c; break; }
  if (x >= 0) {
    std::vector<char> rest(in);
    rest[x] = 0;
    std::vector<char> done(n, 0);
    for (Node s : comp) {
      if (s == x || done[s]) continue;
      NodeSet lobe = bfs_order(g, s, rest);
      for (Node v : lobe) done[v] = 1;
      std::vector<char> allowed(n, 0);
      for (Node v : lobe) allowed[v] = 1;
      allowed[x] = 1;
      // x has neighbours in another lobe, so inside this lobe it has degree < Δ.
      const NodeSet order = bfs_order(g, x, allowed);
      std::vector<int> tmp(n, 0);
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::vector<char> used(D + 2, 0);
        for (Node u : g.neighbors(*it))
          if (allowed[u] && tmp[u] > 0) used[tmp[u]] = 1;
        int c = 1;
        while (c <= D && used[c]) ++c;
        if (c > D) throw AssertFailed("lobe coloring ran out of colors");
        tmp[*it] = c;
      }
      // Swap colours so x ends up with colour 1.
      const int cx = tmp[x];
      for (Node v : lobe) {
        if (tmp[v] == cx) tmp[v] = 1;
        else if (tmp[v] == 1) tmp[v] = cx;
        col[v] = tmp[v];
      }
    }
    col[x] = 1;
    return;
  }

  // 2-connected, Δ-regular, not complete: find v with non-adjacent u, w in
  // N(v) such that G - {u, w} stays connected.
  for (Node v : comp) {
    const auto& nb = g.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        const Node u = nb[i], w = nb[j];
        if (g.adjacent(u, w) || !connected_without(g, comp, in, u, w)) continue;
        col[u] = col[w] = 1;
        std::vector<char> allowed(in);
        allowed[u] = allowed[w] = 0;
        greedy_reverse(g, col, bfs_order(g, v, allowed), D);
        return;
      }
  }
  throw AssertFailed("no Brooks triple found in a 2-connected regular component");
}

}  // namespace

std::vector<Node> cut_vertices(const Graph& g) {
  const int n = g.n();
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<size_t> it(n, 0);
  std::vector<char> is_cut(n, 0);
  int timer = 0;
  for (Node r = 0; r < n; ++r) {
    if (disc[r] >= 0) continue;
    int root_children = 0;
    std::vector<Node> stack{r};
    disc[r] = low[r] = timer++;
    while (!stack.empty()) {
      const Node v = stack.back();
      if (it[v] < g.neighbors(v).size()) {
        const Node u = g.neighbors(v)[it[v]++];
        if (disc[u] < 0) {
          parent[u] = v;
          disc[u] = low[u] = timer++;
          if (v == r) ++root_children;
          stack.push_back(u);
        } else if (u != parent[v]) {
          low[v] = std::min(low[v], disc[u]);
        }
      } else {
        stack.pop_back();
        const Node p = parent[v];
        if (p >= 0) {
          low[p] = std::min(low[p], low[v]);
          if (p != r && low[v] >= disc[p]) is_cut[p] = 1;
        }
      }
    }
    if (root_children > 1) is_cut[r] = 1;
  }
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

std::vector<int> brooks_color(const Graph& g) {
  const int D = g.max_degree();
  std::vector<int> col(g.n(), 0);
  if (D == 0) {
    throw IllegalSpec("Δ = 0: no colors available");
  }
  for (const auto& comp : connected_components(g)) color_component(g, comp, col, D);
  return col;
}

}  // namespace dcolor
