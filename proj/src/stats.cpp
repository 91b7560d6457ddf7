#include "dcolor/stats.hpp"

#include <algorithm>
#include <cmath>

#include "dcolor/classify.hpp"
#include "dcolor/coloring.hpp"
#include "dcolor/lll.hpp"

namespace dcolor {

SlackSample slack_sample(const Graph& g, const std::vector<int>& part, const std::vector<int>& ordinary_acs,
                         uint64_t seed, double activation) {
  const int n = g.n();
  NetConfig nc;
  nc.seed = seed;
  Network net(g, nc);
  ColoringState st(g);
  NodeSet all(n), sparse;
  for (Node v = 0; v < n; ++v) {
    all[v] = v;
    if (part[v] < 0) sparse.push_back(v);
  }
  slack_generation(net, st, all, g.max_degree(), activation);
  SlackSample s;
  const auto inV = indicator(n, sparse);
  s.sparse_nodes = int(sparse.size());
  for (Node v : sparse)
    if (!st.colored(v) && st.slack(v, inV) < 1) ++s.sparse_without_slack;
  std::vector<char> inO(n, 0);
  std::vector<char> ord_ac;
  for (int c : ordinary_acs) {
    if (int(ord_ac.size()) <= c) ord_ac.resize(c + 1, 0);
    ord_ac[c] = 1;
  }
  std::vector<NodeSet> members(ord_ac.size());
  for (Node v = 0; v < n; ++v)
    if (part[v] >= 0 && part[v] < int(ord_ac.size()) && ord_ac[part[v]]) {
      inO[v] = 1;
      members[part[v]].push_back(v);
    }
  for (int c : ordinary_acs) {
    ++s.acs_checked;
    bool toe = false;
    for (Node v : members[c]) toe = toe || (!st.colored(v) && st.slack(v, inO) >= 1);
    if (!toe) ++s.acs_without_toehold;
  }
  return s;
}

L3Estimate l3_single_ac(int delta, int n, long long trials, uint64_t seed) {
  L3Estimate est;
  est.q = q_fn(n);
  est.p3 = std::min(est.q / delta, 0.5);
  est.arcs = (delta + 59) / 60;
  const int m = est.arcs;
  // Heads 0..m-1 (AC 0), tails m..2m-1, competitor heads 2m.. (ACs 1, 2).
  std::vector<std::vector<Arc>> use(3);
  for (int i = 0; i < m; ++i) {
    use[0].push_back({0, Node(i), Node(m + i)});
    const int other = 1 + i % 2;
    use[other].push_back({other, Node(2 * m + i), Node(m + i)});
  }
  L3Layout layout;
  const LllInstance inst = build_L3(use, {}, est.p3, layout);
  Rng rng(seed);
  Assignment a(inst.vars.size());
  for (long long t = 0; t < trials; ++t) {
    for (size_t x = 0; x < a.size(); ++x) a[x] = rng.bernoulli(inst.vars[x].p);
    est.bad += inst.events[0].bad(a);
  }
  est.trials = trials;
  return est;
}

EventEstimate slack_event_probability(const Graph& g, Node v, double p, double mu, double alpha, long long trials,
                                      uint64_t seed) {
  NodeSet U(g.neighbors(v).begin(), g.neighbors(v).end());
  const LllInstance inst = build_slack_set_lll(g, U, {v}, {}, p, mu, alpha);
  EventEstimate est;
  est.bound = std::exp(-alpha * mu / 5);
  const LllEvent* ev = nullptr;
  for (const auto& e : inst.events)
    if (e.kind == "E'_v") ev = &e;
  est.trials = trials;
  if (!ev) return est;  // degenerate: too few non-edges to encode the event
  Rng rng(seed);
  Assignment a(inst.vars.size());
  for (long long t = 0; t < trials; ++t) {
    for (size_t x = 0; x < a.size(); ++x) a[x] = rng.bernoulli(p);
    est.bad += ev->bad(a);
  }
  return est;
}

EventEstimate non_edge_hitting(const Graph& g, double p, long long trials, uint64_t seed) {
  const int n = g.n();
  NodeSet all(n);
  for (Node v = 0; v < n; ++v) all[v] = v;
  const double mbar = double(count_non_edges(g, all));
  EventEstimate est;
  est.trials = trials;
  est.bound = std::exp(-p * mbar / (5.0 * n));
  const double thresh = p * p * mbar / 2;
  Rng rng(seed);
  std::vector<char> in(n);
  for (long long t = 0; t < trials; ++t) {
    long long k = 0, e = 0;
    for (Node v = 0; v < n; ++v) k += in[v] = rng.bernoulli(p);
    for (Node v = 0; v < n; ++v)
      if (in[v])
        for (Node u : g.neighbors(v)) e += u > v && in[u];
    const double f = double(k * (k - 1) / 2 - e);
    est.bad += f <= thresh;
  }
  return est;
}

Graph random_gnp(int n, double d, uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (rng.bernoulli(d)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace dcolor
