#include "dcolor/acd.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace dcolor {

namespace {
enum AcdTag : uint8_t { kSample = 1, kVerdict, kLabel };
}

AcDecomposition make_acd(const std::vector<int>& part, double eps) {
  AcDecomposition a;
  a.eps = eps;
  a.part = part;
  int t = 0;
  for (int p : part) t = std::max(t, p + 1);
  a.cliques.assign(t, {});
  for (Node v = 0; v < Node(part.size()); ++v) {
    if (part[v] < 0) a.sparse.push_back(v);
    else a.cliques[part[v]].push_back(v);
  }
  return a;
}

AcDecomposition all_sparse_acd(const Graph& g, double eps) { return make_acd(std::vector<int>(g.n(), -1), eps); }

WeakDecomposition compute_weak_decomposition(Network& net, double eps, const AcdConfig& cfg) {
  const Graph& g = net.graph();
  const int n = g.n();
  const double D = g.max_degree();
  const int k = cfg.sample_factor * std::max(1, ceil_log2(uint64_t(n)));
  const int idb = net.id_bits();
  const int per_round = std::max(1, net.budget() / idb);
  // Fixed similarity threshold; peeling and validation enforce the ε-dependent bounds.
  const double tau = 0.75;

  // Each node samples k neighbours (with replacement) and broadcasts them.
  std::vector<std::vector<Node>> sample(n);
  net.run_round_all([&](NodeCtx& c) {
    auto& s = sample[c.id()];
    const auto& nb = c.neighbors();
    if (nb.empty()) return;
    for (int i = 0; i < k; ++i) s.push_back(nb[c.rng().below(nb.size())]);
  });
  // hits[v][j]: how many of neighbour j's sample lie in N(v) ∪ {v}.
  std::vector<std::vector<int>> hits(n);
  for (Node v = 0; v < n; ++v) hits[v].assign(g.degree(v), 0);
  const int stream_rounds = (k + per_round - 1) / per_round;
  for (int r = 0; r <= stream_rounds; ++r) {
    net.run_round_all([&](NodeCtx& c) {
      const Node v = c.id();
      const auto& nb = c.neighbors();
      if (!c.inbox().empty()) {
        // Inboxes are ordered by sender, so j only moves forward.
        thread_local std::vector<char> mark;
        if (mark.size() < size_t(n)) mark.assign(n, 0);
        for (Node u : nb) mark[u] = 1;
        mark[v] = 1;
        size_t j = 0;
        for (auto& m : c.inbox()) {
          if (m.tag != kSample) continue;
          while (nb[j] != m.from) ++j;
          hits[v][j] += mark[m.a];
        }
        for (Node u : nb) mark[u] = 0;
        mark[v] = 0;
      }
      if (r < stream_rounds)
        for (int i = r * per_round; i < std::min(k, (r + 1) * per_round); ++i)
          if (!sample[v].empty()) c.broadcast(idb, kSample, sample[v][i]);
    });
  }
  // Verdicts: v tells u whether u's sample looked like N(v).
  std::vector<std::vector<char>> friend_of(n);
  net.run_round_all([&](NodeCtx& c) {
    const Node v = c.id();
    const auto& nb = c.neighbors();
    friend_of[v].assign(nb.size(), 0);
    for (size_t j = 0; j < nb.size(); ++j) {
      const bool ok = hits[v][j] >= tau * k;
      c.send(nb[j], 1, kVerdict, ok ? 1 : 0);
      friend_of[v][j] = ok;
    }
  });
  std::vector<std::vector<char>> fr(n);
  net.run_round_all([&](NodeCtx& c) {
    const Node v = c.id();
    const auto& nb = c.neighbors();
    fr[v].assign(nb.size(), 0);
    for (auto& m : c.inbox()) {
      const size_t j = std::lower_bound(nb.begin(), nb.end(), m.from) - nb.begin();
      fr[v][j] = friend_of[v][j] && m.a == 1;
    }
  });

  // Component labels over friend edges: min-id flooding.
  std::vector<Node> label(n);
  for (Node v = 0; v < n; ++v) label[v] = v;
  std::vector<char> changed(n, 1);
  bool sent = true;
  while (sent) {
    net.run_round_all([&](NodeCtx& c) {
      const Node v = c.id();
      const auto& nb = c.neighbors();
      for (auto& m : c.inbox()) {
        const size_t j = std::lower_bound(nb.begin(), nb.end(), m.from) - nb.begin();
        if (m.tag == kLabel && fr[v][j] && m.a < label[v]) {
          label[v] = m.a;
          changed[v] = 1;
        }
      }
      if (changed[v]) c.broadcast(idb, kLabel, label[v]);
    });
    // A silent round means every label message has been read.
    sent = std::find(changed.begin(), changed.end(), 1) != changed.end();
    std::fill(changed.begin(), changed.end(), 0);
  }
  // Friendless nodes are sparse.
  for (Node v = 0; v < n; ++v)
    if (std::none_of(fr[v].begin(), fr[v].end(), [](char x) { return x; })) label[v] = -1;

  // Peel nodes with fewer than (1-ε)Δ neighbours sharing their label, the
  // internal-degree clause of the final decomposition.
  const double need = (1.0 - eps) * D;
  bool peeled = true;
  while (peeled) {
    std::vector<char> drop(n, 0);
    net.run_round_all([&](NodeCtx& c) {
      if (label[c.id()] >= 0) c.broadcast(idb, kLabel, label[c.id()]);
    });
    net.run_round_all([&](NodeCtx& c) {
      const Node v = c.id();
      if (label[v] < 0) return;
      int same = 0;
      for (auto& m : c.inbox()) same += m.tag == kLabel && m.a == label[v];
      drop[v] = same < need;
    });
    peeled = false;
    for (Node v = 0; v < n; ++v)
      if (drop[v]) { label[v] = -1; peeled = true; }
  }

  // Size filter, computed by each part's leader in the real protocol.
  std::map<Node, NodeSet> groups;
  for (Node v = 0; v < n; ++v)
    if (label[v] >= 0) groups[label[v]].push_back(v);
  WeakDecomposition w;
  for (auto& [l, s] : groups) {
    const double sz = double(s.size());
    if (sz >= need && sz <= (1.0 + eps / 4) * D + 1) w.parts.push_back(s);
    else for (Node v : s) label[v] = -1;
  }
  for (Node v = 0; v < n; ++v)
    if (label[v] < 0) w.sparse.push_back(v);
  return w;
}

AcDecomposition augment_decomposition(Network& net, const WeakDecomposition& weak, double eps, double zeta) {
  const Graph& g = net.graph();
  const int n = g.n();
  const double D = g.max_degree();
  std::vector<int> part(n, -1), dpart(n, -1);
  for (size_t i = 0; i < weak.parts.size(); ++i)
    for (Node v : weak.parts[i]) part[v] = dpart[v] = int(i);
  const int pb = std::max(1, ceil_log2(weak.parts.size() + 1));

  net.run_round_all([&](NodeCtx& c) {
    if (dpart[c.id()] >= 0) c.broadcast(pb, kLabel, dpart[c.id()]);
  });
  net.run_round(weak.sparse, [&](NodeCtx& c) {
    std::map<int, int> cnt;
    for (auto& m : c.inbox()) ++cnt[m.a];
    int joined = -1;
    for (auto [p, k] : cnt)
      if (k >= (1.0 - eps) * D) {
        // (1-ε)Δ > Δ/2, so at most one part qualifies.
        if (joined >= 0) throw InvariantViolated("node " + std::to_string(c.id()) + " qualifies for two parts");
        joined = p;
      }
    part[c.id()] = joined;
  });
  AcDecomposition acd = make_acd(part, eps);
  for (size_t i = 0; i < acd.cliques.size(); ++i) {
    const double added = double(acd.cliques[i].size() - weak.parts[i].size());
    if (added > eps * D / 2)
      throw InvariantViolated("AC " + std::to_string(i) + " gained " + std::to_string(int(added)) + " > εΔ/2 nodes");
  }
  auto v = validate_acd(g, acd, zeta);
  if (!v.empty()) throw InvariantViolated(v.front());
  return acd;
}

std::vector<std::string> validate_acd(const Graph& g, const AcDecomposition& acd, double zeta) {
  std::vector<std::string> out;
  const int n = g.n();
  const double D = g.max_degree();
  const double eps = acd.eps;
  if (int(acd.part.size()) != n) {
    out.push_back("partition: part vector has wrong length");
    return out;
  }
  std::vector<int> seen(n, 0);
  for (size_t i = 0; i < acd.cliques.size(); ++i)
    for (Node v : acd.cliques[i]) {
      if (v < 0 || v >= n || acd.part[v] != int(i)) out.push_back("partition: node " + std::to_string(v) + " mislabeled");
      else ++seen[v];
    }
  for (Node v : acd.sparse) {
    if (v < 0 || v >= n || acd.part[v] != -1) out.push_back("partition: sparse node " + std::to_string(v) + " mislabeled");
    else ++seen[v];
  }
  for (Node v = 0; v < n; ++v)
    if (seen[v] != 1) out.push_back("partition: node " + std::to_string(v) + " covered " + std::to_string(seen[v]) + " times");
  if (!out.empty()) return out;

  for (size_t i = 0; i < acd.cliques.size(); ++i) {
    const double sz = double(acd.cliques[i].size());
    if (sz < (1.0 - eps / 4) * D) out.push_back("(i) AC " + std::to_string(i) + " size " + std::to_string(int(sz)) + " below (1-ε/4)Δ");
    if (sz > (1.0 + eps) * D) out.push_back("(i) AC " + std::to_string(i) + " size " + std::to_string(int(sz)) + " above (1+ε)Δ");
  }
  std::map<int, int> cnt;
  for (Node u = 0; u < n; ++u) {
    cnt.clear();
    for (Node w : g.neighbors(u))
      if (acd.part[w] >= 0) ++cnt[acd.part[w]];
    const int pu = acd.part[u];
    if (pu >= 0 && cnt[pu] < (1.0 - eps) * D)
      out.push_back("(ii) node " + std::to_string(u) + " has " + std::to_string(cnt[pu]) + " neighbors in AC " +
                    std::to_string(pu));
    for (auto [p, k] : cnt)
      if (p != pu && k > (1.0 - eps / 2) * D)
        out.push_back("(iii) node " + std::to_string(u) + " has " + std::to_string(k) + " neighbors in AC " +
                      std::to_string(p));
  }
  const double need = zeta * eps * eps * D * D;
  for (Node v : acd.sparse)
    if (double(neighborhood_non_edges(g, v)) < need)
      out.push_back("sparse: node " + std::to_string(v) + " has fewer than ζε²Δ² non-edges");
  return out;
}

AcDecomposition compute_acd(Network& net, const AcdConfig& cfg) {
  const Graph& g = net.graph();
  if (cfg.eps * g.max_degree() / 4 < 1) throw IllegalSpec("εΔ/4 < 1: decomposition bounds are vacuous");
  std::string last;
  for (int attempt = 0; attempt < cfg.retries; ++attempt) {
    try {
      WeakDecomposition w = compute_weak_decomposition(net, cfg.eps, cfg);
      return augment_decomposition(net, w, cfg.eps, cfg.zeta);
    } catch (const InvariantViolated& e) {
      last = e.what();
    }
  }
  throw DecompositionFailed("no valid decomposition after " + std::to_string(cfg.retries) + " attempts; last: " + last);
}

void dump_acd(std::ostream& out, const AcDecomposition& acd) {
  for (size_t i = 0; i < acd.cliques.size(); ++i) {
    out << "C " << i << ":";
    for (Node v : acd.cliques[i]) out << ' ' << v;
    out << '\n';
  }
  out << "SPARSE:";
  for (Node v : acd.sparse) out << ' ' << v;
  out << '\n';
}

}  // namespace dcolor
