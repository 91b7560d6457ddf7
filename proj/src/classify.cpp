#include "dcolor/classify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace dcolor {

std::string to_string(AcType t) {
  switch (t) {
    case AcType::easy: return "easy";
    case AcType::difficult: return "difficult";
    case AcType::nice: return "nice";
    case AcType::ordinary: return "ordinary";
  }
  return "?";
}

std::string to_string(Subtype s) {
  switch (s) {
    case Subtype::none: return "none";
    case Subtype::small: return "small";
    case Subtype::large_important: return "large_important";
    case Subtype::large_unimportant: return "large_unimportant";
  }
  return "?";
}

namespace {

bool is_easy(const Graph& g, const NodeSet& c) {
  const int D = g.max_degree();
  for (Node v : c)
    if (g.degree(v) < D) return true;
  return count_non_edges(g, c) > 0;
}

}  // namespace

std::vector<AcInfo> classify_acs(const Graph& g, const AcDecomposition& acd) {
  const int D = g.max_degree();
  const size_t t = acd.cliques.size();
  std::vector<AcInfo> out(t);
  std::vector<int> cnt(g.n(), 0);
  for (size_t i = 0; i < t; ++i) {
    const NodeSet& c = acd.cliques[i];
    AcInfo& a = out[i];
    a.e = D - int(c.size()) + 1;
    if (is_easy(g, c)) {
      a.type = AcType::easy;
      continue;
    }
    // Proper clique of Δ-degree nodes: every member has exactly e outside.
    NodeSet touched;
    for (Node v : c) {
      int ext = 0;
      for (Node u : g.neighbors(v))
        if (acd.part[u] != int(i)) {
          ++ext;
          if (cnt[u]++ == 0) touched.push_back(u);
        }
      if (ext != a.e)
        throw InvariantViolated("non-easy AC " + std::to_string(i) + " node " + std::to_string(v) + " has external degree " +
                                std::to_string(ext) + " != e_C " + std::to_string(a.e));
    }
    std::sort(touched.begin(), touched.end());
    for (Node u : touched) {
      if (a.special < 0 && cnt[u] >= 2 * a.e) a.special = u;
    }
    for (Node u : touched) cnt[u] = 0;
    a.type = a.special >= 0 ? AcType::difficult : AcType::ordinary;
  }
  // Non-difficult ACs hosting another AC's special node are nice.
  for (size_t i = 0; i < t; ++i) {
    if (out[i].type != AcType::difficult) continue;
    const int host = acd.part[out[i].special];
    if (host >= 0 && out[host].type == AcType::ordinary) out[host].type = AcType::nice;
  }
  return out;
}

void aggregate_check(Network& net, const AcDecomposition& acd, const std::vector<AcInfo>& infos) {
  const Graph& g = net.graph();
  const int D = g.max_degree();
  for (size_t i = 0; i < acd.cliques.size(); ++i) {
    const NodeSet& c = acd.cliques[i];
    const Node leader = c.front();
    std::vector<long long> one(c.size(), 1), flag(c.size(), 0);
    for (size_t j = 0; j < c.size(); ++j) {
      int inside = 0;
      for (Node u : g.neighbors(c[j])) inside += acd.part[u] == int(i);
      flag[j] = (g.degree(c[j]) < D || inside < int(c.size()) - 1) ? 1 : 0;
    }
    const int cb = std::max(1, net.count_bits() + 1);
    const long long size = clique_aggregate(net, c, leader, AggOp::sum, one, cb).value;
    const long long easy = clique_aggregate(net, c, leader, AggOp::sum, flag, cb).value;
    if (D - size + 1 != infos[i].e || (easy > 0) != (infos[i].type == AcType::easy))
      throw InvariantViolated("AC " + std::to_string(i) + ": leader aggregate disagrees with classification");
  }
}

NodePartition assign_levels(const Graph& g, const AcDecomposition& acd, std::vector<AcInfo>& infos) {
  const int n = g.n();
  const size_t t = infos.size();
  for (auto& a : infos) {
    if (a.type != AcType::difficult) continue;
    const int host = acd.part[a.special];
    const bool finite = host >= 0 && infos[host].type == AcType::difficult;
    a.level = finite ? ceil_log2(uint64_t(a.e)) : kLevelInf;
  }
  for (size_t i = 0; i < t; ++i) {
    const auto& a = infos[i];
    if (a.type != AcType::difficult || a.level == kLevelInf) continue;
    const auto& b = infos[acd.part[a.special]];
    if (!(a.level < b.level))
      throw LevelOrderViolated("AC " + std::to_string(i) + " level " + std::to_string(a.level) +
                               " not below host level " + (b.level == kLevelInf ? std::string("inf") : std::to_string(b.level)));
  }

  NodePartition p;
  p.cls.assign(n, NodeClass::V_star);
  p.level.assign(n, kLevelInf);
  std::vector<char> special_free(n, 0);  // special of some AC, not inside a difficult AC
  for (auto& a : infos) {
    if (a.type != AcType::difficult) continue;
    const int host = acd.part[a.special];
    if (host < 0 || infos[host].type != AcType::difficult) special_free[a.special] = 1;
  }
  for (Node v = 0; v < n; ++v) {
    const int pi = acd.part[v];
    if (pi >= 0 && infos[pi].type == AcType::difficult) {
      p.cls[v] = NodeClass::D;
      p.level[v] = infos[pi].level;
      p.D[infos[pi].level].push_back(v);
    } else if (special_free[v]) {
      p.cls[v] = NodeClass::S;
      p.S.push_back(v);
    } else if (pi < 0) {
      p.V_star.push_back(v);
    } else if (infos[pi].nice_like()) {
      p.cls[v] = NodeClass::N;
      p.N.push_back(v);
    } else {
      p.cls[v] = NodeClass::O;
      p.O.push_back(v);
    }
  }
  // A node special for a finite level lies in a difficult AC and so cannot
  // also be in S; check the sets are disjoint anyway.
  for (Node s : p.S)
    if (p.cls[s] != NodeClass::S) throw InvariantViolated("special node classified twice");
  return p;
}

namespace {
enum MatchTag : uint8_t { kPropose = 1, kAccept, kTaken };
}

void compute_matchings(Network& net, const AcDecomposition& acd, std::vector<AcInfo>& infos,
                       const std::vector<int>& which, int retries) {
  const Graph& g = net.graph();
  const int n = g.n();
  const double D = g.max_degree();

  for (int attempt = 0; attempt <= retries; ++attempt) {
    NodeSet heads, all;
    std::vector<std::vector<Node>> cand(n);  // heads: outside neighbours not known taken
    std::vector<Node> mate(n, -1);
    for (int i : which)
      for (Node v : acd.cliques[i]) {
        heads.push_back(v);
        for (Node u : g.neighbors(v))
          if (acd.part[u] != i) cand[v].push_back(u);
      }
    std::sort(heads.begin(), heads.end());
    // taken[u]: ACs for which outside node u is already matched.
    std::vector<std::vector<int>> taken(n);
    std::vector<char> proposed(n, 0);
    for (Node v : heads) all.insert(all.end(), cand[v].begin(), cand[v].end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    bool sent = true;
    while (sent) {
      std::fill(proposed.begin(), proposed.end(), 0);
      net.run_round(heads, [&](NodeCtx& c) {
        const Node v = c.id();
        for (auto& m : c.inbox()) {
          if (m.tag == kAccept) mate[v] = m.from;
          auto it = std::find(cand[v].begin(), cand[v].end(), m.from);
          if (it != cand[v].end()) cand[v].erase(it);
        }
        if (mate[v] >= 0 || cand[v].empty()) return;
        c.send(cand[v][c.rng().below(cand[v].size())], 1, kPropose);
        proposed[v] = 1;
      });
      sent = std::find(proposed.begin(), proposed.end(), 1) != proposed.end();
      if (!sent) break;
      net.run_round(all, [&](NodeCtx& c) {
        const Node u = c.id();
        // Inbox is sorted by sender, so the first proposer per AC wins.
        for (auto& m : c.inbox()) {
          if (m.tag != kPropose) continue;
          const int ac = acd.part[m.from];
          auto& tk = taken[u];
          if (std::find(tk.begin(), tk.end(), ac) == tk.end()) {
            tk.push_back(ac);
            c.send(m.from, 1, kAccept);
          } else {
            c.send(m.from, 1, kTaken);
          }
        }
      });
    }
    bool ok = true;
    for (int i : which) {
      auto& mc = infos[i].matching;
      mc.clear();
      for (Node v : acd.cliques[i])
        if (mate[v] >= 0) mc.emplace_back(v, mate[v]);
      ok = ok && mc.size() >= D / 10;
    }
    if (ok) return;
  }
  throw MatchingTooSmall("some ordinary AC has |M_C| < Δ/10 after retries");
}

int max_boundary_matching(const Graph& g, const NodeSet& c, const std::vector<int>& part, int idx) {
  std::vector<Edge> edges;
  NodeSet right;
  for (Node v : c)
    for (Node u : g.neighbors(v))
      if (part[u] != idx) {
        edges.emplace_back(v, u);
        right.push_back(u);
      }
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());
  return int(max_bipartite_matching(c, right, edges).size());
}

double q_fn(int n) {
  const double ll = std::log2(std::max(2.0, std::log2(std::max(4.0, double(n)))));
  return 10.0 * ll * ll * ll;
}

void classify_ordinary(const Graph& g, const AcDecomposition& acd, std::vector<AcInfo>& infos, double q) {
  const double D = g.max_degree();
  std::vector<char> large_node(g.n(), 0);
  for (size_t i = 0; i < infos.size(); ++i) {
    if (infos[i].type != AcType::ordinary) continue;
    const bool large = double(acd.cliques[i].size()) > D - D / q;
    infos[i].subtype = large ? Subtype::large_unimportant : Subtype::small;
    if (large)
      for (Node v : acd.cliques[i]) large_node[v] = 1;
  }
  for (auto& a : infos) {
    if (a.subtype != Subtype::large_unimportant) continue;
    int tails = 0;
    for (auto [h, t] : a.matching) tails += large_node[t];
    if (tails >= D / 12) a.subtype = Subtype::large_important;
  }
}

NodeSet small_ordinary_sparsity_violations(const Graph& g, const AcDecomposition& acd,
                                           const std::vector<AcInfo>& infos, double q) {
  const double D = g.max_degree();
  NodeSet bad;
  for (size_t i = 0; i < infos.size(); ++i) {
    if (infos[i].subtype != Subtype::small) continue;
    for (Node v : acd.cliques[i])
      if (double(neighborhood_non_edges(g, v)) < D * D / (2 * q)) bad.push_back(v);
  }
  return bad;
}

void dump_classification(std::ostream& out, const AcDecomposition& acd, const std::vector<AcInfo>& infos) {
  for (size_t i = 0; i < infos.size(); ++i) {
    const auto& a = infos[i];
    out << "C " << i << ": size=" << acd.cliques[i].size() << " e=" << a.e << " type=" << to_string(a.type)
        << " special=" << a.special << " level=";
    if (a.type != AcType::difficult) out << "-";
    else if (a.level == kLevelInf) out << "inf";
    else out << a.level;
    out << " subtype=" << to_string(a.subtype) << '\n';
  }
}

}  // namespace dcolor
