#include "dcolor/lll.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace dcolor {

int dependency_degree(const LllInstance& inst) {
  std::vector<std::vector<int>> var_events(inst.vars.size());
  for (size_t e = 0; e < inst.events.size(); ++e)
    for (int x : inst.events[e].vars) var_events[x].push_back(int(e));
  std::vector<int> stamp(inst.events.size(), -1);
  int d = 0;
  for (size_t e = 0; e < inst.events.size(); ++e) {
    int deg = 0;
    stamp[e] = int(e);
    for (int x : inst.events[e].vars)
      for (int f : var_events[x])
        if (stamp[f] != int(e)) {
          stamp[f] = int(e);
          ++deg;
        }
    d = std::max(d, deg);
  }
  return d;
}

std::vector<int> violated_events(const LllInstance& inst, const Assignment& a) {
  std::vector<int> out;
  for (size_t e = 0; e < inst.events.size(); ++e)
    if (inst.events[e].bad(a)) out.push_back(int(e));
  return out;
}

LllResult solve_resampling(const LllInstance& inst, uint64_t seed, long long cap, std::vector<std::string>* trace) {
  LllResult r;
  Rng rng(seed);
  const size_t nv = inst.vars.size(), ne = inst.events.size();
  r.value.resize(nv);
  for (size_t x = 0; x < nv; ++x) r.value[x] = rng.bernoulli(inst.vars[x].p);
  std::vector<std::vector<int>> var_events(nv);
  for (size_t e = 0; e < ne; ++e)
    for (int x : inst.events[e].vars) var_events[x].push_back(int(e));
  std::vector<char> bad(ne);
  for (size_t e = 0; e < ne; ++e) bad[e] = inst.events[e].bad(r.value);
  std::vector<int> var_stamp(nv, -1), ev_stamp(ne, -1), half_turn(ne, 0);

  while (true) {
    std::vector<int> viol;
    for (size_t e = 0; e < ne; ++e)
      if (bad[e]) viol.push_back(int(e));
    if (viol.empty()) break;
    if (r.iterations >= cap) throw IterationCapExceeded("resampling solver hit its iteration cap", viol);
    const int it = int(r.iterations++);
    std::vector<int> touched;
    for (int e : viol) {
      const auto& ev = inst.events[e];
      bool free = true;
      for (int x : ev.vars) free = free && var_stamp[x] != it;
      if (!free) continue;
      for (int x : ev.vars) var_stamp[x] = it;
      const std::vector<int>& rs = ev.halves.empty() ? ev.vars : ev.halves[half_turn[e]++ % ev.halves.size()];
      std::string line;
      if (trace) line = std::to_string(e);
      for (int x : rs) {
        r.value[x] = rng.bernoulli(inst.vars[x].p);
        touched.push_back(x);
        if (trace) line += " " + std::to_string(x);
      }
      if (trace) trace->push_back(line);
      ++r.resamples;
    }
    for (int x : touched)
      for (int f : var_events[x])
        if (ev_stamp[f] != it) {
          ev_stamp[f] = it;
          bad[f] = inst.events[f].bad(r.value);
        }
  }
  auto still = violated_events(inst, r.value);
  if (!still.empty()) throw AssertFailed("resampling output violates " + std::to_string(still.size()) + " events");
  return r;
}

LllInstance build_slack_set_lll(const Graph& g, const NodeSet& U, const NodeSet& W,
                                const std::vector<NodeSet>& matching_nodes, double p, double mu, double alpha) {
  LllInstance inst;
  auto varid = std::make_shared<std::vector<int>>(g.n(), -1);
  for (Node u : U) {
    (*varid)[u] = int(inst.vars.size());
    inst.vars.push_back({u, p});
  }
  const double cap = 4 * mu;
  for (Node v = 0; v < g.n(); ++v) {
    LllEvent e;
    e.home = v;
    e.kind = "E_v";
    for (Node u : g.neighbors(v))
      if ((*varid)[u] >= 0) e.vars.push_back((*varid)[u]);
    if (double(e.vars.size()) < cap) continue;
    auto vs = e.vars;
    e.bad = [vs, cap](const Assignment& a) {
      int k = 0;
      for (int x : vs) k += a[x];
      return k >= cap;
    };
    inst.events.push_back(std::move(e));
  }
  for (size_t i = 0; i < matching_nodes.size(); ++i) {
    LllEvent e;
    e.kind = "E_C";
    for (Node u : matching_nodes[i])
      if ((*varid)[u] >= 0) e.vars.push_back((*varid)[u]);
    if (double(e.vars.size()) < cap || matching_nodes[i].empty()) continue;
    e.home = matching_nodes[i].front();
    auto vs = e.vars;
    e.bad = [vs, cap](const Assignment& a) {
      int k = 0;
      for (int x : vs) k += a[x];
      return k >= cap;
    };
    inst.events.push_back(std::move(e));
  }
  const double need = alpha * mu * mu / 2;
  for (Node v : W) {
    LllEvent e;
    e.home = v;
    e.kind = "E'_v";
    NodeSet nb;
    for (Node u : g.neighbors(v))
      if ((*varid)[u] >= 0) {
        e.vars.push_back((*varid)[u]);
        nb.push_back(u);
      }
    if (double(count_non_edges(g, nb)) < need) {
      inst.degenerate.push_back(v);
      continue;
    }
    const Graph* gp = &g;
    e.bad = [gp, nb, need, varid](const Assignment& a) {
      NodeSet s;
      for (Node u : nb)
        if (a[(*varid)[u]]) s.push_back(u);
      long long k = 0;
      for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
          if (!gp->adjacent(s[i], s[j]) && double(++k) >= need) return false;
      return double(k) < need;
    };
    inst.events.push_back(std::move(e));
  }
  return inst;
}

NodeSet selected(const NodeSet& U, const Assignment& a) {
  NodeSet s;
  for (size_t i = 0; i < U.size(); ++i)
    if (a[i]) s.push_back(U[i]);
  return s;
}

bool has_same_colored_pair(const ColoringState& st, Node v) {
  if (st.colored(v)) return true;
  std::vector<int> cs;
  for (Node u : st.graph().neighbors(v))
    if (st.colored(u)) cs.push_back(st.color(u));
  std::sort(cs.begin(), cs.end());
  return std::adjacent_find(cs.begin(), cs.end()) != cs.end();
}

namespace {
enum SlackTag : uint8_t { kStatus = 1, kTrial, kAnnounce };
}

TwoSetStats two_set_slack_color(Network& net, ColoringState& st, const NodeSet& S1, const NodeSet& S2, const NodeSet& W,
                                int chi, double colored_nbr_cap, int retries, int trial_rounds) {
  const Graph& g = st.graph();
  const int n = g.n();
  const int cb = net.color_bits();
  TwoSetStats ts;
  std::vector<int> side(n, 0);
  for (Node v : S1) side[v] = 1;
  for (Node v : S2) {
    if (side[v]) throw InvariantViolated("S1 and S2 overlap");
    side[v] = 2;
  }
  NodeSet S(S1);
  S.insert(S.end(), S2.begin(), S2.end());
  std::sort(S.begin(), S.end());
  S = st.uncolored(S);
  const NodeSet Sfree = S;

  std::vector<char> unsat(n, 0);
  std::vector<int> trial(n, 0);
  auto all_ok = [&]() {
    for (Node w : W)
      if (!has_same_colored_pair(st, w)) return false;
    return true;
  };
  for (int attempt = 0; attempt <= retries; ++attempt) {
    ++ts.attempts;
    for (int t = 0; t < trial_rounds && !all_ok(); ++t) {
      ++ts.trial_rounds;
      for (Node w : W) unsat[w] = !has_same_colored_pair(st, w);
      net.run_round(W, [&](NodeCtx& c) {
        if (unsat[c.id()]) c.broadcast(1, kStatus);
      });
      NodeSet active = st.uncolored(Sfree);
      std::fill(trial.begin(), trial.end(), 0);
      net.run_round(active, [&](NodeCtx& c) {
        bool needed = false;
        for (auto& m : c.inbox()) needed = needed || m.tag == kStatus;
        if (!needed) return;
        const Node v = c.id();
        trial[v] = (side[v] == 1 ? 1 : chi + 1) + int(c.rng().below(uint64_t(chi)));
        c.broadcast(cb, kTrial, trial[v]);
      });
      std::vector<char> keep(n, 0);
      net.run_round(active, [&](NodeCtx& c) {
        const Node v = c.id();
        if (!trial[v]) return;
        for (auto& m : c.inbox())
          if (m.tag == kTrial && m.a == trial[v]) return;
        for (Node u : c.neighbors())
          if (st.color(u) == trial[v]) return;
        keep[v] = 1;
        c.broadcast(cb, kAnnounce, trial[v]);
      });
      for (Node v : active)
        if (keep[v]) st.set_color_unchecked(v, trial[v]);
    }
    if (all_ok()) {
      const auto inS = indicator(n, Sfree);
      for (Node v = 0; v < n; ++v) {
        int k = 0;
        for (Node u : g.neighbors(v)) k += inS[u] && st.colored(u);
        ts.max_colored_nbrs = std::max(ts.max_colored_nbrs, k);
      }
      if (ts.max_colored_nbrs > colored_nbr_cap)
        throw AssertFailed("two-set slack coloring colored " + std::to_string(ts.max_colored_nbrs) +
                           " neighbors of one node, cap " + std::to_string(colored_nbr_cap));
      return ts;
    }
    for (Node v : Sfree) st.set_color_unchecked(v, kNoColor);
  }
  NodeSet bad;
  for (Node w : W)
    if (!has_same_colored_pair(st, w)) bad.push_back(w);
  throw SlackFailed(std::to_string(bad.size()) + " W-nodes without a same-colored neighbor pair");
}

LllInstance build_L1(const Graph& g, const NodeSet& X, const std::vector<std::vector<Arc>>& arcs, double q, double x) {
  LllInstance inst;
  auto varid = std::make_shared<std::vector<int>>(g.n(), -1);
  for (Node u : X) {
    (*varid)[u] = int(inst.vars.size());
    inst.vars.push_back({u, q});
  }
  const double cap = 3 * q * g.max_degree();
  for (Node v = 0; v < g.n(); ++v) {
    LllEvent e;
    e.home = v;
    e.kind = "L1_v";
    for (Node u : g.neighbors(v))
      if ((*varid)[u] >= 0) e.vars.push_back((*varid)[u]);
    if (double(e.vars.size()) <= cap) continue;
    auto vs = e.vars;
    e.bad = [vs, cap](const Assignment& a) {
      int k = 0;
      for (int y : vs) k += a[y];
      return k > cap;
    };
    inst.events.push_back(std::move(e));
  }
  for (size_t c = 0; c < arcs.size(); ++c) {
    if (arcs[c].empty()) continue;
    std::vector<std::pair<int, int>> cand;  // (head var, tail var)
    for (const Arc& a : arcs[c])
      if ((*varid)[a.head] >= 0 && (*varid)[a.tail] >= 0) cand.emplace_back((*varid)[a.head], (*varid)[a.tail]);
    if (double(cand.size()) < x) {
      inst.degenerate.push_back(int(c));
      continue;
    }
    LllEvent e;
    e.home = arcs[c].front().head;
    e.kind = "L1_C";
    for (auto [h, t] : cand) e.vars.insert(e.vars.end(), {h, t});
    std::sort(e.vars.begin(), e.vars.end());
    e.vars.erase(std::unique(e.vars.begin(), e.vars.end()), e.vars.end());
    e.bad = [cand, x](const Assignment& a) {
      int k = 0;
      for (auto [h, t] : cand) k += !a[h] && a[t];
      return k < x;
    };
    inst.events.push_back(std::move(e));
  }
  return inst;
}

std::vector<std::vector<Arc>> useful_arcs(const std::vector<std::vector<Arc>>& arcs, const std::vector<char>& inX,
                                          const std::vector<char>& inZ) {
  std::vector<std::vector<Arc>> out(arcs.size());
  for (size_t c = 0; c < arcs.size(); ++c)
    for (const Arc& a : arcs[c])
      if (inX[a.head] && !inZ[a.head] && inX[a.tail] && inZ[a.tail]) out[c].push_back(a);
  return out;
}

LllInstance build_L2(const NodeSet& X, const NodeSet& Z, const std::vector<std::vector<Arc>>& arcs, double x, int n) {
  LllInstance inst;
  std::vector<int> varid(n, -1);
  for (Node z : Z) {
    varid[z] = int(inst.vars.size());
    inst.vars.push_back({z, 0.5});
  }
  const auto use = useful_arcs(arcs, indicator(n, X), indicator(n, Z));
  const double need = x / 3;
  for (size_t c = 0; c < use.size(); ++c) {
    if (arcs[c].empty()) continue;
    std::vector<int> tails;
    for (const Arc& a : use[c]) tails.push_back(varid[a.tail]);
    if (double(tails.size()) < 2 * std::ceil(need)) {
      inst.degenerate.push_back(int(c));
      continue;
    }
    for (int half = 0; half < 2; ++half) {
      LllEvent e;
      e.home = arcs[c].front().head;
      e.kind = half ? "L2_C2" : "L2_C1";
      e.vars = tails;
      e.bad = [tails, need, half](const Assignment& a) {
        int k = 0;
        for (int t : tails) k += a[t] == half;
        return k < need;
      };
      inst.events.push_back(std::move(e));
    }
  }
  return inst;
}

LllInstance build_L3(const std::vector<std::vector<Arc>>& useful1, const std::vector<std::vector<Arc>>& useful2,
                     double p3, L3Layout& layout) {
  LllInstance inst;
  const size_t t = std::max(useful1.size(), useful2.size());
  layout.arcs.clear();
  layout.by_ac.assign(t, {});
  std::vector<int> half_of;
  for (int h = 0; h < 2; ++h) {
    const auto& u = h ? useful2 : useful1;
    for (size_t c = 0; c < u.size(); ++c)
      for (const Arc& a : u[c]) {
        layout.by_ac[c].push_back(int(layout.arcs.size()));
        layout.arcs.push_back(a);
        half_of.push_back(h);
        inst.vars.push_back({a.tail, p3});
      }
  }
  std::map<Node, std::vector<int>> by_tail;
  for (size_t i = 0; i < layout.arcs.size(); ++i) by_tail[layout.arcs[i].tail].push_back(int(i));
  auto arcs = std::make_shared<std::vector<Arc>>(layout.arcs);
  auto tails = std::make_shared<std::map<Node, std::vector<int>>>(by_tail);
  for (size_t c = 0; c < t; ++c) {
    const auto& own = layout.by_ac[c];
    if (own.empty()) continue;
    LllEvent e;
    e.home = layout.arcs[own.front()].head;
    e.kind = "L3_C";
    e.halves.assign(2, {});
    for (int i : own)
      for (int j : by_tail[layout.arcs[i].tail]) e.halves[half_of[i]].push_back(j);
    for (auto& h : e.halves) {
      std::sort(h.begin(), h.end());
      h.erase(std::unique(h.begin(), h.end()), h.end());
      e.vars.insert(e.vars.end(), h.begin(), h.end());
    }
    std::sort(e.vars.begin(), e.vars.end());
    e.halves.erase(std::remove_if(e.halves.begin(), e.halves.end(), [](auto& h) { return h.empty(); }), e.halves.end());
    e.bad = [own, arcs, tails](const Assignment& a) {
      for (int i : own) {
        if (!a[i]) continue;
        bool alone = true;
        for (int j : tails->at((*arcs)[i].tail)) alone = alone && (j == i || !a[j]);
        if (alone) return false;
      }
      return true;
    };
    inst.events.push_back(std::move(e));
  }
  return inst;
}

std::vector<std::vector<Arc>> successful_arcs(const L3Layout& layout, const Assignment& a) {
  // Each AC has at most one arc per tail, so activations per tail = activating ACs.
  std::map<Node, int> hits;
  for (size_t i = 0; i < layout.arcs.size(); ++i)
    if (a[i]) ++hits[layout.arcs[i].tail];
  std::vector<std::vector<Arc>> out(layout.by_ac.size());
  for (size_t c = 0; c < layout.by_ac.size(); ++c)
    for (int i : layout.by_ac[c])
      if (a[i] && hits[layout.arcs[i].tail] == 1) out[c].push_back(layout.arcs[i]);
  return out;
}

double chernoff_upper(double mu, double delta) { return std::exp(-delta * delta * mu / (2 + delta)); }
double chernoff_lower(double mu, double delta) { return std::exp(-delta * delta * mu / 2); }

}  // namespace dcolor
