#include "dcolor/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "dcolor/brooks.hpp"

namespace dcolor {

namespace {

// Thrown when a probabilistic step exhausts its retry cap.
struct Escalation {
  std::string where, why;
};

NodeSet sorted_union(NodeSet a, const NodeSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

struct Runner {
  const Graph& g;
  const RunConfig& cfg;
  Network& net;
  ColoringState& st;
  RunResult& res;
  RunReport& rep;
  D1lcStats d1;
  int D;
  int n;

  void check_partial(const std::string& where) {
    const Verdict v = st.check_partial();
    if (!v.ok) throw AssertFailed(where + ": " + v.reason);
  }

  const AcDecomposition& acd() const { return res.acd; }
  std::vector<AcInfo>& infos() { return res.infos; }
  NodePartition& part() { return res.partition; }

  // ---------------------------------------------------------------- phase 1
  void phase1() {
    net.set_phase("acd");
    if (cfg.eps * D / 4 < 1) {
      res.acd = all_sparse_acd(g, cfg.eps);
      rep.acd_skipped = true;
    } else {
      AcdConfig ac;
      ac.eps = cfg.eps;
      ac.zeta = cfg.zeta;
      try {
        res.acd = compute_acd(net, ac);
      } catch (const DecompositionFailed& e) {
        throw Escalation{"acd", e.what()};
      }
      rep.acd_violations = int(validate_acd(g, res.acd, cfg.zeta).size());
    }
    net.set_phase("classify");
    res.infos = classify_acs(g, res.acd);
    aggregate_check(net, res.acd, res.infos);
    res.partition = assign_levels(g, res.acd, res.infos);
    rep.num_acs = int(res.infos.size());
    for (const auto& a : res.infos) {
      ++rep.ac_types[to_string(a.type)];
      if (a.type == AcType::difficult && a.level != kLevelInf) ++rep.level_checks;
    }
    for (const auto& [lvl, nodes] : res.partition.D)
      if (!nodes.empty()) rep.levels_used.push_back(lvl == kLevelInf ? -1 : lvl);
    rep.partition_sizes["S"] = int(part().S.size());
    rep.partition_sizes["N"] = int(part().N.size());
    rep.partition_sizes["O"] = int(part().O.size());
    rep.partition_sizes["V_star"] = int(part().V_star.size());
    int dn = 0;
    for (const auto& [l, s] : part().D) dn += int(s.size());
    rep.partition_sizes["D"] = dn;

    std::vector<int> ordinary;
    for (size_t i = 0; i < res.infos.size(); ++i)
      if (res.infos[i].type == AcType::ordinary) ordinary.push_back(int(i));
    if (!ordinary.empty()) {
      try {
        compute_matchings(net, res.acd, res.infos, ordinary);
      } catch (const MatchingTooSmall& e) {
        throw Escalation{"matching", e.what()};
      }
    }
    for (int i : ordinary) {
      const int m = int(res.infos[i].matching.size());
      rep.matching_sizes.push_back(m);
      rep.min_matching = rep.min_matching < 0 ? m : std::min(rep.min_matching, m);
    }
    rep.q = q_fn(n);
    classify_ordinary(g, res.acd, res.infos, rep.q);
    for (Node s : part().S) st.set_stalled(s, true);
  }

  // ------------------------------------------------------------- phase 2
  template <class F>
  void with_retries(const std::string& name, F body) {
    std::string last;
    for (int attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
      const ColoringState snap = st;
      try {
        body();
        return;
      } catch (const SlackFailed& e) {
        last = e.what();
      } catch (const NotGraytone& e) {
        last = e.what();
      } catch (const IterationCapExceeded& e) {
        last = e.what();
      }
      st = snap;
      ++rep.retries[name];
    }
    throw Escalation{name, last};
  }

  void phase2_large() {
    net.set_phase("phase2");
    const auto& P = part();
    const NodeSet U = sorted_union(P.V_star, P.O);
    const auto inV = indicator(n, P.V_star), inO = indicator(n, P.O);
    const NodeSet got = slack_generation(net, st, U, D, cfg.activation);
    rep.slack_colored = int(got.size());
    check_partial("slack generation");
    rep.sparse_without_slack = 0;
    for (Node v : P.V_star)
      if (!st.colored(v) && st.slack(v, inV) < 1) ++rep.sparse_without_slack;
    rep.ordinary_without_toehold = 0;
    for (size_t i = 0; i < infos().size(); ++i) {
      if (infos()[i].type != AcType::ordinary) continue;
      bool toe = false;
      for (Node v : acd().cliques[i]) toe = toe || (!st.colored(v) && st.slack(v, inO) >= 1);
      if (!toe) ++rep.ordinary_without_toehold;
    }
    graytone_color(net, st, st.uncolored(P.O), &d1);
    graytone_color(net, st, st.uncolored(P.V_star), &d1);
    check_partial("phase 2");
  }

  void phase2_small() {
    net.set_phase("phase2");
    const auto& P = part();
    const double q = rep.q;
    std::vector<char> in_small(n, 0), in_large(n, 0), in_imp(n, 0);
    NodeSet O_s, O_l, important, unimportant;
    rep.important = rep.unimportant = rep.small_ordinary = 0;
    for (size_t i = 0; i < infos().size(); ++i) {
      const auto& a = infos()[i];
      if (a.type != AcType::ordinary) continue;
      const NodeSet& C = acd().cliques[i];
      if (a.subtype == Subtype::small) {
        ++rep.small_ordinary;
        for (Node v : C) in_small[v] = 1;
        O_s.insert(O_s.end(), C.begin(), C.end());
      } else {
        for (Node v : C) in_large[v] = 1;
        O_l.insert(O_l.end(), C.begin(), C.end());
        if (a.subtype == Subtype::large_important) {
          ++rep.important;
          for (Node v : C) in_imp[v] = 1;
          important.insert(important.end(), C.begin(), C.end());
        } else {
          ++rep.unimportant;
          unimportant.insert(unimportant.end(), C.begin(), C.end());
        }
      }
    }
    std::sort(O_s.begin(), O_s.end());
    std::sort(O_l.begin(), O_l.end());
    std::sort(important.begin(), important.end());
    std::sort(unimportant.begin(), unimportant.end());

    // Step 1: slack for sparse and small-ordinary nodes.
    const NodeSet U = st.uncolored(sorted_union(P.V_star, P.O));
    const auto inU = indicator(n, U);
    NodeSet W;
    for (Node v : sorted_union(P.V_star, O_s)) {
      if (st.colored(v) || g.degree(v) < D) continue;
      bool all_in = true;
      for (Node u : g.neighbors(v)) all_in = all_in && inU[u];
      if (all_in) W.push_back(v);
    }
    const double ll = std::log2(std::max(2.0, std::log2(std::max(4.0, double(n)))));
    rep.p = std::min(cfg.p_cap, cfg.c_p * std::pow(ll, 4) * std::log2(double(D)) / D);
    rep.mu = rep.p * D;
    rep.alpha = 1.0 / (2 * q * q);
    std::vector<NodeSet> mnodes;
    for (const auto& a : infos()) {
      if (a.type != AcType::ordinary) continue;
      NodeSet m;
      for (auto [h, t] : a.matching) m.insert(m.end(), {h, t});
      std::sort(m.begin(), m.end());
      mnodes.push_back(std::move(m));
    }
    const LllInstance i1 = build_slack_set_lll(g, U, W, mnodes, rep.p, rep.mu, rep.alpha);
    const LllResult r1 = solve_resampling(i1, net.stream_seed(1), cfg.lll_cap);
    const NodeSet S1 = selected(U, r1.value);
    const auto inS1 = indicator(n, S1);
    NodeSet U2;
    for (Node u : U)
      if (!inS1[u]) U2.push_back(u);
    const LllInstance i2 = build_slack_set_lll(g, U2, W, mnodes, rep.p, rep.mu, rep.alpha);
    const LllResult r2 = solve_resampling(i2, net.stream_seed(2), cfg.lll_cap);
    const NodeSet S2 = selected(U2, r2.value);
    rep.lll_resamples += r1.resamples + r2.resamples;
    rep.step1_W = int(W.size());
    rep.step1_S1 = int(S1.size());
    rep.step1_S2 = int(S2.size());
    rep.step1_degenerate = int(i1.degenerate.size());
    const auto before = st.uncolored(U).size();
    const TwoSetStats ts = two_set_slack_color(net, st, S1, S2, W, D / 2, 8 * rep.mu);
    rep.step1_max_colored_nbrs = ts.max_colored_nbrs;
    rep.step1_colored = int(before - st.uncolored(U).size());
    check_partial("step 1");

    // Step 2: Z via L1, split into Z1, Z2 via L2.
    const double qs = cfg.q_sample;
    rep.x_threshold = qs * qs * std::pow(1 - qs, 3) * D / 20;
    rep.x_eff = std::max(rep.x_threshold, 3.0);
    const NodeSet X = st.uncolored(O_l);
    std::vector<std::vector<Arc>> arcs(infos().size());
    for (size_t i = 0; i < infos().size(); ++i)
      if (infos()[i].subtype == Subtype::large_important)
        for (auto [h, t] : infos()[i].matching) arcs[i].push_back({int(i), h, t});
    const LllInstance l1 = build_L1(g, X, arcs, qs, rep.x_eff);
    const LllResult z1r = solve_resampling(l1, net.stream_seed(3), cfg.lll_cap);
    const NodeSet Z = selected(X, z1r.value);
    const LllInstance l2 = build_L2(X, Z, arcs, rep.x_eff, n);
    const LllResult z2r = solve_resampling(l2, net.stream_seed(4), cfg.lll_cap);
    rep.lll_resamples += z1r.resamples + z2r.resamples;
    NodeSet Z1, Z2;
    for (size_t i = 0; i < Z.size(); ++i) (z2r.value[i] ? Z2 : Z1).push_back(Z[i]);
    rep.z_size = int(Z.size());
    rep.z1_size = int(Z1.size());
    rep.z2_size = int(Z2.size());
    const auto inX = indicator(n, X), inZ = indicator(n, Z);
    rep.max_z_degree = 0;
    for (Node v = 0; v < n; ++v) {
      int k = 0;
      for (Node u : g.neighbors(v)) k += inZ[u];
      rep.max_z_degree = std::max(rep.max_z_degree, k);
    }
    if (rep.max_z_degree > D / 10.0)
      throw AssertFailed("|Z ∩ N(v)| = " + std::to_string(rep.max_z_degree) + " > Δ/10");
    const auto use1 = useful_arcs(arcs, inX, indicator(n, Z1));
    const auto use2 = useful_arcs(arcs, inX, indicator(n, Z2));

    // Step 3: L3 activation, successful arcs, triples.
    rep.p3 = std::min(q / D, 0.5);
    L3Layout layout;
    const LllInstance l3 = build_L3(use1, use2, rep.p3, layout);
    const LllResult r3 = solve_resampling(l3, net.stream_seed(5), cfg.lll_cap);
    rep.lll_resamples += r3.resamples;
    const auto succ = successful_arcs(layout, r3.value);
    res.triples.clear();
    std::vector<char> other_z(n, 0);
    for (size_t c = 0; c < succ.size(); ++c) {
      if (succ[c].empty()) continue;
      Arc best = succ[c].front();
      for (const Arc& a : succ[c])
        if (std::tie(a.head, a.tail) < std::tie(best.head, best.tail)) best = a;
      res.triples.push_back({-1, best.head, best.tail, int(c)});
      other_z[best.tail] = 1;
    }
    std::vector<PairNode> pairs;
    for (auto& t : res.triples) {
      other_z[t.z] = 0;  // only other ACs' z-nodes are excluded
      int cnt = 0;
      t.x = select_triple_xc(st, acd().cliques[t.ac], t.y, t.z, other_z, &cnt);
      other_z[t.z] = 1;
      rep.min_xc_candidates = rep.min_xc_candidates < 0 ? cnt : std::min(rep.min_xc_candidates, cnt);
      if (cnt < D / 2.0)
        throw AssertFailed("triple x-candidates " + std::to_string(cnt) + " < Δ/2 in AC " + std::to_string(t.ac));
      pairs.push_back({t.x, t.z, t.y});
    }
    rep.triples = int(res.triples.size());

    // Step 4: H_P and pair colouring.
    const HpInfo hp = build_HP(st, pairs);
    rep.hp_max_degree = hp.max_degree;
    PairOptions po;
    po.alg4_asserts = true;
    const PairStats ps = color_pairs(net, st, pairs, po);
    rep.pair_iterations = ps.per_iteration;
    rep.pair_min_list = pairs.empty() ? -1 : ps.min_list;
    rep.pair_min_joint = pairs.empty() ? -1 : ps.min_joint;
    check_partial("step 4");

    // Step 5: unimportant ACs, then everything else in V_* ∪ O.
    for (size_t i = 0; i < infos().size(); ++i) {
      if (infos()[i].subtype != Subtype::large_unimportant) continue;
      int outside = 0;
      for (auto [h, t] : infos()[i].matching) outside += !in_large[t];
      if (outside < 7.0 * D / 60)
        throw AssertFailed("unimportant AC " + std::to_string(i) + " has " + std::to_string(outside) +
                           " matching tails outside O_l < 7Δ/60");
    }
    graytone_color(net, st, st.uncolored(unimportant), &d1);
    graytone_color(net, st, st.uncolored(sorted_union(sorted_union(P.V_star, O_s), important)), &d1);
    check_partial("phase 2");
  }

  // ------------------------------------------------------------- phase 3
  void phase3() {
    net.set_phase("phase3");
    const auto& P = part();
    std::vector<char> inS = indicator(n, P.S);
    std::vector<PairNode> hollow;
    for (size_t i = 0; i < infos().size(); ++i) {
      if (!infos()[i].nice_like()) continue;
      const NodeSet& C = acd().cliques[i];
      bool toe = false;
      for (Node v : C) toe = toe || inS[v] || g.degree(v) < D;
      if (toe) continue;
      const auto inC = indicator(n, C);
      Node u = -1, w = -1;
      for (size_t a = 0; a < C.size() && u < 0; ++a)
        for (size_t b = a + 1; b < C.size(); ++b)
          if (!g.adjacent(C[a], C[b]) && !st.colored(C[a]) && !st.colored(C[b])) {
            u = C[a];
            w = C[b];
            break;
          }
      if (u < 0) throw PairFormationFailed("easy AC " + std::to_string(i) + " has no uncolored non-edge");
      int common = 0;
      Node relay = -1;
      for (Node x : g.neighbors(u))
        if (inC[x] && g.adjacent(x, w)) {
          ++common;
          if (relay < 0) relay = x;
        }
      rep.hollow_min_common = rep.hollow_min_common < 0 ? common : std::min(rep.hollow_min_common, common);
      if (common < D / 2.0)
        throw AssertFailed("hollow pair " + std::to_string(u) + "," + std::to_string(w) + " has " +
                           std::to_string(common) + " common AC neighbors < Δ/2");
      hollow.push_back({u, w, relay});
    }
    rep.hollow_pairs = int(hollow.size());
    color_pairs(net, st, hollow, PairOptions{});
    graytone_color(net, st, st.uncolored(P.N), &d1);
    check_partial("phase 3");
  }

  // ------------------------------------------------------------- phase 4
  void phase4() {
    net.set_phase("phase4");
    for (const auto& [lvl, nodes] : part().D) {
      if (lvl == kLevelInf) continue;
      for (const auto& a : infos())
        if (a.type == AcType::difficult && a.level == lvl && st.colored(a.special))
          throw LevelOrderViolated("special node " + std::to_string(a.special) + " colored before level " +
                                   std::to_string(lvl));
      graytone_color(net, st, st.uncolored(nodes), &d1);
      check_partial("phase 4");
    }
  }

  // ------------------------------------------------------------- phase 5
  void phase5() {
    net.set_phase("phase5");
    std::map<Node, std::vector<int>> hosted;  // special -> level-∞ ACs
    for (size_t i = 0; i < infos().size(); ++i) {
      const auto& a = infos()[i];
      if (a.type == AcType::difficult && a.level == kLevelInf) hosted[a.special].push_back(int(i));
    }
    std::vector<PairNode> pairs;
    NodeSet E;
    for (const auto& [s, acs] : hosted) {
      if (acs.size() == 1) {
        const int ci = acs[0];
        const NodeSet& C = acd().cliques[ci];
        const auto inC = indicator(n, C);
        Node u = -1, relay = -1;
        for (Node v : C)
          if (!g.adjacent(s, v)) { u = v; break; }
        if (u < 0) throw PairFormationFailed("special " + std::to_string(s) + " adjacent to all of its AC");
        for (Node x : g.neighbors(s))
          if (inC[x] && g.adjacent(x, u)) { relay = x; break; }
        if (relay < 0) throw PairFormationFailed("type-1 pair without a common neighbor");
        std::vector<char> seen(n, 0);
        int conflicts = 0;
        for (Node e : {s, u})
          for (Node x : g.neighbors(e))
            if (!inC[x] && x != s && !seen[x]) {
              seen[x] = 1;
              ++conflicts;
            }
        rep.type1_max_conflicts = std::max(rep.type1_max_conflicts, conflicts);
        if (conflicts > D - infos()[ci].e)
          throw AssertFailed("type-1 pair of AC " + std::to_string(ci) + " has " + std::to_string(conflicts) +
                             " outside neighbors > Δ - e_C");
        pairs.push_back({s, u, relay});
        ++rep.type1_pairs;
      } else {
        std::vector<int> by_e(acs);
        std::sort(by_e.begin(), by_e.end(), [&](int a, int b) {
          return std::make_pair(infos()[a].e, a) < std::make_pair(infos()[b].e, b);
        });
        const int c1 = by_e[0], c2 = by_e[1];
        const auto in1 = indicator(n, acd().cliques[c1]), in2 = indicator(n, acd().cliques[c2]);
        Node w1 = -1;
        for (Node x : g.neighbors(s))
          if (in1[x]) { w1 = x; break; }
        int cand = 0;
        Node w2 = -1;
        for (Node x : g.neighbors(s))
          if (in2[x] && !g.adjacent(x, w1)) {
            ++cand;
            if (w2 < 0) w2 = x;
          }
        rep.type2_min_candidates = rep.type2_min_candidates < 0 ? cand : std::min(rep.type2_min_candidates, cand);
        if (w1 < 0 || cand == 0 || cand < 2 * infos()[c2].e - infos()[c1].e)
          throw PairFormationFailed("type-2 pair for special " + std::to_string(s) + ": " + std::to_string(cand) +
                                    " candidates");
        pairs.push_back({w1, w2, s});
        E.push_back(s);
        ++rep.type2_pairs;
      }
    }
    color_pairs(net, st, pairs, PairOptions{});
    check_partial("phase 5 pairs");
    auto it = part().D.find(kLevelInf);
    if (it != part().D.end()) graytone_color(net, st, st.uncolored(it->second), &d1);
    solve_d1lc(net, st, E, nullptr, &d1);
    check_partial("phase 5");
  }

  void run_distributed() {
    phase1();
    if (rep.path == "alg2") with_retries("phase2", [&] { phase2_large(); });
    else with_retries("phase2", [&] { phase2_small(); });
    phase3();
    phase4();
    phase5();
    const NodeSet left = st.uncolored([&] {
      NodeSet all(n);
      for (Node v = 0; v < n; ++v) all[v] = v;
      return all;
    }());
    if (!left.empty()) throw AssertFailed(std::to_string(left.size()) + " nodes left uncolored, first " + std::to_string(left[0]));
  }
};

}  // namespace

Node select_triple_xc(const ColoringState& st, const NodeSet& C, Node y, Node z, const std::vector<char>& other_z,
                      int* candidates) {
  const Graph& g = st.graph();
  Node best = -1;
  int cnt = 0;
  for (Node v : C) {
    if (v == y || st.colored(v) || other_z[v] || !g.adjacent(v, y) || g.adjacent(v, z)) continue;
    ++cnt;
    if (best < 0 || v < best) best = v;
  }
  if (candidates) *candidates = cnt;
  if (best < 0) throw NoCandidate("no x for triple (y=" + std::to_string(y) + ", z=" + std::to_string(z) + ")");
  return best;
}

RunResult run(const Graph& g, const RunConfig& cfg) {
  const Verdict ok = validate_delta_colorable(g);
  if (!ok.ok) throw IllegalSpec(ok.reason);
  RunResult res;
  RunReport& rep = res.report;
  rep.config = cfg;
  rep.seed = cfg.seed;
  rep.n = g.n();
  rep.delta = g.max_degree();
  rep.t_high = cfg.t_high_factor * std::log2(double(std::max(2, g.n())));
  if (cfg.t_low > rep.t_high) throw IllegalSpec("t_low must not exceed t_high");

  NetConfig nc;
  nc.c_B = cfg.c_B;
  nc.strict = cfg.strict;
  nc.seed = cfg.seed;
  nc.parallel = cfg.parallel;
  Network net(g, nc);
  ColoringState st(g);
  Runner r{g, cfg, net, st, res, rep, {}, g.max_degree(), g.n()};

  if (rep.delta < cfg.t_low) {
    rep.path = "brooks";
    rep.fallback = true;
    res.colors = brooks_color(g);
  } else {
    rep.path = rep.delta >= rep.t_high ? "alg2" : "alg5";
    try {
      r.run_distributed();
      res.colors = st.colors();
    } catch (const Escalation& e) {
      rep.escalated = true;
      rep.escalations.push_back(e.where + ": " + e.why);
      if (!cfg.fallback_on_escalation) throw SlackFailed("escalation cap hit in " + e.where + ": " + e.why);
      rep.fallback = true;
      res.colors = brooks_color(g);
    }
  }
  rep.d1lc_invocations = r.d1.invocations;
  rep.d1lc_rounds = r.d1.rounds;
  rep.bandwidth = net.audit();

  // Independent re-verification of the output.
  const int D = g.max_degree();
  rep.all_colored = rep.colors_in_range = rep.proper = true;
  for (Node v = 0; v < g.n(); ++v) {
    const int c = res.colors[v];
    if (c == kNoColor) rep.all_colored = false;
    if (c < 1 || c > D) rep.colors_in_range = false;
    for (Node u : g.neighbors(v))
      if (c != kNoColor && res.colors[u] == c) rep.proper = false;
  }
  return res;
}

}  // namespace dcolor
