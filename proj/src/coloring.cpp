#include "dcolor/coloring.hpp"

#include <algorithm>

namespace dcolor {

void ColoringState::set_color(Node v, int c) {
  if (c < 1 || c > delta()) throw InvariantViolated("color " + std::to_string(c) + " outside 1..Δ");
  for (Node u : g_->neighbors(v))
    if (color_[u] == c)
      throw InvariantViolated("coloring " + std::to_string(v) + " with " + std::to_string(c) + " clashes with " +
                              std::to_string(u));
  color_[v] = c;
}

std::vector<int> ColoringState::palette(Node v) const {
  const int D = delta();
  std::vector<char> used(D + 1, 0);
  for (Node u : g_->neighbors(v))
    if (color_[u] > 0 && color_[u] <= D) used[color_[u]] = 1;
  std::vector<int> p;
  p.reserve(D);
  for (int c = 1; c <= D; ++c)
    if (!used[c]) p.push_back(c);
  return p;
}

int ColoringState::palette_size(Node v) const {
  const int D = delta();
  std::vector<char> used(D + 1, 0);
  int k = D;
  for (Node u : g_->neighbors(v)) {
    const int c = color_[u];
    if (c > 0 && c <= D && !used[c]) {
      used[c] = 1;
      --k;
    }
  }
  return k;
}

int ColoringState::uncolored_degree(Node v, const std::vector<char>& in) const {
  int d = 0;
  for (Node u : g_->neighbors(v)) d += in[u] && color_[u] == kNoColor;
  return d;
}

Verdict ColoringState::check_partial() const {
  Verdict r;
  for (Node u = 0; u < g_->n(); ++u) {
    if (color_[u] == kNoColor) continue;
    for (Node w : g_->neighbors(u))
      if (u < w && color_[w] == color_[u]) {
        r.ok = false;
        r.reason = "monochromatic edge " + std::to_string(u) + " " + std::to_string(w);
        r.witness = {u, w};
        return r;
      }
  }
  return r;
}

NodeSet ColoringState::uncolored(const NodeSet& s) const {
  NodeSet out;
  for (Node v : s)
    if (color_[v] == kNoColor) out.push_back(v);
  return out;
}

std::vector<char> indicator(int n, const NodeSet& s) {
  std::vector<char> in(n, 0);
  for (Node v : s) in[v] = 1;
  return in;
}

namespace {
enum ColTag : uint8_t { kTrial = 1, kAnnounce, kD1, kPropose, kForward, kAccept, kAcceptFwd, kTry, kConflict, kVerdict };

bool contains(const std::vector<int>& sorted, int c) { return std::binary_search(sorted.begin(), sorted.end(), c); }
void erase_sorted(std::vector<int>& sorted, int c) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), c);
  if (it != sorted.end() && *it == c) sorted.erase(it);
}
}  // namespace

NodeSet slack_generation(Network& net, ColoringState& st, const NodeSet& S, int chi, double activation) {
  const int n = st.graph().n();
  const int cb = net.color_bits();
  NodeSet active = st.uncolored(S);
  std::vector<int> trial(n, 0);
  net.run_round(active, [&](NodeCtx& c) {
    if (!c.rng().bernoulli(activation)) return;
    const int r = 1 + int(c.rng().below(uint64_t(chi)));
    trial[c.id()] = r;
    c.broadcast(cb, kTrial, r);
  });
  std::vector<char> kept(n, 0);
  net.run_round(active, [&](NodeCtx& c) {
    const Node v = c.id();
    const int r = trial[v];
    if (r == 0) return;
    for (auto& m : c.inbox())
      if (m.tag == kTrial && m.a == r) return;
    // Colours of already coloured neighbours are known from earlier announcements.
    for (Node u : c.neighbors())
      if (st.color(u) == r) return;
    kept[v] = 1;
    c.broadcast(cb, kAnnounce, r);
  });
  NodeSet got;
  for (Node v : active)
    if (kept[v]) {
      st.set_color_unchecked(v, trial[v]);
      got.push_back(v);
    }
  return got;
}

void solve_d1lc(Network& net, ColoringState& st, const NodeSet& Hin, const std::vector<std::vector<int>>* lists,
                D1lcStats* stats) {
  const Graph& g = st.graph();
  const int n = g.n();
  NodeSet H;
  std::vector<int> pos;
  for (size_t i = 0; i < Hin.size(); ++i)
    if (!st.colored(Hin[i])) {
      H.push_back(Hin[i]);
      pos.push_back(int(i));
    }
  if (stats) ++stats->invocations;
  if (H.empty()) return;
  std::vector<int> idx(n, -1);
  for (size_t i = 0; i < H.size(); ++i) idx[H[i]] = int(i);
  const auto inH = indicator(n, H);
  std::vector<std::vector<int>> L(H.size());
  for (size_t i = 0; i < H.size(); ++i) {
    const Node v = H[i];
    L[i] = st.palette(v);
    if (lists) {
      std::vector<int> want((*lists)[pos[i]]);
      std::sort(want.begin(), want.end());
      std::vector<int> both;
      std::set_intersection(L[i].begin(), L[i].end(), want.begin(), want.end(), std::back_inserter(both));
      L[i] = std::move(both);
    }
    const int deg = st.uncolored_degree(v, inH);
    if (int(L[i].size()) <= deg)
      throw NotD1LC(v, "list size " + std::to_string(L[i].size()) + " <= uncolored degree " + std::to_string(deg));
  }
  const std::vector<std::vector<int>> L0 = L;

  const int cb = net.color_bits();
  std::vector<int> trying(H.size(), 0);
  NodeSet active = H;
  const long long r0 = net.round();
  const long long cap = 64LL * (ceil_log2(uint64_t(n) + 1) + 8);
  while (!active.empty()) {
    if (net.round() - r0 > cap) throw IterationCapExceeded("d1LC did not finish within the round cap", {});
    net.run_round(active, [&](NodeCtx& c) {
      const int i = idx[c.id()];
      auto& li = L[i];
      bool clash = false;
      for (auto& m : c.inbox()) {
        if (m.tag != kD1) continue;
        if (m.a) {
          erase_sorted(li, m.a);
          clash = clash || m.a == trying[i];
        }
        if (m.b) clash = clash || m.b == trying[i];
      }
      if (trying[i] && !clash) {
        st.set_color_unchecked(c.id(), trying[i]);
        c.broadcast(2 * cb, kD1, trying[i], 0);
        return;
      }
      trying[i] = li.empty() ? 0 : li[c.rng().below(li.size())];
      c.broadcast(2 * cb, kD1, 0, trying[i]);
    });
    NodeSet next;
    for (Node v : active)
      if (!st.colored(v)) next.push_back(v);
    active.swap(next);
  }
  if (stats) stats->rounds += net.round() - r0;

  for (size_t i = 0; i < H.size(); ++i) {
    const Node v = H[i];
    const int c = st.color(v);
    if (!contains(L0[i], c)) throw AssertFailed("d1LC gave node " + std::to_string(v) + " a color outside its list");
    for (Node u : g.neighbors(v))
      if (st.color(u) == c) throw AssertFailed("d1LC output not proper at edge " + std::to_string(v) + " " + std::to_string(u));
  }
}

std::vector<Tone> graytone(const ColoringState& st, const NodeSet& T) {
  const int n = st.graph().n();
  const auto inT = indicator(n, T);
  std::vector<char> gray(n, 0);
  std::vector<Tone> tone(T.size(), Tone::none);
  for (size_t i = 0; i < T.size(); ++i) {
    const Node v = T[i];
    if (st.colored(v)) continue;
    if (st.palette_size(v) > st.uncolored_degree(v, inT)) {
      gray[v] = 1;
      tone[i] = Tone::gray;
    }
  }
  for (size_t i = 0; i < T.size(); ++i) {
    const Node v = T[i];
    if (st.colored(v) || tone[i] == Tone::gray) continue;
    for (Node u : st.graph().neighbors(v))
      if (gray[u]) {
        tone[i] = Tone::grayish;
        break;
      }
  }
  return tone;
}

void graytone_color(Network& net, ColoringState& st, const NodeSet& T, D1lcStats* stats) {
  const auto tone = graytone(st, T);
  NodeSet gray, grayish;
  for (size_t i = 0; i < T.size(); ++i) {
    if (st.colored(T[i])) continue;
    if (tone[i] == Tone::none) throw NotGraytone(T[i]);
    (tone[i] == Tone::gray ? gray : grayish).push_back(T[i]);
  }
  solve_d1lc(net, st, grayish, nullptr, stats);
  solve_d1lc(net, st, gray, nullptr, stats);
}

std::vector<std::vector<int>> pair_adjacency(const Graph& g, const std::vector<PairNode>& pairs) {
  std::vector<int> pair_of(g.n(), -1);
  for (size_t p = 0; p < pairs.size(); ++p) pair_of[pairs[p].a] = pair_of[pairs[p].b] = int(p);
  std::vector<std::vector<int>> adj(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    for (Node e : {pairs[p].a, pairs[p].b})
      for (Node w : g.neighbors(e))
        if (pair_of[w] >= 0 && pair_of[w] != int(p)) adj[p].push_back(pair_of[w]);
    std::sort(adj[p].begin(), adj[p].end());
    adj[p].erase(std::unique(adj[p].begin(), adj[p].end()), adj[p].end());
  }
  return adj;
}

HpInfo build_HP(const ColoringState& st, const std::vector<PairNode>& pairs) {
  HpInfo h;
  h.adj = pair_adjacency(st.graph(), pairs);
  for (auto& a : h.adj) h.max_degree = std::max<int>(h.max_degree, int(a.size()));
  if (h.max_degree > st.delta() / 9.0)
    throw DegreeBoundViolated("H_P max degree " + std::to_string(h.max_degree) + " > Δ/9");
  return h;
}

PairStats color_pairs(Network& net, ColoringState& st, const std::vector<PairNode>& pairs, const PairOptions& opt) {
  PairStats ps;
  if (pairs.empty()) return ps;
  const Graph& g = st.graph();
  const int n = g.n();
  const double D = st.delta();
  const int cb = net.color_bits();
  std::vector<int> pair_of(n, -1);
  for (size_t p = 0; p < pairs.size(); ++p) {
    const auto& q = pairs[p];
    if (st.colored(q.a) || st.colored(q.b)) throw InvariantViolated("pair endpoint already colored");
    if (q.a == q.b || g.adjacent(q.a, q.b)) throw InvariantViolated("pair endpoints must be distinct and non-adjacent");
    if (q.relay < 0 || !g.adjacent(q.relay, q.a) || !g.adjacent(q.relay, q.b))
      throw RelayUnavailable("pair " + std::to_string(q.a) + "," + std::to_string(q.b) + " has no common-neighbor relay");
    if (pair_of[q.a] >= 0 || pair_of[q.b] >= 0) throw InvariantViolated("node in two pairs");
    pair_of[q.a] = pair_of[q.b] = int(p);
  }
  const auto adj = pair_adjacency(g, pairs);
  std::vector<std::vector<int>> L(n);
  for (const auto& q : pairs) {
    L[q.a] = st.palette(q.a);
    L[q.b] = st.palette(q.b);
  }
  auto joint = [&](const PairNode& q) {
    std::vector<int> j;
    std::set_intersection(L[q.a].begin(), L[q.a].end(), L[q.b].begin(), L[q.b].end(), std::back_inserter(j));
    return j;
  };
  for (size_t p = 0; p < pairs.size(); ++p) {
    const int j = int(joint(pairs[p]).size());
    if (j <= int(adj[p].size()))
      throw NotD1LC(pairs[p].a, "pair joint list " + std::to_string(j) + " <= pair degree " + std::to_string(adj[p].size()));
  }

  NodeSet active;
  for (const auto& q : pairs) active.insert(active.end(), {q.a, q.b, q.relay});
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());

  const size_t P = pairs.size();
  std::vector<int> cand(P, 0);
  std::vector<char> accepted(P, 0), verdict(P, 0), done(P, 0);
  ps.min_list = ps.min_joint = int(D) + 1;
  const long long r0 = net.round();
  size_t left = P;
  auto is_endpoint = [&](Node v) { return pair_of[v] >= 0 && !done[pair_of[v]]; };
  auto partner_slot = [&](Node v) -> const PairNode& { return pairs[pair_of[v]]; };

  while (left > 0) {
    if (ps.iterations >= opt.iteration_cap) throw IterationCapExceeded("pair coloring exceeded its iteration cap", {});
    ++ps.iterations;
    for (size_t p = 0; p < P; ++p) {
      if (done[p]) continue;
      const int la = int(L[pairs[p].a].size()), lb = int(L[pairs[p].b].size());
      const int lj = int(joint(pairs[p]).size());
      ps.min_list = std::min({ps.min_list, la, lb});
      ps.min_joint = std::min(ps.min_joint, lj);
      if (opt.alg4_asserts && (la < 4 * D / 5 || lb < 4 * D / 5 || lj < 3 * D / 5))
        throw AssertFailed("pair list bounds violated: |L(a)|=" + std::to_string(la) + " |L(b)|=" + std::to_string(lb) +
                           " |L(a)∩L(b)|=" + std::to_string(lj));
    }
    const int start_left = int(left);
    std::fill(accepted.begin(), accepted.end(), 0);
    std::fill(verdict.begin(), verdict.end(), 0);

    // 1: endpoints prune by announcements; a samples c and sends it to the relay.
    net.run_round(active, [&](NodeCtx& c) {
      const Node v = c.id();
      if (!is_endpoint(v)) return;
      for (auto& m : c.inbox())
        if (m.tag == kAnnounce) erase_sorted(L[v], m.a);
      const auto& q = partner_slot(v);
      if (v != q.a || L[v].empty()) return;
      const int p = pair_of[v];
      cand[p] = L[v][c.rng().below(L[v].size())];
      c.send(q.relay, cb, kPropose, cand[p]);
    });
    // 2: relay forwards c to b.
    net.run_round(active, [&](NodeCtx& c) {
      for (auto& m : c.inbox())
        if (m.tag == kPropose) c.send(pairs[pair_of[m.from]].b, cb, kForward, m.a);
    });
    // 3: b accepts iff c ∈ L(b).
    net.run_round(active, [&](NodeCtx& c) {
      const Node v = c.id();
      for (auto& m : c.inbox())
        if (m.tag == kForward) {
          const int p = pair_of[v];
          accepted[p] = contains(L[v], m.a);
          c.send(pairs[p].relay, 1, kAccept, accepted[p]);
        }
    });
    // 4: relay forwards the answer to a.
    net.run_round(active, [&](NodeCtx& c) {
      for (auto& m : c.inbox())
        if (m.tag == kAccept) c.send(pairs[pair_of[m.from]].a, 1, kAcceptFwd, m.a);
    });
    // 5: both endpoints of accepted pairs broadcast the trial.
    net.run_round(active, [&](NodeCtx& c) {
      const Node v = c.id();
      if (!is_endpoint(v)) return;
      const int p = pair_of[v];
      bool go = accepted[p];
      if (v == pairs[p].a) {
        go = false;
        for (auto& m : c.inbox())
          if (m.tag == kAcceptFwd) go = m.a == 1;
      }
      if (go) c.broadcast(cb, kTry, cand[p]);
    });
    // 6: each endpoint reports whether a neighbour tried the same colour.
    net.run_round(active, [&](NodeCtx& c) {
      const Node v = c.id();
      if (!is_endpoint(v)) return;
      const int p = pair_of[v];
      if (!accepted[p]) return;
      bool clash = false;
      for (auto& m : c.inbox())
        if (m.tag == kTry && m.a == cand[p]) clash = true;
      c.send(pairs[p].relay, 1, kConflict, clash ? 0 : 1);
    });
    // 7: relay combines both bits and sends the verdict.
    net.run_round(active, [&](NodeCtx& c) {
      std::vector<int> seen;
      for (auto& m : c.inbox())
        if (m.tag == kConflict) {
          const int p = pair_of[m.from];
          if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
          seen.push_back(p);
          int good = 0;
          for (auto& m2 : c.inbox())
            if (m2.tag == kConflict && pair_of[m2.from] == p) good += m2.a;
          verdict[p] = good == 2;
          c.send(pairs[p].a, 1, kVerdict, verdict[p]);
          c.send(pairs[p].b, 1, kVerdict, verdict[p]);
        }
    });
    // 8: both endpoints adopt c and announce it.
    net.run_round(active, [&](NodeCtx& c) {
      const Node v = c.id();
      if (!is_endpoint(v)) return;
      const int p = pair_of[v];
      for (auto& m : c.inbox())
        if (m.tag == kVerdict && m.a == 1) {
          st.set_color_unchecked(v, cand[p]);
          c.broadcast(cb, kAnnounce, cand[p]);
        }
    });
    int got = 0;
    for (size_t p = 0; p < P; ++p)
      if (!done[p] && verdict[p]) {
        done[p] = 1;
        ++got;
      }
    left -= size_t(got);
    ps.per_iteration.emplace_back(start_left, got);
  }
  ps.rounds = net.round() - r0;

  for (const auto& q : pairs) {
    const int c = st.color(q.a);
    if (c == kNoColor || st.color(q.b) != c) throw AssertFailed("pair endpoints not colored alike");
    for (Node e : {q.a, q.b})
      for (Node u : g.neighbors(e))
        if (st.color(u) == c) throw AssertFailed("pair coloring not proper at " + std::to_string(e));
  }
  return ps;
}

}  // namespace dcolor
