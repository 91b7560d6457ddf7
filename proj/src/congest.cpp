#include "dcolor/congest.hpp"

#include <algorithm>
#include <exception>

namespace dcolor {

long long NodeCtx::round() const { return net_.round_; }

Rng& NodeCtx::rng() {
  if (!rng_ready_) {
    rng_.reseed(derive_seed(net_.cfg_.seed, uint64_t(v_), uint64_t(net_.round_), 0x5eedULL));
    rng_ready_ = true;
  }
  return rng_;
}

const std::vector<Node>& NodeCtx::neighbors() const { return net_.g_.neighbors(v_); }

void NodeCtx::send(Node to, int bits, uint8_t tag, int32_t a, int32_t b) {
  if (to < 0 || to >= net_.g_.n() || !net_.g_.adjacent(v_, to))
    throw InvariantViolated("node " + std::to_string(v_) + " sent to non-neighbor " + std::to_string(to));
  net_.out_cur_[v_].push_back(Msg{to, uint16_t(bits), tag, a, b});
}

void NodeCtx::broadcast(int bits, uint8_t tag, int32_t a, int32_t b) {
  net_.out_cur_[v_].push_back(Msg{kBroadcast, uint16_t(bits), tag, a, b});
}

Network::Network(const Graph& g, NetConfig cfg) : g_(g), cfg_(cfg) {
  budget_ = std::max(1, int(std::ceil(cfg_.c_B * std::log2(double(std::max(2, g.n()))))));
  report_.budget = budget_;
  const size_t n = size_t(g.n());
  out_cur_.resize(n);
  out_prev_.resize(n);
  is_sender_cur_.assign(n, 0);
  inbox_.resize(n);
  active_mark_.assign(n, 0);
}

void Network::run_round_all(const StepFn& step) {
  NodeSet all(g_.n());
  for (Node v = 0; v < g_.n(); ++v) all[v] = v;
  run_round(all, step);
}

void Network::deliver_pull(const NodeSet& active) {
  // Flatten last round's outboxes; per-sender vectors cost a cache miss per edge.
  const size_t n = size_t(g_.n());
  flat_off_.assign(n + 1, 0);
  flat_.clear();
  for (Node u : senders_prev_) flat_off_[size_t(u) + 1] = int(out_prev_[u].size());
  for (size_t u = 0; u < n; ++u) flat_off_[u + 1] += flat_off_[u];
  flat_.resize(size_t(flat_off_[n]));
  for (Node u : senders_prev_) std::copy(out_prev_[u].begin(), out_prev_[u].end(), flat_.begin() + flat_off_[u]);

  const long long k = (long long)active.size();
#pragma omp parallel for schedule(dynamic, 64) if (cfg_.parallel)
  for (long long i = 0; i < k; ++i) {
    const Node v = active[i];
    auto& in = inbox_[v];
    for (Node u : g_.neighbors(v))
      for (int j = flat_off_[u], e = flat_off_[u + 1]; j < e; ++j) {
        const Msg& m = flat_[size_t(j)];
        if (m.to == kBroadcast || m.to == v) in.push_back(InMsg{u, m.bits, m.tag, m.a, m.b});
      }
  }
}

void Network::deliver_push(const NodeSet&) {
  // senders_prev_ is sorted, so each inbox ends up ordered by sender id.
  for (Node u : senders_prev_)
    for (const Msg& m : out_prev_[u]) {
      if (m.to == kBroadcast) {
        for (Node w : g_.neighbors(u))
          if (active_mark_[w]) inbox_[w].push_back(InMsg{u, m.bits, m.tag, m.a, m.b});
      } else if (active_mark_[m.to]) {
        inbox_[m.to].push_back(InMsg{u, m.bits, m.tag, m.a, m.b});
      }
    }
}

void Network::run_round(const NodeSet& active, const StepFn& step) {
  ++round_;
  ++report_.rounds;
  ++report_.phase_rounds[phase_];

  // Messages from round r-1 become readable; those from r-2 are dropped.
  std::swap(out_cur_, out_prev_);
  std::swap(senders_cur_, senders_prev_);
  for (Node u : senders_cur_) {
    out_cur_[u].clear();
    is_sender_cur_[u] = 0;
  }
  senders_cur_.clear();

  long long pull_edges = 0, push_cost = 0, queued = 0;
  for (Node v : active) {
    active_mark_[v] = 1;
    inbox_[v].clear();
    pull_edges += g_.degree(v);
  }
  for (Node u : senders_prev_) {
    queued += (long long)out_prev_[u].size();
    for (const Msg& m : out_prev_[u]) push_cost += m.to == kBroadcast ? g_.degree(u) : 1;
  }
  // Pull scans every queued message of every neighbour.
  const long long pull_cost =
      senders_prev_.empty() ? 0 : pull_edges * std::max(1LL, queued / (long long)senders_prev_.size());
  if (!senders_prev_.empty()) {
    if (push_cost < pull_cost) deliver_push(active);
    else deliver_pull(active);
  }

  const long long k = (long long)active.size();
  std::vector<std::exception_ptr> errs(static_cast<size_t>(k));
  int max_bits = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(max : max_bits) if (cfg_.parallel)
  for (long long i = 0; i < k; ++i) {
    const Node v = active[i];
    try {
      NodeCtx ctx(*this, v, &inbox_[v]);
      step(ctx);
      auto& out = out_cur_[v];
      if (out.empty()) continue;
      is_sender_cur_[v] = 1;
      int bcast = 0;
      std::vector<std::pair<Node, int>> uni;
      for (const Msg& m : out) {
        if (m.to == kBroadcast) bcast += m.bits;
        else uni.emplace_back(m.to, m.bits);
      }
      int worst = bcast;
      Node worst_to = g_.degree(v) ? g_.neighbors(v)[0] : v;
      std::sort(uni.begin(), uni.end());
      for (size_t j = 0; j < uni.size();) {
        size_t e = j;
        int s = bcast;
        while (e < uni.size() && uni[e].first == uni[j].first) s += uni[e++].second;
        if (s > worst) { worst = s; worst_to = uni[j].first; }
        j = e;
      }
      max_bits = std::max(max_bits, worst);
      if (cfg_.strict && worst > budget_) throw BudgetExceeded(v, worst_to, worst, budget_);
    } catch (...) {
      errs[size_t(i)] = std::current_exception();
    }
  }
  for (Node v : active) active_mark_[v] = 0;
  report_.max_bits = std::max(report_.max_bits, max_bits);
  int& pm = report_.phase_max_bits[phase_];
  pm = std::max(pm, max_bits);
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  for (Node v : active)
    if (is_sender_cur_[v]) senders_cur_.push_back(v);
  std::sort(senders_cur_.begin(), senders_cur_.end());
  senders_cur_.erase(std::unique(senders_cur_.begin(), senders_cur_.end()), senders_cur_.end());

  uint64_t h = hash_combine(report_.trace_digest, uint64_t(round_));
  for (Node u : senders_cur_)
    for (const Msg& m : out_cur_[u]) {
      ++report_.messages;
      h = hash_combine(h, (uint64_t(uint32_t(u)) << 32) | uint32_t(m.to));
      h = hash_combine(h, (uint64_t(m.tag) << 48) ^ (uint64_t(m.bits) << 32) ^ uint32_t(m.a));
      h = hash_combine(h, uint32_t(m.b));
    }
  report_.trace_digest = h;
}

namespace {
enum AggTag : uint8_t { kNear = 1, kItem };
}

AggregateResult clique_aggregate(Network& net, const NodeSet& ac, Node leader, AggOp op,
                                 const std::vector<long long>& values, int value_bits,
                                 const std::vector<std::vector<int>>& sets) {
  const Graph& g = net.graph();
  const long long r0 = net.round();
  const size_t k = ac.size();
  if (op == AggOp::set_union ? sets.size() != k : values.size() != k)
    throw InvariantViolated("clique_aggregate: one input per member required");
  std::vector<int> idx(g.n(), -1);
  for (size_t i = 0; i < k; ++i) idx[ac[i]] = int(i);
  if (idx[leader] < 0) throw InvariantViolated("clique_aggregate: leader outside the AC");

  // Members know their neighbours' ids, so each knows whether it is adjacent
  // to the leader. Near members report directly and tell their AC
  // neighbours they can relay; far members go through the lowest-id relay.
  std::vector<char> near(k, 0);
  bool any_far = false;
  for (size_t i = 0; i < k; ++i) {
    near[i] = ac[i] != leader && g.adjacent(ac[i], leader);
    any_far = any_far || (ac[i] != leader && !near[i]);
  }
  std::vector<Node> relay(k, -1);
  auto announce = [&](NodeCtx& c) {
    if (!any_far) return;
    for (Node u : c.neighbors())
      if (u != leader && idx[u] >= 0) c.send(u, 1, kNear);
  };
  auto pick_relay = [&](NodeCtx& c, int i) {
    for (auto& m : c.inbox())
      if (m.tag == kNear) { relay[i] = m.from; break; }
    if (relay[i] < 0) throw RelayUnavailable("node " + std::to_string(c.id()) + " has no relay to the leader");
  };
  const int per_round = std::max(1, net.budget() / std::max(1, value_bits));
  AggregateResult res;

  if (op != AggOp::set_union) {
    auto combine = [&](long long x, long long y) { return op == AggOp::min ? std::min(x, y) : x + y; };
    auto decode = [](const InMsg& m) { return (long long)(uint32_t(m.a)) | ((long long)m.b << 32); };
    std::vector<long long> acc(values);
    long long out = values[idx[leader]];
    net.run_round(ac, [&](NodeCtx& c) {
      const int i = idx[c.id()];
      if (!near[i]) return;
      c.send(leader, value_bits, kItem, int32_t(values[i]), int32_t(values[i] >> 32));
      announce(c);
    });
    if (any_far) {
      net.run_round(ac, [&](NodeCtx& c) {
        const int i = idx[c.id()];
        if (c.id() == leader) {
          for (auto& m : c.inbox())
            if (m.tag == kItem) out = combine(out, decode(m));
          return;
        }
        if (near[i]) return;
        pick_relay(c, i);
        c.send(relay[i], value_bits, kItem, int32_t(values[i]), int32_t(values[i] >> 32));
      });
      net.run_round(ac, [&](NodeCtx& c) {
        const int i = idx[c.id()];
        if (!near[i]) return;
        bool got = false;
        acc[i] = 0;
        for (auto& m : c.inbox())
          if (m.tag == kItem) {
            acc[i] = got ? combine(acc[i], decode(m)) : decode(m);
            got = true;
          }
        if (got) c.send(leader, value_bits, kItem, int32_t(acc[i]), int32_t(acc[i] >> 32));
      });
    }
    net.run_round({leader}, [&](NodeCtx& c) {
      for (auto& m : c.inbox())
        if (m.tag == kItem) out = combine(out, decode(m));
    });
    res.value = out;
    res.rounds = net.round() - r0;
    return res;
  }

  // Union: stream items, per_round per edge, far -> relay -> leader.
  std::vector<std::vector<int>> pending(k);
  std::vector<std::vector<int>> seen(k);
  for (size_t i = 0; i < k; ++i) {
    pending[i] = sets[i];
    std::sort(pending[i].begin(), pending[i].end());
    pending[i].erase(std::unique(pending[i].begin(), pending[i].end()), pending[i].end());
    seen[i] = pending[i];
  }
  std::vector<int> got = pending[idx[leader]];
  pending[idx[leader]].clear();
  std::vector<char> sent(k, 0);
  auto flush = [&](NodeCtx& c, int i, Node to) {
    for (int t = 0; t < per_round && !pending[i].empty(); ++t) {
      c.send(to, value_bits, kItem, pending[i].back());
      pending[i].pop_back();
      sent[i] = 1;
    }
  };
  net.run_round(ac, [&](NodeCtx& c) {
    const int i = idx[c.id()];
    if (!near[i]) return;
    flush(c, i, leader);
    announce(c);
  });
  bool first = true;
  while (true) {
    std::fill(sent.begin(), sent.end(), 0);
    net.run_round(ac, [&](NodeCtx& c) {
      const int i = idx[c.id()];
      for (auto& m : c.inbox()) {
        if (m.tag != kItem) continue;
        if (c.id() == leader) got.push_back(m.a);
        else if (!std::binary_search(seen[i].begin(), seen[i].end(), m.a)) {
          seen[i].insert(std::lower_bound(seen[i].begin(), seen[i].end(), m.a), m.a);
          pending[i].push_back(m.a);
        }
      }
      if (c.id() == leader || pending[i].empty()) return;
      if (!near[i] && relay[i] < 0) {
        if (!first) throw RelayUnavailable("node " + std::to_string(c.id()) + " has no relay to the leader");
        pick_relay(c, i);
      }
      flush(c, i, near[i] ? leader : relay[i]);
    });
    first = false;
    // Nothing in flight means the leader has read everything.
    if (std::find(sent.begin(), sent.end(), 1) == sent.end()) break;
  }
  std::sort(got.begin(), got.end());
  got.erase(std::unique(got.begin(), got.end()), got.end());
  res.set = std::move(got);
  res.rounds = net.round() - r0;
  return res;
}

}  // namespace dcolor
