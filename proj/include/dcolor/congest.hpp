#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

constexpr Node kBroadcast = -1;

struct Msg {
  Node to = kBroadcast;
  uint16_t bits = 0;
  uint8_t tag = 0;
  int32_t a = 0, b = 0;
};

struct InMsg {
  Node from;
  uint16_t bits;
  uint8_t tag;
  int32_t a, b;
};

struct NetConfig {
  double c_B = 4.0;      // bit_budget_constant
  bool strict = true;    // strict_budget
  uint64_t seed = 1;
  bool parallel = true;  // OpenMP node steps; false = serial reference
};

struct BandwidthReport {
  int budget = 0;
  int max_bits = 0;
  long long rounds = 0;
  long long messages = 0;
  std::map<std::string, long long> phase_rounds;
  std::map<std::string, int> phase_max_bits;
  uint64_t trace_digest = 0;
};

class Network;

// Handle passed to a node's step function. A handler may only touch its own
// node's state; everything else arrives through inbox().
class NodeCtx {
 public:
  Node id() const { return v_; }
  long long round() const;
  Rng& rng();
  const std::vector<Node>& neighbors() const;
  const std::vector<InMsg>& inbox() const { return *inbox_; }
  void send(Node to, int bits, uint8_t tag, int32_t a = 0, int32_t b = 0);
  void broadcast(int bits, uint8_t tag, int32_t a = 0, int32_t b = 0);

 private:
  friend class Network;
  NodeCtx(Network& net, Node v, const std::vector<InMsg>* in) : net_(net), v_(v), inbox_(in) {}
  Network& net_;
  Node v_;
  const std::vector<InMsg>* inbox_;
  Rng rng_;
  bool rng_ready_ = false;
};

using StepFn = std::function<void(NodeCtx&)>;

class Network {
 public:
  Network(const Graph& g, NetConfig cfg);

  const Graph& graph() const { return g_; }
  const NetConfig& config() const { return cfg_; }
  int budget() const { return budget_; }
  long long round() const { return round_; }
  // Message field widths.
  int color_bits() const { return ceil_log2(uint64_t(g_.max_degree()) + 2); }
  int id_bits() const { return std::max(1, ceil_log2(uint64_t(g_.n()))); }
  int count_bits() const { return ceil_log2(uint64_t(g_.max_degree()) + 1); }

  void set_phase(const std::string& p) { phase_ = p; }
  const std::string& phase() const { return phase_; }
  void set_parallel(bool p) { cfg_.parallel = p; }

  // One synchronous round: every node in `active` runs `step` against the
  // messages sent to it in the previous round. Messages sent now become
  // visible in the next round only.
  void run_round(const NodeSet& active, const StepFn& step);
  void run_round_all(const StepFn& step);

  BandwidthReport audit() const { return report_; }
  // Stream deriving randomness for non-round computations (solvers).
  uint64_t stream_seed(uint64_t salt) const { return derive_seed(cfg_.seed, 0xC0FFEEULL, salt, uint64_t(round_)); }

 private:
  friend class NodeCtx;
  void deliver_pull(const NodeSet& active);
  void deliver_push(const NodeSet& active);

  const Graph& g_;
  NetConfig cfg_;
  int budget_;
  long long round_ = 0;
  std::string phase_ = "init";
  BandwidthReport report_;
  std::vector<std::vector<Msg>> out_cur_, out_prev_;
  std::vector<Node> senders_cur_, senders_prev_;
  std::vector<char> is_sender_cur_;
  std::vector<std::vector<InMsg>> inbox_;
  std::vector<char> active_mark_;
  std::vector<Msg> flat_;
  std::vector<int> flat_off_;
};

enum class AggOp { min, sum, set_union };

struct AggregateResult {
  long long value = 0;
  std::vector<int> set;
  long long rounds = 0;
};

// Aggregates one value (or one set, for set_union) per member of `ac` at
// `leader`, relaying through members adjacent to the leader. values[i]
// belongs to ac[i]; for set_union use `sets`.
AggregateResult clique_aggregate(Network& net, const NodeSet& ac, Node leader, AggOp op,
                                 const std::vector<long long>& values, int value_bits,
                                 const std::vector<std::vector<int>>& sets = {});

}  // namespace dcolor
