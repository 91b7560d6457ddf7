#pragma once

#include <string>
#include <vector>

#include "dcolor/congest.hpp"

namespace dcolor {

class ColoringState {
 public:
  ColoringState() = default;
  explicit ColoringState(const Graph& g) : g_(&g), color_(g.n(), kNoColor), stalled_(g.n(), 0) {}

  const Graph& graph() const { return *g_; }
  int delta() const { return g_->max_degree(); }
  int color(Node v) const { return color_[v]; }
  const std::vector<int>& colors() const { return color_; }
  bool colored(Node v) const { return color_[v] != kNoColor; }
  // Throws InvariantViolated if c clashes with a coloured neighbour.
  void set_color(Node v, int c);
  void set_color_unchecked(Node v, int c) { color_[v] = c; }
  void set_stalled(Node v, bool s) { stalled_[v] = s; }
  bool stalled(Node v) const { return stalled_[v]; }

  // Ψ(v): colours of [Δ] not used by coloured neighbours, ascending.
  std::vector<int> palette(Node v) const;
  int palette_size(Node v) const;
  // Uncoloured neighbours of v inside `in` (indicator over V).
  int uncolored_degree(Node v, const std::vector<char>& in) const;
  // |Ψ(v)| − uncoloured neighbours in `in`.
  int slack(Node v, const std::vector<char>& in) const { return palette_size(v) - uncolored_degree(v, in); }
  // Proper on the coloured part; reports the first clash.
  Verdict check_partial() const;
  NodeSet uncolored(const NodeSet& s) const;

 private:
  const Graph* g_ = nullptr;
  std::vector<int> color_;
  std::vector<char> stalled_;
};

std::vector<char> indicator(int n, const NodeSet& s);

// One trial per active node of S: active with probability `activation`,
// tries a uniform colour of [χ], keeps it iff no neighbour tried it and no
// coloured neighbour holds it. Returns the nodes that got coloured.
NodeSet slack_generation(Network& net, ColoringState& st, const NodeSet& S, int chi, double activation);

struct D1lcStats {
  long long rounds = 0;
  long long invocations = 0;
};

// Colour every node of H from its list (default Ψ(v); lists[i] belongs to
// H[i] and is intersected with Ψ). Asserts
// |L(v) ∩ Ψ(v)| > uncoloured degree in H (NotD1LC), re-verifies the result.
void solve_d1lc(Network& net, ColoringState& st, const NodeSet& H, const std::vector<std::vector<int>>* lists = nullptr,
                D1lcStats* stats = nullptr);

enum class Tone : uint8_t { none, gray, grayish };
// Tone of each node of T under the current state (indexed like T).
std::vector<Tone> graytone(const ColoringState& st, const NodeSet& T);
// Grayish nodes first, then gray ones. Throws NotGraytone(v).
void graytone_color(Network& net, ColoringState& st, const NodeSet& T, D1lcStats* stats = nullptr);

struct PairNode {
  Node a = -1, b = -1;  // non-adjacent endpoints, coloured alike
  Node relay = -1;      // common neighbour carrying the coordination
};

struct PairOptions {
  bool alg4_asserts = false;  // list-size bounds for H_P pairs
  int iteration_cap = 400;
};

struct PairStats {
  long long iterations = 0;
  long long rounds = 0;
  std::vector<std::pair<int, int>> per_iteration;  // (uncoloured pairs at start, pairs coloured)
  int min_list = 0, min_joint = 0;                 // smallest |L(a)|,|L(b)| and |L(a)∩L(b)| seen
};

// Pair adjacency: any G-edge between endpoints.
std::vector<std::vector<int>> pair_adjacency(const Graph& g, const std::vector<PairNode>& pairs);
// Asserts the d1LC property of the pair instance (NotD1LC) and colours
// all pairs by relayed colour trials.
PairStats color_pairs(Network& net, ColoringState& st, const std::vector<PairNode>& pairs, const PairOptions& opt);

struct HpInfo {
  std::vector<std::vector<int>> adj;
  int max_degree = 0;
};
// Builds H_P for the triples' (x, z) pairs; asserts Δ_{H_P} ≤ Δ/9.
HpInfo build_HP(const ColoringState& st, const std::vector<PairNode>& pairs);

}  // namespace dcolor
