#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dcolor/coloring.hpp"

namespace dcolor {

using Assignment = std::vector<uint8_t>;

struct LllVar {
  Node home = -1;
  double p = 0.5;  // Pr(value = 1)
};

struct LllEvent {
  Node home = -1;
  std::vector<int> vars;
  // Optional split of vars into disjoint halves; the solver resamples one
  // half at a time, alternating.
  std::vector<std::vector<int>> halves;
  std::function<bool(const Assignment&)> bad;
  std::string kind;
};

struct LllInstance {
  std::vector<LllVar> vars;
  std::vector<LllEvent> events;
  int locality = 1;
  std::vector<int> degenerate;  // builder-specific ids of inputs that could not be encoded
};

int dependency_degree(const LllInstance& inst);
std::vector<int> violated_events(const LllInstance& inst, const Assignment& a);

struct LllResult {
  Assignment value;
  long long resamples = 0;
  long long iterations = 0;
};

// Parallel Moser-Tardos: each iteration resamples a greedy independent set
// of violated events. Output re-verified; throws IterationCapExceeded.
LllResult solve_resampling(const LllInstance& inst, uint64_t seed, long long cap = 20000,
                           std::vector<std::string>* trace = nullptr);

// Slack-set instance over U (one membership variable per node of U).
// Events: E_v |S∩N(v)| ≥ 4μ; E_C |S∩V(M_C)| ≥ 4μ; E'_v (v ∈ W) fewer than
// αμ²/2 non-edges in G[S∩N(v)].
LllInstance build_slack_set_lll(const Graph& g, const NodeSet& U, const NodeSet& W,
                                const std::vector<NodeSet>& matching_nodes, double p, double mu, double alpha);
// Nodes of U selected by the assignment of a slack-set instance.
NodeSet selected(const NodeSet& U, const Assignment& a);

// Same-coloured neighbour pairs for W from trials on S₁ (palette [1..χ]) and
// S₂ ([χ+1..2χ]). Retries up to `retries` times, else SlackFailed.
struct TwoSetStats {
  int attempts = 0;
  int trial_rounds = 0;
  int max_colored_nbrs = 0;
};
TwoSetStats two_set_slack_color(Network& net, ColoringState& st, const NodeSet& S1, const NodeSet& S2, const NodeSet& W,
                                int chi, double colored_nbr_cap, int retries = 20, int trial_rounds = 20);
// W-node satisfied: coloured, or two neighbours share a colour.
bool has_same_colored_pair(const ColoringState& st, Node v);

// Arc of a matching M_C: head in C, tail outside.
struct Arc {
  int ac;
  Node head, tail;
};

// L1: each node of X joins Z w.p. q. Events |Z∩N(v)| > 3qΔ and (per AC)
// fewer than x useful arcs. ACs with fewer than x candidate arcs are listed
// in `degenerate` and get no event.
LllInstance build_L1(const Graph& g, const NodeSet& X, const std::vector<std::vector<Arc>>& arcs, double q, double x);
// L2: a fair coin per node of Z. Events: fewer than x/3 useful arcs into
// either half.
LllInstance build_L2(const NodeSet& X, const NodeSet& Z, const std::vector<std::vector<Arc>>& arcs, double x,
                     int n);
// Useful arcs of each AC given X and Z.
std::vector<std::vector<Arc>> useful_arcs(const std::vector<std::vector<Arc>>& arcs, const std::vector<char>& inX,
                                          const std::vector<char>& inZ);
// L3: one activation variable per useful arc (probability p3). An arc
// succeeds if activated and no other AC activated an arc into its tail.
// E_C: no successful arc into Z₁ and none into Z₂.
struct L3Layout {
  std::vector<Arc> arcs;               // variable i <-> arcs[i]
  std::vector<std::vector<int>> by_ac;
};
LllInstance build_L3(const std::vector<std::vector<Arc>>& useful1, const std::vector<std::vector<Arc>>& useful2,
                     double p3, L3Layout& layout);
// Successful arcs per AC under an L3 assignment.
std::vector<std::vector<Arc>> successful_arcs(const L3Layout& layout, const Assignment& a);

// Chernoff upper tail Pr(X ≥ (1+δ)μ) ≤ exp(-δ²μ/(2+δ)).
double chernoff_upper(double mu, double delta);
// Lower tail Pr(X ≤ (1-δ)μ) ≤ exp(-δ²μ/2).
double chernoff_lower(double mu, double delta);

}  // namespace dcolor
