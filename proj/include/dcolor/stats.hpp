#pragma once

#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

// One slack-generation trial (χ = Δ) on all nodes of g. `part` gives the AC
// index per node (-1 = sparse); ACs listed in `ordinary_acs` are checked for
// an uncoloured node with unit slack inside their own class.
struct SlackSample {
  int sparse_nodes = 0;
  int sparse_without_slack = 0;  // uncoloured sparse nodes with slack < 1 in G[sparse]
  int acs_checked = 0;
  int acs_without_toehold = 0;
};
SlackSample slack_sample(const Graph& g, const std::vector<int>& part, const std::vector<int>& ordinary_acs,
                         uint64_t seed, double activation);

// Monte Carlo estimate of Pr(E_C) for the activation instance of one AC with
// m = ⌈Δ/60⌉ useful arcs, p3 = min(q_fn(n)/Δ, 1/2), and one competing arc
// from another AC on every tail. Built with the production L3 builder.
struct L3Estimate {
  double q = 0, p3 = 0;
  int arcs = 0;
  long long trials = 0, bad = 0;
  double prob() const { return trials ? double(bad) / double(trials) : 0; }
};
L3Estimate l3_single_ac(int delta, int n, long long trials, uint64_t seed);

// Monte Carlo estimate of Pr(E'_v) for the slack-set instance restricted to
// N(v) ∩ U, with the given p, μ, α.
struct EventEstimate {
  long long trials = 0, bad = 0;
  double bound = 0;
  double prob() const { return trials ? double(bad) / double(trials) : 0; }
};
EventEstimate slack_event_probability(const Graph& g, Node v, double p, double mu, double alpha, long long trials,
                                      uint64_t seed);

// Non-edge hitting: sample each node of g w.p. p; f = non-edges with both
// ends sampled. Estimates Pr(f ≤ p² m̄ / 2) and reports the bound
// exp(-p m̄ / (5|X|)).
EventEstimate non_edge_hitting(const Graph& g, double p, long long trials, uint64_t seed);

// Erdős–Rényi G(n, d) (edge probability d), seeded.
Graph random_gnp(int n, double d, uint64_t seed);

}  // namespace dcolor
