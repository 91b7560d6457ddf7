#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dcolor/classify.hpp"
#include "dcolor/coloring.hpp"
#include "dcolor/lll.hpp"

namespace dcolor {

struct RunConfig {
  double eps = 1.0 / 172;
  double zeta = 1.0 / 64;
  double activation = 0.25;   // slack generation activation probability
  double c_p = 2.0;           // c in p = c log^4 log n log Δ / Δ
  double p_cap = 0.5;
  double q_sample = 1.0 / 30;
  double t_high_factor = 48;  // t_high = factor * log2 n
  int t_low = 4;
  int retry_cap = 20;
  int lll_cap = 20000;
  uint64_t seed = 1;
  bool strict = true;
  bool parallel = true;
  double c_B = 4.0;
  // When a step exhausts its retries: colour with the Brooks fallback and
  // flag it (true), or rethrow (false).
  bool fallback_on_escalation = true;
};

struct Triple {
  Node x = -1, y = -1, z = -1;
  int ac = -1;
};

struct RunReport {
  // Independent verdicts.
  bool proper = false;
  bool colors_in_range = false;
  bool all_colored = false;
  bool asserts_passed = true;
  std::string failure;  // error kind and message if a run aborted

  std::string path;  // alg2, alg5, brooks
  bool acd_skipped = false;
  bool fallback = false;   // Brooks oracle produced (part of) the output
  bool escalated = false;  // a retry cap was hit
  std::vector<std::string> escalations;
  std::map<std::string, int> retries;

  int n = 0, delta = 0;
  double t_high = 0, q = 0;
  int num_acs = 0;
  std::map<std::string, int> ac_types;
  std::map<std::string, int> partition_sizes;
  int acd_violations = 0;
  std::vector<int> levels_used;
  int level_checks = 0;

  std::vector<int> matching_sizes;  // per ordinary AC
  int min_matching = -1;

  // Alg-2
  int slack_colored = 0;
  int sparse_without_slack = 0;
  int ordinary_without_toehold = 0;

  // Alg-5
  double p = 0, mu = 0, alpha = 0, p3 = 0, x_threshold = 0, x_eff = 0;
  int step1_W = 0, step1_S1 = 0, step1_S2 = 0, step1_degenerate = 0, step1_max_colored_nbrs = 0;
  int step1_colored = 0;
  int important = 0, unimportant = 0, small_ordinary = 0;
  int z_size = 0, z1_size = 0, z2_size = 0, max_z_degree = 0;
  int triples = 0, min_xc_candidates = -1;
  int hp_max_degree = 0;
  long long lll_resamples = 0;
  std::vector<std::pair<int, int>> pair_iterations;  // H_P pairs: (uncoloured at start, coloured)
  int pair_min_list = -1, pair_min_joint = -1;

  // Phases 3-5
  int hollow_pairs = 0, hollow_min_common = -1;
  int type1_pairs = 0, type1_max_conflicts = -1, type2_pairs = 0, type2_min_candidates = -1;

  long long d1lc_invocations = 0, d1lc_rounds = 0;
  BandwidthReport bandwidth;
  uint64_t seed = 0;
  RunConfig config;
};

struct RunResult {
  std::vector<int> colors;
  RunReport report;
  AcDecomposition acd;
  std::vector<AcInfo> infos;
  NodePartition partition;
  std::vector<Triple> triples;
};

// Full pipeline. Throws IllegalSpec if g is not Δ-colourable; structural
// assertion failures propagate. Probabilistic failures are retried up to
// cfg.retry_cap and then escalate.
RunResult run(const Graph& g, const RunConfig& cfg);

// Lowest-id x ∈ C: uncoloured, adjacent to y, not adjacent to z, and not the
// z-node of another triple. Throws NoCandidate. `candidates` receives the
// number of qualifying nodes.
Node select_triple_xc(const ColoringState& st, const NodeSet& C, Node y, Node z, const std::vector<char>& other_z,
                      int* candidates = nullptr);

// Deterministic JSON report.
std::string report_json(const RunReport& r);

}  // namespace dcolor
