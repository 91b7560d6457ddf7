#pragma once

#include <climits>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dcolor/acd.hpp"

namespace dcolor {

enum class AcType { easy, difficult, nice, ordinary };
enum class Subtype { none, small, large_important, large_unimportant };
constexpr int kLevelInf = INT_MAX;

std::string to_string(AcType t);
std::string to_string(Subtype s);

struct AcInfo {
  int e = 0;  // Δ - |C| + 1
  AcType type = AcType::ordinary;
  Node special = -1;
  int level = kLevelInf;             // difficult ACs only
  std::vector<Edge> matching;        // (head in C, tail outside)
  Subtype subtype = Subtype::none;   // ordinary ACs only
  bool nice_like() const { return type == AcType::easy || type == AcType::nice; }
};

enum class NodeClass : uint8_t { S, D, N, O, V_star };

struct NodePartition {
  NodeSet S, N, O, V_star;
  std::map<int, NodeSet> D;      // level -> nodes; kLevelInf for ∞
  std::vector<NodeClass> cls;    // per node
  std::vector<int> level;        // per node in D, else kLevelInf
};

// Types and special nodes (lowest-id intrusive neighbour). Pure.
std::vector<AcInfo> classify_acs(const Graph& g, const AcDecomposition& acd);
// Recomputes |C| and easiness at each AC leader via clique_aggregate and
// throws InvariantViolated if it disagrees with `infos`.
void aggregate_check(Network& net, const AcDecomposition& acd, const std::vector<AcInfo>& infos);
// Fills levels and returns the node partition. Throws LevelOrderViolated.
NodePartition assign_levels(const Graph& g, const AcDecomposition& acd, std::vector<AcInfo>& infos);

// Randomized maximal matching between C and N(C)\C by proposal rounds, for
// all listed ACs at once. Throws MatchingTooSmall if some |M_C| < Δ/10
// after `retries` attempts.
void compute_matchings(Network& net, const AcDecomposition& acd, std::vector<AcInfo>& infos,
                       const std::vector<int>& which, int retries = 5);
// Exact maximum matching size between C and N(C)\C (oracle).
int max_boundary_matching(const Graph& g, const NodeSet& c, const std::vector<int>& part, int idx);

// q_fn = 10 log³ log n.
double q_fn(int n);
void classify_ordinary(const Graph& g, const AcDecomposition& acd, std::vector<AcInfo>& infos, double q);
// Nodes of small ordinary ACs with fewer than Δ²/(2q) neighbourhood non-edges.
NodeSet small_ordinary_sparsity_violations(const Graph& g, const AcDecomposition& acd,
                                           const std::vector<AcInfo>& infos, double q);

void dump_classification(std::ostream& out, const AcDecomposition& acd, const std::vector<AcInfo>& infos);

}  // namespace dcolor
