#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcolor/congest.hpp"

namespace dcolor {

struct AcDecomposition {
  double eps = 1.0 / 172;
  NodeSet sparse;
  std::vector<NodeSet> cliques;  // each sorted
  std::vector<int> part;         // AC index per node, -1 = sparse
};

struct WeakDecomposition {
  NodeSet sparse;              // V'
  std::vector<NodeSet> parts;  // D_1..D_k
};

struct AcdConfig {
  double eps = 1.0 / 172;
  double zeta = 1.0 / 64;  // sparsity constant for validation
  int sample_factor = 4;   // sample size = sample_factor * ceil(log2 n)
  int retries = 8;
};

// Builds the decomposition from a per-node part vector (-1 = sparse).
AcDecomposition make_acd(const std::vector<int>& part, double eps);
// Every node sparse; used when εΔ/4 < 1.
AcDecomposition all_sparse_acd(const Graph& g, double eps);

// Similarity-sampling weak decomposition; one attempt, no validation.
WeakDecomposition compute_weak_decomposition(Network& net, double eps, const AcdConfig& cfg);
// Attaches V' nodes with ≥ (1-ε)Δ neighbors in some D_i. Throws
// InvariantViolated if the result breaks a clause or |C_i \ D_i| > εΔ/2.
AcDecomposition augment_decomposition(Network& net, const WeakDecomposition& weak, double eps, double zeta);
// Empty iff every invariant holds; each entry names the node/AC and clause.
std::vector<std::string> validate_acd(const Graph& g, const AcDecomposition& acd, double zeta);
// Weak step + augmentation + validation with reseeded retries. Throws
// DecompositionFailed after cfg.retries attempts, IllegalSpec if εΔ/4 < 1.
AcDecomposition compute_acd(Network& net, const AcdConfig& cfg);

void dump_acd(std::ostream& out, const AcDecomposition& acd);

}  // namespace dcolor
