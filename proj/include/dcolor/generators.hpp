#pragma once

#include <string>
#include <vector>

#include "dcolor/graph.hpp"

namespace dcolor {

enum class GenKind { random_regular, planted_acd, nice_clique, difficult_chain, ordinary_lattice, reject_case };

GenKind parse_gen_kind(const std::string& s);  // throws IllegalSpec
std::string to_string(GenKind k);

struct GeneratorSpec {
  GenKind kind = GenKind::random_regular;
  int delta = 0;
  int n = 0;               // random_regular, planted_acd (total nodes); derived for the structured kinds
  double eps = 1.0 / 12;   // promise parameter for the AC-bearing kinds
  int num_acs = 0;         // planted_acd, ordinary_lattice
  int layers = 3;          // difficult_chain: difficult layers = layers-1, then one nice layer
  int ext_degree = 1;      // ordinary_lattice: e_C
  std::string reject_what = "clique";  // reject_case: "clique" (K_{Δ+1}) or "odd_cycle"
  uint64_t seed = 1;
};

// Ground truth that the structured generators know about their output.
struct Instance {
  Graph graph;
  std::vector<int> planted_part;   // AC index per node, -1 for sparse; empty if not applicable
  std::vector<int> planted_ext;    // e_C per planted AC (difficult_chain / ordinary_lattice)
  std::vector<Node> planted_special;  // expected special node per planted AC, -1 if none
  int seed_used = 0;               // retry offset that produced a valid instance
};

Instance generate_instance(const GeneratorSpec& spec);
inline Graph generate(const GeneratorSpec& spec) { return generate_instance(spec).graph; }

}  // namespace dcolor
