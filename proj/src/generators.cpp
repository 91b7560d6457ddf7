#include "dcolor/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace dcolor {

GenKind parse_gen_kind(const std::string& s) {
  if (s == "random_regular") return GenKind::random_regular;
  if (s == "planted_acd") return GenKind::planted_acd;
  if (s == "nice_clique") return GenKind::nice_clique;
  if (s == "difficult_chain") return GenKind::difficult_chain;
  if (s == "ordinary_lattice") return GenKind::ordinary_lattice;
  if (s == "reject_case") return GenKind::reject_case;
  throw IllegalSpec("unknown generator kind '" + s + "'");
}

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::random_regular: return "random_regular";
    case GenKind::planted_acd: return "planted_acd";
    case GenKind::nice_clique: return "nice_clique";
    case GenKind::difficult_chain: return "difficult_chain";
    case GenKind::ordinary_lattice: return "ordinary_lattice";
    case GenKind::reject_case: return "reject_case";
  }
  return "?";
}

namespace {

constexpr int kRetrySeeds = 100;

uint64_t key(Node a, Node b) {
  if (a > b) std::swap(a, b);
  return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

// Random pairing of stubs with switch repair. `allowed` rejects pairs that
// must not become edges; existing edges are passed in `taken`. With exact,
// returns false unless every stub is used.
bool pair_stubs(std::vector<Node> stubs, const std::function<bool(Node, Node)>& allowed,
                std::unordered_set<uint64_t>& taken, Rng& rng, bool exact, std::vector<Edge>& out) {
  if (stubs.size() % 2) {
    if (exact) return false;
    stubs.pop_back();
  }
  rng.shuffle(stubs);
  std::vector<Edge> e;
  for (size_t i = 0; i + 1 < stubs.size(); i += 2) e.emplace_back(stubs[i], stubs[i + 1]);
  std::unordered_map<uint64_t, int> cnt;
  for (auto [a, b] : e) ++cnt[key(a, b)];
  auto bad = [&](size_t i) {
    auto [a, b] = e[i];
    return a == b || !allowed(a, b) || taken.count(key(a, b)) || cnt[key(a, b)] > 1;
  };
  auto ok_new = [&](Node a, Node b) { return a != b && allowed(a, b) && !taken.count(key(a, b)) && !cnt.count(key(a, b)); };
  auto drop = [&](Node a, Node b) {
    auto it = cnt.find(key(a, b));
    if (--it->second == 0) cnt.erase(it);
  };
  for (int pass = 0; pass < 200; ++pass) {
    std::vector<size_t> bads;
    for (size_t i = 0; i < e.size(); ++i)
      if (bad(i)) bads.push_back(i);
    if (bads.empty()) break;
    for (size_t i : bads) {
      if (!bad(i)) continue;
      for (int attempt = 0; attempt < 50; ++attempt) {
        size_t j = rng.below(e.size());
        if (j == i) continue;
        auto [a, b] = e[i];
        auto [c, d] = e[j];
        if (rng.below(2)) std::swap(c, d);
        drop(a, b);
        drop(c, d);
        if (ok_new(a, c) && ok_new(b, d) && key(a, c) != key(b, d)) {
          e[i] = {a, c};
          e[j] = {b, d};
          ++cnt[key(a, c)];
          ++cnt[key(b, d)];
          break;
        }
        ++cnt[key(a, b)];
        ++cnt[key(c, d)];
      }
    }
  }
  std::unordered_set<uint64_t> seen;
  for (auto [a, b] : e) {
    bool good = a != b && allowed(a, b) && !taken.count(key(a, b)) && !seen.count(key(a, b));
    if (!good) {
      if (exact) return false;
      continue;
    }
    seen.insert(key(a, b));
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (auto k : seen) taken.insert(k);
  return true;
}

Instance random_regular(const GeneratorSpec& s, Rng& rng) {
  const int D = s.delta, n = s.n;
  if (D < 1 || n <= D) throw IllegalSpec("random_regular needs 1 <= Δ < n");
  if ((long long)n * D % 2) throw IllegalSpec("random_regular needs nΔ even");
  std::vector<Node> stubs;
  stubs.reserve(size_t(n) * D);
  for (Node v = 0; v < n; ++v)
    for (int k = 0; k < D; ++k) stubs.push_back(v);
  std::unordered_set<uint64_t> taken;
  std::vector<Edge> edges;
  if (!pair_stubs(stubs, [](Node, Node) { return true; }, taken, rng, true, edges)) return {};
  Instance inst;
  inst.graph = Graph::from_edges(n, edges);
  return inst;
}

Instance nice_clique(const GeneratorSpec& s) {
  const int D = s.delta;
  if (D < 3) throw IllegalSpec("nice_clique needs Δ >= 3");
  std::vector<Edge> edges;
  for (Node u = 0; u <= D; ++u)
    for (Node v = u + 1; v <= D; ++v)
      if (!(u == 0 && v == 1)) edges.emplace_back(u, v);
  Instance inst;
  inst.graph = Graph::from_edges(D + 1, edges);
  inst.planted_part.assign(D + 1, 0);
  inst.planted_ext = {1};
  inst.planted_special = {-1};
  return inst;
}

Instance reject_case(const GeneratorSpec& s) {
  std::vector<Edge> edges;
  int n;
  if (s.reject_what == "odd_cycle") {
    n = s.n > 0 ? s.n : 5;
    if (n < 3 || n % 2 == 0) throw IllegalSpec("odd_cycle needs odd n >= 3");
    for (Node v = 0; v < n; ++v) edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  } else if (s.reject_what == "clique") {
    if (s.delta < 1) throw IllegalSpec("clique needs Δ >= 1");
    n = s.delta + 1;
    for (Node u = 0; u < n; ++u)
      for (Node v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  } else {
    throw IllegalSpec("reject_case supports 'clique' or 'odd_cycle'");
  }
  Instance inst;
  inst.graph = Graph::from_edges(n, edges);
  return inst;
}

void add_clique(std::vector<Edge>& edges, std::unordered_set<uint64_t>& taken, Node first, int size) {
  for (Node u = first; u < first + size; ++u)
    for (Node v = u + 1; v < first + size; ++v) {
      edges.emplace_back(u, v);
      taken.insert(key(u, v));
    }
}

void remove_edge(std::vector<Edge>& edges, std::unordered_set<uint64_t>& taken, Node a, Node b) {
  Edge e{std::min(a, b), std::max(a, b)};
  auto it = std::find(edges.begin(), edges.end(), e);
  if (it != edges.end()) {
    *it = edges.back();
    edges.pop_back();
  }
  taken.erase(key(a, b));
}

void check_ac_size(int D, double eps, int size, const std::string& what) {
  if (size < (1.0 - eps / 4) * D - 1e-9 || size > (1.0 + eps) * D + 1e-9)
    throw IllegalSpec(what + " of size " + std::to_string(size) + " violates (1-ε/4)Δ <= |C| <= (1+ε)Δ");
}

Instance ordinary_lattice(const GeneratorSpec& s, Rng& rng) {
  const int D = s.delta, t = s.num_acs, e = s.ext_degree;
  if (D < 3 || t < 2 || e < 1) throw IllegalSpec("ordinary_lattice needs Δ >= 3, at least 2 ACs, e_C >= 1");
  if (e > s.eps * D) throw IllegalSpec("e_C > εΔ requested");
  const int size = D + 1 - e;
  check_ac_size(D, s.eps, size, "ordinary AC");
  if (e > (t - 1) * size) throw IllegalSpec("not enough outside nodes for e_C");
  const int n = t * size;
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> taken;
  std::vector<int> part(n);
  for (int c = 0; c < t; ++c) {
    add_clique(edges, taken, c * size, size);
    for (int i = 0; i < size; ++i) part[c * size + i] = c;
  }
  std::vector<Node> stubs;
  for (Node v = 0; v < n; ++v)
    for (int k = 0; k < e; ++k) stubs.push_back(v);
  if (!pair_stubs(stubs, [&](Node a, Node b) { return part[a] != part[b]; }, taken, rng, true, edges)) return {};
  Instance inst;
  inst.graph = Graph::from_edges(n, edges);
  inst.planted_part = part;
  inst.planted_ext.assign(t, e);
  inst.planted_special.assign(t, -1);
  return inst;
}

Instance difficult_chain(const GeneratorSpec& s, Rng& rng) {
  const int D = s.delta, L = s.layers;
  const double eps = s.eps;
  if (D < 3 || L < 2) throw IllegalSpec("difficult_chain needs Δ >= 3 and at least 2 layers");
  const int nd = L - 1;  // difficult layers
  std::vector<int> ext(nd), size(nd), first(nd);
  int n = 0;
  for (int i = 0; i < nd; ++i) {
    ext[i] = 1 << i;
    if (ext[i] > eps * D) throw IllegalSpec("e_C > εΔ requested");
    size[i] = D + 1 - ext[i];
    check_ac_size(D, eps, size[i], "difficult AC with e_C=" + std::to_string(ext[i]));
    first[i] = n;
    n += size[i];
  }
  const int fsize = D - 1;  // nice layer
  check_ac_size(D, eps, fsize, "nice AC");
  const int ffirst = n;
  n += fsize;
  const int top = ext[nd - 1];
  // The last special sits in the nice AC and spends 2*top external edges.
  const int removals = 2 * top - (D - (fsize - 1));
  if (fsize - 1 - removals < (1.0 - eps) * D) throw IllegalSpec("nice layer cannot host the last special node");

  std::vector<int> part(n);
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> taken;
  for (int i = 0; i < nd; ++i) {
    add_clique(edges, taken, first[i], size[i]);
    for (int k = 0; k < size[i]; ++k) part[first[i] + k] = i;
  }
  add_clique(edges, taken, ffirst, fsize);
  for (int k = 0; k < fsize; ++k) part[ffirst + k] = nd;

  std::vector<int> deg(n, 0);
  for (auto [a, b] : edges) { ++deg[a]; ++deg[b]; }
  // nbrs_in[v][layer] counts v's neighbors inside each difficult layer
  std::vector<std::vector<int>> nbrs_in(n, std::vector<int>(nd, 0));
  auto connect = [&](Node a, Node b) {
    edges.emplace_back(std::min(a, b), std::max(a, b));
    taken.insert(key(a, b));
    ++deg[a];
    ++deg[b];
    if (part[b] < nd) ++nbrs_in[a][part[b]];
    if (part[a] < nd) ++nbrs_in[b][part[a]];
  };

  std::vector<Node> special(nd);
  for (int i = 0; i < nd; ++i) {
    Node s_i;
    if (i + 1 < nd) s_i = first[i + 1] + Node(rng.below(size[i + 1]));
    else s_i = ffirst + Node(rng.below(fsize));
    special[i] = s_i;
  }
  // Make room at the nice-layer special.
  {
    Node s = special[nd - 1];
    std::vector<Node> others;
    for (int k = 0; k < fsize; ++k)
      if (ffirst + k != s) others.push_back(ffirst + k);
    rng.shuffle(others);
    for (int r = 0; r < removals; ++r) {
      remove_edge(edges, taken, s, others[r]);
      --deg[s];
      --deg[others[r]];
    }
  }
  for (int i = 0; i < nd; ++i) {
    std::vector<Node> members;
    for (int k = 0; k < size[i]; ++k) members.push_back(first[i] + k);
    rng.shuffle(members);
    for (int k = 0; k < 2 * ext[i]; ++k) connect(special[i], members[k]);
  }
  // Wire the remaining external stubs of each difficult layer upward. A node
  // outside layer i gets at most one neighbor in it, so only the designated
  // special is intrusive.
  for (int i = 0; i < nd; ++i) {
    std::vector<Node> stubs;
    for (int k = 0; k < size[i]; ++k) {
      Node v = first[i] + k;
      for (int r = deg[v]; r < D; ++r) stubs.push_back(v);
    }
    rng.shuffle(stubs);
    std::vector<Node> higher, nice;
    for (int j = i + 1; j < nd; ++j)
      for (int k = 0; k < size[j]; ++k) higher.push_back(first[j] + k);
    for (int k = 0; k < fsize; ++k) nice.push_back(ffirst + k);
    rng.shuffle(higher);
    rng.shuffle(nice);
    size_t hi = 0, ni = 0;
    for (Node v : stubs) {
      Node partner = -1;
      while (hi < higher.size()) {
        Node u = higher[hi];
        if (deg[u] < D && nbrs_in[u][i] == 0 && !taken.count(key(u, v))) { partner = u; break; }
        ++hi;
      }
      if (partner < 0) {
        while (ni < nice.size()) {
          Node u = nice[ni];
          if (deg[u] < D && nbrs_in[u][i] == 0 && !taken.count(key(u, v))) { partner = u; break; }
          ++ni;
        }
      }
      if (partner < 0) throw IllegalSpec("difficult_chain: nice layer too small to absorb external edges");
      connect(v, partner);
    }
  }
  for (int i = 0; i < nd; ++i)
    for (int k = 0; k < size[i]; ++k)
      if (deg[first[i] + k] != D) return {};
  Instance inst;
  inst.graph = Graph::from_edges(n, edges);
  inst.planted_part = part;
  inst.planted_ext = ext;
  inst.planted_ext.push_back(D + 1 - fsize);
  inst.planted_special = special;
  inst.planted_special.push_back(-1);
  return inst;
}

Instance planted_acd(const GeneratorSpec& s, Rng& rng) {
  const int D = s.delta, t = s.num_acs;
  const double eps = s.eps;
  if (D < 3 || t < 0) throw IllegalSpec("planted_acd needs Δ >= 3");
  const int slack = int(std::floor(eps * D / 8));
  const int size = D - slack;
  if (t > 0) check_ac_size(D, eps, size, "planted AC");
  const int n = s.n;
  const int ns = n - t * size;
  if (ns < 0) throw IllegalSpec("planted_acd: n smaller than the planted ACs");
  if (ns > 0 && ns <= (t == 0 ? D : D / 2)) throw IllegalSpec("planted_acd: sparse part too small for its degree");
  std::vector<int> part(n, -1);
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> taken;
  for (int c = 0; c < t; ++c) {
    add_clique(edges, taken, c * size, size);
    for (int k = 0; k < size; ++k) part[c * size + k] = c;
  }
  std::vector<int> deg(n, 0);
  for (auto [a, b] : edges) { ++deg[a]; ++deg[b]; }
  // A few internal non-edges per AC.
  const int rm = std::max(0, int(std::floor(eps * D / 16)));
  for (int c = 0; c < t && rm > 0; ++c) {
    std::vector<int> lost(size, 0);
    for (int k = 0; k < size * rm / 2; ++k) {
      int a = int(rng.below(size)), b = int(rng.below(size));
      if (a == b || lost[a] >= rm || lost[b] >= rm || !taken.count(key(c * size + a, c * size + b))) continue;
      remove_edge(edges, taken, c * size + a, c * size + b);
      ++lost[a];
      ++lost[b];
      --deg[c * size + a];
      --deg[c * size + b];
    }
  }
  std::vector<Node> stubs;
  for (Node v = 0; v < t * size; ++v) {
    int room = std::min(D - deg[v], slack);
    int x = v == 0 ? D - deg[v] : int(rng.below(room + 1));
    for (int k = 0; k < x; ++k) stubs.push_back(v);
  }
  // Sparse nodes: half-degree random graph part, topped up by AC stubs.
  for (Node v = t * size; v < n; ++v)
    for (int k = 0; k < (t == 0 ? D : D / 2); ++k) stubs.push_back(v);
  auto allowed = [&](Node a, Node b) { return part[a] < 0 || part[b] < 0 ? true : part[a] != part[b]; };
  if (!pair_stubs(stubs, allowed, taken, rng, false, edges)) return {};
  Graph g = Graph::from_edges(n, edges);
  if (g.max_degree() != D) return {};
  Instance inst;
  inst.graph = std::move(g);
  inst.planted_part = part;
  return inst;
}

// Promise check for planted_acd: the planted partition must satisfy the
// weak-decomposition bounds at ε/4 and sparse nodes must be sparse.
bool planted_ok(const Instance& inst, double eps) {
  const Graph& g = inst.graph;
  const int D = g.max_degree();
  std::vector<int> csize;
  for (int p : inst.planted_part)
    if (p >= 0) {
      if (int(csize.size()) <= p) csize.resize(p + 1, 0);
      ++csize[p];
    }
  for (int sz : csize)
    if (sz > (1 + eps / 4) * D) return false;
  const double zeta = 1.0 / 64;
  for (Node v = 0; v < g.n(); ++v) {
    int p = inst.planted_part[v];
    if (p >= 0) {
      int in = 0;
      for (Node u : g.neighbors(v)) in += inst.planted_part[u] == p;
      if (in < (1 - eps / 4) * D) return false;
    } else {
      if (neighborhood_non_edges(g, v) < zeta * eps * eps * D * D) return false;
      std::unordered_map<int, int> cnt;
      for (Node u : g.neighbors(v))
        if (inst.planted_part[u] >= 0 && ++cnt[inst.planted_part[u]] >= (1 - eps) * D) return false;
    }
  }
  return true;
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.kind == GenKind::nice_clique) return nice_clique(spec);
  if (spec.kind == GenKind::reject_case) return reject_case(spec);
  for (int attempt = 0; attempt < kRetrySeeds; ++attempt) {
    Rng rng(derive_seed(spec.seed, uint64_t(spec.kind), uint64_t(attempt)));
    Instance inst;
    switch (spec.kind) {
      case GenKind::random_regular: inst = random_regular(spec, rng); break;
      case GenKind::ordinary_lattice: inst = ordinary_lattice(spec, rng); break;
      case GenKind::difficult_chain: inst = difficult_chain(spec, rng); break;
      case GenKind::planted_acd:
        inst = planted_acd(spec, rng);
        if (inst.graph.n() > 0 && !planted_ok(inst, spec.eps)) inst = {};
        break;
      default: break;
    }
    if (inst.graph.n() > 0) {
      inst.seed_used = attempt;
      return inst;
    }
  }
  throw IllegalSpec(to_string(spec.kind) + ": no valid instance within " + std::to_string(kRetrySeeds) + " seeds");
}

}  // namespace dcolor
