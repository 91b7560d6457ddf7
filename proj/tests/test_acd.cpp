#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "dcolor/acd.hpp"
#include "dcolor/generators.hpp"

using namespace dcolor;

namespace {

std::vector<Edge> clique_edges(int from, int k) {
  std::vector<Edge> e;
  for (int u = from; u < from + k; ++u)
    for (int v = u + 1; v < from + k; ++v) e.emplace_back(u, v);
  return e;
}

NetConfig cfg(uint64_t seed) {
  NetConfig c;
  c.seed = seed;
  return c;
}

// Fraction of nodes whose part agrees with the planted one, after mapping
// each computed part to the planted part most of its members carry.
double agreement(const std::vector<int>& got, const std::vector<int>& truth) {
  std::map<int, std::map<int, int>> votes;
  for (size_t v = 0; v < got.size(); ++v)
    if (got[v] >= 0) ++votes[got[v]][truth[v]];
  std::map<int, int> to_truth;
  for (auto& [p, m] : votes) {
    int best = -1, cnt = -1;
    for (auto [t, c] : m)
      if (c > cnt) best = t, cnt = c;
    to_truth[p] = best;
  }
  int ok = 0;
  for (size_t v = 0; v < got.size(); ++v) ok += (got[v] < 0 ? -1 : to_truth[got[v]]) == truth[v];
  return double(ok) / double(got.size());
}

Instance planted(int delta, int acs, int n, double eps, uint64_t seed) {
  GeneratorSpec s;
  s.kind = GenKind::planted_acd;
  s.delta = delta;
  s.num_acs = acs;
  s.n = n;
  s.eps = eps;
  s.seed = seed;
  return generate_instance(s);
}

}  // namespace

TEST(WeakDecomposition, TwoDisjointCliques) {
  const int D = 48;
  auto e = clique_edges(0, D + 1);
  auto f = clique_edges(D + 1, D + 1);
  e.insert(e.end(), f.begin(), f.end());
  const Graph g = Graph::from_edges(2 * (D + 1), e);
  Network net(g, cfg(1));
  AcdConfig ac;
  ac.eps = 1.0 / 12;
  const auto w = compute_weak_decomposition(net, ac.eps, ac);
  EXPECT_TRUE(w.sparse.empty());
  ASSERT_EQ(w.parts.size(), 2u);
  for (const auto& p : w.parts) EXPECT_EQ(p.size(), size_t(D + 1));
}

TEST(WeakDecomposition, RandomRegularIsAllSparse) {
  GeneratorSpec s;
  s.kind = GenKind::random_regular;
  s.delta = 32;
  s.n = 2000;
  s.seed = 4;
  const Graph g = generate(s);
  Network net(g, cfg(2));
  AcdConfig ac;
  ac.eps = 1.0 / 12;
  const auto w = compute_weak_decomposition(net, ac.eps, ac);
  EXPECT_TRUE(w.parts.empty());
  EXPECT_EQ(w.sparse.size(), size_t(g.n()));
}

TEST(Acd, PlantedRecoveredAndValid) {
  const double eps = 1.0 / 12;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = planted(128, 5, 1200, eps, seed);
    const Graph& g = inst.graph;
    EXPECT_TRUE(validate_acd(g, make_acd(inst.planted_part, eps), 1.0 / 64).empty()) << "generator promise";
    Network net(g, cfg(seed));
    AcdConfig ac;
    ac.eps = eps;
    const auto acd = compute_acd(net, ac);
    EXPECT_EQ(acd.cliques.size(), 5u);
    EXPECT_TRUE(validate_acd(g, acd, ac.zeta).empty());
    EXPECT_GE(agreement(acd.part, inst.planted_part), 0.95) << "seed " << seed;
    EXPECT_LE(net.audit().max_bits, net.budget());
  }
}

TEST(Acd, DerivedDenseProperties) {
  const double eps = 1.0 / 12;
  const Instance inst = planted(128, 5, 1200, eps, 7);
  const Graph& g = inst.graph;
  Network net(g, cfg(7));
  AcdConfig ac;
  ac.eps = eps;
  const auto acd = compute_acd(net, ac);
  const double D = g.max_degree();
  for (size_t i = 0; i < acd.cliques.size(); ++i) {
    const auto& c = acd.cliques[i];
    std::vector<char> in(g.n(), 0);
    for (Node v : c) in[v] = 1;
    for (Node v : c) {
      int inside = 0;
      for (Node u : g.neighbors(v)) inside += in[u];
      EXPECT_LE(g.degree(v) - inside, eps * D) << "external degree";
      EXPECT_LE(int(c.size()) - 1 - inside, 2 * eps * D) << "anti-degree";
    }
    // Common neighbours inside C for a sample of pairs.
    for (size_t a = 0; a < c.size(); a += 7)
      for (size_t b = a + 1; b < c.size(); b += 11) {
        int common = 0;
        for (Node u : g.neighbors(c[a])) common += in[u] && g.adjacent(u, c[b]);
        EXPECT_GE(common, (1 - 3 * eps) * D);
      }
  }
}

TEST(Augment, ExactCliquesUnchanged) {
  const int D = 48;
  const Graph g = Graph::from_edges(D + 1, clique_edges(0, D + 1));
  Network net(g, cfg(1));
  WeakDecomposition w;
  w.parts.push_back({});
  for (Node v = 0; v < g.n(); ++v) w.parts[0].push_back(v);
  const auto acd = augment_decomposition(net, w, 1.0 / 12, 1.0 / 64);
  ASSERT_EQ(acd.cliques.size(), 1u);
  EXPECT_EQ(acd.cliques[0], w.parts[0]);
  EXPECT_TRUE(acd.sparse.empty());
}

TEST(Augment, AttachableNodeJoins) {
  // K48 plus x adjacent to (1-ε)Δ = 44 of its nodes; Δ = 48.
  const int k = 48;
  auto e = clique_edges(0, k);
  const Node x = k;
  for (Node v = 0; v < 44; ++v) e.emplace_back(v, x);
  const Graph g = Graph::from_edges(k + 1, e);
  ASSERT_EQ(g.max_degree(), 48);
  Network net(g, cfg(1));
  WeakDecomposition w;
  w.parts.push_back({});
  for (Node v = 0; v < k; ++v) w.parts[0].push_back(v);
  w.sparse = {x};
  const auto acd = augment_decomposition(net, w, 1.0 / 12, 1.0 / 64);
  EXPECT_EQ(acd.part[x], 0);
  EXPECT_EQ(acd.cliques[0].size(), size_t(k + 1));
  EXPECT_TRUE(acd.sparse.empty());
}

TEST(Validate, FlagsEachClause) {
  const int D = 48;
  auto e = clique_edges(0, D + 1);
  const Graph g = Graph::from_edges(D + 2, e);  // node D+1 isolated
  std::vector<int> part(g.n(), 0);
  auto v = validate_acd(g, make_acd(part, 1.0 / 12), 1.0 / 64);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().rfind("(ii)", 0), 0u) << v.front();

  // A part of size Δ/2.
  std::vector<int> half(g.n(), -1);
  for (Node u = 0; u < D / 2; ++u) half[u] = 0;
  bool lower = false;
  for (auto& s : validate_acd(g, make_acd(half, 1.0 / 12), 1.0 / 64))
    lower = lower || (s.rfind("(i)", 0) == 0 && s.find("below") != std::string::npos);
  EXPECT_TRUE(lower);

  // Exact partition passes; the isolated node is sparse-violating (0 non-edges).
  std::vector<int> ok(g.n(), 0);
  ok[D + 1] = -1;
  const auto w = validate_acd(g, make_acd(ok, 1.0 / 12), 1.0 / 64);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].rfind("sparse", 0), 0u);
}

TEST(Acd, RejectsVacuousScale) {
  const Graph g = Graph::from_edges(5, clique_edges(0, 5));
  Network net(g, cfg(1));
  AcdConfig ac;
  ac.eps = 1.0 / 12;  // εΔ/4 = 1/12
  EXPECT_THROW(compute_acd(net, ac), IllegalSpec);
  EXPECT_EQ(all_sparse_acd(g, ac.eps).sparse.size(), 5u);
}

TEST(Acd, FailsAfterRetryBudget) {
  // x sees 30 clique nodes: too few to join, and its neighbourhood is a
  // clique, so it can never be certified sparse.
  const int k = 49;
  auto e = clique_edges(0, k);
  for (Node v = 0; v < 30; ++v) e.emplace_back(v, k);
  const Graph g = Graph::from_edges(k + 1, e);
  Network net(g, cfg(1));
  AcdConfig ac;
  ac.eps = 1.0 / 12;
  ac.retries = 3;
  EXPECT_THROW(compute_acd(net, ac), DecompositionFailed);
}

TEST(Acd, DumpFormat) {
  const auto acd = make_acd({0, -1, 0, 1}, 0.1);
  std::ostringstream os;
  dump_acd(os, acd);
  EXPECT_EQ(os.str(), "C 0: 0 2\nC 1: 3\nSPARSE: 1\n");
}
