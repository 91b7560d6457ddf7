// Serial reference vs OpenMP engine. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "dcolor/acd.hpp"
#include "dcolor/generators.hpp"
#include "dcolor/pipeline.hpp"

using namespace dcolor;

namespace {

const Graph& regular() {
  static const Graph g = [] {
    GeneratorSpec s;
    s.kind = GenKind::random_regular;
    s.delta = 64;
    s.n = 4000;
    s.seed = 1;
    return generate(s);
  }();
  return g;
}

const Graph& planted() {
  static const Graph g = [] {
    GeneratorSpec s;
    s.kind = GenKind::planted_acd;
    s.delta = 128;
    s.num_acs = 5;
    s.n = 1200;
    s.eps = 1.0 / 12;
    s.seed = 1;
    return generate(s);
  }();
  return g;
}

const Graph& lattice() {
  static const Graph g = [] {
    GeneratorSpec s;
    s.kind = GenKind::ordinary_lattice;
    s.delta = 128;
    s.num_acs = 10;
    s.eps = 1.0 / 12;
    s.seed = 1;
    return generate(s);
  }();
  return g;
}

NetConfig net_cfg(bool parallel) {
  NetConfig c;
  c.parallel = parallel;
  c.strict = true;
  return c;
}

// Every node broadcasts a word, then sums what it hears and unicasts to one
// random neighbour.
void BM_NetworkRounds(benchmark::State& state) {
  const Graph& g = regular();
  Network net(g, net_cfg(state.range(0)));
  std::vector<long long> acc(g.n(), 0);
  for (auto _ : state) {
    net.run_round_all([&](NodeCtx& c) { c.broadcast(16, 1, int32_t(c.id() & 0xffff)); });
    net.run_round_all([&](NodeCtx& c) {
      long long s = 0;
      for (auto& m : c.inbox()) s += m.a;
      acc[c.id()] += s;
      const auto& nb = c.neighbors();
      c.send(nb[c.rng().below(nb.size())], 16, 2, int32_t(s & 0xffff));
    });
  }
  benchmark::DoNotOptimize(acc.data());
  state.SetItemsProcessed(state.iterations() * 2 * g.n());
}
BENCHMARK(BM_NetworkRounds)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Acd(benchmark::State& state) {
  const Graph& g = planted();
  for (auto _ : state) {
    Network net(g, net_cfg(state.range(0)));
    AcdConfig ac;
    ac.eps = 1.0 / 12;
    benchmark::DoNotOptimize(compute_acd(net, ac));
  }
}
BENCHMARK(BM_Acd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const Graph& g = lattice();
  RunConfig c;
  c.eps = 1.0 / 12;
  c.parallel = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run(g, c));
}
BENCHMARK(BM_Pipeline)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
