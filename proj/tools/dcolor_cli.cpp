#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dcolor/generators.hpp"
#include "dcolor/pipeline.hpp"
#include "dcolor/stats.hpp"

using namespace dcolor;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kBadInput = 2, kEscalation = 3 };

struct GenOpts {
  std::string gen;
  std::string in;
  int delta = 0, n = 0, acs = 10, layers = 3, ext = 1;
  double eps = 1.0 / 12;
  uint64_t seed = 1;
};

void add_gen_flags(CLI::App* c, GenOpts& o) {
  c->add_option("--gen", o.gen, "generator kind");
  c->add_option("--delta", o.delta, "maximum degree");
  c->add_option("--n", o.n, "node count (random_regular, planted_acd)");
  c->add_option("--acs", o.acs, "number of planted ACs");
  c->add_option("--layers", o.layers, "difficult_chain layers");
  c->add_option("--ext", o.ext, "external degree e_C (ordinary_lattice)");
  c->add_option("--gen-eps", o.eps, "generator ε promise");
}

Graph load_graph(const GenOpts& o) {
  if (!o.in.empty()) {
    std::ifstream f(o.in);
    if (!f) throw IllegalSpec("cannot open " + o.in);
    return read_graph(f);
  }
  if (o.gen.empty()) throw IllegalSpec("need --in or --gen");
  GeneratorSpec s;
  s.kind = parse_gen_kind(o.gen);
  s.delta = o.delta;
  s.n = o.n;
  s.num_acs = o.acs;
  s.layers = o.layers;
  s.ext_degree = o.ext;
  s.eps = o.eps;
  s.seed = o.seed;
  return generate(s);
}

std::ostream& out_stream(const std::string& path, std::ofstream& f) {
  if (path.empty() || path == "-") return std::cout;
  f.open(path);
  if (!f) throw IllegalSpec("cannot write " + path);
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed Δ-coloring simulator"};
  app.require_subcommand(1);

  GenOpts go;
  std::string out, report_path, coloring_path, suite = "slack";
  double eps = 1.0 / 172;
  bool strict = false, serial = false;
  int runs = 20;
  RunConfig tun;
  long long trials = 100000;

  auto* gen = app.add_subcommand("generate", "write a generated graph");
  add_gen_flags(gen, go);
  gen->add_option("--seed", go.seed);
  gen->add_option("--out", out, "graph file (default stdout)");

  auto* run = app.add_subcommand("run", "run the pipeline and write a coloring and JSON report");
  add_gen_flags(run, go);
  run->add_option("--in", go.in, "graph file");
  run->add_option("--seed", go.seed);
  run->add_option("--eps", eps, "ACD ε");
  run->add_flag("--strict-budget", strict, "abort on any per-edge budget overflow");
  run->add_flag("--serial", serial, "serial reference engine");
  run->add_option("--out", out, "coloring file (default stdout)");
  run->add_option("--report", report_path, "JSON report file (default <out>.json, or stderr)");
  run->add_option("--activation", tun.activation, "slack generation activation probability");
  run->add_option("--t-high-factor", tun.t_high_factor, "Alg-2 threshold is factor * log2 n");
  run->add_option("--retry-cap", tun.retry_cap, "reseeded retries before escalation");

  auto* ver = app.add_subcommand("verify", "check a coloring against a graph");
  ver->add_option("--in", go.in, "graph file")->required();
  ver->add_option("--coloring", coloring_path, "coloring file")->required();

  auto* stats = app.add_subcommand("stats", "Monte Carlo suites as CSV");
  add_gen_flags(stats, go);
  stats->add_option("--suite", suite, "slack | pair-success | lll | nonedge");
  stats->add_option("--seed", go.seed);
  stats->add_option("--eps", eps);
  stats->add_option("--runs", runs);
  stats->add_option("--trials", trials);
  stats->add_option("--out", out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  try {
    if (*gen) {
      std::ofstream f;
      write_graph(out_stream(out, f), load_graph(go));
      return kOk;
    }
    if (*ver) {
      std::ifstream gf(go.in), cf(coloring_path);
      if (!gf || !cf) throw IllegalSpec("cannot open input files");
      const Graph g = read_graph(gf);
      const auto col = read_coloring(cf, g.n());
      const Verdict v = check_coloring(g, col, g.max_degree());
      if (v.ok) {
        std::cout << "OK proper " << g.max_degree() << "-coloring\n";
        return kOk;
      }
      std::cout << "FAIL " << v.reason << "\n";
      return kVerifyFail;
    }
    if (*run) {
      const Graph g = load_graph(go);
      RunConfig cfg = tun;
      cfg.eps = eps;
      cfg.seed = go.seed;
      cfg.strict = strict;
      cfg.parallel = !serial;
      RunResult r;
      try {
        r = dcolor::run(g, cfg);
      } catch (const IllegalSpec&) {
        throw;
      } catch (const Error& e) {
        std::cerr << "run aborted: " << e.what() << "\n";
        return kVerifyFail;
      }
      std::ofstream f;
      write_coloring(out_stream(out, f), r.colors);
      const std::string json = report_json(r.report);
      if (report_path.empty() && !out.empty() && out != "-") report_path = out + ".json";
      if (report_path.empty()) {
        std::cerr << json;
      } else {
        std::ofstream rf(report_path);
        rf << json;
      }
      if (!(r.report.proper && r.report.colors_in_range && r.report.all_colored)) return kVerifyFail;
      return r.report.escalated ? kEscalation : kOk;
    }
    if (*stats) {
      std::ofstream f;
      std::ostream& os = out_stream(out, f);
      if (suite == "slack") {
        os << "seed,sparse_nodes,sparse_without_slack,fraction,acs_checked,acs_without_toehold\n";
        for (int k = 0; k < runs; ++k) {
          GenOpts o = go;
          o.seed = go.seed + uint64_t(k);
          GeneratorSpec s;
          s.kind = go.gen.empty() ? GenKind::planted_acd : parse_gen_kind(go.gen);
          s.delta = o.delta;
          s.n = o.n;
          s.num_acs = s.kind == GenKind::planted_acd && go.gen.empty() ? 0 : o.acs;
          s.ext_degree = o.ext;
          s.layers = o.layers;
          s.eps = o.eps;
          s.seed = o.seed;
          const Instance inst = generate_instance(s);
          std::vector<int> part = inst.planted_part;
          if (part.empty()) part.assign(inst.graph.n(), -1);
          std::vector<int> ord;
          if (s.kind == GenKind::ordinary_lattice)
            for (int c = 0; c < s.num_acs; ++c) ord.push_back(c);
          RunConfig def;
          const SlackSample ss = slack_sample(inst.graph, part, ord, o.seed, def.activation);
          os << o.seed << "," << ss.sparse_nodes << "," << ss.sparse_without_slack << ","
             << (ss.sparse_nodes ? double(ss.sparse_without_slack) / ss.sparse_nodes : 0.0) << "," << ss.acs_checked
             << "," << ss.acs_without_toehold << "\n";
        }
      } else if (suite == "pair-success") {
        os << "seed,iteration,uncolored_at_start,colored,rate\n";
        for (int k = 0; k < runs; ++k) {
          GenOpts o = go;
          o.seed = go.seed + uint64_t(k);
          if (o.gen.empty()) o.gen = "ordinary_lattice";
          RunConfig cfg;
          cfg.eps = eps;
          cfg.seed = o.seed;
          const RunResult r = dcolor::run(load_graph(o), cfg);
          for (size_t i = 0; i < r.report.pair_iterations.size(); ++i) {
            auto [s, c] = r.report.pair_iterations[i];
            os << o.seed << "," << i + 1 << "," << s << "," << c << "," << (s ? double(c) / s : 0.0) << "\n";
          }
        }
      } else if (suite == "lll") {
        os << "delta,n,q_fn,p3,arcs,trials,bad,prob\n";
        const int D = go.delta > 0 ? go.delta : 8192;
        for (int lg : {8, 10, 12, 16}) {
          const L3Estimate e = l3_single_ac(D, 1 << lg, trials, go.seed + uint64_t(lg));
          os << D << "," << (1 << lg) << "," << e.q << "," << e.p3 << "," << e.arcs << "," << e.trials << "," << e.bad
             << "," << e.prob() << "\n";
        }
      } else if (suite == "nonedge") {
        os << "instance,n,density,p,trials,hits,prob,bound\n";
        for (int k = 0; k < runs; ++k) {
          Rng rng(derive_seed(go.seed, uint64_t(k)));
          const int nn = 20 + int(rng.below(41));
          const double d = 0.1 + 0.8 * rng.uniform01();
          const double p = 0.1 + 0.8 * rng.uniform01();
          const Graph g = random_gnp(nn, d, rng());
          const EventEstimate e = non_edge_hitting(g, p, trials, rng());
          os << k << "," << nn << "," << d << "," << p << "," << e.trials << "," << e.bad << "," << e.prob() << ","
             << e.bound << "\n";
        }
      } else {
        throw IllegalSpec("unknown suite '" + suite + "'");
      }
      return kOk;
    }
  } catch (const IllegalSpec& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kVerifyFail;
  }
  return kOk;
}
