#include <json.hpp>

#include "dcolor/pipeline.hpp"

namespace dcolor {

std::string report_json(const RunReport& r) {
  using nlohmann::json;
  json j;
  j["verdicts"] = {{"proper", r.proper},
                   {"colors_in_range", r.colors_in_range},
                   {"all_colored", r.all_colored},
                   {"asserts_passed", r.asserts_passed},
                   {"failure", r.failure}};
  j["instance"] = {{"n", r.n}, {"delta", r.delta}, {"seed", r.seed}};
  j["path"] = r.path;
  j["flags"] = {{"acd_skipped", r.acd_skipped},
                {"fallback_oracle", r.fallback},
                {"escalated", r.escalated},
                {"escalations", r.escalations}};
  j["retries"] = r.retries;

  const RunConfig& c = r.config;
  j["config"] = {{"eps", c.eps},
                 {"zeta", c.zeta},
                 {"activation", c.activation},
                 {"c_p", c.c_p},
                 {"p_cap", c.p_cap},
                 {"q_sample", c.q_sample},
                 {"t_high_factor", c.t_high_factor},
                 {"t_high", r.t_high},
                 {"t_low", c.t_low},
                 {"retry_cap", c.retry_cap},
                 {"lll_cap", c.lll_cap},
                 {"strict_budget", c.strict},
                 {"c_B", c.c_B},
                 {"q_fn", r.q}};

  j["decomposition"] = {{"num_acs", r.num_acs},
                        {"ac_types", r.ac_types},
                        {"partition_sizes", r.partition_sizes},
                        {"violations", r.acd_violations},
                        {"levels_used", r.levels_used},
                        {"level_order_checks", r.level_checks},
                        {"matching_sizes", r.matching_sizes},
                        {"min_matching", r.min_matching},
                        {"min_matching_bound_delta_over_10", r.delta / 10.0}};

  j["alg2"] = {{"slack_colored", r.slack_colored},
               {"sparse_without_slack", r.sparse_without_slack},
               {"ordinary_without_toehold", r.ordinary_without_toehold}};

  json pit = json::array();
  for (auto [s, g] : r.pair_iterations) pit.push_back({s, g});
  j["alg5"] = {{"p", r.p},
               {"mu", r.mu},
               {"alpha", r.alpha},
               {"p3", r.p3},
               {"x_threshold", r.x_threshold},
               {"x_eff", r.x_eff},
               {"step1", {{"W", r.step1_W},
                          {"S1", r.step1_S1},
                          {"S2", r.step1_S2},
                          {"degenerate", r.step1_degenerate},
                          {"colored", r.step1_colored},
                          {"max_colored_nbrs", r.step1_max_colored_nbrs},
                          {"colored_nbr_cap_8mu", 8 * r.mu}}},
               {"subtypes", {{"important", r.important}, {"unimportant", r.unimportant}, {"small", r.small_ordinary}}},
               {"Z", {{"size", r.z_size}, {"Z1", r.z1_size}, {"Z2", r.z2_size}, {"max_degree", r.max_z_degree},
                      {"bound_delta_over_10", r.delta / 10.0}}},
               {"triples", r.triples},
               {"min_xc_candidates", r.min_xc_candidates},
               {"hp_max_degree", r.hp_max_degree},
               {"hp_bound_delta_over_9", r.delta / 9.0},
               {"pair_iterations", pit},
               {"pair_min_list", r.pair_min_list},
               {"pair_min_joint", r.pair_min_joint},
               {"lll_resamples", r.lll_resamples}};

  j["phases_3_5"] = {{"hollow_pairs", r.hollow_pairs},
                     {"hollow_min_common", r.hollow_min_common},
                     {"type1_pairs", r.type1_pairs},
                     {"type1_max_conflicts", r.type1_max_conflicts},
                     {"type2_pairs", r.type2_pairs},
                     {"type2_min_candidates", r.type2_min_candidates}};

  const BandwidthReport& b = r.bandwidth;
  j["bandwidth"] = {{"budget_bits", b.budget},
                    {"max_bits", b.max_bits},
                    {"rounds", b.rounds},
                    {"messages", b.messages},
                    {"phase_rounds", b.phase_rounds},
                    {"phase_max_bits", b.phase_max_bits},
                    {"trace_digest", b.trace_digest}};
  j["d1lc"] = {{"invocations", r.d1lc_invocations}, {"rounds", r.d1lc_rounds}};
  return j.dump(2) + "\n";
}

}  // namespace dcolor
