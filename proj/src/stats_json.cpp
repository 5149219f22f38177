#include "naeenum/stats_json.hpp"

#include <string>

namespace naeenum {

using nlohmann::ordered_json;

namespace {

ordered_json clauses_json(const std::vector<Clause>& cs) {
  ordered_json a = ordered_json::array();
  for (const Clause& c : cs) {
    ordered_json lits = ordered_json::array();
    for (const Literal& l : c.literals()) lits.push_back(l.dimacs());
    a.push_back(lits);
  }
  return a;
}

ordered_json surd_json(const Surd6& v) {
  return {{"exact", v.str()}, {"approx", v.to_double()}};
}

}  // namespace

ordered_json stats_to_json(const SearchStats& s) {
  ordered_json j;
  j["schema"] = "naeenum.stats";
  j["version"] = kStatsSchemaVersion;
  j["n"] = s.n;
  j["t"] = s.t;
  j["t0"] = s.t0;
  j["route"] = std::string(route_name(s.route));
  j["nodes_visited"] = s.nodes_visited;
  j["leaves_visited"] = s.leaves_visited;
  j["falsified_leaves"] = s.falsified_leaves;
  j["superfluous_skips"] = s.superfluous_skips;
  j["solutions_emitted"] = s.solutions_emitted;
  j["aborted_nodes"] = s.aborted_nodes;
  j["suppressed_duplicates"] = s.suppressed_duplicates;
  j["resets"] = {{"C0", s.resets[0]}, {"C1", s.resets[1]}, {"CR", s.resets[2]}};
  ordered_json ev = ordered_json::array();
  for (const ResetEvent& e : s.reset_events)
    ev.push_back({{"stage", std::string(stage_name(e.stage))},
                  {"old_size", e.old_size},
                  {"new_size", e.new_size},
                  {"witness", clauses_json(e.witness)}});
  j["reset_events"] = ev;
  ordered_json viol = ordered_json::object();
  for (std::size_t i = 0; i < s.violations.size(); ++i)
    viol[std::string(violation_name(static_cast<Violation>(i)))] = s.violations[i];
  j["violations"] = viol;
  j["heavy_nodes"] = s.heavy_nodes;
  j["heavy_outside_f2"] = s.heavy_outside_f2;
  j["kappa2_nodes"] = s.kappa2_nodes;
  j["kappa2_extra_falsifying"] = s.kappa2_extra_falsifying;
  ordered_json prof = ordered_json::array();
  for (const auto& [k, c] : s.profiles)
    prof.push_back({{"t1", k.t1}, {"m_b", k.m_b}, {"m_r", k.m_r}, {"m_i", k.m_i}, {"m_r_prime", k.m_r_prime},
                    {"count", c}});
  j["profiles"] = prof;
  ordered_json ell = ordered_json::object();
  for (const auto& [l, c] : s.ell_histogram) ell[std::to_string(l)] = c;
  j["ell_histogram"] = ell;
  return j;
}

ordered_json exhaustive_to_json(const ExhaustiveReport& r) {
  std::uint64_t exact_edges = 0;
  for (const EdgeSurvival& e : r.edges) {
    mpq_class freq(e.traversed, e.parent_reached ? e.parent_reached : 1);
    freq.canonicalize();
    mpq_class want(1);
    want /= mpq_class(mpz_class(1) << e.marks);
    if (e.parent_reached && freq == want) ++exact_edges;
  }
  return {{"orderings", r.orderings},
          {"mean_leaves", r.mean_leaves.get_str()},
          {"psi_markings", r.psi_markings.get_str()},
          {"mean_equals_markings", r.mean_leaves == r.psi_markings},
          {"min_leaves", r.min_leaves},
          {"max_leaves", r.max_leaves},
          {"edges", r.edges.size()},
          {"edges_at_marking_frequency", exact_edges},
          {"solutions", r.solutions},
          {"solutions_consistent", r.solutions_consistent}};
}

ordered_json certificate_to_json(const NodeCertificate& c) {
  ordered_json terms = ordered_json::array();
  for (std::size_t i = 0; i < c.w.size(); ++i)
    terms.push_back({{"i", i}, {"w", c.w[i]}, {"d", c.d[i]}, {"h", c.h[i]}, {"case", c.regime[i]}});
  return {{"n", c.n},        {"t0", c.t0},
          {"t1", c.t1},      {"m_r_prime", c.m_r_prime},
          {"m_b", c.m_b},    {"N", surd_json(c.N)},
          {"I", c.I},        {"I_at_most_n", c.i_at_most_n},
          {"d_plus_h_at_most_w", c.width_covers_depth},
          {"terms", terms}};
}

ordered_json claims_to_json(const ClaimReport& r) {
  ordered_json a = ordered_json::array();
  for (const ClaimResult& c : r.claims) {
    ordered_json o = {{"claim", c.name}, {"points", c.points}, {"failures", c.failures}, {"pass", c.pass()}};
    if (!c.pass()) o["witness"] = c.witness;
    a.push_back(o);
  }
  return {{"pass", r.pass()}, {"claims", a}};
}

ordered_json global_to_json(const GlobalCheck& g) {
  ordered_json j = {{"n", g.n},
                    {"target", g.target.get_str()},
                    {"large_route", {{"points", g.large_points}, {"pass", g.large_pass}, {"ratio_exact", g.large_ratio_exact}}},
                    {"controlled_route",
                     {{"points", g.controlled_points},
                      {"pass", g.controlled_pass},
                      {"d_plus_h_at_most_w", g.width_claim_pass},
                      {"max", surd_json(g.controlled_max)},
                      {"argmax", g.controlled_argmax}}},
                    {"pass", g.pass()}};
  if (!g.witness.empty()) j["witness"] = g.witness;
  return j;
}

ordered_json psi_to_json(const PsiEstimate& p) {
  return {{"samples", p.samples}, {"mean", p.mean}, {"std_error", p.std_error}, {"min", p.min}, {"max", p.max}};
}

ordered_json invariants_to_json(const InvariantReport& r) {
  return {{"nodes_checked", r.nodes_checked},
          {"not_disjointly_marked", r.not_disjointly_marked},
          {"unmarked_after_t0", r.unmarked_after_t0},
          {"shoot_weight_low", r.shoot_weight_low},
          {"kappa2_shape", r.kappa2_shape},
          {"kappa2_width_below_two", r.kappa2_width_below_two},
          {"one_marked_heavy_mass", r.one_marked_heavy_mass},
          {"heavy_over_budget", r.heavy_over_budget},
          {"mass_over_marking_bound", r.mass_over_marking_bound},
          {"psi_not_additive", r.psi_not_additive},
          {"total", r.total()}};
}

}  // namespace naeenum
