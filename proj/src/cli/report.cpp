#include "rexact/cli.hpp"

#include <algorithm>
#include <sstream>

namespace rexact {

namespace {

const char *flavor_name(Flavor f) { return f == Flavor::plain ? "plain" : "predetermined"; }

json vectors_to_json(const std::vector<RationalVector> &vs) {
  json a = json::array();
  for (const auto &v : vs) {
    json row = json::array();
    for (const auto &x : v) row.push_back(rational_to_json(x));
    a.push_back(row);
  }
  return a;
}

json polys_to_json(const std::vector<Poly> &ps) {
  json a = json::array();
  for (const auto &p : ps) a.push_back(poly_to_json(p));
  return a;
}

json slots_to_json(const std::vector<std::pair<int, int>> &slots) {
  json a = json::array();
  for (auto [j, c] : slots) a.push_back({{"horizon", j}, {"component", c}});
  return a;
}

json system_to_json(const ConstraintSystem &cs) {
  return {{"flavor", flavor_name(cs.flavor)},
          {"C", matrix_to_json(cs.C)},
          {"D", matrix_to_json(cs.D)},
          {"rank", cs.rank_w},
          {"kernel", vectors_to_json(cs.kernel)},
          {"effective_unknowns", cs.effective_unknowns},
          {"simplified_checked", cs.simplified_checked}};
}

json bounds_to_json(const RankBoundReport &b) {
  json j = {{"rank", b.rank_w},
            {"upper_bound", b.upper_bound},
            {"upper_ok", b.upper_ok},
            {"full_rank_hypothesis", b.full_rank_hypothesis},
            {"lower_bound", b.lower_bound},
            {"lower_ok", b.lower_ok},
            {"generic_rank", nullptr},
            {"generic_ok", b.generic_ok}};
  if (b.generic_rank) j["generic_rank"] = *b.generic_rank;
  return j;
}

void render(std::ostringstream &os, const json &v, const std::string &indent) {
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json &x = it.value();
    const std::string key = v.is_array() ? "-" : it.key() + ":";
    const bool scalar_array =
        x.is_array() && std::all_of(x.begin(), x.end(), [](const json &e) { return !e.is_structured(); });
    if (x.is_object() || (x.is_array() && !scalar_array && !x.empty())) {
      os << indent << key << "\n";
      render(os, x, indent + "  ");
    } else if (x.is_string()) {
      os << indent << key << " " << x.get<std::string>() << "\n";
    } else {
      os << indent << key << " " << x.dump() << "\n";
    }
  }
}

} // namespace

json analyze_to_json(const REModel &model, const ValidationReport &val, const DimensionReport &dim) {
  json checks = json::array();
  for (const auto &c : val.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json j = {{"s", model.s},
            {"K", model.K},
            {"H", model.H},
            {"q", model.q},
            {"gamma", model.gamma},
            {"validation", {{"checks", checks}, {"notes", val.notes}, {"warnings", val.warnings}}},
            {"flavor", flavor_name(dim.flavor)},
            {"free_parameters", dim.free_parameters},
            {"kernel_dim", dim.kernel_dim},
            {"rank", dim.rank_w},
            {"upper_bound", dim.upper_bound},
            {"lower_bound", dim.lower_bound},
            {"effective_unknowns", dim.effective_unknowns},
            {"special_case", dim.special_case},
            {"distinctness_guaranteed", dim.distinctness_guaranteed},
            {"J0", dim.J0},
            {"J1", dim.J1},
            {"G", dim.G},
            {"g", dim.g},
            {"phi", polys_to_json(dim.phi)},
            {"unstable_nonzero_roots", dim.unstable_nonzero_roots},
            {"root_problem", nullptr},
            {"bounds", nullptr}};
  if (dim.root_problem) j["root_problem"] = *dim.root_problem;
  if (dim.bounds) j["bounds"] = bounds_to_json(*dim.bounds);
  return j;
}

json smith_to_json(const PiPolynomial &pi, const SmithForm &sf) {
  json astar = json::array();
  for (const auto &[i, m] : pi.A_star) astar.push_back({{"i", i}, {"matrix", matrix_to_json(m)}});
  return {{"J0", pi.J0},
          {"J1", pi.J1},
          {"A_star", astar},
          {"pi", poly_matrix_to_json(pi.pi)},
          {"det_pi", poly_to_json(pi.det)},
          {"g", sf.g},
          {"phi", polys_to_json(sf.phi)},
          {"P", poly_matrix_to_json(sf.P)},
          {"Q", poly_matrix_to_json(sf.Q)},
          {"P_inv", poly_matrix_to_json(sf.P_inv)},
          {"Q_inv", poly_matrix_to_json(sf.Q_inv)},
          {"violations", smith_violations(sf, pi.pi)}};
}

json constraints_to_json(const ConstraintPipeline &p) {
  json j = {{"J1", p.pi.J1},
            {"gamma_s", p.pb.gamma_s},
            {"column_blocks", p.pb.column_blocks},
            {"plain", system_to_json(p.plain)},
            {"predetermined", nullptr},
            {"applicable", flavor_name(p.applicable().flavor)}};
  if (p.predetermined) {
    j["predetermined"] = system_to_json(*p.predetermined);
    j["predetermined"]["omega0"] = matrix_to_json(p.sel.omega0);
  }
  return j;
}

json solution_to_json(const SolutionReport &sr) {
  json j = {{"classification", to_string(sr.classification)},
            {"flavor", flavor_name(sr.flavor)},
            {"s", sr.s},
            {"H", sr.H},
            {"q", sr.q},
            {"J1", sr.J1},
            {"kernel_dim", sr.kernel_dim},
            {"solution_dim", sr.solution_dim},
            {"constraint_free_parameters", sr.constraint_free_parameters},
            {"unstable_root_count", sr.unstable_root_count},
            {"naive_root_count_verdict", sr.naive_root_count_verdict},
            {"free_slots", slots_to_json(sr.free_slots)},
            {"inert_slots", slots_to_json(sr.inert_slots)},
            {"inconsistent_column", nullptr},
            {"notes", sr.notes}};
  if (sr.inconsistent_column) j["inconsistent_column"] = *sr.inconsistent_column;
  if (sr.classification == Classification::no_causal_solution) return j;
  const std::size_t s = static_cast<std::size_t>(sr.s), q = static_cast<std::size_t>(sr.q);
  json h = json::array(), rev = json::array();
  for (int l = 0; l < sr.H; ++l) {
    h.push_back(matrix_to_json(sr.h.block(static_cast<std::size_t>(l) * s, 0, s, q)));
    rev.push_back(matrix_to_json(sr.revisions.block(static_cast<std::size_t>(l) * s, 0, s, q)));
  }
  j["h"] = h;
  j["revisions"] = rev;
  j["h_particular"] = matrix_to_json(sr.h_particular);
  j["kernel_basis"] = vectors_to_json(sr.kernel_basis);
  j["kernel_point"] = sr.kernel_point;
  j["A_theta"] = poly_matrix_to_json(sr.A_theta);
  j["transfer"] = {{"numerator", poly_matrix_to_json(sr.transfer_num)},
                   {"denominator", poly_to_json(sr.transfer_den)}};
  j["factorization"] = {{"alpha_u", sr.factorization.alpha_u},
                        {"alpha_s", sr.factorization.alpha_s},
                        {"phi_u", polys_to_json(sr.factorization.phi_u)},
                        {"phi_s", polys_to_json(sr.factorization.phi_s)},
                        {"pi_u", poly_matrix_to_json(sr.factorization.pi_u)},
                        {"pi_s", poly_matrix_to_json(sr.factorization.pi_s)}};
  return j;
}

json verify_to_json(const VerifyReport &v) {
  json j = {{"ok", v.ok},
            {"max_lag", v.max_lag},
            {"residual_ok", v.residual_ok},
            {"first_bad_lag", nullptr},
            {"first_bad_entry", nullptr},
            {"first_bad_value", nullptr},
            {"predetermined_ok", v.predetermined_ok},
            {"predetermined_checked", v.predetermined_checked},
            {"predetermined_inert", v.predetermined_inert},
            {"first_coefficients_ok", v.first_coefficients_ok},
            {"denominator_stable", v.denominator_stable},
            {"wold_horizon", v.wold_horizon},
            {"messages", v.messages}};
  if (v.first_bad_lag) j["first_bad_lag"] = *v.first_bad_lag;
  if (v.first_bad_entry) j["first_bad_entry"] = {v.first_bad_entry->first, v.first_bad_entry->second};
  if (v.first_bad_value) j["first_bad_value"] = rational_to_json(*v.first_bad_value);
  return j;
}

json simulation_to_json(const SimulationReport &r) {
  return {{"T", r.T},
          {"seed", r.seed},
          {"lags", r.lags},
          {"s", r.s},
          {"q", r.q},
          {"layout", "row-major s x s per lag, Gamma_l = E[y_t y_{t-l}']"},
          {"sample_autocov", r.sample_autocov},
          {"std_error", r.std_error},
          {"exact_autocov", r.exact_autocov}};
}

json probe_to_json(const ProbeReport &p) {
  json ranks = json::array(), errors = json::array();
  for (std::size_t i = 0; i < p.trial_ranks.size(); ++i) {
    ranks.push_back(p.trial_ranks[i] ? json(*p.trial_ranks[i]) : json(nullptr));
    if (!p.trial_errors[i].empty()) errors.push_back({{"trial", i}, {"error", p.trial_errors[i]}});
  }
  json j = {{"supplied_rank", p.supplied_rank},
            {"trial_ranks", ranks},
            {"trial_errors", errors},
            {"modal_rank", nullptr},
            {"flagged_non_generic", p.flagged_non_generic}};
  if (p.modal_rank) j["modal_rank"] = *p.modal_rank;
  return j;
}

std::string render_text(const json &report) {
  std::ostringstream os;
  render(os, report, "");
  return os.str();
}

} // namespace rexact
