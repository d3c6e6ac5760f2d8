#include "rexact/dimension.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace rexact {

namespace {

std::string special_case_of(const REModel &model, const SmithForm &sf, int J1) {
  if (model.H == 0) return "H=0";
  bool all_zero = true, all_equal = true, all_le = true;
  for (int g : sf.g) {
    if (g != 0) all_zero = false;
    if (g != sf.g.front()) all_equal = false;
    if (g > J1) all_le = false;
  }
  if (all_zero) return "g=0";
  if (all_equal && all_le) return "g=const";
  if (all_le) return "g<=J1";
  return "general";
}

} // namespace

DimensionReport dimension_report(const REModel &model) { return dimension_report(model, run_constraints(model)); }

DimensionReport dimension_report(const REModel &model, const ConstraintPipeline &p) {
  DimensionReport r;
  const ConstraintSystem &cs = p.applicable();
  r.flavor = cs.flavor;
  r.rank_w = cs.rank_w;
  r.kernel_dim = cs.kernel.size();
  r.effective_unknowns = cs.effective_unknowns;
  r.q = model.q;
  r.free_parameters = r.kernel_dim * static_cast<std::size_t>(model.q);
  r.J0 = p.pi.J0;
  r.J1 = p.pi.J1;
  r.G = p.sf.total_zero_order();
  r.g = p.sf.g;
  r.phi = p.sf.phi;
  r.special_case = special_case_of(model, p.sf, p.pi.J1);

  if (cs.flavor == Flavor::plain) {
    r.bounds = check_rank_bounds(cs, p.sf, p.zc, p.pi.J1, model.H);
    r.upper_bound = r.bounds->upper_bound;
    r.lower_bound = r.bounds->full_rank_hypothesis ? r.bounds->lower_bound : 0;
  } else {
    r.upper_bound = std::min(cs.C.rows(), cs.C.cols());
    r.lower_bound = 0;
  }

  try {
    RootClassification rc = classify_roots(p.pi.det, model.growth_bound());
    r.unstable_nonzero_roots = static_cast<int>(rc.unstable_roots.size());
    r.distinctness_guaranteed = rc.unstable_roots.empty();
  } catch (const BoundaryRoot &e) {
    r.root_problem = e.what();
    r.distinctness_guaranteed = false;
  }
  return r;
}

ProbeReport genericity_probe(const REModel &model, int trials, std::uint64_t seed) {
  ProbeReport rep;
  rep.supplied_rank = run_constraints(model).applicable().rank_w;
  std::map<std::size_t, int> counts;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    REModel pert = model;
    for (auto &[key, mat] : pert.A)
      for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j)
          if (mat(i, j) != 0) {
            Rational d(num(rng), den(rng));
            d.canonicalize();
            mat(i, j) += d;
            if (mat(i, j) == 0) mat(i, j) = Rational(1, 7);
          }
    try {
      std::size_t rk = run_constraints(pert).applicable().rank_w;
      rep.trial_ranks.push_back(rk);
      rep.trial_errors.emplace_back();
      ++counts[rk];
    } catch (const std::exception &e) {
      rep.trial_ranks.push_back(std::nullopt);
      rep.trial_errors.emplace_back(e.what());
    }
  }
  int best = 0;
  for (const auto &[rk, n] : counts)
    if (n > best) {
      best = n;
      rep.modal_rank = rk;
    }
  rep.flagged_non_generic = rep.modal_rank && *rep.modal_rank != rep.supplied_rank;
  return rep;
}

std::vector<MonotonicityStep> monotonicity_check(const REModel &model) {
  std::vector<MonotonicityStep> steps;
  const std::size_t before = dimension_report(model).free_parameters;
  for (std::size_t i = 0; i + 1 < model.gamma.size(); ++i) {
    if (model.gamma[i] == 0) continue;
    REModel moved = model;
    moved.gamma[i] -= 1;
    moved.gamma[i + 1] += 1;
    MonotonicityStep st;
    st.from = model.gamma;
    st.to = moved.gamma;
    st.free_before = before;
    st.free_after = dimension_report(moved).free_parameters;
    st.increased = st.free_after > st.free_before;
    steps.push_back(std::move(st));
  }
  return steps;
}

} // namespace rexact
