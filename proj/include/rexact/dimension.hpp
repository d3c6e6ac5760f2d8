#pragma once

#include "rexact/constraints.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rexact {

struct DimensionReport {
  Flavor flavor = Flavor::plain;
  std::size_t free_parameters = 0;
  std::size_t kernel_dim = 0;
  std::size_t rank_w = 0;
  std::size_t upper_bound = 0;
  std::size_t lower_bound = 0;
  std::size_t effective_unknowns = 0;
  std::string special_case; // general | g<=J1 | g=const | g=0 | H=0
  bool distinctness_guaranteed = false;
  int J0 = 0, J1 = 0, G = 0, q = 0;
  std::vector<int> g;
  std::vector<Poly> phi;
  std::optional<RankBoundReport> bounds; // plain flavor only
  int unstable_nonzero_roots = 0;
  std::optional<std::string> root_problem;
};

DimensionReport dimension_report(const REModel &model);
DimensionReport dimension_report(const REModel &model, const ConstraintPipeline &pipeline);

struct ProbeReport {
  std::size_t supplied_rank = 0;
  std::vector<std::optional<std::size_t>> trial_ranks; // nullopt: trial model failed
  std::vector<std::string> trial_errors;
  std::optional<std::size_t> modal_rank;
  bool flagged_non_generic = false;
};

ProbeReport genericity_probe(const REModel &model, int trials, std::uint64_t seed);

// Heuristic check, not a theorem: moving one unit of
// gamma mass from group i to group i+1 should not increase free_parameters.
struct MonotonicityStep {
  std::vector<int> from, to;
  std::size_t free_before = 0, free_after = 0;
  bool increased = false;
};

std::vector<MonotonicityStep> monotonicity_check(const REModel &model);

} // namespace rexact
