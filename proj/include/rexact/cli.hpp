#pragma once

#include "rexact/dimension.hpp"
#include "rexact/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rexact {

inline constexpr int schema_version = 1;

struct RunConfig {
  std::string command; // analyze | smith | constraints | solve | verify | simulate | probe
  std::string model_path;
  std::optional<Rational> xi; // overrides the model's xi; default 1
  int max_lag = 50;
  int trials = 20;
  std::uint64_t seed = 1;
  int periods = 5000; // simulate only
  std::string output_format = "json";
  std::optional<std::size_t> kernel_index; // nullopt: minimum-norm point
};

// Exit status: 0 success, 1 model error, 2 usage error or unreadable file,
// 3 internal error.
int run(const RunConfig &cfg, std::ostream &out, std::ostream &err);
// Parses argv and calls run().
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

json analyze_to_json(const REModel &model, const ValidationReport &val, const DimensionReport &dim);
json smith_to_json(const PiPolynomial &pi, const SmithForm &sf);
json constraints_to_json(const ConstraintPipeline &p);
json solution_to_json(const SolutionReport &sr);
json verify_to_json(const VerifyReport &v);
json simulation_to_json(const SimulationReport &r);
json probe_to_json(const ProbeReport &p);

// Human-readable rendering of any report document.
std::string render_text(const json &report);

} // namespace rexact
