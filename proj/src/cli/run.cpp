#include "rexact/cli.hpp"

#include "CLI11.hpp"

#include <ostream>
#include <sstream>

namespace rexact {

namespace {

const std::vector<std::string> commands = {"analyze", "smith", "constraints", "solve", "verify", "simulate", "probe"};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

json dispatch(const RunConfig &cfg, const REModel &model) {
  SolveOptions so;
  so.xi = cfg.xi ? cfg.xi : model.xi;
  so.kernel_index = cfg.kernel_index;
  const std::string &c = cfg.command;
  if (c == "analyze") {
    ValidationReport val = validate_semantics(model);
    REModel m = model;
    m.xi = so.xi;
    return analyze_to_json(model, val, dimension_report(m));
  }
  if (c == "smith") {
    PiPolynomial pi = build_pi(model);
    return smith_to_json(pi, smith_form(pi.pi));
  }
  if (c == "constraints") return constraints_to_json(run_constraints(model));
  if (c == "probe") {
    if (cfg.trials < 1) throw UsageError("--trials must be positive");
    return probe_to_json(genericity_probe(model, cfg.trials, cfg.seed));
  }
  SolutionReport sr = solve_causal(model, so);
  json j = {{"solution", solution_to_json(sr)}};
  if (c == "verify") {
    if (cfg.max_lag < model.H)
      throw UsageError("--max-lag must be at least H = " + std::to_string(model.H));
    j["verify"] = verify_to_json(verify_solution(model, sr, cfg.max_lag));
  } else if (c == "simulate") {
    if (sr.classification == Classification::no_causal_solution)
      throw UnsupportedModel("no causal solution to simulate");
    j["simulation"] = simulation_to_json(simulate(sr, cfg.periods, cfg.seed));
  }
  return j;
}

} // namespace

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  try {
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
      throw UsageError("unknown command '" + cfg.command + "'");
    if (cfg.output_format != "json" && cfg.output_format != "text")
      throw UsageError("--format must be json or text");
    if (cfg.xi && *cfg.xi < 1) throw UsageError("--xi must be >= 1");
    REModel model;
    try {
      model = load_model(cfg.model_path);
    } catch (const std::ios_base::failure &e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    json body = dispatch(cfg, model);
    json report = {{"schema_version", schema_version}, {"command", cfg.command}, {"report", body}};
    if (cfg.output_format == "json")
      out << report.dump(2) << "\n";
    else
      out << render_text(report);
    if (cfg.command == "verify" && !body["verify"]["ok"].get<bool>()) {
      err << "verification failed\n";
      return 1;
    }
    return 0;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError &e) {
    err << "model error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError &e) {
    err << "model error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError &e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact analysis of linear rational-expectations models"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string xi, kernel_point = "min-norm";
  for (const auto &name : commands) {
    CLI::App *sub = app.add_subcommand(name, "run the " + name + " stage");
    sub->add_option("model", cfg.model_path, "model JSON file")->required();
    sub->add_option("--xi", xi, "growth bound xi >= 1 (rational)");
    sub->add_option("--max-lag", cfg.max_lag, "verify: number of lags checked")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "probe: number of random parameter points")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "probe/simulate: RNG seed")->capture_default_str();
    sub->add_option("--periods", cfg.periods, "simulate: sample length")->capture_default_str();
    sub->add_option("--format", cfg.output_format, "json or text")->capture_default_str();
    sub->add_option("--kernel-point", kernel_point, "index or min-norm")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    std::ostringstream o, d;
    const int code = app.exit(e, o, d);
    out << o.str();
    err << d.str();
    return code == 0 ? 0 : 2;
  }
  for (const auto *sub : app.get_subcommands()) cfg.command = sub->get_name();
  try {
    if (!xi.empty()) cfg.xi = parse_rational(xi);
    if (kernel_point != "min-norm") {
      std::size_t used = 0;
      const unsigned long long idx = std::stoull(kernel_point, &used);
      if (used != kernel_point.size()) throw std::invalid_argument(kernel_point);
      cfg.kernel_index = static_cast<std::size_t>(idx);
    }
  } catch (const std::exception &e) {
    err << "usage error: bad flag value (" << e.what() << ")\n";
    return 2;
  }
  return run(cfg, out, err);
}

} // namespace rexact
