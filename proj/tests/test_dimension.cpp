#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include "rexact/dimension.hpp"

using namespace rexact;
using namespace rexact::testing;

TEST_CASE("sims dimension report") {
  REModel m = load_model(std::string(REXACT_MODELS_DIR) + "/sims.json");
  DimensionReport d = dimension_report(m);
  CHECK(d.flavor == Flavor::predetermined);
  CHECK(d.free_parameters == 2);
  CHECK(d.kernel_dim == 1);
  CHECK(d.G == 1);
  CHECK(d.g == std::vector<int>{0, 1});
  CHECK(d.J0 == -1);
  CHECK(d.J1 == 1);
  CHECK(d.special_case == "g<=J1");
  CHECK(d.unstable_nonzero_roots == 1);
  CHECK_FALSE(d.distinctness_guaranteed);
  CHECK_FALSE(d.root_problem);
}

TEST_CASE("g = 0 plain models have J1 * s * q free parameters") {
  Rng rng(51);
  int seen = 0;
  while (seen < 25) {
    REModel m = generic_model(rng, CorpusOptions{});
    DimensionReport d = dimension_report(m);
    if (d.G != 0) continue;
    ++seen;
    CHECK(d.special_case == "g=0");
    CHECK(d.free_parameters == static_cast<std::size_t>(d.J1 * m.s * m.q));
    REQUIRE(d.bounds);
    CHECK(d.bounds->upper_ok);
  }
}

TEST_CASE("boundary roots are reported, not thrown, by the dimension report") {
  REModel m = parse_model_text(R"({"s":1,"K":0,"H":1,"q":1,"gamma":[1,0],
    "A":[{"k":0,"h":0,"matrix":[["-1"]]},{"k":0,"h":1,"matrix":[["1"]]}],"wold":[[["1"]]]})");
  DimensionReport d = dimension_report(m);
  REQUIRE(d.root_problem);
  CHECK(d.root_problem->find("unit circle") != std::string::npos);
}

TEST_CASE("genericity probe is deterministic for a fixed seed") {
  Rng rng(52);
  for (int t = 0; t < 8; ++t) {
    REModel m = generic_model(rng, CorpusOptions{});
    ProbeReport a = genericity_probe(m, 6, 99), b = genericity_probe(m, 6, 99);
    CHECK(a.trial_ranks == b.trial_ranks);
    CHECK(a.supplied_rank == run_constraints(m).applicable().rank_w);
  }
  REModel m = load_model(std::string(REXACT_MODELS_DIR) + "/sims.json");
  ProbeReport p = genericity_probe(m, 10, 7);
  CHECK(p.trial_ranks.size() == 10);
}

TEST_CASE("moving gamma mass to later groups lowers the g = 0 count by q per unit") {
  Rng rng(53);
  int seen = 0;
  while (seen < 10) {
    CorpusOptions opt;
    opt.predetermined = true;
    REModel m = generic_model(rng, opt);
    if (dimension_report(m).G != 0) continue;
    ++seen;
    for (const auto &st : monotonicity_check(m)) {
      CHECK_FALSE(st.increased);
      CHECK(st.free_before == st.free_after + static_cast<std::size_t>(m.q));
    }
  }
}
