#include <doctest.h>

#include <algorithm>

#include "common/errors.hpp"
#include "domain/cohort_json.hpp"
#include "harness/harness.hpp"
#include "oracle/oracle.hpp"

using namespace ppkex;
using namespace ppkex::harness;

TEST_CASE("generated cohorts are deterministic, valid and self-incompatible") {
  CohortGenConfig cfg;
  cfg.n_pairs = 20;
  cfg.seed = 5;
  const auto a = generate_cohort(cfg);
  const auto b = generate_cohort(cfg);
  REQUIRE(a.size() == 20);
  CHECK(domain::cohort_to_json(a) == domain::cohort_to_json(b));
  cfg.seed = 6;
  CHECK(domain::cohort_to_json(generate_cohort(cfg)) != domain::cohort_to_json(a));

  for (const auto& pair : a) {
    CHECK(domain::validate_pair(pair).empty());
    // Every pair joins the exchange because its own donor fails the
    // crossmatch against its own recipient.
    CHECK_FALSE(oracle::crossmatch_ok(pair.donor.hla, pair.recipient.ahla));
    CHECK(pair.donor.weight_kg >= cfg.weight_lo_kg);
    CHECK(pair.donor.weight_kg <= cfg.weight_hi_kg);
  }
}

TEST_CASE("generator rejects a broken weight range") {
  CohortGenConfig cfg;
  cfg.weight_lo_kg = 90;
  cfg.weight_hi_kg = 50;
  CHECK_THROWS_AS(generate_cohort(cfg), ValidationError);
}

TEST_CASE("gen config parses partial documents") {
  const auto cfg = gen_config_from_json(nlohmann::json{{"n_pairs", 13}, {"antigen_rate", 0.5}});
  CHECK(cfg.n_pairs == 13);
  CHECK(cfg.antigen_rate == 0.5);
  CHECK(cfg.seed == CohortGenConfig{}.seed);
  CHECK(cfg.weight_hi_kg == CohortGenConfig{}.weight_hi_kg);
}

TEST_CASE("bench plan parsing") {
  const auto plan = bench_plan_from_json(nlohmann::json{
      {"cycle_len", 3},
      {"sizes", {2, 4}},
      {"seed", 9},
      {"transport", "socketpair"},
      {"gen", {{"antibody_rate", 0.2}}},
      {"weights", {{"w_hla", 7}}},
  });
  CHECK(plan.cycle_len == 3);
  CHECK(plan.sizes == std::vector<std::uint32_t>{2, 4});
  CHECK(plan.seed == 9);
  CHECK(plan.transport == Transport::Socketpair);
  CHECK(plan.gen.antibody_rate == 0.2);
  CHECK(plan.weights.w_hla == 7);
  CHECK(plan.weights.w_abo == domain::CriteriaWeights{}.w_abo);

  CHECK_THROWS_AS(bench_plan_from_json(nlohmann::json{{"transport", "carrier pigeon"}}),
                  ValidationError);
}

TEST_CASE("a small bench sweep produces rows, exponents and csv") {
  BenchPlan plan;
  plan.cycle_len = 2;
  plan.sizes = {2, 3, 4};
  plan.seed = 11;
  plan.transport = Transport::Socketpair;
  const auto report = run_bench(plan);
  REQUIRE(report.rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(report.rows[i].n_pairs == plan.sizes[i]);
    CHECK(report.rows[i].online_bytes > 0);
    CHECK(report.rows[i].setup_bytes > 0);
    CHECK(report.rows[i].rounds > 0);
    CHECK(report.rows[i].seconds > 0.0);
  }
  // Communication grows with n.
  CHECK(report.rows[2].online_bytes > report.rows[0].online_bytes);
  CHECK(report.online_exponent > 0.0);
  CHECK(report.setup_exponent > 0.0);

  const std::string csv = bench_csv(report);
  CHECK(csv.rfind("n_pairs,cycle_count,setup_bytes,online_bytes,rounds,seconds,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows

  const auto doc = bench_json(plan, report);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["transport"] == "socketpair");
  CHECK(doc["rows"][1]["n_pairs"] == 3);
  CHECK(doc["rows"][1]["phase_seconds"].contains("matching"));
}
