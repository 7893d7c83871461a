#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "domain/types.hpp"
#include "kep/protocols.hpp"
#include "net/node.hpp"

namespace ppkex::harness {

// Synthetic cohort knobs. Rates are per-slot probabilities for the HLA
// vectors; blood groups follow a typical population distribution.
struct CohortGenConfig {
  std::uint32_t n_pairs = 8;
  std::uint64_t seed = 1;
  double antigen_rate = 0.15;
  double antibody_rate = 0.09;
  double senior_rate = 0.35;
  double female_rate = 0.5;
  std::uint32_t weight_lo_kg = 45;
  std::uint32_t weight_hi_kg = 110;
};

domain::Cohort generate_cohort(const CohortGenConfig& cfg);

CohortGenConfig gen_config_from_json(const nlohmann::json& doc);

enum class Transport { Socketpair, Tcp };

struct RunOutput {
  nlohmann::json result;                              // agreed document
  nlohmann::json ledgers[2];                          // per compute server
  kep::PipelineOutcome outcomes[2];                   // must agree
  std::vector<mpc::TranscriptEntry> transcripts[2];
};

// Drives all four roles in one process (threads over socketpairs or
// loopback TCP): the same code paths a distributed deployment runs.
// The cohort is split into n_providers contiguous slices.
RunOutput run_local(const kep::PipelineConfig& cfg, const domain::Cohort& cohort,
                    std::uint64_t seed, Transport transport, std::uint32_t n_providers = 1);

// Benchmark plan: one cycle length, a list of cohort sizes, a shared
// generator configuration.
struct BenchPlan {
  std::uint32_t cycle_len = 2;
  std::vector<std::uint32_t> sizes = {4, 8, 16};
  std::uint64_t seed = 1;
  Transport transport = Transport::Tcp;
  CohortGenConfig gen;
  domain::CriteriaWeights weights;
};

BenchPlan bench_plan_from_json(const nlohmann::json& doc);

struct BenchRow {
  std::uint32_t n_pairs = 0;
  std::uint64_t cycle_count = 0;
  std::uint64_t setup_bytes = 0;
  std::uint64_t online_bytes = 0;
  std::uint64_t rounds = 0;
  double seconds = 0.0;
  nlohmann::json phase_seconds;  // per-phase breakdown, party 0
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double setup_exponent = 0.0;   // least-squares slope of log bytes vs log n
  double online_exponent = 0.0;
};

BenchReport run_bench(const BenchPlan& plan);

std::string bench_csv(const BenchReport& report);
nlohmann::json bench_json(const BenchPlan& plan, const BenchReport& report);

}  // namespace ppkex::harness
