#include "harness/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "common/errors.hpp"

namespace ppkex::harness {

BenchPlan bench_plan_from_json(const nlohmann::json& doc) {
  BenchPlan plan;
  if (doc.contains("cycle_len")) plan.cycle_len = doc.at("cycle_len").get<std::uint32_t>();
  if (doc.contains("sizes")) plan.sizes = doc.at("sizes").get<std::vector<std::uint32_t>>();
  if (doc.contains("seed")) plan.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("transport")) {
    const auto t = doc.at("transport").get<std::string>();
    if (t == "tcp") {
      plan.transport = Transport::Tcp;
    } else if (t == "socketpair") {
      plan.transport = Transport::Socketpair;
    } else {
      throw ValidationError("transport must be 'tcp' or 'socketpair'");
    }
  }
  if (doc.contains("gen")) plan.gen = gen_config_from_json(doc.at("gen"));
  if (doc.contains("weights")) {
    const auto& w = doc.at("weights");
    if (w.contains("w_hla")) plan.weights.w_hla = w.at("w_hla").get<std::uint32_t>();
    if (w.contains("w_abo")) plan.weights.w_abo = w.at("w_abo").get<std::uint32_t>();
    if (w.contains("w_age")) plan.weights.w_age = w.at("w_age").get<std::uint32_t>();
    if (w.contains("w_sex")) plan.weights.w_sex = w.at("w_sex").get<std::uint32_t>();
    if (w.contains("w_weight")) plan.weights.w_weight = w.at("w_weight").get<std::uint32_t>();
  }
  return plan;
}

namespace {

// Least-squares slope of log(y) against log(n); the growth exponent of
// a power law y = c * n^e.
double fit_exponent(const std::vector<BenchRow>& rows, std::uint64_t BenchRow::*field) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& r : rows) {
    const std::uint64_t y = r.*field;
    if (y == 0) continue;
    const double lx = std::log(double(r.n_pairs));
    const double ly = std::log(double(y));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0.0;
  const double denom = double(m) * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (double(m) * sxy - sx * sy) / denom;
}

}  // namespace

BenchReport run_bench(const BenchPlan& plan) {
  BenchReport report;
  for (const std::uint32_t n : plan.sizes) {
    CohortGenConfig gen = plan.gen;
    gen.n_pairs = n;
    gen.seed = plan.seed + n;
    const domain::Cohort cohort = generate_cohort(gen);

    kep::PipelineConfig cfg;
    cfg.params.n_pairs = n;
    cfg.params.cycle_len = plan.cycle_len;
    cfg.weights = plan.weights;

    const auto t0 = std::chrono::steady_clock::now();
    const RunOutput run = run_local(cfg, cohort, plan.seed + 31ull * n, plan.transport);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    BenchRow row;
    row.n_pairs = n;
    row.cycle_count = run.result.at("cycle_count").get<std::uint64_t>();
    row.setup_bytes = run.result.at("totals").at("setup_bytes").get<std::uint64_t>();
    row.online_bytes = run.result.at("totals").at("online_bytes").get<std::uint64_t>();
    row.rounds = run.result.at("totals").at("rounds").get<std::uint64_t>();
    row.seconds = wall;
    row.phase_seconds = nlohmann::json::object();
    for (const auto& [phase, stats] : run.ledgers[0].at("phases").items()) {
      row.phase_seconds[phase] = stats.at("seconds").get<double>();
    }
    report.rows.push_back(std::move(row));
  }
  report.setup_exponent = fit_exponent(report.rows, &BenchRow::setup_bytes);
  report.online_exponent = fit_exponent(report.rows, &BenchRow::online_bytes);
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "n_pairs,cycle_count,setup_bytes,online_bytes,rounds,seconds,"
         "input_s,matching_s,cycle_computation_s,cycle_evaluation_s,solution_evaluation_s\n";
  for (const auto& r : report.rows) {
    out << r.n_pairs << ',' << r.cycle_count << ',' << r.setup_bytes << ',' << r.online_bytes
        << ',' << r.rounds << ',' << r.seconds;
    for (const char* key :
         {"input", "matching", "cycle_computation", "cycle_evaluation", "solution_evaluation"}) {
      out << ',' << (r.phase_seconds.contains(key) ? r.phase_seconds.at(key).get<double>() : 0.0);
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json bench_json(const BenchPlan& plan, const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({
        {"n_pairs", r.n_pairs},
        {"cycle_count", r.cycle_count},
        {"setup_bytes", r.setup_bytes},
        {"online_bytes", r.online_bytes},
        {"rounds", r.rounds},
        {"seconds", r.seconds},
        {"phase_seconds", r.phase_seconds},
    });
  }
  return {
      {"cycle_len", plan.cycle_len},
      {"seed", plan.seed},
      {"transport", plan.transport == Transport::Tcp ? "tcp" : "socketpair"},
      {"rows", rows},
      {"setup_exponent", report.setup_exponent},
      {"online_exponent", report.online_exponent},
  };
}

}  // namespace ppkex::harness
