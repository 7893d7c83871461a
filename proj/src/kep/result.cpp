#include "kep/result.hpp"

#include "common/errors.hpp"

namespace ppkex::kep {

nlohmann::json params_json(const domain::PublicParams& params) {
  return {
      {"n_pairs", params.n_pairs},
      {"cycle_len", params.cycle_len},
      {"hla_count", params.hla_count},
      {"ring_bits", params.ring_bits},
  };
}

nlohmann::json weights_json(const domain::CriteriaWeights& w) {
  return {
      {"w_hla", w.w_hla},   {"w_abo", w.w_abo},       {"w_age", w.w_age},
      {"w_sex", w.w_sex},   {"w_weight", w.w_weight}, {"class_a", w.class_a},
      {"class_b", w.class_b}, {"class_c", w.class_c},
  };
}

namespace {

std::uint32_t pick_u32(const nlohmann::json& j, const char* key, std::uint32_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw ValidationError(std::string(key) + " must be unsigned");
  const std::uint64_t raw = v.get<std::uint64_t>();
  if (raw > 0xffffffffull) throw ValidationError(std::string(key) + " out of range");
  return std::uint32_t(raw);
}

}  // namespace

domain::PublicParams params_from_json(const nlohmann::json& j) {
  domain::PublicParams p;
  p.n_pairs = pick_u32(j, "n_pairs", p.n_pairs);
  p.cycle_len = pick_u32(j, "cycle_len", p.cycle_len);
  p.hla_count = pick_u32(j, "hla_count", p.hla_count);
  p.ring_bits = pick_u32(j, "ring_bits", p.ring_bits);
  return p;
}

domain::CriteriaWeights weights_from_json(const nlohmann::json& j) {
  domain::CriteriaWeights w;
  w.w_hla = pick_u32(j, "w_hla", w.w_hla);
  w.w_abo = pick_u32(j, "w_abo", w.w_abo);
  w.w_age = pick_u32(j, "w_age", w.w_age);
  w.w_sex = pick_u32(j, "w_sex", w.w_sex);
  w.w_weight = pick_u32(j, "w_weight", w.w_weight);
  w.class_a = pick_u32(j, "class_a", w.class_a);
  w.class_b = pick_u32(j, "class_b", w.class_b);
  w.class_c = pick_u32(j, "class_c", w.class_c);
  return w;
}

std::string dump_canonical(const nlohmann::json& j) {
  // nlohmann keeps object keys sorted, so a fixed-indent dump is stable.
  return j.dump(2);
}

nlohmann::json result_json(const PipelineConfig& cfg, const PipelineOutcome& outcome,
                           const mpc::PhaseLedger& ledger) {
  const mpc::PhaseStats totals = ledger.totals();
  return {
      {"params", params_json(cfg.params)},
      {"weights", weights_json(cfg.weights)},
      {"cycle_count", outcome.cycle_count},
      {"unique_count", outcome.unique_count},
      {"total_weight", outcome.total_weight},
      {"solution_cycles", outcome.solution_cycles},
      {"phases", ledger.to_json_deterministic()},
      {"totals",
       {
           {"setup_bytes", totals.setup_bytes},
           {"online_bytes", totals.online_bytes},
           {"rounds", totals.rounds},
       }},
  };
}

nlohmann::json ledger_json(int party, const PipelineConfig& cfg, const PipelineOutcome& outcome,
                           const mpc::PhaseLedger& ledger) {
  const mpc::PhaseStats totals = ledger.totals();
  nlohmann::json out = result_json(cfg, outcome, ledger);
  out["party"] = party;
  out["winner_entries"] = outcome.winner_entries;
  out["phases"] = ledger.to_json_full();
  out["totals"] = {
      {"setup_bytes", totals.setup_bytes},
      {"online_bytes", totals.online_bytes},
      {"rounds", totals.rounds},
      {"seconds", totals.setup_seconds + totals.online_seconds},
      {"setup_seconds", totals.setup_seconds},
      {"online_seconds", totals.online_seconds},
      {"reveal_bytes", totals.reveal_bytes},
      {"reveal_events", totals.reveal_events},
      {"input_bytes", totals.input_bytes},
  };
  return out;
}

}  // namespace ppkex::kep
