#include "mpc/ledger.hpp"

#include <stdexcept>

namespace ppkex::mpc {

const char* phase_key(Phase p) {
  switch (p) {
    case Phase::Input:
      return "input";
    case Phase::Matching:
      return "matching";
    case Phase::CycleComputation:
      return "cycle_computation";
    case Phase::CycleEvaluation:
      return "cycle_evaluation";
    case Phase::SolutionEvaluation:
      return "solution_evaluation";
  }
  throw std::logic_error("bad phase");
}

// Which sharing domains each part runs in; recorded for bench commentary.
static const char* phase_domains(Phase p) {
  switch (p) {
    case Phase::Input:
      return "boolean";
    case Phase::Matching:
      return "boolean+arithmetic";
    case Phase::CycleComputation:
      return "arithmetic+boolean";
    case Phase::CycleEvaluation:
    case Phase::SolutionEvaluation:
      return "boolean";
  }
  return "";
}

void PhaseLedger::begin_phase(Phase p) { current_ = p; }

void PhaseLedger::add_setup_bytes(std::uint64_t n) {
  if (online_started_[int(current_)]) {
    throw std::logic_error("setup traffic after online start in phase " +
                           std::string(phase_key(current_)));
  }
  stats_[int(current_)].setup_bytes += n;
}

void PhaseLedger::add_round(std::uint64_t payload_both_directions) {
  online_started_[int(current_)] = true;
  stats_[int(current_)].online_bytes += payload_both_directions;
  stats_[int(current_)].rounds += 1;
}

void PhaseLedger::add_reveal(std::uint64_t payload_both_directions) {
  stats_[int(current_)].reveal_bytes += payload_both_directions;
  stats_[int(current_)].reveal_events += 1;
}

void PhaseLedger::add_input_bytes(std::uint64_t n) { stats_[int(current_)].input_bytes += n; }

void PhaseLedger::add_setup_seconds(double s) { stats_[int(current_)].setup_seconds += s; }

void PhaseLedger::add_online_seconds(double s) { stats_[int(current_)].online_seconds += s; }

PhaseStats PhaseLedger::totals() const {
  PhaseStats t;
  for (const auto& s : stats_) {
    t.setup_bytes += s.setup_bytes;
    t.online_bytes += s.online_bytes;
    t.rounds += s.rounds;
    t.reveal_bytes += s.reveal_bytes;
    t.reveal_events += s.reveal_events;
    t.input_bytes += s.input_bytes;
    t.setup_seconds += s.setup_seconds;
    t.online_seconds += s.online_seconds;
  }
  return t;
}

nlohmann::json PhaseLedger::to_json_deterministic() const {
  nlohmann::json out;
  for (int p = 0; p < kPhaseCount; ++p) {
    out[phase_key(Phase(p))] = {
        {"setup_bytes", stats_[p].setup_bytes},
        {"online_bytes", stats_[p].online_bytes},
        {"rounds", stats_[p].rounds},
    };
  }
  return out;
}

nlohmann::json PhaseLedger::to_json_full() const {
  nlohmann::json out;
  for (int p = 0; p < kPhaseCount; ++p) {
    out[phase_key(Phase(p))] = {
        {"setup_bytes", stats_[p].setup_bytes},
        {"online_bytes", stats_[p].online_bytes},
        {"rounds", stats_[p].rounds},
        {"seconds", stats_[p].setup_seconds + stats_[p].online_seconds},
        {"setup_seconds", stats_[p].setup_seconds},
        {"online_seconds", stats_[p].online_seconds},
        {"reveal_bytes", stats_[p].reveal_bytes},
        {"reveal_events", stats_[p].reveal_events},
        {"input_bytes", stats_[p].input_bytes},
        {"domains", phase_domains(Phase(p))},
    };
  }
  return out;
}

}  // namespace ppkex::mpc
