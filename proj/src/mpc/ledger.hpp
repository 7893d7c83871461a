#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace ppkex::mpc {

// The four algorithmic parts of the pipeline plus input distribution.
enum class Phase : int {
  Input = 0,
  Matching = 1,
  CycleComputation = 2,
  CycleEvaluation = 3,
  SolutionEvaluation = 4,
};

inline constexpr int kPhaseCount = 5;

const char* phase_key(Phase p);

struct PhaseStats {
  std::uint64_t setup_bytes = 0;   // TRIPLES traffic (request + material)
  std::uint64_t online_bytes = 0;  // ROUND payload bytes, both directions
  std::uint64_t rounds = 0;        // completed ROUND exchanges
  std::uint64_t reveal_bytes = 0;  // REVEAL payload bytes, both directions
  std::uint64_t reveal_events = 0; // REVEAL frames sent by this party
  std::uint64_t input_bytes = 0;   // INPUT_SHARE payload bytes received
  double setup_seconds = 0.0;
  double online_seconds = 0.0;
};

// Per-phase traffic accounting. Within a phase, setup bytes may only be
// recorded before the first online round of that phase; the online start
// freezes them.
class PhaseLedger {
 public:
  void begin_phase(Phase p);
  Phase current() const { return current_; }

  void add_setup_bytes(std::uint64_t n);
  void add_round(std::uint64_t payload_both_directions);
  void add_reveal(std::uint64_t payload_both_directions);
  void add_input_bytes(std::uint64_t n);
  void add_setup_seconds(double s);
  void add_online_seconds(double s);

  const PhaseStats& stats(Phase p) const { return stats_[int(p)]; }
  PhaseStats totals() const;

  // Phase map without timings: byte-identical across both parties.
  nlohmann::json to_json_deterministic() const;
  // Full per-party view including seconds and reveal accounting.
  nlohmann::json to_json_full() const;

 private:
  Phase current_ = Phase::Input;
  std::array<PhaseStats, kPhaseCount> stats_{};
  std::array<bool, kPhaseCount> online_started_{};
};

}  // namespace ppkex::mpc
