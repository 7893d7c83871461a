#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "common/bytes.hpp"
#include "domain/types.hpp"
#include "mpc/gates.hpp"
#include "mpc/session.hpp"
#include "mpc/triples.hpp"

namespace ppkex::kep {

// One party's XOR shares of every cohort field, one lane per pair.
// Field layout mirrors the 34-byte-per-pair input blob.
struct SharedCohortHalf {
  mpc::BoolShareVec d_hla;   // donor antigen/typing vector, 50 planes
  mpc::BoolShareVec r_ahla;  // recipient antibodies, 50 planes
  mpc::BoolShareVec r_hla;   // recipient typing, 50 planes
  mpc::BoolShareVec d_bg, r_bg;    // blood groups, 2 planes
  mpc::BoolShareVec d_age, r_age;  // senior flags, 1 plane
  mpc::BoolShareVec d_sex, r_sex;  // 1 = female, 1 plane
  mpc::BoolShareVec d_w, r_w;      // body weights, 16 planes

  std::size_t n_pairs() const { return d_hla.lanes(); }
};

inline constexpr std::size_t kPairBlobBytes = 34;

// Blob format, per pair: donor hla u64, recipient antibody hla u64,
// recipient hla u64 (low 50 bits each, LE), donor bg, recipient bg,
// donor senior flag, recipient senior flag, donor sex, recipient sex
// (one byte each), donor weight u16 LE, recipient weight u16 LE.
Bytes serialize_cohort_half(const SharedCohortHalf& half);
SharedCohortHalf parse_cohort_half(std::span<const std::uint8_t> blob, std::size_t n_pairs);

// Provider-side splitting of a plaintext cohort into two share halves.
std::pair<SharedCohortHalf, SharedCohortHalf> share_cohort(const domain::Cohort& cohort,
                                                           std::mt19937_64& rng);

struct PipelineConfig {
  domain::PublicParams params;
  domain::CriteriaWeights weights;
  // Abort instead of continuing when the revealed cycle count exceeds
  // the public tuple bound for (n, L).
  bool reveal_guard = false;
};

struct PipelineOutcome {
  std::uint64_t cycle_count = 0;
  std::uint64_t unique_count = 0;
  std::uint32_t total_weight = 0;
  // Winner entries exactly as revealed (dummy rows = all n_pairs) and
  // with dummy rows stripped.
  std::vector<std::vector<std::uint32_t>> winner_entries;
  std::vector<std::vector<std::uint32_t>> solution_cycles;
};

// The four secure phases. Each phase runs twice over the same gate
// sequence: a tally pass that prices the dealer material, then the
// execute pass once the material arrived. Control flow depends only on
// public values (n, L and the revealed cycle count), so both passes and
// both parties always stay in lockstep.
class KepPipeline {
 public:
  KepPipeline(mpc::Session& session, mpc::TripleSource& source, PipelineConfig cfg);

  PipelineOutcome run(const SharedCohortHalf& input);

 private:
  struct MatchingOut {
    mpc::BoolShareVec edge_ok;     // 1 plane, n*(n-1) edge lanes
    mpc::ArithShareVec weights;    // n*n lanes, diagonal zero
    mpc::ArithShareVec indicator;  // n*n lanes, diagonal zero
  };

  // Records are weight planes followed by vertex-id planes.
  struct RecordShape {
    std::uint32_t weight_width = 0;
    std::uint32_t entries = 0;  // vertex ids per record
    std::uint32_t id_width = 0;
    std::uint32_t width() const { return weight_width + entries * id_width; }
  };

  MatchingOut phase_matching(const SharedCohortHalf& in);
  std::uint32_t phase_cycle_count(const MatchingOut& m);
  mpc::BoolShareVec phase_cycle_eval(const MatchingOut& m, std::uint32_t cycle_count);
  PipelineOutcome phase_solution(const mpc::BoolShareVec& filtered, std::uint32_t cycle_count);

  // Repeated bubble insertion evaluated as a wavefront: the comparator
  // for insertion c at slot boundary j runs in layer 2c + (k - j) + 1,
  // which preserves the sequential dataflow exactly (ties included)
  // while collapsing the round count from k per insertion to two.
  mpc::BoolShareVec knn_wavefront(const mpc::BoolShareVec& cands, const RecordShape& shape,
                                  std::uint64_t k, const mpc::BoolShareVec& initial_slot);

  mpc::BoolShareVec dummy_record(std::size_t lanes, const RecordShape& shape) const;

  template <typename Body>
  auto run_phase(mpc::Phase phase, Body&& body);

  std::uint32_t edge_lane(std::uint32_t i, std::uint32_t j) const;

  mpc::Session& s_;
  mpc::Gates g_;
  mpc::TripleSource& source_;
  PipelineConfig cfg_;
  std::uint32_t id_width_;  // bits for a vertex id incl. the dummy id n
};

}  // namespace ppkex::kep
