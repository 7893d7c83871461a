#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "domain/types.hpp"

namespace ppkex::oracle {

// Plaintext mirror of the secure pipeline. Every stage reproduces the
// protocol's observable values exactly (including tie handling and the
// greedy packing), so protocol tests can compare reconstructed shares
// stage by stage. Nothing here touches the MPC engine.

using Matrix = std::vector<std::vector<std::uint32_t>>;

struct Candidate {
  std::uint32_t weight = 0;
  std::vector<std::uint32_t> vertices;  // dummy slots hold n_pairs in every position
};

struct AnchorSet {
  std::uint32_t weight = 0;
  std::vector<std::vector<std::uint32_t>> entries;  // each entry is one cycle (L vertices)
};

// Per-criterion grades. Inputs follow the domain encodings (sex bit 1 =
// female, age group bit 1 = senior, blood groups as 2-bit codes).
std::uint32_t eval_hla(const domain::HlaVector& donor_typing,
                       const domain::HlaVector& recipient_typing,
                       const domain::CriteriaWeights& cw);
std::uint32_t eval_abo(domain::BloodGroup donor, domain::BloodGroup recipient,
                       const domain::CriteriaWeights& cw);
std::uint32_t eval_age(std::uint8_t donor_group, std::uint8_t recipient_group,
                       const domain::CriteriaWeights& cw);
std::uint32_t eval_sex(std::uint8_t donor_sex, std::uint8_t recipient_sex,
                       const domain::CriteriaWeights& cw);
std::uint32_t eval_weight(std::uint32_t donor_kg, std::uint32_t recipient_kg,
                          const domain::CriteriaWeights& cw);

// True when no recipient antibody hits a donor antigen.
bool crossmatch_ok(const domain::HlaVector& donor_antigens,
                   const domain::HlaVector& recipient_antibodies);

// Weighted edge donor(i) -> recipient(j); 0 when the crossmatch blocks.
std::uint32_t edge_weight(const domain::PairRecord& donor_side,
                          const domain::PairRecord& recipient_side,
                          const domain::CriteriaWeights& cw);

// n x n weighted compatibility matrix, diagonal forced to 0.
Matrix compatibility_graph(const domain::Cohort& cohort, const domain::CriteriaWeights& cw);

// trace(U^len) where U is the 0/1 skeleton of the weighted graph.
std::uint64_t cycle_count_trace(const Matrix& comp_graph, std::uint32_t len);

// Number of ordered distinct-vertex tuples: n * (n-1) * ... * (n-len+1).
std::uint64_t total_cycles(std::uint32_t n, std::uint32_t len);

// All ordered distinct-vertex tuples in lexicographic order; weight is the
// closed tour sum when every hop exists, else 0.
std::vector<Candidate> find_cycles(const Matrix& comp_graph, std::uint32_t len);

// Stable top-k selection by repeated bubble insertion, exactly as the
// protocol evaluates it: k+1 slots, new candidate enters at slot k and
// swaps upward while strictly greater. Returns slots 0..k-1, padded with
// (0, dummy) when fewer candidates exist.
std::vector<Candidate> knn_sort(const std::vector<Candidate>& candidates, std::uint64_t k,
                                std::uint32_t len, std::uint32_t n_pairs);

// Zeroes every rotation duplicate (later entry loses), then re-sorts with
// k = unique_k.
std::vector<Candidate> remove_duplicates(const std::vector<Candidate>& sorted,
                                         std::uint64_t unique_k, std::uint32_t len,
                                         std::uint32_t n_pairs);

// True iff no vertex of cycle appears in any entry of set (the dummy id
// n_pairs compares like any other value).
bool disjoint_set(const std::vector<std::vector<std::uint32_t>>& set,
                  const std::vector<std::uint32_t>& cycle);

// Greedy packing per anchor followed by the max-weight scan.
std::vector<AnchorSet> anchor_sets(const std::vector<Candidate>& filtered, std::uint32_t len,
                                   std::uint32_t n_pairs);
AnchorSet find_maximum_set(const std::vector<AnchorSet>& sets);

struct OracleResult {
  Matrix comp_graph;
  Matrix unweighted;
  std::uint64_t cycle_count = 0;   // the value the protocol reveals
  std::uint64_t unique_count = 0;  // cycle_count / len
  std::vector<Candidate> candidates;
  std::vector<Candidate> sorted;
  std::vector<Candidate> filtered;
  std::vector<AnchorSet> sets;
  AnchorSet winner;
  std::vector<std::vector<std::uint32_t>> solution_cycles;  // dummy rows dropped
  std::uint32_t total_weight = 0;
  // trace(U^L) counts vertex-repeating walks once L >= 4; flagged, not fixed.
  bool trace_tuple_divergence = false;
};

OracleResult run_pipeline(const domain::Cohort& cohort, const domain::CriteriaWeights& cw,
                          std::uint32_t cycle_len);

// Simple cycles of length exactly len in canonical form (rotated so the
// smallest vertex leads), enumerated independently of find_cycles.
std::vector<std::vector<std::uint32_t>> canonical_cycles(const Matrix& comp_graph,
                                                         std::uint32_t len);

// Exhaustive maximum-weight disjoint packing over canonical cycles.
// Exponential; intended for n <= 8 documentation of the greedy gap.
std::optional<std::uint64_t> optimal_packing_weight(const Matrix& comp_graph,
                                                    std::uint32_t len,
                                                    std::uint32_t max_n = 8);

}  // namespace ppkex::oracle
