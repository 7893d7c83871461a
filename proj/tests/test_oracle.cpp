#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "domain/types.hpp"
#include "harness/harness.hpp"
#include "oracle/oracle.hpp"

using namespace ppkex;
using domain::BloodGroup;
using domain::CriteriaWeights;
using domain::HlaVector;
using oracle::Matrix;

namespace {

HlaVector bits(std::initializer_list<int> set_positions) {
  HlaVector v;
  for (int p : set_positions) v.set(static_cast<std::size_t>(p));
  return v;
}

// Random 0/1 adjacency with zero diagonal, then an arbitrary positive weight
// on each present edge so weighted and skeleton behaviors can diverge.
Matrix random_graph(std::uint32_t n, double density, std::mt19937_64& rng) {
  Matrix g(n, std::vector<std::uint32_t>(n, 0));
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<std::uint32_t> w(1, 40);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j && edge(rng)) g[i][j] = w(rng);
  return g;
}

}  // namespace

TEST_CASE("hla grading by mismatch count") {
  CriteriaWeights cw;
  const HlaVector donor = bits({0, 1, 2, 3, 4, 5});
  // k mismatches = donor profile with k slots toggled.
  auto with_mismatches = [&](int k) {
    HlaVector r = donor;
    for (int i = 0; i < k; ++i) r.flip(static_cast<std::size_t>(10 + i));
    return r;
  };
  CHECK(oracle::eval_hla(donor, with_mismatches(0), cw) == cw.class_a);
  CHECK(oracle::eval_hla(donor, with_mismatches(1), cw) == cw.class_b);
  CHECK(oracle::eval_hla(donor, with_mismatches(2), cw) == cw.class_b);
  CHECK(oracle::eval_hla(donor, with_mismatches(3), cw) == cw.class_c);
  CHECK(oracle::eval_hla(donor, with_mismatches(4), cw) == cw.class_c);
  CHECK(oracle::eval_hla(donor, with_mismatches(5), cw) == 0);
  CHECK(oracle::eval_hla(donor, with_mismatches(40), cw) == 0);
  // Symmetric difference counts both directions.
  CHECK(oracle::eval_hla(bits({0, 1}), bits({2}), cw) == 0 + cw.class_c);
}

TEST_CASE("abo compatibility covers the full 4x4 table") {
  CriteriaWeights cw;
  const BloodGroup groups[4] = {BloodGroup::O, BloodGroup::A, BloodGroup::B, BloodGroup::AB};
  // Donor antigens must be a subset of the recipient's: O donates to all,
  // AB only to AB.
  const bool compat[4][4] = {
      //           r=O     A      B      AB
      /* d=O  */ {true, true, true, true},
      /* d=A  */ {false, true, false, true},
      /* d=B  */ {false, false, true, true},
      /* d=AB */ {false, false, false, true},
  };
  for (int d = 0; d < 4; ++d)
    for (int r = 0; r < 4; ++r)
      CHECK(oracle::eval_abo(groups[d], groups[r], cw) == (compat[d][r] ? cw.class_a : 0u));
}

TEST_CASE("age and sex grading tables") {
  CriteriaWeights cw;
  // Age group: 0 junior, 1 senior. Junior organ into senior recipient is
  // acceptable (class B); the reverse scores nothing.
  CHECK(oracle::eval_age(0, 0, cw) == cw.class_a);
  CHECK(oracle::eval_age(1, 1, cw) == cw.class_a);
  CHECK(oracle::eval_age(0, 1, cw) == cw.class_b);
  CHECK(oracle::eval_age(1, 0, cw) == 0);

  // Sex bit: 1 female. Female organ into male recipient scores nothing.
  CHECK(oracle::eval_sex(0, 0, cw) == cw.class_a);
  CHECK(oracle::eval_sex(1, 1, cw) == cw.class_a);
  CHECK(oracle::eval_sex(0, 1, cw) == cw.class_b);
  CHECK(oracle::eval_sex(1, 0, cw) == 0);

  CHECK(oracle::eval_weight(80, 80, cw) == cw.class_a);
  CHECK(oracle::eval_weight(81, 80, cw) == cw.class_a);
  CHECK(oracle::eval_weight(79, 80, cw) == 0);
}

TEST_CASE("crossmatch and edge weight composition") {
  CriteriaWeights cw;
  CHECK(oracle::crossmatch_ok(bits({1, 7}), bits({2, 8})));
  CHECK_FALSE(oracle::crossmatch_ok(bits({1, 7}), bits({7})));

  domain::PairRecord donor_side;
  donor_side.donor.hla = bits({0, 1});
  donor_side.donor.bg = BloodGroup::O;
  donor_side.donor.age_years = 30;   // junior
  donor_side.donor.sex = 0;          // male
  donor_side.donor.weight_kg = 90;

  domain::PairRecord recipient_side;
  recipient_side.recipient.ahla = bits({11});  // no hit on donor antigens
  recipient_side.recipient.hla = bits({0, 1, 2});
  recipient_side.recipient.bg = BloodGroup::A;
  recipient_side.recipient.age_years = 60;  // senior
  recipient_side.recipient.sex = 1;         // female
  recipient_side.recipient.weight_kg = 70;

  // hla: 1 mismatch -> class_b; abo O->A -> class_a; age 0->1 -> class_b;
  // sex male->female -> class_b; weight 90 >= 70 -> class_a.
  const std::uint32_t expect = 1 + cw.w_hla * cw.class_b + cw.w_abo * cw.class_a +
                               cw.w_age * cw.class_b + cw.w_sex * cw.class_b +
                               cw.w_weight * cw.class_a;
  CHECK(oracle::edge_weight(donor_side, recipient_side, cw) == expect);

  // Positive crossmatch wipes the edge regardless of the grades.
  recipient_side.recipient.ahla = bits({1});
  CHECK(oracle::edge_weight(donor_side, recipient_side, cw) == 0);

  // Worst grades everywhere still leave the base weight of 1.
  recipient_side.recipient.ahla = bits({});
  recipient_side.recipient.hla = bits({0, 1, 40, 41, 42, 43, 44});
  recipient_side.recipient.bg = BloodGroup::B;  // O->B is fine, use AB donor instead
  donor_side.donor.bg = BloodGroup::AB;
  donor_side.donor.age_years = 60;
  recipient_side.recipient.age_years = 30;
  donor_side.donor.sex = 1;
  recipient_side.recipient.sex = 0;
  donor_side.donor.weight_kg = 50;
  recipient_side.recipient.weight_kg = 80;
  CHECK(oracle::edge_weight(donor_side, recipient_side, cw) == 1);
}

TEST_CASE("compatibility graph zeroes the diagonal") {
  CriteriaWeights cw;
  harness::CohortGenConfig gen;
  gen.n_pairs = 6;
  gen.seed = 77;
  const auto cohort = harness::generate_cohort(gen);
  const auto g = oracle::compatibility_graph(cohort, cw);
  REQUIRE(g.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(g[i][i] == 0);
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(g[i][j] == (i == j ? 0 : oracle::edge_weight(cohort[i], cohort[j], cw)));
  }
}

TEST_CASE("trace count equals len times the simple cycle count for len 2 and 3") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(trial % 6);
    const auto g = random_graph(n, 0.45, rng);
    for (std::uint32_t len : {2u, 3u}) {
      const auto canon = oracle::canonical_cycles(g, len);
      CHECK(oracle::cycle_count_trace(g, len) == len * canon.size());
    }
  }
}

TEST_CASE("trace diverges from distinct tuples once len reaches 4") {
  // A single 2-cycle yields the closed walk a,b,a,b of length 4, which the
  // trace counts but no distinct-vertex tuple covers.
  Matrix g(4, std::vector<std::uint32_t>(4, 0));
  g[0][1] = 5;
  g[1][0] = 5;
  CHECK(oracle::cycle_count_trace(g, 4) == 2);
  const auto res_graphless = oracle::find_cycles(g, 4);
  std::uint64_t valid = 0;
  for (const auto& c : res_graphless) valid += c.weight > 0;
  CHECK(valid == 0);
}

TEST_CASE("total cycles formula") {
  CHECK(oracle::total_cycles(4, 2) == 12);
  CHECK(oracle::total_cycles(5, 3) == 60);
  CHECK(oracle::total_cycles(2, 3) == 0);
  CHECK(oracle::total_cycles(64, 4) == 64ull * 63 * 62 * 61);
}

TEST_CASE("find_cycles enumerates every distinct tuple with closed-tour weights") {
  std::mt19937_64 rng(99);
  const auto g = random_graph(5, 0.5, rng);
  const auto cands = oracle::find_cycles(g, 3);
  REQUIRE(cands.size() == oracle::total_cycles(5, 3));
  std::set<std::vector<std::uint32_t>> seen;
  for (const auto& c : cands) {
    REQUIRE(c.vertices.size() == 3);
    seen.insert(c.vertices);
    const std::uint32_t w01 = g[c.vertices[0]][c.vertices[1]];
    const std::uint32_t w12 = g[c.vertices[1]][c.vertices[2]];
    const std::uint32_t w20 = g[c.vertices[2]][c.vertices[0]];
    const bool closed = w01 > 0 && w12 > 0 && w20 > 0;
    CHECK(c.weight == (closed ? w01 + w12 + w20 : 0u));
  }
  CHECK(seen.size() == cands.size());
}

TEST_CASE("knn_sort keeps earlier candidates above later equals and pads with dummies") {
  auto cand = [](std::uint32_t w, std::uint32_t a, std::uint32_t b) {
    return oracle::Candidate{w, {a, b}};
  };
  const std::vector<oracle::Candidate> in = {cand(5, 0, 1), cand(9, 1, 2), cand(5, 2, 3),
                                             cand(7, 3, 0)};
  const auto top = oracle::knn_sort(in, 6, 2, 4);
  REQUIRE(top.size() == 6);
  CHECK(top[0].weight == 9);
  CHECK(top[1].weight == 7);
  // The two weight-5 entries keep their arrival order.
  CHECK(top[2].vertices == std::vector<std::uint32_t>{0, 1});
  CHECK(top[3].vertices == std::vector<std::uint32_t>{2, 3});
  CHECK(top[4].weight == 0);
  CHECK(top[4].vertices == std::vector<std::uint32_t>{4, 4});
  CHECK(top[5].vertices == std::vector<std::uint32_t>{4, 4});
}

TEST_CASE("remove_duplicates zeroes rotations but keeps distinct equal-weight cycles") {
  auto cand = [](std::uint32_t w, std::vector<std::uint32_t> v) {
    return oracle::Candidate{w, std::move(v)};
  };
  // (0,1) and (1,0) are the same 2-cycle; (2,3) merely shares the weight.
  const std::vector<oracle::Candidate> sorted = {cand(8, {0, 1}), cand(8, {1, 0}),
                                                 cand(8, {2, 3}), cand(3, {3, 2})};
  const auto out = oracle::remove_duplicates(sorted, 2, 2, 4);
  REQUIRE(out.size() == 2);
  CHECK(out[0].vertices == std::vector<std::uint32_t>{0, 1});
  CHECK(out[1].vertices == std::vector<std::uint32_t>{2, 3});
  CHECK(out[0].weight == 8);
  CHECK(out[1].weight == 8);
}

TEST_CASE("anchor_sets packs greedily per anchor and the max scan breaks ties first-wins") {
  auto cand = [](std::uint32_t w, std::vector<std::uint32_t> v) {
    return oracle::Candidate{w, std::move(v)};
  };
  // Anchoring on the heavy middle cycle blocks both side cycles, so the
  // best packing anchors on a lighter entry.
  const std::vector<oracle::Candidate> filtered = {cand(10, {1, 2}), cand(7, {0, 1}),
                                                   cand(7, {2, 3})};
  const auto sets = oracle::anchor_sets(filtered, 2, 4);
  REQUIRE(sets.size() == 3);
  CHECK(sets[0].weight == 10);
  CHECK(sets[1].weight == 14);
  CHECK(sets[2].weight == 14);
  const auto best = oracle::find_maximum_set(sets);
  CHECK(best.weight == 14);
  // Strict comparison keeps the first of the two weight-14 sets.
  CHECK(best.entries == sets[1].entries);
  // Blocked slots are dummy-filled, never dropped.
  REQUIRE(sets[0].entries.size() == 3);
  CHECK(sets[0].entries[1] == std::vector<std::uint32_t>{4, 4});
}

TEST_CASE("disjoint_set treats the dummy id like any other value") {
  CHECK(oracle::disjoint_set({{0, 1}}, {2, 3}));
  CHECK_FALSE(oracle::disjoint_set({{0, 1}}, {1, 2}));
  // Two dummy rows collide on the dummy id; the pipeline relies on dummies
  // being appended, not tested, so this stays a plain value comparison.
  CHECK_FALSE(oracle::disjoint_set({{4, 4}}, {4, 4}));
}

TEST_CASE("pipeline output is a disjoint packing that dominates every single cycle") {
  harness::CohortGenConfig gen;
  gen.n_pairs = 7;
  domain::CriteriaWeights cw;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen.seed = seed;
    const auto cohort = harness::generate_cohort(gen);
    for (std::uint32_t len : {2u, 3u}) {
      const auto res = oracle::run_pipeline(cohort, cw, len);
      CHECK(res.cycle_count == oracle::cycle_count_trace(res.comp_graph, len));
      CHECK(res.unique_count == res.cycle_count / len);

      // Solution cycles are vertex-disjoint real cycles of the graph.
      std::set<std::uint32_t> used;
      std::uint64_t sum = 0;
      for (const auto& cyc : res.solution_cycles) {
        REQUIRE(cyc.size() == len);
        for (std::uint32_t t = 0; t < len; ++t) {
          CHECK(used.insert(cyc[t]).second);
          const std::uint32_t w = res.comp_graph[cyc[t]][cyc[(t + 1) % len]];
          CHECK(w > 0);
          sum += w;
        }
      }
      CHECK(sum == res.total_weight);

      // Dominance: at least as heavy as the best individual cycle.
      std::uint32_t best_single = 0;
      for (const auto& c : res.filtered) best_single = std::max(best_single, c.weight);
      CHECK(res.total_weight >= best_single);

      // Never beats the exhaustive optimum.
      const auto opt = oracle::optimal_packing_weight(res.comp_graph, len);
      REQUIRE(opt.has_value());
      CHECK(res.total_weight <= *opt);
      CHECK_FALSE(res.trace_tuple_divergence);
    }
  }
}

TEST_CASE("pipeline handles a cohort with no cycles") {
  // Two pairs whose donors both carry an antigen the other recipient
  // rejects: the graph is empty.
  domain::PairRecord a;
  a.donor.hla = bits({0});
  a.recipient.ahla = bits({1});
  a.recipient.hla = bits({0});
  a.donor.weight_kg = a.recipient.weight_kg = 70;
  domain::PairRecord b;
  b.donor.hla = bits({1});
  b.recipient.ahla = bits({0});
  b.recipient.hla = bits({1});
  b.donor.weight_kg = b.recipient.weight_kg = 70;
  const domain::Cohort cohort = {a, b};
  const auto res = oracle::run_pipeline(cohort, domain::CriteriaWeights{}, 2);
  CHECK(res.cycle_count == 0);
  CHECK(res.unique_count == 0);
  CHECK(res.total_weight == 0);
  CHECK(res.solution_cycles.empty());
}
