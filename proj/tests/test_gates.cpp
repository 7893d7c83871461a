#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "support.hpp"

using namespace ppkex;
using namespace ppkex::mpc;

namespace {

std::vector<Ring> fuzz_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ring> out(n);
  // Edge values first, then noise.
  const Ring edges[] = {0, 1, 2, 0x7fffffffu, 0x80000000u, 0xffffffffu, 0xfffffffeu};
  for (std::size_t i = 0; i < n; ++i)
    out[i] = i < std::size(edges) ? edges[i] : static_cast<Ring>(rng());
  return out;
}

std::vector<std::uint32_t> fuzz_bits(std::size_t n, std::uint32_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint32_t mask = width == 32 ? ~0u : (1u << width) - 1;
  std::vector<std::uint32_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) out[i] = 0;
    else if (i == 1) out[i] = mask;
    else out[i] = static_cast<std::uint32_t>(rng()) & mask;
  }
  return out;
}

// Deterministically derive this party's half of a sharing both sides agree on.
ArithShareVec my_arith(int party, std::span<const Ring> vals, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [s0, s1] = share_arith(vals, rng);
  return party == 0 ? s0 : s1;
}

BoolShareVec my_bool(int party, std::span<const std::uint32_t> vals, std::uint32_t width,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto [s0, s1] = share_bool(vals, width, rng);
  return party == 0 ? s0 : s1;
}

}  // namespace

TEST_CASE("linear arithmetic gates are local and exact") {
  const auto x = fuzz_values(300, 11);
  const auto y = fuzz_values(300, 12);
  struct Out {
    std::vector<Ring> z;
    std::uint64_t online_bytes;
    std::uint64_t rounds;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    const std::uint64_t bytes0 = s.ledger().totals().online_bytes;
    const std::uint64_t rounds0 = s.rounds_executed();
    auto xs = my_arith(party, x, 1);
    auto ys = my_arith(party, y, 2);
    // z = (x + y) * 7 - (y - 5) + 3
    auto z = g.add(xs, ys);
    z = g.mul_const(z, 7);
    z = g.sub(z, g.add_const(ys, static_cast<Ring>(-5)));
    z = g.add(z, g.arith_const(z.lanes(), 3));
    Out out;
    out.online_bytes = s.ledger().totals().online_bytes - bytes0;
    out.rounds = s.rounds_executed() - rounds0;
    out.z = g.reveal(z);
    return out;
  });
  CHECK(r0.online_bytes == 0);
  CHECK(r0.rounds == 0);
  REQUIRE(r0.z.size() == 300);
  CHECK(r0.z == r1.z);
  for (std::size_t i = 0; i < 300; ++i)
    CHECK(r0.z[i] == static_cast<Ring>((x[i] + y[i]) * 7 - (y[i] - 5) + 3));
}

TEST_CASE("beaver multiplication matches u32 semantics, one round per batch") {
  const auto x = fuzz_values(4096, 21);
  const auto y = fuzz_values(4096, 22);
  struct Out {
    std::vector<Ring> z;
    std::uint64_t rounds;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    auto xs = my_arith(party, x, 3);
    auto ys = my_arith(party, y, 4);
    const std::uint64_t rounds0 = s.rounds_executed();
    auto z = g.mul(xs, ys);
    Out out;
    out.rounds = s.rounds_executed() - rounds0;
    out.z = g.reveal(z);
    return out;
  });
  CHECK(r0.rounds == 1);
  CHECK(r0.z == r1.z);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(r0.z[i] == static_cast<Ring>(x[i] * y[i]));
}

TEST_CASE("boolean linear gates are local and exact") {
  const std::uint32_t w = 6;
  const auto a = fuzz_bits(70, w, 31);
  const auto b = fuzz_bits(70, w, 32);
  const auto consts = fuzz_bits(70, w, 33);
  struct Out {
    std::vector<std::uint32_t> z;
    std::uint64_t online_bytes;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    const std::uint64_t bytes0 = s.ledger().totals().online_bytes;
    auto as = my_bool(party, a, w, 5);
    auto bs = my_bool(party, b, w, 6);
    auto z = g.xor_(as, bs);
    z = g.not_(z);
    z = g.xor_(z, g.bool_const(z.lanes(), w, 0b101010));
    z = g.xor_const_lanes(z, consts);
    Out out;
    out.online_bytes = s.ledger().totals().online_bytes - bytes0;
    out.z = g.reveal_bits(z);
    return out;
  });
  CHECK(r0.online_bytes == 0);
  CHECK(r0.z == r1.z);
  const std::uint32_t mask = (1u << w) - 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(r0.z[i] == ((~(a[i] ^ b[i]) ^ 0b101010u ^ consts[i]) & mask));
}

TEST_CASE("and or broadcast and mux") {
  const std::uint32_t w = 8;
  const auto a = fuzz_bits(130, w, 41);
  const auto b = fuzz_bits(130, w, 42);
  const auto sel = fuzz_bits(130, 1, 43);
  struct Out {
    std::vector<std::uint32_t> land, lor, bro, muxed;
    std::uint64_t rounds;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    auto as = my_bool(party, a, w, 7);
    auto bs = my_bool(party, b, w, 8);
    auto ss = my_bool(party, sel, 1, 9);
    Out out;
    const std::uint64_t rounds0 = s.rounds_executed();
    auto x = g.and_(as, bs);
    out.rounds = s.rounds_executed() - rounds0;
    out.land = g.reveal_bits(x);
    out.lor = g.reveal_bits(g.or_(as, bs));
    out.bro = g.reveal_bits(g.and_broadcast(ss, as));
    out.muxed = g.reveal_bits(g.mux(ss, as, bs));
    return out;
  });
  CHECK(r0.rounds == 1);
  CHECK(r0.land == r1.land);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(r0.land[i] == (a[i] & b[i]));
    CHECK(r0.lor[i] == (a[i] | b[i]));
    CHECK(r0.bro[i] == (sel[i] ? a[i] : 0u));
    CHECK(r0.muxed[i] == (sel[i] ? a[i] : b[i]));
  }
}

TEST_CASE("or_tree reduces all lanes and groups reduce independently") {
  const std::uint32_t w = 3;
  const auto vals = fuzz_bits(100, w, 51);
  std::vector<std::uint32_t> group(100);
  for (std::size_t i = 0; i < 100; ++i) group[i] = static_cast<std::uint32_t>(i % 7);
  struct Out {
    std::vector<std::uint32_t> all, grouped, single;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    (void)s;
    auto vs = my_bool(party, vals, w, 10);
    Out out;
    out.all = g.reveal_bits(g.or_tree(vs));
    out.grouped = g.reveal_bits(g.or_tree_groups(vs, group, 7));
    // Single-lane input short-circuits to a copy.
    auto one = vs.gather(std::vector<std::uint32_t>{4});
    out.single = g.reveal_bits(g.or_tree(one));
    return out;
  });
  std::uint32_t all = 0;
  std::vector<std::uint32_t> per_group(7, 0);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    all |= vals[i];
    per_group[i % 7] |= vals[i];
  }
  REQUIRE(r0.all.size() == 1);
  CHECK(r0.all[0] == all);
  CHECK(r0.grouped == per_group);
  CHECK(r0.single == std::vector<std::uint32_t>{vals[4]});
  CHECK(r0.grouped == r1.grouped);
}

TEST_CASE("width reductions, full and blocked") {
  const std::uint32_t w = 12;
  const auto vals = fuzz_bits(90, w, 61);
  struct Out {
    std::vector<std::uint32_t> all_and, all_or, blk_and, blk_or;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    (void)s;
    auto vs = my_bool(party, vals, w, 11);
    Out out;
    out.all_and = g.reveal_bits(g.width_and_tree(vs));
    out.all_or = g.reveal_bits(g.width_or_tree(vs));
    out.blk_and = g.reveal_bits(g.width_and_tree_blocks(vs, 3));
    out.blk_or = g.reveal_bits(g.width_or_tree_blocks(vs, 3));
    return out;
  });
  for (std::size_t i = 0; i < vals.size(); ++i) {
    CHECK(r0.all_and[i] == (vals[i] == (1u << w) - 1 ? 1u : 0u));
    CHECK(r0.all_or[i] == (vals[i] != 0 ? 1u : 0u));
    std::uint32_t ba = 0, bo = 0;
    for (int blk = 0; blk < 4; ++blk) {
      const std::uint32_t part = (vals[i] >> (3 * blk)) & 0b111;
      ba |= (part == 0b111 ? 1u : 0u) << blk;
      bo |= (part != 0 ? 1u : 0u) << blk;
    }
    CHECK(r0.blk_and[i] == ba);
    CHECK(r0.blk_or[i] == bo);
  }
  CHECK(r0.blk_and == r1.blk_and);
}

TEST_CASE("comparisons match unsigned semantics") {
  const std::uint32_t w = 16;
  auto a = fuzz_bits(256, w, 71);
  auto b = fuzz_bits(256, w, 72);
  // Force boundary lanes: equal, off-by-one both ways, msb-only diff.
  a[10] = b[10] = 0x1234;
  a[11] = 0x8000; b[11] = 0x7fff;
  a[12] = 0x7fff; b[12] = 0x8000;
  a[13] = 5; b[13] = 4;
  a[14] = 4; b[14] = 5;
  a[15] = 0; b[15] = 0xffff;
  struct Out {
    std::vector<std::uint32_t> eq, gt, eqc, gtc;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    (void)s;
    auto as = my_bool(party, a, w, 12);
    auto bs = my_bool(party, b, w, 13);
    Out out;
    out.eq = g.reveal_bits(g.eq(as, bs));
    out.gt = g.reveal_bits(g.gt(as, bs));
    out.eqc = g.reveal_bits(g.eq_const(as, b));
    out.gtc = g.reveal_bits(g.gt_const(as, b));
    return out;
  });
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(r0.eq[i] == (a[i] == b[i] ? 1u : 0u));
    CHECK(r0.gt[i] == (a[i] > b[i] ? 1u : 0u));
    CHECK(r0.eqc[i] == r0.eq[i]);
    CHECK(r0.gtc[i] == r0.gt[i]);
  }
  CHECK(r0.gt == r1.gt);
}

TEST_CASE("binary adders and subtractor wrap at the lane width") {
  const std::uint32_t w = 10;
  const auto a = fuzz_bits(200, w, 81);
  const auto b = fuzz_bits(200, w, 82);
  struct Out {
    std::vector<std::uint32_t> sum, sum_c, sum_k, diff;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    (void)s;
    auto as = my_bool(party, a, w, 14);
    auto bs = my_bool(party, b, w, 15);
    Out out;
    out.sum = g.reveal_bits(g.add_b(as, bs));
    out.sum_c = g.reveal_bits(g.add_b(as, bs, true));
    out.sum_k = g.reveal_bits(g.add_b_const(as, b));
    out.diff = g.reveal_bits(g.sub_b(as, bs));
    return out;
  });
  const std::uint32_t mask = (1u << w) - 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(r0.sum[i] == ((a[i] + b[i]) & mask));
    CHECK(r0.sum_c[i] == ((a[i] + b[i] + 1) & mask));
    CHECK(r0.sum_k[i] == r0.sum[i]);
    CHECK(r0.diff[i] == ((a[i] - b[i]) & mask));
  }
  CHECK(r0.diff == r1.diff);
}

TEST_CASE("hamming weight counts set planes per lane") {
  const std::uint32_t w = 26;
  const auto vals = fuzz_bits(150, w, 91);
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) {
    (void)s;
    auto vs = my_bool(party, vals, w, 16);
    return g.reveal_bits(g.hamming_weight(vs, 5));
  });
  for (std::size_t i = 0; i < vals.size(); ++i)
    CHECK(r0[i] == static_cast<std::uint32_t>(std::popcount(vals[i])));
  CHECK(r0 == r1);
}

TEST_CASE("share conversions round trip") {
  const auto x = fuzz_values(500, 101);
  struct Out {
    std::vector<std::uint32_t> low16;
    std::vector<Ring> back;
    std::vector<Ring> from_bits;
  };
  const auto bits = fuzz_bits(500, 12, 102);
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    (void)s;
    auto xs = my_arith(party, x, 17);
    Out out;
    auto xb = g.a2b(xs, 16);
    out.low16 = g.reveal_bits(xb);
    out.back = g.reveal(g.b2a(xb));
    auto bs = my_bool(party, bits, 12, 18);
    out.from_bits = g.reveal(g.b2a(bs));
    return out;
  });
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(r0.low16[i] == (x[i] & 0xffff));
    CHECK(r0.back[i] == (x[i] & 0xffff));
  }
  for (std::size_t i = 0; i < bits.size(); ++i) CHECK(r0.from_bits[i] == bits[i]);
  CHECK(r0.back == r1.back);
}

TEST_CASE("full width a2b preserves the ring value") {
  const auto x = fuzz_values(64, 111);
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) {
    (void)s;
    auto xs = my_arith(party, x, 19);
    return g.reveal_bits(g.a2b(xs, 32));
  });
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(r0[i] == x[i]);
  CHECK(r0 == r1);
}

TEST_CASE("reveal accounting: reveals are counted as events, not rounds") {
  const auto x = fuzz_values(8, 121);
  struct Out {
    std::uint64_t reveal_events;
    std::uint64_t rounds;
    std::uint64_t online_bytes;
  };
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) -> Out {
    auto xs = my_arith(party, x, 20);
    const auto before = s.ledger().totals();
    const std::uint64_t rounds0 = s.rounds_executed();
    (void)g.reveal(xs);
    (void)g.reveal_bits(g.a2b(xs, 8));  // a2b costs rounds, the reveal does not
    Out out;
    const auto after = s.ledger().totals();
    out.reveal_events = after.reveal_events - before.reveal_events;
    out.rounds = s.rounds_executed() - rounds0;
    out.online_bytes = after.online_bytes - before.online_bytes;
    return out;
  });
  CHECK(r0.reveal_events == 2);
  CHECK(r1.reveal_events == 2);
  // The only rounds in the window belong to a2b.
  CHECK(r0.rounds >= 1);
  CHECK(r0.online_bytes > 0);
}

TEST_CASE("tally pass prices exactly what execution consumes") {
  const auto a = fuzz_bits(77, 9, 131);
  const auto b = fuzz_bits(77, 9, 132);
  auto [r0, r1] = testsup::run_two_party([&](Session& s, Gates& g, int party) {
    auto as = my_bool(party, a, 9, 21);
    auto bs = my_bool(party, b, 9, 22);
    auto x = g.and_(as, bs);
    x = g.add_b(x, bs);
    auto cmp = g.gt(as, bs);
    auto v = g.b2a(cmp);
    v = g.mul(v, v);
    (void)g.reveal(v);
    return std::pair(s.store().consumed(), s.store().provisioned());
  });
  // After execution every provisioned item was consumed (the fixture
  // fetches exactly the tallied counts) and some material was needed.
  CHECK(r0.first == r0.second);
  CHECK(r1.first == r1.second);
  CHECK(r0.first.arith > 0);
  CHECK(r0.first.bool_words > 0);
  CHECK(r0.first.conv > 0);
  auto [c0, c1] = testsup::run_two_party([&](Session& s, Gates& g, int party) {
    (void)g;
    (void)party;
    return s.store().provisioned();
  });
  CHECK(c0 == TripleCounts{});
}
