#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "mpc/shares.hpp"

using namespace ppkex::mpc;

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(9) == 4);
  CHECK(ceil_log2(65) == 7);
}

TEST_CASE("arithmetic share round trip and gather/scatter") {
  std::mt19937_64 rng(7);
  std::vector<Ring> values(200);
  for (auto& v : values) v = static_cast<Ring>(rng());
  auto [s0, s1] = share_arith(values, rng);
  REQUIRE(s0.lanes() == values.size());
  CHECK(reconstruct_arith(s0, s1) == values);
  // Shares differ from the plaintext (vanishing odds of 200 collisions).
  CHECK(s0.v != values);

  const std::vector<std::uint32_t> idx = {5, 0, 199, 5};
  const auto g = s0.gather(idx);
  REQUIRE(g.lanes() == 4);
  CHECK(g.v[0] == s0.v[5]);
  CHECK(g.v[3] == s0.v[5]);

  ArithShareVec dst(8, 0xff);
  ArithShareVec src(2);
  src.v = {11, 22};
  const std::vector<std::uint32_t> at = {1, 6};
  dst.scatter(src, at);
  CHECK(dst.v[1] == 11);
  CHECK(dst.v[6] == 22);
  CHECK(dst.v[0] == 0xff);
}

TEST_CASE("boolean share round trip keeps pad bits clear") {
  std::mt19937_64 rng(13);
  const std::uint32_t width = 9;
  std::vector<std::uint32_t> values(70);  // crosses a word boundary
  for (auto& v : values) v = static_cast<std::uint32_t>(rng()) & ((1u << width) - 1);
  auto [s0, s1] = share_bool(values, width, rng);
  REQUIRE(s0.lanes() == 70);
  REQUIRE(s0.width() == width);
  REQUIRE(s0.words_per_plane() == 2);
  CHECK(reconstruct_bool(s0, s1) == values);
  for (std::uint32_t p = 0; p < width; ++p) {
    CHECK((s0.plane(p)[1] >> 6) == 0);  // lanes 64..69 only
    CHECK((s1.plane(p)[1] >> 6) == 0);
  }
}

TEST_CASE("bit and lane accessors agree") {
  BoolShareVec v(5, 4);
  v.set_lane(3, 0b1010);
  CHECK(v.get_lane(3) == 0b1010);
  CHECK_FALSE(v.get_bit(3, 0));
  CHECK(v.get_bit(3, 1));
  CHECK_FALSE(v.get_bit(3, 2));
  CHECK(v.get_bit(3, 3));
  v.set_bit(3, 0, true);
  CHECK(v.get_lane(3) == 0b1011);
  CHECK(v.get_lane(2) == 0);
}

TEST_CASE("mask_tail clears exactly the pad region") {
  BoolShareVec v(3, 2);
  v.plane(0)[0] = ~0ull;
  v.plane(1)[0] = ~0ull;
  v.mask_tail();
  CHECK(v.plane(0)[0] == 0b111);
  CHECK(v.plane(1)[0] == 0b111);

  BoolShareVec full(64, 1);
  full.plane(0)[0] = ~0ull;
  full.mask_tail();  // 64 lanes: nothing to clear
  CHECK(full.plane(0)[0] == ~0ull);
}

TEST_CASE("boolean gather scatter slice and plane reordering") {
  BoolShareVec v(6, 3);
  for (std::size_t l = 0; l < 6; ++l) v.set_lane(l, static_cast<std::uint32_t>(l + 1));

  const std::vector<std::uint32_t> idx = {4, 4, 0};
  const auto g = v.gather(idx);
  REQUIRE(g.lanes() == 3);
  CHECK(g.get_lane(0) == 5);
  CHECK(g.get_lane(1) == 5);
  CHECK(g.get_lane(2) == 1);

  BoolShareVec dst(6, 3);
  dst.scatter(g, std::vector<std::uint32_t>{1, 2, 3});
  CHECK(dst.get_lane(1) == 5);
  CHECK(dst.get_lane(2) == 5);
  CHECK(dst.get_lane(3) == 1);
  CHECK(dst.get_lane(0) == 0);

  const auto mid = v.slice_width(1, 3);
  REQUIRE(mid.width() == 2);
  for (std::size_t l = 0; l < 6; ++l) CHECK(mid.get_lane(l) == ((l + 1) >> 1));

  const auto rev = v.gather_planes(std::vector<std::uint32_t>{2, 1, 0});
  for (std::size_t l = 0; l < 6; ++l) {
    const std::uint32_t x = static_cast<std::uint32_t>(l + 1);
    const std::uint32_t want = ((x & 1) << 2) | (x & 2) | ((x >> 2) & 1);
    CHECK(rev.get_lane(l) == want);
  }

  const auto wide = v.zero_extend(7);
  REQUIRE(wide.width() == 7);
  for (std::size_t l = 0; l < 6; ++l) CHECK(wide.get_lane(l) == l + 1);
}

TEST_CASE("concat along lanes and width") {
  BoolShareVec a(3, 2);
  BoolShareVec b(2, 2);
  a.set_lane(0, 1);
  a.set_lane(1, 2);
  a.set_lane(2, 3);
  b.set_lane(0, 3);
  b.set_lane(1, 0);
  const auto lanes = concat_lanes(a, b);
  REQUIRE(lanes.lanes() == 5);
  REQUIRE(lanes.width() == 2);
  CHECK(lanes.get_lane(0) == 1);
  CHECK(lanes.get_lane(2) == 3);
  CHECK(lanes.get_lane(3) == 3);
  CHECK(lanes.get_lane(4) == 0);

  BoolShareVec hi(3, 1);
  hi.set_lane(1, 1);
  const auto stacked = concat_width(a, hi);
  REQUIRE(stacked.width() == 3);
  CHECK(stacked.get_lane(0) == 1);
  CHECK(stacked.get_lane(1) == (2u | 4u));
  CHECK(stacked.get_lane(2) == 3);
}

TEST_CASE("lane concat across word boundaries preserves every lane") {
  std::mt19937_64 rng(5);
  std::vector<std::uint32_t> va(70), vb(60);
  for (auto& x : va) x = rng() & 0x1f;
  for (auto& x : vb) x = rng() & 0x1f;
  auto [a0, a1] = share_bool(va, 5, rng);
  auto [b0, b1] = share_bool(vb, 5, rng);
  const auto c0 = concat_lanes(a0, b0);
  const auto c1 = concat_lanes(a1, b1);
  const auto back = reconstruct_bool(c0, c1);
  REQUIRE(back.size() == 130);
  for (std::size_t i = 0; i < 70; ++i) CHECK(back[i] == va[i]);
  for (std::size_t i = 0; i < 60; ++i) CHECK(back[70 + i] == vb[i]);
}
