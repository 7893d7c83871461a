#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpc/session.hpp"
#include "mpc/shares.hpp"

namespace ppkex::mpc {

// Two-party gate evaluator. Linear gates are local; every AND / multiplication
// batch costs one communication round and consumes preprocessed material.
// All entry points honor the session's tally mode: in tally mode they count
// material, touch no sockets, and return zero-valued shares of the right shape.
class Gates {
 public:
  explicit Gates(Session& s) : s_(s) {}

  Session& session() { return s_; }

  // ---- arithmetic (additive shares over Z_{2^32}) ----

  ArithShareVec add(const ArithShareVec& x, const ArithShareVec& y) const;
  ArithShareVec sub(const ArithShareVec& x, const ArithShareVec& y) const;
  ArithShareVec add_const(const ArithShareVec& x, Ring c) const;
  ArithShareVec mul_const(const ArithShareVec& x, Ring c) const;
  // Share of a public constant (party 0 holds the value).
  ArithShareVec arith_const(std::size_t lanes, Ring c) const;

  // Beaver multiplication, one round per call.
  ArithShareVec mul(const ArithShareVec& x, const ArithShareVec& y);

  std::vector<Ring> reveal(const ArithShareVec& x);

  // ---- boolean (XOR shares, plane-packed) ----

  BoolShareVec xor_(const BoolShareVec& x, const BoolShareVec& y) const;
  BoolShareVec not_(const BoolShareVec& x) const;
  // Share of a public constant bit pattern, replicated across lanes.
  BoolShareVec bool_const(std::size_t lanes, std::uint32_t width, std::uint32_t value) const;
  // XOR a public per-lane constant into plane 0 upward.
  BoolShareVec xor_const_lanes(const BoolShareVec& x, std::span<const std::uint32_t> vals) const;

  // Bitwise AND, one round per call regardless of width.
  BoolShareVec and_(const BoolShareVec& x, const BoolShareVec& y);

  // AND every plane of x with the single-plane selector.
  BoolShareVec and_broadcast(const BoolShareVec& sel, const BoolShareVec& x);

  // sel ? t : f, lane-wise; sel has width 1.
  BoolShareVec mux(const BoolShareVec& sel, const BoolShareVec& t, const BoolShareVec& f);

  BoolShareVec or_(const BoolShareVec& x, const BoolShareVec& y);

  // OR across lanes: out lane g = OR of the lanes in group g.
  // Tree evaluation, ceil(log2(max group size)) rounds.
  BoolShareVec or_tree(const BoolShareVec& x);
  BoolShareVec or_tree_groups(const BoolShareVec& x,
                              std::span<const std::uint32_t> group_of_lane,
                              std::size_t n_groups);

  // AND / OR across the width of each lane, producing width-1 lanes.
  BoolShareVec width_and_tree(const BoolShareVec& x);
  BoolShareVec width_or_tree(const BoolShareVec& x);

  // Same reductions applied to every consecutive `block`-plane group;
  // width must be a multiple of block, output has width/block planes.
  BoolShareVec width_and_tree_blocks(const BoolShareVec& x, std::uint32_t block);
  BoolShareVec width_or_tree_blocks(const BoolShareVec& x, std::uint32_t block);

  // Lane-wise comparisons; outputs have width 1.
  BoolShareVec eq(const BoolShareVec& x, const BoolShareVec& y);
  BoolShareVec eq_const(const BoolShareVec& x, std::span<const std::uint32_t> vals);
  // Unsigned x > y via carry-out of x + ~y.
  BoolShareVec gt(const BoolShareVec& x, const BoolShareVec& y);
  BoolShareVec gt_const(const BoolShareVec& x, std::span<const std::uint32_t> vals);

  // Lane-wise adders (Kogge-Stone), result width = input width, carry dropped.
  BoolShareVec add_b(const BoolShareVec& x, const BoolShareVec& y, bool carry_in = false);
  // One public operand: only the prefix tree costs communication.
  BoolShareVec add_b_const(const BoolShareVec& x, std::span<const std::uint32_t> vals,
                           bool carry_in = false);
  BoolShareVec sub_b(const BoolShareVec& x, const BoolShareVec& y);

  // Population count of each lane's planes; out_width must fit width.
  BoolShareVec hamming_weight(const BoolShareVec& x, std::uint32_t out_width);

  // ---- share conversions (masked-open with preprocessed pairs) ----

  // Arithmetic -> boolean of the given width (low bits kept).
  BoolShareVec a2b(const ArithShareVec& x, std::uint32_t width);
  // Boolean -> arithmetic; lanes interpreted as unsigned values.
  ArithShareVec b2a(const BoolShareVec& x);

  std::vector<std::uint32_t> reveal_bits(const BoolShareVec& x);

 private:
  // Opens d||e style masked values for Beaver steps; returns peer-combined planes.
  void open_words(std::uint64_t* words, std::size_t n_words, bool add_reveal = false);
  void open_ring(Ring* vals, std::size_t n, bool reveal_frame = false);

  Session& s_;
};

}  // namespace ppkex::mpc
