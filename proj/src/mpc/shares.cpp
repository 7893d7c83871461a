#include "mpc/shares.hpp"

#include <algorithm>

namespace ppkex::mpc {

BoolShareVec concat_lanes(const BoolShareVec& a, const BoolShareVec& b) {
  assert(a.width() == b.width());
  BoolShareVec out(a.lanes() + b.lanes(), a.width());
  for (std::uint32_t p = 0; p < a.width(); ++p) {
    for (std::size_t l = 0; l < a.lanes(); ++l) out.set_bit(l, p, a.get_bit(l, p));
    for (std::size_t l = 0; l < b.lanes(); ++l) out.set_bit(a.lanes() + l, p, b.get_bit(l, p));
  }
  return out;
}

BoolShareVec concat_width(const BoolShareVec& a, const BoolShareVec& b) {
  assert(a.lanes() == b.lanes());
  BoolShareVec out(a.lanes(), a.width() + b.width());
  std::copy(a.raw().begin(), a.raw().end(), out.raw().begin());
  std::copy(b.raw().begin(), b.raw().end(),
            out.raw().begin() + std::ptrdiff_t(a.raw().size()));
  return out;
}

std::pair<ArithShareVec, ArithShareVec> share_arith(std::span<const Ring> values,
                                                    std::mt19937_64& rng) {
  ArithShareVec s0(values.size());
  ArithShareVec s1(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Ring r = Ring(rng());
    s0.v[i] = r;
    s1.v[i] = values[i] - r;
  }
  return {std::move(s0), std::move(s1)};
}

std::vector<Ring> reconstruct_arith(const ArithShareVec& s0, const ArithShareVec& s1) {
  assert(s0.lanes() == s1.lanes());
  std::vector<Ring> out(s0.lanes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s0.v[i] + s1.v[i];
  return out;
}

std::pair<BoolShareVec, BoolShareVec> share_bool(std::span<const std::uint32_t> values,
                                                 std::uint32_t width, std::mt19937_64& rng) {
  BoolShareVec s0(values.size(), width);
  BoolShareVec s1(values.size(), width);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint32_t mask = std::uint32_t(rng());
    const std::uint32_t keep = width == 32 ? ~0u : ((1u << width) - 1);
    s0.set_lane(i, mask & keep);
    s1.set_lane(i, (values[i] ^ mask) & keep);
  }
  return {std::move(s0), std::move(s1)};
}

std::vector<std::uint32_t> reconstruct_bool(const BoolShareVec& s0, const BoolShareVec& s1) {
  assert(s0.lanes() == s1.lanes() && s0.width() == s1.width());
  std::vector<std::uint32_t> out(s0.lanes());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s0.get_lane(i) ^ s1.get_lane(i);
  return out;
}

}  // namespace ppkex::mpc
