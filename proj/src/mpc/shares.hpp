#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace ppkex::mpc {

// Shares live in Z_{2^32}; unsigned wraparound is the ring reduction.
using Ring = std::uint32_t;

inline constexpr std::uint32_t kRingBits = 32;

inline std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t b = 0;
  while ((1ull << b) < n) ++b;
  return b;
}

// One additive share per lane.
struct ArithShareVec {
  std::vector<Ring> v;

  ArithShareVec() = default;
  explicit ArithShareVec(std::size_t lanes, Ring fill = 0) : v(lanes, fill) {}

  std::size_t lanes() const { return v.size(); }

  ArithShareVec gather(std::span<const std::uint32_t> idx) const {
    ArithShareVec out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out.v[i] = v[idx[i]];
    return out;
  }

  void scatter(const ArithShareVec& src, std::span<const std::uint32_t> idx) {
    assert(src.lanes() == idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = src.v[i];
  }
};

// XOR-shared bit matrix: `width` planes, each packing one bit per lane
// into 64-lane words. Plane p holds bit p (LSB first) of every lane.
// Invariant: pad bits past the last lane are zero in every plane.
class BoolShareVec {
 public:
  BoolShareVec() = default;
  BoolShareVec(std::size_t lanes, std::uint32_t width)
      : lanes_(lanes), width_(width), words_per_plane_((lanes + 63) / 64),
        planes_(std::size_t(width) * words_per_plane_, 0) {}

  std::size_t lanes() const { return lanes_; }
  std::uint32_t width() const { return width_; }
  std::size_t words_per_plane() const { return words_per_plane_; }

  std::uint64_t* plane(std::uint32_t p) { return planes_.data() + std::size_t(p) * words_per_plane_; }
  const std::uint64_t* plane(std::uint32_t p) const {
    return planes_.data() + std::size_t(p) * words_per_plane_;
  }

  std::vector<std::uint64_t>& raw() { return planes_; }
  const std::vector<std::uint64_t>& raw() const { return planes_; }

  bool get_bit(std::size_t lane, std::uint32_t p) const {
    return (plane(p)[lane / 64] >> (lane % 64)) & 1;
  }
  void set_bit(std::size_t lane, std::uint32_t p, bool b) {
    std::uint64_t& w = plane(p)[lane / 64];
    const std::uint64_t m = 1ull << (lane % 64);
    w = b ? (w | m) : (w & ~m);
  }

  std::uint32_t get_lane(std::size_t lane) const {
    std::uint32_t v = 0;
    for (std::uint32_t p = 0; p < width_; ++p) v |= std::uint32_t(get_bit(lane, p)) << p;
    return v;
  }
  void set_lane(std::size_t lane, std::uint32_t value) {
    for (std::uint32_t p = 0; p < width_; ++p) set_bit(lane, p, (value >> p) & 1);
  }

  // Clears pad bits; every plane mutation that may touch them calls this.
  void mask_tail() {
    if (lanes_ % 64 == 0 || words_per_plane_ == 0) return;
    const std::uint64_t m = (1ull << (lanes_ % 64)) - 1;
    for (std::uint32_t p = 0; p < width_; ++p) plane(p)[words_per_plane_ - 1] &= m;
  }

  BoolShareVec gather(std::span<const std::uint32_t> idx) const {
    BoolShareVec out(idx.size(), width_);
    for (std::uint32_t p = 0; p < width_; ++p)
      for (std::size_t i = 0; i < idx.size(); ++i) out.set_bit(i, p, get_bit(idx[i], p));
    return out;
  }

  void scatter(const BoolShareVec& src, std::span<const std::uint32_t> idx) {
    assert(src.width() == width_ && src.lanes() == idx.size());
    for (std::uint32_t p = 0; p < width_; ++p)
      for (std::size_t i = 0; i < idx.size(); ++i) set_bit(idx[i], p, src.get_bit(i, p));
  }

  // Planes [lo, hi) as their own vector.
  BoolShareVec slice_width(std::uint32_t lo, std::uint32_t hi) const {
    assert(lo <= hi && hi <= width_);
    BoolShareVec out(lanes_, hi - lo);
    for (std::uint32_t p = lo; p < hi; ++p)
      std::copy(plane(p), plane(p) + words_per_plane_, out.plane(p - lo));
    return out;
  }

  // Arbitrary plane selection/reordering (whole-plane copies).
  BoolShareVec gather_planes(std::span<const std::uint32_t> idx) const {
    BoolShareVec out(lanes_, std::uint32_t(idx.size()));
    for (std::size_t q = 0; q < idx.size(); ++q) {
      assert(idx[q] < width_);
      std::copy(plane(idx[q]), plane(idx[q]) + words_per_plane_, out.plane(std::uint32_t(q)));
    }
    return out;
  }

  BoolShareVec zero_extend(std::uint32_t new_width) const {
    assert(new_width >= width_);
    BoolShareVec out(lanes_, new_width);
    std::copy(planes_.begin(), planes_.end(), out.planes_.begin());
    return out;
  }

 private:
  std::size_t lanes_ = 0;
  std::uint32_t width_ = 0;
  std::size_t words_per_plane_ = 0;
  std::vector<std::uint64_t> planes_;
};

// Lane-dimension concat (widths must match).
BoolShareVec concat_lanes(const BoolShareVec& a, const BoolShareVec& b);
// Width-dimension concat (lane counts must match): b's planes on top of a's.
BoolShareVec concat_width(const BoolShareVec& a, const BoolShareVec& b);

// Secret sharing and reconstruction are pure functions: providers and the
// test harness call them, the online protocol never does.
std::pair<ArithShareVec, ArithShareVec> share_arith(std::span<const Ring> values,
                                                    std::mt19937_64& rng);
std::vector<Ring> reconstruct_arith(const ArithShareVec& s0, const ArithShareVec& s1);

std::pair<BoolShareVec, BoolShareVec> share_bool(std::span<const std::uint32_t> values,
                                                 std::uint32_t width, std::mt19937_64& rng);
std::vector<std::uint32_t> reconstruct_bool(const BoolShareVec& s0, const BoolShareVec& s1);

}  // namespace ppkex::mpc
