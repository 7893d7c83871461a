#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "common/bytes.hpp"
#include "mpc/shares.hpp"

namespace ppkex::mpc {

// Precomputed material demanded by one protocol phase.
struct TripleCounts {
  std::uint64_t arith = 0;       // multiplication triples c = a * b
  std::uint64_t bool_words = 0;  // 64-lane AND bundles c = a & b (bitwise)
  std::uint64_t conv = 0;        // conversion pairs: r shared boolean and arithmetic

  TripleCounts& operator+=(const TripleCounts& o) {
    arith += o.arith;
    bool_words += o.bool_words;
    conv += o.conv;
    return *this;
  }
  bool operator==(const TripleCounts&) const = default;
};

// Wire sizes of a TRIPLES request and response are pure functions of the
// counts, so setup accounting matches across transports and parties.
inline std::uint64_t counts_wire_bytes() { return 24; }
inline std::uint64_t store_wire_bytes(const TripleCounts& c) {
  return 24 + c.arith * 12 + c.bool_words * 24 + c.conv * 8;
}

struct ConvPair {
  std::uint32_t r_bool;  // XOR share of r, bit i in bit position i
  Ring r_arith;          // additive share of the same r
};

// One party's half of the dealer material. Cursors only move forward;
// running past the end is a provisioning bug, never silently refilled.
class TripleStoreHalf {
 public:
  std::vector<std::array<Ring, 3>> arith;             // (a, b, c) shares
  std::vector<std::array<std::uint64_t, 3>> bool_words;  // (a, b, c) mask shares
  std::vector<ConvPair> conv;

  const std::array<Ring, 3>* take_arith(std::size_t n);
  const std::array<std::uint64_t, 3>* take_bool_words(std::size_t n);
  const ConvPair* take_conv(std::size_t n);

  TripleCounts provisioned() const;
  TripleCounts consumed() const;

  void append(TripleStoreHalf&& more);

  Bytes serialize() const;
  static TripleStoreHalf deserialize(std::span<const std::uint8_t> data);

 private:
  std::size_t arith_cursor_ = 0;
  std::size_t bool_cursor_ = 0;
  std::size_t conv_cursor_ = 0;
};

// Deterministic under (seed); the two halves reconstruct to valid
// correlations (c = a*b, c = a&b per bit, r_bool == r_arith).
std::pair<TripleStoreHalf, TripleStoreHalf> dealer_generate(const TripleCounts& counts,
                                                            std::uint64_t seed);

// Where a session gets its per-phase material from. The networked node
// implements this over TRIPLES frames; tests use the local rendezvous.
class TripleSource {
 public:
  virtual ~TripleSource() = default;
  virtual TripleStoreHalf fetch(int party, const TripleCounts& counts) = 0;
};

// In-process dealer for two-thread runs. The k-th fetch of party 0 pairs
// with the k-th fetch of party 1; both must request identical counts
// (diverging requests are a protocol implementation bug and throw).
class LocalDealerSource : public TripleSource {
 public:
  explicit LocalDealerSource(std::uint64_t seed) : seed_(seed) {}
  TripleStoreHalf fetch(int party, const TripleCounts& counts) override;

 private:
  struct Entry {
    TripleCounts counts;
    std::optional<TripleStoreHalf> halves[2];
    bool generated = false;
  };

  std::uint64_t seed_;
  std::uint64_t fetch_index_[2] = {0, 0};
  std::mutex mu_;
  std::map<std::uint64_t, Entry> entries_;
};

}  // namespace ppkex::mpc
