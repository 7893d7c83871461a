#include "mpc/triples.hpp"

#include <random>

#include "common/errors.hpp"

namespace ppkex::mpc {

const std::array<Ring, 3>* TripleStoreHalf::take_arith(std::size_t n) {
  if (arith_cursor_ + n > arith.size()) {
    throw SetupUnderprovisioned("arithmetic triples exhausted: need " + std::to_string(n) +
                                " at cursor " + std::to_string(arith_cursor_) + " of " +
                                std::to_string(arith.size()));
  }
  const auto* p = arith.data() + arith_cursor_;
  arith_cursor_ += n;
  return p;
}

const std::array<std::uint64_t, 3>* TripleStoreHalf::take_bool_words(std::size_t n) {
  if (bool_cursor_ + n > bool_words.size()) {
    throw SetupUnderprovisioned("boolean triples exhausted: need " + std::to_string(n) +
                                " at cursor " + std::to_string(bool_cursor_) + " of " +
                                std::to_string(bool_words.size()));
  }
  const auto* p = bool_words.data() + bool_cursor_;
  bool_cursor_ += n;
  return p;
}

const ConvPair* TripleStoreHalf::take_conv(std::size_t n) {
  if (conv_cursor_ + n > conv.size()) {
    throw SetupUnderprovisioned("conversion pairs exhausted: need " + std::to_string(n) +
                                " at cursor " + std::to_string(conv_cursor_) + " of " +
                                std::to_string(conv.size()));
  }
  const auto* p = conv.data() + conv_cursor_;
  conv_cursor_ += n;
  return p;
}

TripleCounts TripleStoreHalf::provisioned() const {
  return {arith.size(), bool_words.size(), conv.size()};
}

TripleCounts TripleStoreHalf::consumed() const {
  return {arith_cursor_, bool_cursor_, conv_cursor_};
}

void TripleStoreHalf::append(TripleStoreHalf&& more) {
  arith.insert(arith.end(), more.arith.begin(), more.arith.end());
  bool_words.insert(bool_words.end(), more.bool_words.begin(), more.bool_words.end());
  conv.insert(conv.end(), more.conv.begin(), more.conv.end());
}

Bytes TripleStoreHalf::serialize() const {
  Bytes out;
  out.reserve(24 + arith.size() * 12 + bool_words.size() * 24 + conv.size() * 8);
  put_u64_le(out, arith.size());
  put_u64_le(out, bool_words.size());
  put_u64_le(out, conv.size());
  for (const auto& t : arith) {
    put_u32_le(out, t[0]);
    put_u32_le(out, t[1]);
    put_u32_le(out, t[2]);
  }
  for (const auto& t : bool_words) {
    put_u64_le(out, t[0]);
    put_u64_le(out, t[1]);
    put_u64_le(out, t[2]);
  }
  for (const auto& c : conv) {
    put_u32_le(out, c.r_bool);
    put_u32_le(out, c.r_arith);
  }
  return out;
}

TripleStoreHalf TripleStoreHalf::deserialize(std::span<const std::uint8_t> data) {
  if (data.size() < 24) throw ProtocolFault("triple material truncated (header)");
  const std::uint64_t na = get_u64_le(data.data());
  const std::uint64_t nb = get_u64_le(data.data() + 8);
  const std::uint64_t nc = get_u64_le(data.data() + 16);
  const std::uint64_t want = 24 + na * 12 + nb * 24 + nc * 8;
  if (data.size() != want) throw ProtocolFault("triple material truncated (body)");
  TripleStoreHalf half;
  const std::uint8_t* p = data.data() + 24;
  half.arith.resize(na);
  for (auto& t : half.arith) {
    t = {get_u32_le(p), get_u32_le(p + 4), get_u32_le(p + 8)};
    p += 12;
  }
  half.bool_words.resize(nb);
  for (auto& t : half.bool_words) {
    t = {get_u64_le(p), get_u64_le(p + 8), get_u64_le(p + 16)};
    p += 24;
  }
  half.conv.resize(nc);
  for (auto& c : half.conv) {
    c.r_bool = get_u32_le(p);
    c.r_arith = get_u32_le(p + 4);
    p += 8;
  }
  return half;
}

std::pair<TripleStoreHalf, TripleStoreHalf> dealer_generate(const TripleCounts& counts,
                                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TripleStoreHalf h0, h1;
  h0.arith.resize(counts.arith);
  h1.arith.resize(counts.arith);
  for (std::uint64_t i = 0; i < counts.arith; ++i) {
    const Ring a0 = Ring(rng()), a1 = Ring(rng());
    const Ring b0 = Ring(rng()), b1 = Ring(rng());
    const Ring c = Ring(a0 + a1) * Ring(b0 + b1);
    const Ring c0 = Ring(rng());
    h0.arith[i] = {a0, b0, c0};
    h1.arith[i] = {a1, b1, Ring(c - c0)};
  }
  h0.bool_words.resize(counts.bool_words);
  h1.bool_words.resize(counts.bool_words);
  for (std::uint64_t i = 0; i < counts.bool_words; ++i) {
    const std::uint64_t a0 = rng(), a1 = rng();
    const std::uint64_t b0 = rng(), b1 = rng();
    const std::uint64_t c = (a0 ^ a1) & (b0 ^ b1);
    const std::uint64_t c0 = rng();
    h0.bool_words[i] = {a0, b0, c0};
    h1.bool_words[i] = {a1, b1, c ^ c0};
  }
  h0.conv.resize(counts.conv);
  h1.conv.resize(counts.conv);
  for (std::uint64_t i = 0; i < counts.conv; ++i) {
    const std::uint32_t r = std::uint32_t(rng());
    const std::uint32_t rb0 = std::uint32_t(rng());
    const Ring ra0 = Ring(rng());
    h0.conv[i] = {rb0, ra0};
    h1.conv[i] = {r ^ rb0, Ring(r - ra0)};
  }
  return {std::move(h0), std::move(h1)};
}

TripleStoreHalf LocalDealerSource::fetch(int party, const TripleCounts& counts) {
  std::unique_lock lk(mu_);
  const std::uint64_t k = fetch_index_[party]++;
  Entry& e = entries_[k];
  if (!e.generated) {
    e.counts = counts;
    auto [h0, h1] = dealer_generate(counts, seed_ + 0x9e3779b97f4a7c15ull * (k + 1));
    e.halves[0] = std::move(h0);
    e.halves[1] = std::move(h1);
    e.generated = true;
  } else if (e.counts != counts) {
    throw ProtocolFault("parties requested diverging triple counts");
  }
  TripleStoreHalf half = std::move(*e.halves[party]);
  e.halves[party].reset();
  if (!e.halves[0] && !e.halves[1]) entries_.erase(k);
  return half;
}

}  // namespace ppkex::mpc
