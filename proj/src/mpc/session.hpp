#pragma once

#include <cstdint>
#include <vector>

#include "common/bytes.hpp"
#include "mpc/ledger.hpp"
#include "mpc/triples.hpp"
#include "net/channel.hpp"

namespace ppkex::mpc {

// One ROUND or REVEAL exchange as both parties saw it.
struct TranscriptEntry {
  net::MsgType type;
  std::uint32_t round_no;
  std::uint32_t sent_len;
  std::uint32_t recv_len;
  std::uint64_t sent_digest;
  std::uint64_t recv_digest;
};

// Per-party protocol state: the peer link, the dealer material, traffic
// accounting and the round counter. Gates never talk to the network
// directly; they go through exchange()/reveal_exchange().
//
// Tally mode runs the identical gate sequence without communication and
// records how much dealer material the sequence would consume. Control
// flow never depends on secret values, so the tally pass and the
// execute pass always agree.
class Session {
 public:
  Session(int party, net::FrameIo* peer, PhaseLedger* ledger)
      : party_(party), peer_(peer), ledger_(ledger) {}

  int party() const { return party_; }
  PhaseLedger& ledger() { return *ledger_; }
  TripleStoreHalf& store() { return store_; }

  void begin_phase(Phase p) { ledger_->begin_phase(p); }

  bool tally() const { return tally_; }
  void begin_tally();
  TripleCounts end_tally();

  void count_arith(std::uint64_t n) { tally_counts_.arith += n; }
  void count_bool_words(std::uint64_t n) { tally_counts_.bool_words += n; }
  void count_conv(std::uint64_t n) { tally_counts_.conv += n; }

  // Simultaneous ROUND exchange; returns the peer payload. Lockstep:
  // both sides must be at the same round number.
  Bytes exchange(std::span<const std::uint8_t> payload);
  // Output reveal via REVEAL frames; does not advance the round counter.
  Bytes reveal_exchange(std::span<const std::uint8_t> payload);

  std::uint32_t round_no() const { return round_no_; }
  std::uint64_t rounds_executed() const { return rounds_executed_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

 private:
  int party_;
  net::FrameIo* peer_;
  PhaseLedger* ledger_;
  TripleStoreHalf store_;
  bool tally_ = false;
  TripleCounts tally_counts_{};
  std::uint32_t round_no_ = 1;
  std::uint64_t rounds_executed_ = 0;
  std::vector<TranscriptEntry> transcript_;
};

}  // namespace ppkex::mpc
