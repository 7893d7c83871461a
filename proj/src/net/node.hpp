#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "kep/protocols.hpp"
#include "mpc/session.hpp"
#include "net/channel.hpp"

namespace ppkex::net {

// Canonical handshake payload. Every link (server/server and every
// provider/server pair) must present byte-identical bytes, otherwise
// the run aborts before any share moves.
Bytes handshake_bytes(const kep::PipelineConfig& cfg);

// Dealer material over TRIPLES frames: one request frame carrying the
// counts, one response frame carrying this party's half.
class RemoteTripleSource : public mpc::TripleSource {
 public:
  explicit RemoteTripleSource(FrameIo& dealer) : dealer_(dealer) {}
  mpc::TripleStoreHalf fetch(int party, const mpc::TripleCounts& counts) override;

 private:
  FrameIo& dealer_;
};

struct ServerLinks {
  FrameIo* peer = nullptr;
  // Provider links in accept order; the cohort order is fixed by the
  // provider indices sent in the HELLO frames, not by this order.
  std::vector<FrameIo*> providers;
};

struct ServerOutput {
  kep::PipelineOutcome outcome;
  nlohmann::json result;  // byte-identical on both servers
  nlohmann::json ledger;  // per-party timings and traffic
  std::vector<mpc::TranscriptEntry> transcript;
};

// One compute server: peer handshake, input collection, the four
// secure phases, result distribution. Any failure is forwarded as an
// ABORT on every live link before the exception leaves this function.
ServerOutput run_compute_server(int party, const kep::PipelineConfig& cfg, ServerLinks links,
                                mpc::TripleSource& triples);

// Announces which party this server link belongs to; must be the first
// frame a server sends toward the dealer.
void send_dealer_hello(FrameIo& dealer, int party);

// Serves paired TRIPLES requests until both servers hang up. The links
// may arrive in either order; the HELLO frames sort out who is who.
// Requests must arrive in lockstep with equal counts.
void run_dealer(FrameIo& a, FrameIo& b, std::uint64_t seed);

struct ProviderOutput {
  nlohmann::json result;
};

// One data provider: splits its cohort slice into two share halves,
// sends one to each server, then waits for the agreed result. If either
// server link fails the other receives an abort, so no one-sided
// computation continues against live data.
ProviderOutput run_provider(const kep::PipelineConfig& cfg, const domain::Cohort& cohort,
                            std::uint32_t provider_index, FrameIo& p0, FrameIo& p1,
                            std::uint64_t seed);

}  // namespace ppkex::net
