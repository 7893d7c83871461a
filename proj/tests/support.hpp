#pragma once

#include <future>
#include <utility>

#include "mpc/gates.hpp"
#include "mpc/session.hpp"
#include "mpc/triples.hpp"
#include "net/channel.hpp"

namespace ppkex::testsup {

// Runs fn(session, gates, party) on two threads over a socketpair, with
// dealer material priced by a tally pass first, mirroring the per-phase
// driver in the protocol layer. Returns both parties' results.
template <typename Fn>
auto run_two_party(Fn fn, std::uint64_t dealer_seed = 0xfeed) {
  using R = std::invoke_result_t<Fn&, mpc::Session&, mpc::Gates&, int>;
  auto chans = net::make_channel_pair();
  mpc::LocalDealerSource dealer(dealer_seed);
  auto drive = [&](int party, net::FdChannel ch) -> R {
    net::FrameIo io(std::move(ch), 42);
    io.set_timeout(60000);
    mpc::PhaseLedger ledger;
    mpc::Session s(party, &io, &ledger);
    s.begin_phase(mpc::Phase::Matching);
    mpc::Gates g(s);
    s.begin_tally();
    (void)fn(s, g, party);
    const mpc::TripleCounts need = s.end_tally();
    s.store() = dealer.fetch(party, need);
    return fn(s, g, party);
  };
  auto f1 = std::async(std::launch::async, drive, 1, std::move(chans.second));
  R r0 = drive(0, std::move(chans.first));
  return std::pair<R, R>(std::move(r0), f1.get());
}

}  // namespace ppkex::testsup
