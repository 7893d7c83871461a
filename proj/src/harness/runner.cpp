#include "harness/harness.hpp"

#include <exception>
#include <future>
#include <optional>
#include <utility>

#include "common/errors.hpp"

namespace ppkex::harness {

namespace {

constexpr int kIoTimeoutMs = 120000;

struct ProviderEnds {
  net::FrameIo to_p0;
  net::FrameIo to_p1;
};

std::vector<domain::Cohort> split_cohort(const domain::Cohort& cohort, std::uint32_t parts) {
  if (parts == 0 || parts > cohort.size()) {
    throw ValidationError("provider count must be between 1 and the pair count");
  }
  std::vector<domain::Cohort> out(parts);
  const std::size_t base = cohort.size() / parts, extra = cohort.size() % parts;
  std::size_t at = 0;
  for (std::uint32_t p = 0; p < parts; ++p) {
    const std::size_t take = base + (p < extra ? 1 : 0);
    out[p].assign(cohort.begin() + at, cohort.begin() + at + take);
    at += take;
  }
  return out;
}

}  // namespace

RunOutput run_local(const kep::PipelineConfig& cfg, const domain::Cohort& cohort,
                    std::uint64_t seed, Transport transport, std::uint32_t n_providers) {
  const std::uint64_t sid = seed;
  const auto slices = split_cohort(cohort, n_providers);

  // Listener objects for the TCP topology live on this frame; role
  // threads only take references.
  std::optional<net::TcpListener> l_peer, l_dealer, l_prov0, l_prov1;
  if (transport == Transport::Tcp) {
    l_peer.emplace(0);
    l_dealer.emplace(0);
    l_prov0.emplace(0);
    l_prov1.emplace(0);
  }

  // Socketpair topology is built up front and moved into the roles.
  std::optional<net::FrameIo> sp_peer0, sp_peer1, sp_d0, sp_d1, sp_dealer0, sp_dealer1;
  std::vector<ProviderEnds> sp_prov;
  std::vector<net::FrameIo> sp_p0_prov, sp_p1_prov;
  if (transport == Transport::Socketpair) {
    auto peer = net::make_channel_pair();
    sp_peer0.emplace(std::move(peer.first), sid);
    sp_peer1.emplace(std::move(peer.second), sid);
    auto d0 = net::make_channel_pair();
    sp_d0.emplace(std::move(d0.first), sid);
    sp_dealer0.emplace(std::move(d0.second), sid);
    auto d1 = net::make_channel_pair();
    sp_d1.emplace(std::move(d1.first), sid);
    sp_dealer1.emplace(std::move(d1.second), sid);
    for (std::uint32_t p = 0; p < n_providers; ++p) {
      auto a = net::make_channel_pair();
      auto b = net::make_channel_pair();
      sp_p0_prov.emplace_back(std::move(a.first), sid);
      sp_p1_prov.emplace_back(std::move(b.first), sid);
      sp_prov.push_back(ProviderEnds{net::FrameIo(std::move(a.second), sid),
                                     net::FrameIo(std::move(b.second), sid)});
    }
  }

  auto server_role = [&](int party, net::FrameIo peer, net::FrameIo dealer,
                         std::vector<net::FrameIo> provs) {
    peer.set_timeout(kIoTimeoutMs);
    dealer.set_timeout(kIoTimeoutMs);
    net::send_dealer_hello(dealer, party);
    net::RemoteTripleSource source(dealer);
    net::ServerLinks links;
    links.peer = &peer;
    for (auto& p : provs) {
      p.set_timeout(kIoTimeoutMs);
      links.providers.push_back(&p);
    }
    return net::run_compute_server(party, cfg, links, source);
  };

  std::future<net::ServerOutput> f0, f1;
  std::future<void> fd;
  std::vector<std::future<net::ProviderOutput>> fp;

  if (transport == Transport::Socketpair) {
    f0 = std::async(std::launch::async,
                    [&, peer = std::move(*sp_peer0), dealer = std::move(*sp_d0),
                     provs = std::move(sp_p0_prov)]() mutable {
                      return server_role(0, std::move(peer), std::move(dealer), std::move(provs));
                    });
    f1 = std::async(std::launch::async,
                    [&, peer = std::move(*sp_peer1), dealer = std::move(*sp_d1),
                     provs = std::move(sp_p1_prov)]() mutable {
                      return server_role(1, std::move(peer), std::move(dealer), std::move(provs));
                    });
    fd = std::async(std::launch::async,
                    [&, a = std::move(*sp_dealer0), b = std::move(*sp_dealer1)]() mutable {
                      a.set_timeout(kIoTimeoutMs);
                      b.set_timeout(kIoTimeoutMs);
                      net::run_dealer(a, b, seed ^ 0xdea1e5ull);
                    });
    for (std::uint32_t p = 0; p < n_providers; ++p) {
      fp.push_back(std::async(std::launch::async, [&, p, ends = std::move(sp_prov[p])]() mutable {
        ends.to_p0.set_timeout(kIoTimeoutMs);
        ends.to_p1.set_timeout(kIoTimeoutMs);
        return net::run_provider(cfg, slices[p], p, ends.to_p0, ends.to_p1,
                                 seed + 1009ull * (p + 1));
      }));
    }
  } else {
    const std::uint16_t peer_port = l_peer->port();
    const std::uint16_t dealer_port = l_dealer->port();
    const std::uint16_t prov0_port = l_prov0->port();
    const std::uint16_t prov1_port = l_prov1->port();

    // Ports are captured by value: the threads may outlive this block.
    f0 = std::async(std::launch::async, [&, dealer_port] {
      net::FrameIo peer(l_peer->accept(kIoTimeoutMs), sid);
      net::FrameIo dealer(net::tcp_connect("127.0.0.1", dealer_port), sid);
      std::vector<net::FrameIo> provs;
      for (std::uint32_t p = 0; p < n_providers; ++p)
        provs.emplace_back(l_prov0->accept(kIoTimeoutMs), sid);
      return server_role(0, std::move(peer), std::move(dealer), std::move(provs));
    });
    f1 = std::async(std::launch::async, [&, peer_port, dealer_port] {
      net::FrameIo peer(net::tcp_connect("127.0.0.1", peer_port), sid);
      net::FrameIo dealer(net::tcp_connect("127.0.0.1", dealer_port), sid);
      std::vector<net::FrameIo> provs;
      for (std::uint32_t p = 0; p < n_providers; ++p)
        provs.emplace_back(l_prov1->accept(kIoTimeoutMs), sid);
      return server_role(1, std::move(peer), std::move(dealer), std::move(provs));
    });
    fd = std::async(std::launch::async, [&] {
      net::FrameIo a(l_dealer->accept(kIoTimeoutMs), sid);
      net::FrameIo b(l_dealer->accept(kIoTimeoutMs), sid);
      a.set_timeout(kIoTimeoutMs);
      b.set_timeout(kIoTimeoutMs);
      net::run_dealer(a, b, seed ^ 0xdea1e5ull);
    });
    for (std::uint32_t p = 0; p < n_providers; ++p) {
      fp.push_back(std::async(std::launch::async, [&, p, prov0_port, prov1_port] {
        net::FrameIo to_p0(net::tcp_connect("127.0.0.1", prov0_port), sid);
        net::FrameIo to_p1(net::tcp_connect("127.0.0.1", prov1_port), sid);
        to_p0.set_timeout(kIoTimeoutMs);
        to_p1.set_timeout(kIoTimeoutMs);
        return net::run_provider(cfg, slices[p], p, to_p0, to_p1, seed + 1009ull * (p + 1));
      }));
    }
  }

  // Surface server failures first: dealer and provider errors are
  // usually just the fallout of a server abort.
  net::ServerOutput s0, s1;
  std::vector<net::ProviderOutput> provider_out(n_providers);
  std::exception_ptr first_error;
  auto collect = [&](auto& fut, auto* into) {
    try {
      if constexpr (std::is_same_v<decltype(fut.get()), void>) {
        fut.get();
      } else {
        *into = fut.get();
      }
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  };
  collect(f0, &s0);
  collect(f1, &s1);
  for (std::uint32_t p = 0; p < n_providers; ++p) collect(fp[p], &provider_out[p]);
  int unused = 0;
  collect(fd, &unused);
  if (first_error) std::rethrow_exception(first_error);

  if (s0.result != s1.result) {
    throw ProtocolFault("compute servers disagree on the result document");
  }

  RunOutput out;
  out.result = provider_out.front().result;
  out.ledgers[0] = std::move(s0.ledger);
  out.ledgers[1] = std::move(s1.ledger);
  out.outcomes[0] = std::move(s0.outcome);
  out.outcomes[1] = std::move(s1.outcome);
  out.transcripts[0] = std::move(s0.transcript);
  out.transcripts[1] = std::move(s1.transcript);
  return out;
}

}  // namespace ppkex::harness
