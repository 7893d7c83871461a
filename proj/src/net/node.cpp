#include "net/node.hpp"

#include <algorithm>
#include <string>

#include "common/errors.hpp"
#include "kep/result.hpp"

namespace ppkex::net {

namespace {

Bytes encode_counts(const mpc::TripleCounts& c) {
  Bytes out;
  out.reserve(24);
  put_u64_le(out, c.arith);
  put_u64_le(out, c.bool_words);
  put_u64_le(out, c.conv);
  return out;
}

mpc::TripleCounts parse_counts(std::span<const std::uint8_t> payload) {
  if (payload.size() != 24) throw ProtocolFault("material request has wrong size");
  mpc::TripleCounts c;
  c.arith = get_u64_le(payload.data());
  c.bool_words = get_u64_le(payload.data() + 8);
  c.conv = get_u64_le(payload.data() + 16);
  return c;
}

kep::SharedCohortHalf concat_halves(kep::SharedCohortHalf a, const kep::SharedCohortHalf& b) {
  a.d_hla = mpc::concat_lanes(a.d_hla, b.d_hla);
  a.r_ahla = mpc::concat_lanes(a.r_ahla, b.r_ahla);
  a.r_hla = mpc::concat_lanes(a.r_hla, b.r_hla);
  a.d_bg = mpc::concat_lanes(a.d_bg, b.d_bg);
  a.r_bg = mpc::concat_lanes(a.r_bg, b.r_bg);
  a.d_age = mpc::concat_lanes(a.d_age, b.d_age);
  a.r_age = mpc::concat_lanes(a.r_age, b.r_age);
  a.d_sex = mpc::concat_lanes(a.d_sex, b.d_sex);
  a.r_sex = mpc::concat_lanes(a.r_sex, b.r_sex);
  a.d_w = mpc::concat_lanes(a.d_w, b.d_w);
  a.r_w = mpc::concat_lanes(a.r_w, b.r_w);
  return a;
}

Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

void validate_config(const kep::PipelineConfig& cfg) {
  auto problems = domain::validate_params(cfg.params);
  const auto wp = domain::validate_weights(cfg.weights);
  problems.insert(problems.end(), wp.begin(), wp.end());
  if (!problems.empty()) throw ValidationError(problems.front());
}

}  // namespace

Bytes handshake_bytes(const kep::PipelineConfig& cfg) {
  const nlohmann::json doc = {
      {"params", kep::params_json(cfg.params)},
      {"weights", kep::weights_json(cfg.weights)},
      {"reveal_guard", cfg.reveal_guard},
  };
  return to_bytes(kep::dump_canonical(doc));
}

mpc::TripleStoreHalf RemoteTripleSource::fetch(int party, const mpc::TripleCounts& counts) {
  (void)party;  // the link itself identifies the half
  dealer_.send(MsgType::Triples, 0, encode_counts(counts));
  const Frame resp = dealer_.expect(MsgType::Triples);
  return mpc::TripleStoreHalf::deserialize(resp.payload);
}

ServerOutput run_compute_server(int party, const kep::PipelineConfig& cfg, ServerLinks links,
                                mpc::TripleSource& triples) {
  if (links.peer == nullptr) throw ValidationError("compute server needs a peer link");
  if (links.providers.empty()) throw ValidationError("compute server needs a provider link");
  validate_config(cfg);

  try {
    const Bytes hello = handshake_bytes(cfg);
    const Frame peer_hello = links.peer->exchange(MsgType::Hello, 0, hello);
    if (peer_hello.header.type != MsgType::Hello) {
      throw HandshakeError("peer opened with a non-HELLO frame");
    }
    if (peer_hello.payload != hello) {
      links.peer->send_abort("params mismatch");
      throw HandshakeError("peer disagrees on the public parameters");
    }

    // Providers announce their cohort position in the HELLO round field;
    // both servers therefore assemble the cohort in the same order no
    // matter how the connections raced in.
    std::vector<std::pair<std::uint32_t, FrameIo*>> ordered;
    for (FrameIo* prov : links.providers) {
      const Frame ph = prov->expect(MsgType::Hello);
      if (ph.payload != hello) {
        prov->send_abort("params mismatch");
        throw HandshakeError("a provider disagrees on the public parameters");
      }
      ordered.emplace_back(ph.header.round_no, prov);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      if (ordered[i].first != i) {
        throw ProtocolFault("provider indices must cover 0.." +
                            std::to_string(ordered.size() - 1) + " without repeats");
      }
    }

    mpc::PhaseLedger ledger;
    mpc::Session session(party, links.peer, &ledger);
    session.begin_phase(mpc::Phase::Input);

    kep::SharedCohortHalf half;
    bool have_half = false;
    for (auto& [index, prov] : ordered) {
      prov->send(MsgType::Hello, 0, hello);
      const Frame in = prov->expect(MsgType::InputShare);
      if (in.payload.size() % kep::kPairBlobBytes != 0) {
        throw ProtocolFault("input share payload is not a whole number of pairs");
      }
      ledger.add_input_bytes(in.payload.size());
      kep::SharedCohortHalf part =
          kep::parse_cohort_half(in.payload, in.payload.size() / kep::kPairBlobBytes);
      half = have_half ? concat_halves(std::move(half), part) : std::move(part);
      have_half = true;
    }
    if (half.n_pairs() != cfg.params.n_pairs) {
      throw ProtocolFault("providers supplied " + std::to_string(half.n_pairs()) +
                          " pairs, params say " + std::to_string(cfg.params.n_pairs));
    }

    kep::KepPipeline pipeline(session, triples, cfg);
    ServerOutput out;
    out.outcome = pipeline.run(half);
    out.result = kep::result_json(cfg, out.outcome, ledger);
    out.ledger = kep::ledger_json(party, cfg, out.outcome, ledger);
    out.transcript = session.transcript();

    const Bytes result_bytes = to_bytes(kep::dump_canonical(out.result));
    for (auto& [index, prov] : ordered) prov->send(MsgType::Result, 0, result_bytes);
    return out;
  } catch (const std::exception& e) {
    // send_abort is best-effort and harmless on the link that failed.
    links.peer->send_abort(e.what());
    for (FrameIo* prov : links.providers) prov->send_abort(e.what());
    throw;
  }
}

void send_dealer_hello(FrameIo& dealer, int party) {
  dealer.send(MsgType::Hello, std::uint32_t(party), Bytes{});
}

void run_dealer(FrameIo& a, FrameIo& b, std::uint64_t seed) {
  const Frame ha = a.expect(MsgType::Hello);
  const Frame hb = b.expect(MsgType::Hello);
  if ((ha.header.round_no | hb.header.round_no) > 1 ||
      ha.header.round_no == hb.header.round_no) {
    throw ProtocolFault("dealer needs exactly one hello from each party");
  }
  FrameIo& p0 = ha.header.round_no == 0 ? a : b;
  FrameIo& p1 = ha.header.round_no == 0 ? b : a;

  std::uint64_t serial = 0;
  for (;;) {
    Frame a;
    try {
      a = p0.expect(MsgType::Triples);
    } catch (const TransportError&) {
      return;  // server hung up: service is over
    }
    Frame b;
    try {
      b = p1.expect(MsgType::Triples);
    } catch (const std::exception&) {
      p0.send_abort("peer server unavailable");
      throw;
    }
    const mpc::TripleCounts ca = parse_counts(a.payload);
    const mpc::TripleCounts cb = parse_counts(b.payload);
    if (!(ca == cb)) {
      p0.send_abort("material requests diverged");
      p1.send_abort("material requests diverged");
      throw ProtocolFault("servers requested different dealer material");
    }
    auto halves = mpc::dealer_generate(ca, seed + 0x9e3779b97f4a7c15ull * (serial + 1));
    ++serial;
    p0.send(MsgType::Triples, 0, halves.first.serialize());
    p1.send(MsgType::Triples, 0, halves.second.serialize());
  }
}

ProviderOutput run_provider(const kep::PipelineConfig& cfg, const domain::Cohort& cohort,
                            std::uint32_t provider_index, FrameIo& p0, FrameIo& p1,
                            std::uint64_t seed) {
  try {
    validate_config(cfg);
    for (const auto& pair : cohort) {
      const auto problems = domain::validate_pair(pair);
      if (!problems.empty()) throw ValidationError("cohort pair invalid: " + problems.front());
    }
    const Bytes hello = handshake_bytes(cfg);
    p0.send(MsgType::Hello, provider_index, hello);
    p1.send(MsgType::Hello, provider_index, hello);
    const Frame h0 = p0.expect(MsgType::Hello);
    const Frame h1 = p1.expect(MsgType::Hello);
    if (h0.payload != hello || h1.payload != hello) {
      throw HandshakeError("a server disagrees on the public parameters");
    }

    std::mt19937_64 rng(seed);
    auto halves = kep::share_cohort(cohort, rng);
    p0.send(MsgType::InputShare, 0, kep::serialize_cohort_half(halves.first));
    p1.send(MsgType::InputShare, 0, kep::serialize_cohort_half(halves.second));

    const Frame r0 = p0.expect(MsgType::Result);
    const Frame r1 = p1.expect(MsgType::Result);
    if (r0.payload != r1.payload) {
      throw ProtocolFault("servers returned different result documents");
    }
    ProviderOutput out;
    out.result = nlohmann::json::parse(r0.payload.begin(), r0.payload.end());
    return out;
  } catch (const std::exception& e) {
    p0.send_abort(e.what());
    p1.send_abort(e.what());
    throw;
  }
}

}  // namespace ppkex::net
