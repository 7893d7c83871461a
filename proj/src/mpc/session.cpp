#include "mpc/session.hpp"

#include <stdexcept>

#include "common/errors.hpp"

namespace ppkex::mpc {

void Session::begin_tally() {
  if (tally_) throw std::logic_error("tally pass already active");
  tally_ = true;
  tally_counts_ = {};
}

TripleCounts Session::end_tally() {
  if (!tally_) throw std::logic_error("no tally pass active");
  tally_ = false;
  return tally_counts_;
}

Bytes Session::exchange(std::span<const std::uint8_t> payload) {
  if (tally_) throw std::logic_error("exchange called during tally pass");
  net::Frame in = peer_->exchange(net::MsgType::Round, round_no_, payload);
  if (in.header.type != net::MsgType::Round) {
    throw ProtocolFault(std::string("expected ROUND frame, got ") +
                        net::msg_type_name(in.header.type));
  }
  if (in.header.round_no != round_no_) {
    throw ProtocolFault("round gap: expected " + std::to_string(round_no_) + ", got " +
                        std::to_string(in.header.round_no));
  }
  transcript_.push_back({net::MsgType::Round, round_no_, std::uint32_t(payload.size()),
                         std::uint32_t(in.payload.size()), fnv1a64(payload),
                         fnv1a64(in.payload)});
  ledger_->add_round(payload.size() + in.payload.size());
  ++round_no_;
  ++rounds_executed_;
  return std::move(in.payload);
}

Bytes Session::reveal_exchange(std::span<const std::uint8_t> payload) {
  if (tally_) throw std::logic_error("reveal called during tally pass");
  net::Frame in = peer_->exchange(net::MsgType::Reveal, round_no_, payload);
  if (in.header.type != net::MsgType::Reveal) {
    throw ProtocolFault(std::string("expected REVEAL frame, got ") +
                        net::msg_type_name(in.header.type));
  }
  if (in.header.round_no != round_no_) {
    throw ProtocolFault("reveal out of step: expected " + std::to_string(round_no_) +
                        ", got " + std::to_string(in.header.round_no));
  }
  transcript_.push_back({net::MsgType::Reveal, round_no_, std::uint32_t(payload.size()),
                         std::uint32_t(in.payload.size()), fnv1a64(payload),
                         fnv1a64(in.payload)});
  ledger_->add_reveal(payload.size() + in.payload.size());
  return std::move(in.payload);
}

}  // namespace ppkex::mpc
