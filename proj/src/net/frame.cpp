#include "net/frame.hpp"

#include <cstring>

#include "common/errors.hpp"

namespace ppkex::net {

const char* msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::Hello:
      return "HELLO";
    case MsgType::InputShare:
      return "INPUT_SHARE";
    case MsgType::Triples:
      return "TRIPLES";
    case MsgType::Round:
      return "ROUND";
    case MsgType::Reveal:
      return "REVEAL";
    case MsgType::Result:
      return "RESULT";
    case MsgType::Abort:
      return "ABORT";
  }
  return "?";
}

Bytes encode_frame(MsgType type, std::uint64_t session_id, std::uint32_t round_no,
                   std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxPayload) throw ProtocolFault("frame payload too large to encode");
  Bytes out;
  out.reserve(kHeaderSize + payload.size());
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(std::uint8_t(type));
  put_u64_be(out, session_id);
  put_u32_be(out, round_no);
  put_u32_be(out, std::uint32_t(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

FrameHeader parse_header(std::span<const std::uint8_t> h) {
  if (h.size() != kHeaderSize) throw ProtocolFault("frame header has wrong size");
  if (std::memcmp(h.data(), kMagic, 4) != 0) throw ProtocolFault("bad frame magic");
  const std::uint8_t t = h[4];
  if (t < std::uint8_t(MsgType::Hello) || t > std::uint8_t(MsgType::Abort)) {
    throw ProtocolFault("unknown frame type " + std::to_string(int(t)));
  }
  FrameHeader out;
  out.type = MsgType(t);
  out.session_id = get_u64_be(h.data() + 5);
  out.round_no = get_u32_be(h.data() + 13);
  out.payload_len = get_u32_be(h.data() + 17);
  if (out.payload_len > kMaxPayload) {
    throw ProtocolFault("frame payload length " + std::to_string(out.payload_len) +
                        " exceeds limit");
  }
  return out;
}

}  // namespace ppkex::net
