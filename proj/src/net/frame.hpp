#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "common/bytes.hpp"

namespace ppkex::net {

// Wire layout, all multi-byte header fields big-endian:
//   offset 0  magic   "SPK1"
//   offset 4  type    1 byte
//   offset 5  session 8 bytes
//   offset 13 round   4 bytes
//   offset 17 length  4 bytes (payload byte count)
//   offset 21 payload
inline constexpr std::size_t kHeaderSize = 21;
inline constexpr std::uint8_t kMagic[4] = {'S', 'P', 'K', '1'};

// Frames larger than this are rejected before any allocation.
inline constexpr std::uint32_t kMaxPayload = 1u << 30;

enum class MsgType : std::uint8_t {
  Hello = 1,
  InputShare = 2,
  Triples = 3,
  Round = 4,
  Reveal = 5,
  Result = 6,
  Abort = 7,
};

const char* msg_type_name(MsgType t);

struct FrameHeader {
  MsgType type;
  std::uint64_t session_id;
  std::uint32_t round_no;
  std::uint32_t payload_len;
};

struct Frame {
  FrameHeader header;
  Bytes payload;
};

Bytes encode_frame(MsgType type, std::uint64_t session_id, std::uint32_t round_no,
                   std::span<const std::uint8_t> payload);

// Validates magic, type and length bound; throws ProtocolFault otherwise.
FrameHeader parse_header(std::span<const std::uint8_t> header_bytes);

}  // namespace ppkex::net
