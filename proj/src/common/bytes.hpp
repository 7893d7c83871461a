#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace ppkex {

using Bytes = std::vector<std::uint8_t>;

inline void put_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v >> 24));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v));
}

inline void put_u64_be(Bytes& out, std::uint64_t v) {
  put_u32_be(out, std::uint32_t(v >> 32));
  put_u32_be(out, std::uint32_t(v));
}

inline std::uint32_t get_u32_be(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

inline std::uint64_t get_u64_be(const std::uint8_t* p) {
  return (std::uint64_t(get_u32_be(p)) << 32) | get_u32_be(p + 4);
}

// Payload scalars travel little-endian; only frame header fields are BE.
inline void put_u32_le(Bytes& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
  out.push_back(std::uint8_t(v >> 16));
  out.push_back(std::uint8_t(v >> 24));
}

inline void put_u64_le(Bytes& out, std::uint64_t v) {
  put_u32_le(out, std::uint32_t(v));
  put_u32_le(out, std::uint32_t(v >> 32));
}

inline std::uint32_t get_u32_le(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

inline std::uint64_t get_u64_le(const std::uint8_t* p) {
  return std::uint64_t(get_u32_le(p)) | (std::uint64_t(get_u32_le(p + 4)) << 32);
}

// Non-cryptographic digest for transcript divergence checks.
inline std::uint64_t fnv1a64(std::span<const std::uint8_t> data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto b : data) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace ppkex
