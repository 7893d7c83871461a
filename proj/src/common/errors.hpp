#pragma once

#include <stdexcept>
#include <string>

namespace ppkex {

// Input or configuration rejected before any protocol work starts.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Socket-level failure (connect, short read, close by peer).
struct TransportError : std::runtime_error {
  explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// HELLO exchange failed: version, role, or parameter digest mismatch.
struct HandshakeError : std::runtime_error {
  explicit HandshakeError(const std::string& what) : std::runtime_error(what) {}
};

// Peer violated the wire protocol (bad magic, round gap, unknown type).
struct ProtocolFault : std::runtime_error {
  explicit ProtocolFault(const std::string& what) : std::runtime_error(what) {}
};

// Online phase asked for more precomputed material than the dealer shipped.
struct SetupUnderprovisioned : std::runtime_error {
  explicit SetupUnderprovisioned(const std::string& what) : std::runtime_error(what) {}
};

// Session torn down deliberately; reason travels in the ABORT frame.
struct SessionAborted : std::runtime_error {
  explicit SessionAborted(const std::string& reason) : std::runtime_error(reason) {}
};

}  // namespace ppkex
