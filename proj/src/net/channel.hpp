#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "net/frame.hpp"

namespace ppkex::net {

// Byte-stream endpoint over a nonblocking fd (TCP socket or socketpair).
// All waiting goes through poll(); timeout_ms < 0 blocks indefinitely.
class FdChannel {
 public:
  FdChannel() = default;
  explicit FdChannel(int fd);
  ~FdChannel();
  FdChannel(FdChannel&& o) noexcept;
  FdChannel& operator=(FdChannel&& o) noexcept;
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  bool valid() const { return fd_ >= 0; }
  void close();

  void send_all(std::span<const std::uint8_t> data, int timeout_ms = -1);
  void recv_exact(std::uint8_t* out, std::size_t n, int timeout_ms = -1);

  // Reads exactly in_len bytes while writing as much of `out` as buffer
  // space allows, interleaved via poll, so both parties can transmit a
  // full round simultaneously without deadlocking on kernel buffers.
  // Returns how many bytes of `out` went through; the caller chains
  // further duplex reads or send_all for the remainder.
  std::size_t duplex(std::span<const std::uint8_t> out, std::uint8_t* in, std::size_t in_len,
                     int timeout_ms = -1);

  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

// In-process loopback-like pair (AF_UNIX socketpair).
std::pair<FdChannel, FdChannel> make_channel_pair();

class TcpListener {
 public:
  // Binds 127.0.0.1:port; port 0 picks an ephemeral port.
  explicit TcpListener(std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  FdChannel accept(int timeout_ms = -1);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Retries until the deadline so process start order does not matter.
FdChannel tcp_connect(const std::string& host, std::uint16_t port, int timeout_ms = 10000);

// Frame-level IO over one channel. Optional observer sees every frame
// (direction true = sent) for transcripts and ledgers.
class FrameIo {
 public:
  using Observer = std::function<void(bool sent, const FrameHeader&)>;

  FrameIo(FdChannel ch, std::uint64_t session_id) : ch_(std::move(ch)), session_(session_id) {}

  void set_observer(Observer obs) { observer_ = std::move(obs); }
  void set_timeout(int ms) { timeout_ms_ = ms; }
  std::uint64_t session_id() const { return session_; }

  void send(MsgType type, std::uint32_t round_no, std::span<const std::uint8_t> payload);
  // Receives one frame; checks session id; ABORT raises SessionAborted.
  Frame recv();
  // Receives one frame and requires the given type.
  Frame expect(MsgType type);
  // Simultaneous send + receive of one frame each way.
  Frame exchange(MsgType type, std::uint32_t round_no, std::span<const std::uint8_t> payload);

  void send_abort(const std::string& reason) noexcept;

  FdChannel& channel() { return ch_; }

 private:
  Frame finish_recv(std::span<const std::uint8_t> header_bytes, Bytes payload);
  void check(const FrameHeader& h) const;

  FdChannel ch_;
  std::uint64_t session_;
  int timeout_ms_ = -1;
  Observer observer_;
};

}  // namespace ppkex::net
