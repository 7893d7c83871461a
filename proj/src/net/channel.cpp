#include "net/channel.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "common/errors.hpp"

namespace ppkex::net {

namespace {

void set_nonblocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL, 0);
  if (flags < 0 || ::fcntl(fd, F_SETFL, flags | O_NONBLOCK) < 0) {
    throw TransportError("fcntl(O_NONBLOCK) failed");
  }
}

void wait_fd(int fd, short events, int timeout_ms) {
  struct pollfd pfd{fd, events, 0};
  for (;;) {
    const int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc > 0) return;
    if (rc == 0) throw TransportError("io timeout");
    if (errno != EINTR) throw TransportError(std::string("poll: ") + std::strerror(errno));
  }
}

}  // namespace

FdChannel::FdChannel(int fd) : fd_(fd) { set_nonblocking(fd_); }

FdChannel::~FdChannel() { close(); }

FdChannel::FdChannel(FdChannel&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }

FdChannel& FdChannel::operator=(FdChannel&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.fd_;
    o.fd_ = -1;
  }
  return *this;
}

void FdChannel::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void FdChannel::send_all(std::span<const std::uint8_t> data, int timeout_ms) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n > 0) {
      off += std::size_t(n);
      continue;
    }
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK)) {
      wait_fd(fd_, POLLOUT, timeout_ms);
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    throw TransportError(std::string("send: ") + std::strerror(errno));
  }
}

void FdChannel::recv_exact(std::uint8_t* out, std::size_t n, int timeout_ms) {
  std::size_t off = 0;
  while (off < n) {
    const ssize_t r = ::recv(fd_, out + off, n - off, 0);
    if (r > 0) {
      off += std::size_t(r);
      continue;
    }
    if (r == 0) throw TransportError("peer closed connection");
    if (errno == EAGAIN || errno == EWOULDBLOCK) {
      wait_fd(fd_, POLLIN, timeout_ms);
      continue;
    }
    if (errno == EINTR) continue;
    throw TransportError(std::string("recv: ") + std::strerror(errno));
  }
}

std::size_t FdChannel::duplex(std::span<const std::uint8_t> out, std::uint8_t* in,
                              std::size_t in_len, int timeout_ms) {
  std::size_t sent = 0, got = 0;
  while (got < in_len) {
    short events = POLLIN;
    if (sent < out.size()) events |= POLLOUT;
    struct pollfd pfd{fd_, events, 0};
    const int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc == 0) throw TransportError("io timeout");
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("poll: ") + std::strerror(errno));
    }
    if ((pfd.revents & (POLLERR | POLLNVAL)) != 0) throw TransportError("socket error");
    if (sent < out.size() && (pfd.revents & POLLOUT)) {
      const ssize_t n = ::send(fd_, out.data() + sent, out.size() - sent, MSG_NOSIGNAL);
      if (n > 0) sent += std::size_t(n);
      else if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
        throw TransportError(std::string("send: ") + std::strerror(errno));
      }
    }
    if (pfd.revents & (POLLIN | POLLHUP)) {
      const ssize_t n = ::recv(fd_, in + got, in_len - got, 0);
      if (n > 0) got += std::size_t(n);
      else if (n == 0) throw TransportError("peer closed connection");
      else if (errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) {
        throw TransportError(std::string("recv: ") + std::strerror(errno));
      }
    }
  }
  return sent;
}

std::pair<FdChannel, FdChannel> make_channel_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw TransportError("socketpair failed");
  }
  return {FdChannel(fds[0]), FdChannel(fds[1])};
}

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw TransportError("socket failed");
  const int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    throw TransportError("bind failed: " + std::string(std::strerror(errno)));
  }
  if (::listen(fd_, 16) != 0) {
    ::close(fd_);
    throw TransportError("listen failed");
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

FdChannel TcpListener::accept(int timeout_ms) {
  wait_fd(fd_, POLLIN, timeout_ms);
  const int cfd = ::accept(fd_, nullptr, nullptr);
  if (cfd < 0) throw TransportError("accept failed");
  const int one = 1;
  ::setsockopt(cfd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return FdChannel(cfd);
}

FdChannel tcp_connect(const std::string& host, std::uint16_t port, int timeout_ms) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw TransportError("socket failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
      ::close(fd);
      throw TransportError("bad host address: " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return FdChannel(fd);
    }
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      throw TransportError("connect to " + host + ":" + std::to_string(port) + " timed out");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

void FrameIo::send(MsgType type, std::uint32_t round_no, std::span<const std::uint8_t> payload) {
  const Bytes wire = encode_frame(type, session_, round_no, payload);
  ch_.send_all(wire, timeout_ms_);
  if (observer_) {
    observer_(true, FrameHeader{type, session_, round_no, std::uint32_t(payload.size())});
  }
}

void FrameIo::check(const FrameHeader& h) const {
  if (h.session_id != session_) {
    throw ProtocolFault("frame for wrong session " + std::to_string(h.session_id));
  }
}

Frame FrameIo::finish_recv(std::span<const std::uint8_t> header_bytes, Bytes payload) {
  const FrameHeader h = parse_header(header_bytes);
  check(h);
  Frame f{h, std::move(payload)};
  if (f.payload.size() != h.payload_len) throw ProtocolFault("payload size mismatch");
  if (observer_) observer_(false, h);
  if (h.type == MsgType::Abort) {
    throw SessionAborted(std::string(f.payload.begin(), f.payload.end()));
  }
  return f;
}

Frame FrameIo::recv() {
  std::uint8_t hdr[kHeaderSize];
  ch_.recv_exact(hdr, kHeaderSize, timeout_ms_);
  const FrameHeader h = parse_header({hdr, kHeaderSize});
  Bytes payload(h.payload_len);
  if (h.payload_len > 0) ch_.recv_exact(payload.data(), payload.size(), timeout_ms_);
  return finish_recv({hdr, kHeaderSize}, std::move(payload));
}

Frame FrameIo::expect(MsgType type) {
  Frame f = recv();
  if (f.header.type != type) {
    throw ProtocolFault(std::string("expected ") + msg_type_name(type) + " frame, got " +
                        msg_type_name(f.header.type));
  }
  return f;
}

void FrameIo::send_abort(const std::string& reason) noexcept {
  try {
    const std::span<const std::uint8_t> payload(
        reinterpret_cast<const std::uint8_t*>(reason.data()), reason.size());
    send(MsgType::Abort, 0, payload);
  } catch (...) {
    // Best effort: the peer may already be gone.
  }
}

Frame FrameIo::exchange(MsgType type, std::uint32_t round_no,
                        std::span<const std::uint8_t> payload) {
  const Bytes wire = encode_frame(type, session_, round_no, payload);
  // Read the peer header, then its payload, while our frame drains.
  std::uint8_t hdr[kHeaderSize];
  std::size_t sent = ch_.duplex(wire, hdr, kHeaderSize, timeout_ms_);
  const FrameHeader h = parse_header({hdr, kHeaderSize});
  Bytes in_payload(h.payload_len);
  if (h.payload_len > 0) {
    const std::span<const std::uint8_t> rest = std::span(wire).subspan(sent);
    sent += ch_.duplex(rest, in_payload.data(), in_payload.size(), timeout_ms_);
  }
  // The peer's frame is fully in, so it is done writing and now only
  // drains; the tail of our frame cannot stall.
  if (sent < wire.size()) ch_.send_all(std::span(wire).subspan(sent), timeout_ms_);
  if (observer_) {
    observer_(true, FrameHeader{type, session_, round_no, std::uint32_t(payload.size())});
  }
  return finish_recv({hdr, kHeaderSize}, std::move(in_payload));
}

}  // namespace ppkex::net
