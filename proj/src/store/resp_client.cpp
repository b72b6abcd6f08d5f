#include "asymsim/store/resp_client.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <vector>

#include "asymsim/core/errors.hpp"

namespace asymsim {

RespClient::RespClient(std::string host, int port)
    : host_(std::move(host)), port_(port) {}

RespClient::~RespClient() { close(); }

void RespClient::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  buffer_.clear();
}

void RespClient::ensure_connected() {
  if (fd_ >= 0) return;
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  const std::string port_str = std::to_string(port_);
  if (getaddrinfo(host_.c_str(), port_str.c_str(), &hints, &result) != 0) {
    throw TransportError("cannot resolve key-value server host: " + host_);
  }
  int fd = -1;
  for (addrinfo* ai = result; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  freeaddrinfo(result);
  if (fd < 0) {
    throw TransportError("cannot connect to key-value server " + host_ + ":" +
                         port_str);
  }
  fd_ = fd;
}

void RespClient::send_command(const std::vector<std::string>& parts) {
  ensure_connected();
  std::string out = "*" + std::to_string(parts.size()) + "\r\n";
  for (const auto& part : parts) {
    out += "$" + std::to_string(part.size()) + "\r\n" + part + "\r\n";
  }
  std::size_t sent = 0;
  while (sent < out.size()) {
    const ssize_t n = ::send(fd_, out.data() + sent, out.size() - sent, 0);
    if (n <= 0) {
      close();
      throw TransportError("key-value server send failed");
    }
    sent += static_cast<std::size_t>(n);
  }
}

std::string RespClient::read_line() {
  while (true) {
    const auto pos = buffer_.find("\r\n");
    if (pos != std::string::npos) {
      std::string line = buffer_.substr(0, pos);
      buffer_.erase(0, pos + 2);
      return line;
    }
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n <= 0) {
      close();
      throw TransportError("key-value server closed the connection");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::string RespClient::read_exact(std::size_t n) {
  while (buffer_.size() < n + 2) {  // payload plus trailing \r\n
    char chunk[4096];
    const ssize_t got = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (got <= 0) {
      close();
      throw TransportError("key-value server closed the connection");
    }
    buffer_.append(chunk, static_cast<std::size_t>(got));
  }
  std::string payload = buffer_.substr(0, n);
  buffer_.erase(0, n + 2);
  return payload;
}

std::optional<std::string> RespClient::get(const std::string& key) {
  send_command({"GET", key});
  const std::string line = read_line();
  if (line.empty()) throw TransportError("empty key-value server reply");
  if (line[0] == '$') {
    const long long len = std::stoll(line.substr(1));
    if (len < 0) return std::nullopt;
    return read_exact(static_cast<std::size_t>(len));
  }
  if (line[0] == '-') throw TransportError("key-value server error: " + line.substr(1));
  throw TransportError("unexpected key-value server reply: " + line);
}

void RespClient::set(const std::string& key, const std::string& value) {
  send_command({"SET", key, value});
  const std::string line = read_line();
  if (line.rfind("+OK", 0) == 0) return;
  if (!line.empty() && line[0] == '-') {
    throw TransportError("key-value server error: " + line.substr(1));
  }
  throw TransportError("unexpected key-value server reply: " + line);
}

bool RespClient::del(const std::string& key) {
  send_command({"DEL", key});
  const std::string line = read_line();
  if (!line.empty() && line[0] == ':') return std::stoll(line.substr(1)) > 0;
  if (!line.empty() && line[0] == '-') {
    throw TransportError("key-value server error: " + line.substr(1));
  }
  throw TransportError("unexpected key-value server reply: " + line);
}

}  // namespace asymsim
