#pragma once

#include <optional>
#include <string>
#include <vector>

namespace asymsim {

// Blocking client for the standard text protocol of common key-value servers
// (inline RESP arrays, bulk-string replies). Connects lazily and reconnects
// after errors. Throws TransportError on socket or protocol problems.
class RespClient {
 public:
  RespClient(std::string host, int port);
  ~RespClient();

  RespClient(const RespClient&) = delete;
  RespClient& operator=(const RespClient&) = delete;

  std::optional<std::string> get(const std::string& key);
  void set(const std::string& key, const std::string& value);
  bool del(const std::string& key);

 private:
  void ensure_connected();
  void close();
  void send_command(const std::vector<std::string>& parts);
  std::string read_line();
  std::string read_exact(std::size_t n);

  std::string host_;
  int port_;
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace asymsim
