#pragma once

#include <stdexcept>
#include <string>

namespace asymsim {

// Bad configuration or usage; maps to CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File-system failures; the message names the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed logs or snapshots; the message names the line or byte offset.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// HTTP/socket failures talking to external services; maps to CLI exit code 3.
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace asymsim
