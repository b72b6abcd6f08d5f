#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace asymsim {

// Minimal per-run key-value abstraction. Keys live inside the namespace the
// store was opened with; get after put returns the stored value.
class KeyValueStore {
 public:
  virtual ~KeyValueStore() = default;
  virtual std::string_view backend() const = 0;
  virtual std::optional<std::string> get(const std::string& key) = 0;
  virtual void put(const std::string& key, const std::string& value) = 0;
  virtual bool erase(const std::string& key) = 0;
};

std::unique_ptr<KeyValueStore> make_memory_store(std::string ns);

// One JSON file per namespace under `dir`; writes go straight through.
std::unique_ptr<KeyValueStore> make_file_store(std::string ns,
                                               std::filesystem::path dir);

// Adapter for an external key-value server speaking the common text protocol
// (GET/SET/DEL); keys are prefixed "<ns>:". Throws TransportError on socket
// or protocol failures.
std::unique_ptr<KeyValueStore> make_resp_store(std::string ns, std::string host,
                                               int port);

}  // namespace asymsim
