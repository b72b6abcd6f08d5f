#include "asymsim/store/kv_store.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <utility>

#include "asymsim/core/errors.hpp"
#include "asymsim/store/resp_client.hpp"

#include "json.hpp"

namespace asymsim {

namespace {

class MemoryStore final : public KeyValueStore {
 public:
  explicit MemoryStore(std::string ns) : ns_(std::move(ns)) {}
  std::string_view backend() const override { return "in_memory"; }

  std::optional<std::string> get(const std::string& key) override {
    std::lock_guard lock(mutex_);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, const std::string& value) override {
    std::lock_guard lock(mutex_);
    values_[key] = value;
  }

  bool erase(const std::string& key) override {
    std::lock_guard lock(mutex_);
    return values_.erase(key) > 0;
  }

 private:
  std::string ns_;
  std::mutex mutex_;
  std::map<std::string, std::string> values_;
};

class FileStore final : public KeyValueStore {
 public:
  FileStore(std::string ns, std::filesystem::path dir)
      : ns_(std::move(ns)), path_(dir / (ns_ + ".json")) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create store directory " + dir.string() + ": " + ec.message());
    load();
  }

  std::string_view backend() const override { return "file_backed"; }

  std::optional<std::string> get(const std::string& key) override {
    std::lock_guard lock(mutex_);
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& key, const std::string& value) override {
    std::lock_guard lock(mutex_);
    values_[key] = value;
    flush();
  }

  bool erase(const std::string& key) override {
    std::lock_guard lock(mutex_);
    const bool removed = values_.erase(key) > 0;
    if (removed) flush();
    return removed;
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;  // fresh namespace
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError("corrupt key-value file: " + path_.string());
    }
    for (auto& [key, value] : j.items()) {
      if (value.is_string()) values_[key] = value.get<std::string>();
    }
  }

  void flush() {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : values_) j[key] = value;
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write key-value file: " + path_.string());
    out << j.dump();
    if (!out) throw IoError("write failed: " + path_.string());
  }

  std::string ns_;
  std::filesystem::path path_;
  std::mutex mutex_;
  std::map<std::string, std::string> values_;
};

class RespStore final : public KeyValueStore {
 public:
  RespStore(std::string ns, std::string host, int port)
      : ns_(std::move(ns)), client_(std::move(host), port) {}

  std::string_view backend() const override { return "resp_server"; }

  std::optional<std::string> get(const std::string& key) override {
    std::lock_guard lock(mutex_);
    return client_.get(ns_ + ":" + key);
  }

  void put(const std::string& key, const std::string& value) override {
    std::lock_guard lock(mutex_);
    client_.set(ns_ + ":" + key, value);
  }

  bool erase(const std::string& key) override {
    std::lock_guard lock(mutex_);
    return client_.del(ns_ + ":" + key);
  }

 private:
  std::string ns_;
  std::mutex mutex_;
  RespClient client_;
};

}  // namespace

std::unique_ptr<KeyValueStore> make_memory_store(std::string ns) {
  return std::make_unique<MemoryStore>(std::move(ns));
}

std::unique_ptr<KeyValueStore> make_file_store(std::string ns,
                                               std::filesystem::path dir) {
  return std::make_unique<FileStore>(std::move(ns), std::move(dir));
}

std::unique_ptr<KeyValueStore> make_resp_store(std::string ns, std::string host,
                                               int port) {
  return std::make_unique<RespStore>(std::move(ns), std::move(host), port);
}

}  // namespace asymsim
