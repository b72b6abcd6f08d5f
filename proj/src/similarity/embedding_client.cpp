#include "asymsim/similarity/embedding_client.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "asymsim/core/errors.hpp"

#include "httplib.h"
#include "json.hpp"

namespace asymsim {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value && *value ? std::string(value) : fallback;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty() || a.size() != b.size()) return 0.0;
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    norm_a += a[i] * a[i];
    norm_b += b[i] * b[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(norm_a * norm_b), 0.0, 1.0);
}

}  // namespace

EmbeddingApiOptions embedding_options_from_spec(const SimilaritySpec& spec) {
  const auto& params = spec.parameters;
  auto param_string = [&](const char* key, const std::string& fallback) {
    if (!params.contains(key)) return fallback;
    if (!params.at(key).is_string())
      throw ConfigError(std::string("embedding parameter must be a string: ") + key);
    return params.at(key).get<std::string>();
  };

  EmbeddingApiOptions options;
  options.base_url = param_string(
      "base_url", env_or("ASYMSIM_EMBED_BASE_URL", "https://api.openai.com"));
  options.path = param_string("path", "/v1/embeddings");
  options.model =
      param_string("model", env_or("ASYMSIM_EMBED_MODEL", "text-embedding-ada-002"));
  options.api_key = env_or("ASYMSIM_API_KEY", env_or("OPENAI_API_KEY", ""));
  if (params.contains("timeout_seconds"))
    options.timeout_seconds = params.at("timeout_seconds").get<int>();
  if (params.contains("max_batch"))
    options.max_batch = params.at("max_batch").get<std::size_t>();
  if (params.contains("min_request_interval_ms"))
    options.min_request_interval_ms = params.at("min_request_interval_ms").get<int>();
  const std::string cache_dir =
      param_string("cache_dir", env_or("ASYMSIM_EMBED_CACHE_DIR", ""));
  if (!cache_dir.empty()) options.cache_dir = cache_dir;
  return options;
}

EmbeddingApiProvider::EmbeddingApiProvider(EmbeddingApiOptions options)
    : options_(std::move(options)) {
  if (options_.max_batch == 0) options_.max_batch = 1;
  cache_ = options_.cache_dir
               ? make_file_store("embeddings", *options_.cache_dir)
               : make_memory_store("embeddings");
}

std::string EmbeddingApiProvider::cache_key(const std::string& text) const {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  return options_.model + ":" + hex;
}

std::vector<std::vector<double>> EmbeddingApiProvider::fetch(
    const std::vector<std::string>& texts) const {
  nlohmann::json body = {{"model", options_.model}, {"input", texts}};
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  client.set_write_timeout(options_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  auto res = client.Post(options_.path, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError("embedding request failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("embedding request returned http " +
                         std::to_string(res->status));
  }
  const nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded() || !reply.contains("data") || !reply.at("data").is_array() ||
      reply.at("data").size() != texts.size()) {
    throw TransportError("malformed embedding response");
  }
  std::vector<std::vector<double>> vectors(texts.size());
  for (const auto& item : reply.at("data")) {
    if (!item.contains("index") || !item.contains("embedding") ||
        !item.at("embedding").is_array()) {
      throw TransportError("malformed embedding response entry");
    }
    const auto index = item.at("index").get<std::size_t>();
    if (index >= vectors.size()) throw TransportError("embedding index out of range");
    vectors[index] = item.at("embedding").get<std::vector<double>>();
  }
  return vectors;
}

std::vector<std::vector<double>> EmbeddingApiProvider::embed(
    const std::vector<std::string>& texts) const {
  std::lock_guard lock(mutex_);
  std::vector<std::vector<double>> out(texts.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (auto cached = cache_->get(cache_key(texts[i]))) {
      out[i] = nlohmann::json::parse(*cached).get<std::vector<double>>();
    } else {
      missing.push_back(i);
    }
  }

  for (std::size_t start = 0; start < missing.size(); start += options_.max_batch) {
    const std::size_t end = std::min(missing.size(), start + options_.max_batch);
    std::vector<std::string> batch;
    for (std::size_t k = start; k < end; ++k) batch.push_back(texts[missing[k]]);

    if (options_.min_request_interval_ms > 0) {
      const long long wait = last_request_ms_ + options_.min_request_interval_ms - now_ms();
      if (wait > 0) std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    }
    auto vectors = fetch(batch);
    last_request_ms_ = now_ms();

    for (std::size_t k = start; k < end; ++k) {
      out[missing[k]] = vectors[k - start];
      cache_->put(cache_key(texts[missing[k]]),
                  nlohmann::json(vectors[k - start]).dump());
    }
  }
  return out;
}

double EmbeddingApiProvider::similarity(const std::string& a,
                                        const std::string& b) const {
  if (a == b) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  auto vectors = embed({a, b});
  return cosine(vectors[0], vectors[1]);
}

}  // namespace asymsim
