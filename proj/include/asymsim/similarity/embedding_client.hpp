#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "asymsim/core/config.hpp"
#include "asymsim/similarity/similarity.hpp"
#include "asymsim/store/kv_store.hpp"

namespace asymsim {

struct EmbeddingApiOptions {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/embeddings";
  std::string api_key;
  std::string model = "text-embedding-ada-002";
  int timeout_seconds = 30;
  std::size_t max_batch = 64;        // texts per request
  int min_request_interval_ms = 0;   // crude rate limit between requests
  std::optional<std::filesystem::path> cache_dir;  // persistent vector cache
};

// Merges spec parameters with ASYMSIM_EMBED_BASE_URL, ASYMSIM_EMBED_MODEL,
// ASYMSIM_EMBED_CACHE_DIR and the shared api-key variables.
EmbeddingApiOptions embedding_options_from_spec(const SimilaritySpec& spec);

// Cosine similarity over fetched embedding vectors, clamped to [0,1].
// Vectors are cached by content hash (in memory, plus on disk when a cache
// dir is set) so a metrics pass fetches each distinct text once. Transport
// failures throw TransportError; callers decide whether that aborts.
class EmbeddingApiProvider final : public SimilarityProvider {
 public:
  explicit EmbeddingApiProvider(EmbeddingApiOptions options);

  std::string_view name() const override { return "embedding_api"; }
  double similarity(const std::string& a, const std::string& b) const override;

  // Batched fetch honoring cache and rate limit; result order matches input.
  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const;

 private:
  std::string cache_key(const std::string& text) const;
  std::vector<std::vector<double>> fetch(const std::vector<std::string>& texts) const;

  EmbeddingApiOptions options_;
  mutable std::mutex mutex_;
  mutable std::unique_ptr<KeyValueStore> cache_;
  mutable long long last_request_ms_ = 0;
};

}  // namespace asymsim
