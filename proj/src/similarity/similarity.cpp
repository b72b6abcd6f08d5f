#include "asymsim/similarity/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "asymsim/attention/entropy.hpp"
#include "asymsim/core/errors.hpp"
#include "asymsim/similarity/embedding_client.hpp"

namespace asymsim {

namespace {

class TfCosineProvider final : public SimilarityProvider {
 public:
  std::string_view name() const override { return "tf_cosine"; }

  double similarity(const std::string& a, const std::string& b) const override {
    if (a == b) return 1.0;
    const auto tokens_a = tokenize(a);
    const auto tokens_b = tokenize(b);
    if (tokens_a.empty() && tokens_b.empty()) return 1.0;
    if (tokens_a.empty() || tokens_b.empty()) return 0.0;
    if (tokens_a == tokens_b) return 1.0;

    std::unordered_map<std::string, double> counts_a;
    std::unordered_map<std::string, double> counts_b;
    for (const auto& t : tokens_a) counts_a[t] += 1.0;
    for (const auto& t : tokens_b) counts_b[t] += 1.0;

    double dot = 0.0;
    for (const auto& [token, count] : counts_a) {
      auto it = counts_b.find(token);
      if (it != counts_b.end()) dot += count * it->second;
    }
    double norm_a = 0.0;
    double norm_b = 0.0;
    for (const auto& [token, count] : counts_a) norm_a += count * count;
    for (const auto& [token, count] : counts_b) norm_b += count * count;
    const double cosine = dot / std::sqrt(norm_a * norm_b);
    return std::clamp(cosine, 0.0, 1.0);
  }
};

}  // namespace

std::unique_ptr<SimilarityProvider> make_tf_cosine_provider() {
  return std::make_unique<TfCosineProvider>();
}

std::shared_ptr<SimilarityProvider> make_provider(const SimilaritySpec& spec) {
  if (spec.name == "tf_cosine") return make_tf_cosine_provider();
  if (spec.name == "embedding_api") {
    return std::make_shared<EmbeddingApiProvider>(
        embedding_options_from_spec(spec));
  }
  throw ConfigError("unknown similarity provider: " + spec.name);
}

}  // namespace asymsim
