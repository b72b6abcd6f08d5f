#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "asymsim/core/config.hpp"

namespace asymsim {

// Text-similarity plugin used by the metrics and the graph export.
// similarity() is symmetric, lands in [0,1], and treats empty strings
// uniformly across providers: empty vs empty is 1, empty vs non-empty is 0.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  virtual std::string_view name() const = 0;
  virtual double similarity(const std::string& a, const std::string& b) const = 0;

  bool is_similar(const std::string& a, const std::string& b,
                  double threshold) const {
    return similarity(a, b) >= threshold;
  }
};

// Offline default: cosine of term-frequency vectors over the shared
// lowercase/punctuation-stripped tokenization.
std::unique_ptr<SimilarityProvider> make_tf_cosine_provider();

// Builds a provider from its spec; embedding_api reads endpoint settings from
// parameters and environment variables. Throws ConfigError on unknown names.
std::shared_ptr<SimilarityProvider> make_provider(const SimilaritySpec& spec);

}  // namespace asymsim
