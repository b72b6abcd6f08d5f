#include "asymsim/attention/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace asymsim {

namespace {

// Locale-independent ASCII classification so tokenization is identical on
// every platform.
bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u > 0x20 && u < 0x7f && !(u >= '0' && u <= '9') && !(u >= 'a' && u <= 'z') &&
         !(u >= 'A' && u <= 'Z');
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Summation runs over the sorted count multiset so that equal distributions
// produce bit-identical results no matter how the tokens hashed; the weight
// algorithm compares these values for strict inequality.
double entropy_of_counts(const std::unordered_map<std::string, std::size_t>& counts,
                         std::size_t total) {
  if (total == 0) return 0.0;
  std::vector<std::size_t> sorted_counts;
  sorted_counts.reserve(counts.size());
  for (const auto& [token, count] : counts) sorted_counts.push_back(count);
  std::sort(sorted_counts.begin(), sorted_counts.end());
  double entropy = 0.0;
  for (std::size_t count : sorted_counts) {
    const double p = static_cast<double>(count) / static_cast<double>(total);
    entropy -= p * std::log2(p);
  }
  // -0.0 can fall out of a single-token distribution.
  return entropy == 0.0 ? 0.0 : entropy;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_ascii_space(c)) {
      if (!current.empty()) {
        tokens.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    if (is_ascii_punct(c)) continue;
    current.push_back(ascii_lower(c));
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double text_entropy(std::string_view text) {
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (auto& token : tokenize(text)) {
    ++counts[token];
    ++total;
  }
  return entropy_of_counts(counts, total);
}

double set_entropy(const std::vector<std::string>& contents) {
  std::unordered_map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& content : contents) {
    for (auto& token : tokenize(content)) {
      ++counts[token];
      ++total;
    }
  }
  return entropy_of_counts(counts, total);
}

}  // namespace asymsim
