#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace asymsim {

// Lowercases ASCII letters, drops ASCII punctuation, splits on whitespace.
std::vector<std::string> tokenize(std::string_view text);

// Shannon entropy in bits of the token distribution of one text.
// An empty token list yields 0.
double text_entropy(std::string_view text);

// Same, over the token distribution pooled across all given texts
// (duplicates keep their counts).
double set_entropy(const std::vector<std::string>& contents);

}  // namespace asymsim
