#include "asymsim/core/types.hpp"

namespace asymsim {

std::string_view to_string(RelationshipKind k) {
  switch (k) {
    case RelationshipKind::positive: return "positive";
    case RelationshipKind::negative: return "negative";
    case RelationshipKind::general: return "general";
  }
  return "general";
}

std::string_view to_string(Topology t) {
  return t == Topology::wheel ? "wheel" : "circle";
}

std::string_view to_string(ContentKind k) {
  switch (k) {
    case ContentKind::OG: return "OG";
    case ContentKind::PP: return "PP";
    case ContentKind::LC: return "LC";
    case ContentKind::SH: return "SH";
  }
  return "OG";
}

std::string_view to_string(DistributionMechanism m) {
  switch (m) {
    case DistributionMechanism::BC: return "BC";
    case DistributionMechanism::OA: return "OA";
    case DistributionMechanism::BCR: return "BCR";
  }
  return "BC";
}

std::string_view to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

std::optional<RelationshipKind> relationship_from_string(std::string_view s) {
  if (s == "positive") return RelationshipKind::positive;
  if (s == "negative") return RelationshipKind::negative;
  if (s == "general") return RelationshipKind::general;
  return std::nullopt;
}

std::optional<Topology> topology_from_string(std::string_view s) {
  if (s == "wheel") return Topology::wheel;
  if (s == "circle") return Topology::circle;
  return std::nullopt;
}

std::optional<ContentKind> content_kind_from_string(std::string_view s) {
  if (s == "OG") return ContentKind::OG;
  if (s == "PP") return ContentKind::PP;
  if (s == "LC") return ContentKind::LC;
  if (s == "SH") return ContentKind::SH;
  return std::nullopt;
}

std::optional<DistributionMechanism> mechanism_from_string(std::string_view s) {
  if (s == "BC") return DistributionMechanism::BC;
  if (s == "OA") return DistributionMechanism::OA;
  if (s == "BCR") return DistributionMechanism::BCR;
  return std::nullopt;
}

std::optional<Polarity> polarity_from_string(std::string_view s) {
  if (s == "positive") return Polarity::positive;
  if (s == "negative") return Polarity::negative;
  return std::nullopt;
}

}  // namespace asymsim
