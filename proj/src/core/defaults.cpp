#include "asymsim/core/defaults.hpp"

namespace asymsim {

const std::vector<AgentProfile>& default_profiles() {
  static const std::vector<AgentProfile> profiles = {
      {1, 25, "woman", {"open-minded", "curious", "determined"},
       "She is a digital artist and animator who loves to explore how technology can "
       "be used to express ideas. She is always looking for new ways to combine art "
       "and technology."},
      {2, 36, "man", {"thoughtful", "reflective", "intellectual"},
       "He is a philosopher who loves to explore different ideas. He is always "
       "looking for ways to challenge people's preconceptions."},
      {3, 42, "man", {"friendly", "outgoing", "generous"},
       "He is a bartender and bar owner of The Rose and Crown Pub who loves to make "
       "people feel welcome. He is always looking for ways to make his customers "
       "feel special."},
      {4, 20, "woman", {"curious", "determined", "independent"},
       "She is a college student who loves to explore literature. She is curious and "
       "determined to understand the nuances of each work."},
      {5, 32, "man", {"loud", "rude", "toxic"},
       "He is a poet who loves to explore his inner thoughts and feelings. He is "
       "always looking for new ways to express himself."},
  };
  return profiles;
}

const InfoContent& default_content(ContentKind kind) {
  static const InfoContent og = {
      ContentKind::OG,
      "There’s a rumor about a mysterious agent, Sophia, a 29-year-old musician "
      "with a rebellious streak. Known for her fiery temper and captivating "
      "performances, she allegedly had a dramatic fallout with her former bandmates "
      "over creative differences. Whispers suggest she’s working on a solo "
      "album fueled by raw emotion and revenge."};
  static const InfoContent pp = {
      ContentKind::PP,
      "We are going to introduce a new policy. The new policy aims to increase taxes "
      "on high-income earners to fund essential education and healthcare programs. "
      "This strategic move seeks to address disparities in access to quality "
      "services, ensuring that all citizens benefit from improved educational "
      "opportunities and better health outcomes, ultimately fostering a more "
      "equitable society."};
  static const InfoContent lc = {
      ContentKind::LC,
      "The digital artwork vanished shortly after Agent 5 was seen pacing nervously "
      "nearby. Just before it disappeared, Agent 3 hurriedly left the gallery, "
      "raising suspicions. Meanwhile, Agent 4 discussed the artwork's value with "
      "someone. Agent 1, the creator, was speaking with Agent 2, the philosopher, at "
      "that moment, suggesting a connection to the mystery."};
  static const InfoContent sh = {
      ContentKind::SH,
      "We are excited to announce a new funding initiative that offers up to $50,000 "
      "for innovative projects that blend art and technology. This opportunity "
      "directly supports your pursuits, from digital art and animation to literature "
      "and poetry. Applications open next month, and we encourage all of you to "
      "apply, as this funding can significantly enhance your creative endeavors."};
  switch (kind) {
    case ContentKind::OG: return og;
    case ContentKind::PP: return pp;
    case ContentKind::LC: return lc;
    case ContentKind::SH: return sh;
  }
  return og;
}

ScenarioConfig default_config(ContentKind content, DistributionMechanism mechanism,
                              Topology topology, Polarity polarity) {
  ScenarioConfig config;
  config.content = default_content(content);
  config.mechanism = mechanism;
  config.topology = topology;
  config.initial_polarity = polarity;
  return config;
}

std::vector<ScenarioConfig> bundled_scenarios() {
  std::vector<ScenarioConfig> configs;
  for (auto content : {ContentKind::OG, ContentKind::PP, ContentKind::LC, ContentKind::SH}) {
    for (auto mechanism : {DistributionMechanism::BC, DistributionMechanism::OA,
                           DistributionMechanism::BCR}) {
      for (auto topology : {Topology::wheel, Topology::circle}) {
        for (auto polarity : {Polarity::positive, Polarity::negative}) {
          configs.push_back(default_config(content, mechanism, topology, polarity));
        }
      }
    }
  }
  return configs;
}

}  // namespace asymsim
