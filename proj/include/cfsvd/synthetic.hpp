#ifndef CFSVD_SYNTHETIC_HPP
#define CFSVD_SYNTHETIC_HPP

#include <cstdint>

#include "cfsvd/ratings.hpp"

namespace cfsvd {

// Seeded generator standing in for a real ratings dataset: additive user and
// item biases plus a rank-`factors` interaction whose user vectors cluster
// into `archetypes` groups, Gaussian noise on top, rounded and clamped to
// the 1..5 scale.  Biases are what the corrected-averages model captures,
// archetypes are what the clustering captures.
struct SyntheticConfig {
  int users = 500;
  int items = 80;
  int factors = 5;
  int archetypes = 4;
  double density = 0.15;     // fraction of (user, item) pairs observed
  double noise_sigma = 0.5;
  double item_bias_sigma = 0.55;
  double user_bias_sigma = 0.35;
  double interaction_scale = 0.55;  // std of the archetype-item term
  double archetype_jitter = 0.25;   // per-user spread inside an archetype
  std::uint64_t seed = 1;
};

RatingsMatrix generate_synthetic(const SyntheticConfig& cfg);

}  // namespace cfsvd

#endif
