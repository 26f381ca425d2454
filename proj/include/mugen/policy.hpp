#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mugen/kv_config.hpp"
#include "mugen/rng.hpp"
#include "mugen/simcore.hpp"

namespace mugen {

struct PolicyProfile {
  std::string name;
  double coin_greed = 0.0;
  double risk_tolerance = 0.0;
  double jump_propensity = 0.0;
  double climb_preference = 0.0;
  double dither = 0.0;   // probability of a uniformly random intent

  // Throws InvalidProfile unless every scalar lies in [0, 1].
  void validate() const;
  std::array<double, 5> vector() const {
    return {coin_greed, risk_tolerance, jump_propensity, climb_preference, dither};
  }
  bool operator==(const PolicyProfile&) const = default;
};

class Policy {
 public:
  Policy(PolicyProfile profile, std::uint64_t seed);

  AgentIntent decide(const Observation& obs);

  // Deterministic part of the decision, before dithering.
  std::array<double, kIntentCount> scores(const Observation& obs) const;

  const PolicyProfile& profile() const { return profile_; }
  std::uint64_t seed() const { return seed_; }

 private:
  PolicyProfile profile_;
  std::uint64_t seed_;
  SplitMix64 rng_;
  AgentIntent last_ = AgentIntent::None;
};

Policy make_policy(const PolicyProfile& profile, std::uint64_t seed);
inline AgentIntent decide(Policy& policy, const Observation& obs) { return policy.decide(obs); }

// Named presets. The built-in set holds profile-01 .. profile-14; config keys
// of the form `preset.<name>.<field>` override or add presets.
class PresetRegistry {
 public:
  static const PresetRegistry& builtin();

  // Throws UnknownPolicyPreset.
  const PolicyProfile& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::vector<PolicyProfile>& all() const { return presets_; }

  void apply_overrides(const KvConfig& cfg);

 private:
  std::vector<PolicyProfile> presets_;
};

std::vector<PolicyProfile> builtin_presets();

// Seed used for a preset on a level when none is given explicitly.
inline std::uint64_t default_policy_seed(std::uint64_t level_seed) { return mix64(level_seed ^ 0xA5A5'5A5A'0F0F'F0F0ULL); }

}  // namespace mugen
