#include "mugen/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mugen/error.hpp"

namespace mugen {

namespace {

using Cellt = Observation::CellType;

constexpr std::array<AgentIntent, kIntentCount> kIntents = {
    AgentIntent::None,     AgentIntent::Left,      AgentIntent::Right, AgentIntent::Jump,
    AgentIntent::JumpLeft, AgentIntent::JumpRight, AgentIntent::Up,    AgentIntent::Down};

int horizontal(AgentIntent i) {
  switch (i) {
    case AgentIntent::Left:
    case AgentIntent::JumpLeft: return -1;
    case AgentIntent::Right:
    case AgentIntent::JumpRight: return 1;
    default: return 0;
  }
}

bool jumps(AgentIntent i) {
  return i == AgentIntent::Jump || i == AgentIntent::JumpLeft || i == AgentIntent::JumpRight;
}

std::size_t idx(AgentIntent i) { return static_cast<std::size_t>(i); }

AgentIntent walk(int d) { return d < 0 ? AgentIntent::Left : AgentIntent::Right; }
AgentIntent jump(int d) { return d < 0 ? AgentIntent::JumpLeft : d > 0 ? AgentIntent::JumpRight : AgentIntent::Jump; }

int sign(double v, double dead) { return v > dead ? 1 : v < -dead ? -1 : 0; }

// Solid cells stacked at feet level in column `d`.
int wall_height(const Observation& obs, int d) {
  int h = 0;
  while (h <= Observation::kAbove && obs.at(d, h) == Cellt::Solid) ++h;
  return h;
}

bool overhead(const Observation& obs, int dx) {
  for (int dy = 1; dy <= 3; ++dy)
    if (obs.at(dx, dy) == Cellt::Solid) return true;
  return false;
}

bool ladder_here(const Observation& obs) {
  return obs.at(0, 0) == Cellt::Ladder || obs.at(0, 1) == Cellt::Ladder;
}

// Offset to the nearest ladder at feet level, 0 when there is none.
int nearest_ladder(const Observation& obs) {
  for (int k = 1; k <= Observation::kLeft; ++k) {
    if (obs.at(k, 0) == Cellt::Ladder) return k;
    if (obs.at(-k, 0) == Cellt::Ladder) return -k;
  }
  return 0;
}

}  // namespace

void PolicyProfile::validate() const {
  for (double v : vector())
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorCode::InvalidProfile, "profile '" + name + "' has a parameter outside [0,1]");
}

Policy::Policy(PolicyProfile profile, std::uint64_t seed) : profile_(std::move(profile)), seed_(seed), rng_(seed) {
  profile_.validate();
}

std::array<double, kIntentCount> Policy::scores(const Observation& obs) const {
  std::array<double, kIntentCount> sc{};
  const double g = profile_.coin_greed;
  const double r = 1.0 - profile_.risk_tolerance;
  const double j = profile_.jump_propensity;
  const double c = profile_.climb_preference;

  for (auto i : kIntents)
    if (jumps(i)) sc[idx(i)] += j;

  if (obs.nearest_item) {
    const auto& t = *obs.nearest_item;
    const int d = sign(t.dx, 0.3);
    const bool above = t.dy >= 0.9;
    const bool below = t.dy <= -0.9;

    if (obs.climbing) {
      if (above) sc[idx(AgentIntent::Up)] += g + c + 0.5;
      else if (below) sc[idx(AgentIntent::Down)] += g + c + 0.5;
      else if (d != 0) sc[idx(walk(d))] += g;
    } else {
      if (d != 0) {
        sc[idx(walk(d))] += g;
        sc[idx(jump(d))] += g;
        const int wall = wall_height(obs, d);
        if (wall >= 1 && wall <= 2) sc[idx(jump(d))] += 0.5;
        if (wall >= 3) {
          if (ladder_here(obs)) {
            sc[idx(AgentIntent::Up)] += g + c + 1.0;
          } else if (int l = nearest_ladder(obs); l != 0) {
            sc[idx(walk(l))] += g + 0.5 * c + 0.25;
          }
        }
      }
      if (above) {
        if (ladder_here(obs)) sc[idx(AgentIntent::Up)] += 0.5 * g + c + 0.5;
        if (obs.grounded && std::abs(t.dx) < 3.0) {
          if (overhead(obs, 0)) {
            // Under a ledge: walk out towards the nearest open column.
            int open = 0;
            for (int k = 1; k <= Observation::kLeft && open == 0; ++k) {
              if (!overhead(obs, k)) open = k;
              else if (!overhead(obs, -k)) open = -k;
            }
            if (open != 0) sc[idx(walk(open))] += g + 1.0;
          } else if (d != 0) {
            double edge = 1e9;
            const double x = obs.mugen.position.x;
            const int cx = static_cast<int>(std::floor(x));
            for (int k = 1; k <= 3; ++k)
              if (overhead(obs, k * d)) {
                edge = d > 0 ? (cx + k) - (x + 0.3) : (x - 0.3) - (cx - k + 1);
                break;
              }
            if (edge < 1.3) sc[idx(walk(-d))] += g + 1.0;
            else sc[idx(jump(d))] += 0.5 * g + 0.5;
          }
        }
      }
      if (below && d == 0) {
        if (obs.at(0, -1) == Cellt::Ladder) sc[idx(AgentIntent::Down)] += g + c + 0.5;
        else sc[idx(walk(obs.mugen.facing == Facing::Left ? -1 : 1))] += 0.5 * g;
      }
    }
  }

  if (obs.nearest_monster && std::abs(obs.nearest_monster->dy) < 1.5) {
    const auto& m = *obs.nearest_monster;
    const int md = m.dx >= 0 ? 1 : -1;
    const double adx = std::abs(m.dx);
    if (adx <= 1.5) {
      for (auto i : kIntents)
        if (horizontal(i) == md) sc[idx(i)] -= 3.0 * r;
      sc[idx(walk(-md))] += 0.3 * r;
    } else if (adx <= 3.0) {
      sc[idx(walk(md))] -= r;
      sc[idx(jump(md))] += 0.5 * r;
    }
  }
  return sc;
}

AgentIntent Policy::decide(const Observation& obs) {
  auto sc = scores(obs);
  const double jump_cost = rng_.uniform();
  for (auto i : kIntents)
    if (jumps(i)) sc[idx(i)] -= jump_cost;
  sc[idx(last_)] += 0.05;
  std::size_t best = 0;
  for (std::size_t i = 1; i < sc.size(); ++i)
    if (sc[i] > sc[best]) best = i;
  AgentIntent out = kIntents[best];
  if (rng_.uniform() < profile_.dither) out = kIntents[rng_.bounded(kIntentCount)];
  last_ = out;
  return out;
}

Policy make_policy(const PolicyProfile& profile, std::uint64_t seed) { return Policy(profile, seed); }

std::vector<PolicyProfile> builtin_presets() {
  constexpr int n = 14;
  constexpr int axes = 5;
  // Latin hypercube: each axis is split into 14 strata and every preset
  // takes the midpoint of a distinct stratum on every axis.
  SplitMix64 rng(0x4D7567656E4C4853ULL);
  std::array<std::array<int, n>, axes> perm{};
  for (auto& p : perm) {
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.bounded(static_cast<std::uint32_t>(i + 1))]);
  }
  std::vector<PolicyProfile> out;
  for (int i = 0; i < n; ++i) {
    auto v = [&](int a) { return (perm[a][i] + 0.5) / n; };
    PolicyProfile p;
    p.name = (i + 1 < 10 ? "profile-0" : "profile-") + std::to_string(i + 1);
    p.coin_greed = v(0);
    p.risk_tolerance = v(1);
    p.jump_propensity = v(2);
    p.climb_preference = v(3);
    p.dither = 0.25 * v(4);
    out.push_back(p);
  }
  return out;
}

const PresetRegistry& PresetRegistry::builtin() {
  static const PresetRegistry reg = [] {
    PresetRegistry r;
    r.presets_ = builtin_presets();
    return r;
  }();
  return reg;
}

bool PresetRegistry::contains(std::string_view name) const {
  return std::any_of(presets_.begin(), presets_.end(), [&](const PolicyProfile& p) { return p.name == name; });
}

const PolicyProfile& PresetRegistry::get(std::string_view name) const {
  for (const auto& p : presets_)
    if (p.name == name) return p;
  throw Error(ErrorCode::UnknownPolicyPreset, "no policy preset named '" + std::string(name) + "'");
}

void PresetRegistry::apply_overrides(const KvConfig& cfg) {
  constexpr std::string_view prefix = "preset.";
  for (const auto& [key, value] : cfg.values()) {
    if (key.rfind(prefix, 0) != 0) continue;
    const auto dot = key.rfind('.');
    if (dot <= prefix.size()) throw Error(ErrorCode::InvalidConfig, "malformed preset key: " + key);
    const std::string name = key.substr(prefix.size(), dot - prefix.size());
    const std::string field = key.substr(dot + 1);
    auto it = std::find_if(presets_.begin(), presets_.end(), [&](const PolicyProfile& p) { return p.name == name; });
    if (it == presets_.end()) {
      presets_.push_back(PolicyProfile{name});
      it = presets_.end() - 1;
    }
    const double v = *cfg.get_double(key);
    if (field == "coin_greed") it->coin_greed = v;
    else if (field == "risk_tolerance") it->risk_tolerance = v;
    else if (field == "jump_propensity") it->jump_propensity = v;
    else if (field == "climb_preference") it->climb_preference = v;
    else if (field == "dither") it->dither = v;
    else throw Error(ErrorCode::InvalidConfig, "unknown preset field: " + field);
    it->validate();
  }
}

}  // namespace mugen
