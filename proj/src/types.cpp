#include "mugen/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace mugen {

namespace {

// Monster speeds are all distinct so no two monsters move alike.
constexpr std::array<EntityTraits, kEntityKindCount> kTraits = {{
    {EntityKind::Mugen, "Mugen", "Mugen", Ability::None, false, 0.6, 0.9, 0.2, 0.0, 0, 0.0},
    {EntityKind::Coin, "Coin", "coin", Ability::None, false, 0.5, 0.5, 0.0, 0.0, 0, 0.0},
    {EntityKind::Gem, "Gem", "gem", Ability::None, false, 0.5, 0.5, 0.0, 0.0, 0, 0.0},
    {EntityKind::Snail, "Snail", "snail", Ability::Walker, true, 0.8, 0.6, 0.02, 0.0, 0, 0.002},
    {EntityKind::Worm, "Worm", "worm", Ability::Walker, true, 0.9, 0.4, 0.03, 0.0, 0, 0.004},
    {EntityKind::Face, "Face", "face", Ability::Walker, true, 0.8, 0.8, 0.05, 0.0, 0, 0.003},
    {EntityKind::Ladybug, "Ladybug", "ladybug", Ability::Hopper, false, 0.7, 0.5, 0.05, 0.32, 30, 0.01},
    {EntityKind::Frog, "Frog", "frog", Ability::Hopper, false, 0.8, 0.7, 0.08, 0.48, 45, 0.01},
    {EntityKind::Barnacle, "Barnacle", "barnacle", Ability::Stationary, false, 0.9, 0.9, 0.0, 0.0, 0, 0.0},
    {EntityKind::Bee, "Bee", "bee", Ability::Flyer, false, 0.7, 0.6, 0.04, 0.0, 0, 0.002},
    {EntityKind::Mouse, "Mouse", "mouse", Ability::Walker, false, 0.6, 0.5, 0.09, 0.0, 0, 0.006},
    {EntityKind::Slime, "Slime", "slime", Ability::Walker, false, 0.8, 0.5, 0.015, 0.0, 0, 0.001},
    {EntityKind::Ghost, "Ghost", "ghost", Ability::Walker, false, 0.8, 0.9, 0.065, 0.0, 0, 0.005},
}};

constexpr std::array<std::string_view, kPoseCount> kPoseNames = {
    "Idle",      "WalkLeft",  "WalkRight", "Jump",    "JumpLeft", "JumpRight", "Fall",     "Land",
    "ClimbUp",   "ClimbDown", "ClimbIdle", "Collect", "PowerUp",  "BumpHead",  "KillStomp", "Die"};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

const EntityTraits& traits(EntityKind kind) { return kTraits[static_cast<std::size_t>(kind)]; }

std::string_view to_string(Theme t) { return t == Theme::Snow ? "Snow" : "Space"; }
std::string_view to_string(Facing f) { return f == Facing::Left ? "L" : "R"; }
std::string_view to_string(EntityKind k) { return traits(k).name; }
std::string_view to_string(PoseId p) { return kPoseNames[static_cast<std::size_t>(p)]; }

std::optional<Theme> parse_theme(std::string_view s) {
  if (iequals(s, "snow")) return Theme::Snow;
  if (iequals(s, "space")) return Theme::Space;
  return std::nullopt;
}

std::optional<Facing> parse_facing(std::string_view s) {
  if (s == "L") return Facing::Left;
  if (s == "R") return Facing::Right;
  return std::nullopt;
}

std::optional<EntityKind> parse_entity_kind(std::string_view s) {
  for (const auto& t : kTraits)
    if (iequals(t.name, s)) return t.kind;
  return std::nullopt;
}

std::optional<PoseId> parse_pose(std::string_view s) {
  for (std::size_t i = 0; i < kPoseNames.size(); ++i)
    if (kPoseNames[i] == s) return static_cast<PoseId>(i);
  return std::nullopt;
}

double quantize(double v) {
  double q = std::round(v * 10000.0) / 10000.0;
  return q == 0.0 ? 0.0 : q;  // no negative zero
}

}  // namespace mugen
