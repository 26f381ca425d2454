#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace mugen {

inline constexpr int kFps = 30;
inline constexpr int kClipFrames = 96;
inline constexpr int kMaxEpisodeFrames = 630;  // 21 s at 30 fps
inline constexpr int kMinEpisodeFrames = kClipFrames;
inline constexpr int kCameraCells = 16;  // camera window width in cells

enum class Theme : std::uint8_t { Snow, Space };

enum class Facing : std::uint8_t { Left, Right };

enum class EntityKind : std::uint8_t {
  Mugen,
  Coin,
  Gem,
  Snail,
  Worm,
  Face,
  Ladybug,
  Frog,
  Barnacle,
  Bee,
  Mouse,
  Slime,
  Ghost,
};
inline constexpr int kEntityKindCount = 13;

enum class Ability : std::uint8_t { None, Walker, Hopper, Flyer, Stationary };

// Static per-kind traits. Sizes are in cells; `speed` is the horizontal
// speed in cells/frame (walk speed, hop speed or flight speed).
struct EntityTraits {
  EntityKind kind;
  std::string_view name;     // "Snail"
  std::string_view noun;     // "snail", as used in captions
  Ability ability;
  bool killable;
  double width;
  double height;
  double speed;
  double hop_velocity;       // hoppers only
  int hop_interval;          // hoppers only, frames between hops
  double turn_probability;   // per-frame random reversal (monster jitter)
};

const EntityTraits& traits(EntityKind kind);

inline bool is_monster(EntityKind k) {
  return k != EntityKind::Mugen && k != EntityKind::Coin && k != EntityKind::Gem;
}
inline bool is_item(EntityKind k) { return k == EntityKind::Coin || k == EntityKind::Gem; }

inline constexpr std::array<EntityKind, 10> kMonsterKinds = {
    EntityKind::Snail, EntityKind::Worm, EntityKind::Face,  EntityKind::Ladybug, EntityKind::Frog,
    EntityKind::Barnacle, EntityKind::Bee, EntityKind::Mouse, EntityKind::Slime, EntityKind::Ghost};

inline constexpr std::array<EntityKind, kEntityKindCount> kAllKinds = {
    EntityKind::Mugen, EntityKind::Coin,  EntityKind::Gem,   EntityKind::Snail, EntityKind::Worm,
    EntityKind::Face,  EntityKind::Ladybug, EntityKind::Frog, EntityKind::Barnacle, EntityKind::Bee,
    EntityKind::Mouse, EntityKind::Slime, EntityKind::Ghost};

enum class PoseId : std::uint8_t {
  Idle,
  WalkLeft,
  WalkRight,
  Jump,
  JumpLeft,
  JumpRight,
  Fall,
  Land,
  ClimbUp,
  ClimbDown,
  ClimbIdle,
  Collect,
  PowerUp,
  BumpHead,
  KillStomp,
  Die,
};
inline constexpr int kPoseCount = 16;

inline bool is_jump_pose(PoseId p) {
  return p == PoseId::Jump || p == PoseId::JumpLeft || p == PoseId::JumpRight;
}

struct Cell {
  int x = 0;
  int y = 0;
  auto operator<=>(const Cell&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

std::string_view to_string(Theme t);
std::string_view to_string(Facing f);
std::string_view to_string(EntityKind k);
std::string_view to_string(PoseId p);

std::optional<Theme> parse_theme(std::string_view s);  // case-insensitive
std::optional<Facing> parse_facing(std::string_view s);
std::optional<EntityKind> parse_entity_kind(std::string_view s);
std::optional<PoseId> parse_pose(std::string_view s);

// Positions and velocities are held at 1e-4 cell resolution after every
// simulation frame, which is also the precision of the serialized form.
double quantize(double v);

}  // namespace mugen
