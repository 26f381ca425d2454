#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mugen/types.hpp"
#include "mugen/worldgen.hpp"

namespace mugen {

// Every tunable physics constant. Units are cells and frames.
struct PhysicsTable {
  double gravity = 0.08;
  double walk_speed = 0.2;
  double jump_impulse = 0.65;
  double terminal_velocity = 0.5;
  double climb_speed = 0.1;
  double stomp_bounce = 0.45;
  double stomp_tolerance = 0.3;   // feet may be this far below a monster's top and still stomp
  int die_tail_frames = 15;
  int collect_pose_frames = 8;
  double flyer_range = 2.5;       // half-width of a bee's patrol
  double flyer_bob = 0.01;        // bee vertical speed
  int flyer_bob_period = 30;
};

inline constexpr PhysicsTable kPhysics{};

enum class AgentIntent : std::uint8_t { None, Left, Right, Jump, JumpLeft, JumpRight, Up, Down };
inline constexpr int kIntentCount = 8;

enum class EndReason : std::uint8_t { AllCoinsCollected, Death, Timeout };

enum class EventKind : std::uint8_t {
  CoinCollected,
  GemCollected,
  MonsterKilled,
  KilledByMonster,
  JumpStart,
  Land,
  BumpHead,
  LadderMount,
  LadderDismount,
  EpisodeEnd,
};

struct GameEvent {
  int frame_idx = 0;
  EventKind kind = EventKind::JumpStart;
  std::optional<EntityKind> monster;   // MonsterKilled, KilledByMonster
  std::optional<EndReason> reason;     // EpisodeEnd
  bool operator==(const GameEvent&) const = default;
};

struct CharacterState {
  EntityKind kind = EntityKind::Mugen;
  Vec2 position;   // bottom-centre of the hitbox
  Vec2 velocity;   // cells/frame
  PoseId pose = PoseId::Idle;
  bool alive = true;
  Facing facing = Facing::Right;
  bool operator==(const CharacterState&) const = default;
};

struct ItemState {
  EntityKind kind = EntityKind::Coin;
  Cell cell;
  bool collected = false;
  bool operator==(const ItemState&) const = default;
};

// Scratch state that is not part of the recorded frame but is reproduced
// exactly by re-simulation.
struct MugenControl {
  bool grounded = true;
  bool climbing = false;
  bool jumping = false;     // airborne because of a jump or stomp bounce
  int pose_hold = 0;
  PoseId held_pose = PoseId::Idle;
  bool operator==(const MugenControl&) const = default;
};

struct MonsterControl {
  bool grounded = true;
  int timer = 0;
  double home_x = 0.0;
  bool operator==(const MonsterControl&) const = default;
};

// World-space bounding box, y up.
struct Aabb {
  double left = 0.0;
  double right = 0.0;
  double bottom = 0.0;
  double top = 0.0;
};

Aabb character_box(EntityKind kind, Vec2 position);
Aabb item_box(Cell cell);
inline bool overlaps(const Aabb& a, const Aabb& b) {
  return a.left < b.right && b.left < a.right && a.bottom < b.top && b.bottom < a.top;
}

struct SimState {
  std::shared_ptr<const LevelSpec> level;
  std::shared_ptr<const TileMap> map;
  int frame_idx = 0;
  CharacterState mugen;
  MugenControl control;
  std::vector<CharacterState> monsters;   // level spawn order
  std::vector<MonsterControl> monster_control;
  std::vector<ItemState> items;           // level spawn order
  bool shield_active = false;
  std::uint64_t rng_state = 0;
  std::optional<EndReason> terminated;
  std::optional<EndReason> pending_end;   // decided, tail frames still running
  int end_frame = kMaxEpisodeFrames - 1;
  int lead_in_remaining = 0;              // frozen frames before play starts
};

struct StepResult {
  SimState state;
  std::vector<GameEvent> events;
};

SimState initial_state(std::shared_ptr<const LevelSpec> level, std::uint64_t jitter_seed);

// Advance one frame. Throws SteppedTerminated once the episode has ended.
StepResult step(const SimState& state, AgentIntent intent);

// Per-frame view handed to a policy: Mugen's state, the cells around it and
// offsets to the nearest collectible and monster.
struct Observation {
  static constexpr int kLeft = 4;
  static constexpr int kRight = 4;
  static constexpr int kBelow = 2;
  static constexpr int kAbove = 4;
  static constexpr int kCols = kLeft + kRight + 1;
  static constexpr int kRows = kBelow + kAbove + 1;

  enum class CellType : std::uint8_t { Empty, Solid, Ladder };

  CharacterState mugen;
  bool grounded = true;
  bool climbing = false;
  bool shield_active = false;
  std::array<CellType, kCols * kRows> cells{};   // relative to Mugen's feet cell

  struct Target {
    double dx = 0.0;
    double dy = 0.0;
    EntityKind kind = EntityKind::Coin;
  };
  std::optional<Target> nearest_item;
  std::optional<Target> nearest_monster;

  CellType at(int dx, int dy) const;
};

Observation observe(const SimState& state);

std::string_view to_string(AgentIntent i);
std::string_view to_string(EndReason r);
std::string_view to_string(EventKind k);
std::optional<EndReason> parse_end_reason(std::string_view s);
std::optional<EventKind> parse_event_kind(std::string_view s);

}  // namespace mugen
