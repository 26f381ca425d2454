#include "mugen/simcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mugen/error.hpp"
#include "mugen/rng.hpp"

namespace mugen {

namespace {

constexpr double kEps = 1e-6;

int floor_i(double v) { return static_cast<int>(std::floor(v)); }

Aabb hitbox(const CharacterState& c) { return character_box(c.kind, c.position); }

bool on_integer(double y) { return std::abs(y - std::round(y)) < 1e-9; }

// Horizontal move against solid cells. Returns the new x; `blocked` is set
// when a wall stopped the motion.
double move_x(const TileMap& map, double x, double y, double half_w, double height, double vx, bool& blocked) {
  blocked = false;
  double nx = x + vx;
  const int r0 = floor_i(y + kEps);
  const int r1 = floor_i(y + height - kEps);
  auto wall = [&](int col) {
    for (int r = r0; r <= r1; ++r)
      if (map.solid(col, r)) return true;
    return false;
  };
  if (vx > 0) {
    const int from = floor_i(x + half_w - kEps);
    const int to = floor_i(nx + half_w - kEps);
    for (int col = from + 1; col <= to; ++col)
      if (wall(col)) {
        nx = col - half_w;
        blocked = true;
        break;
      }
  } else if (vx < 0) {
    const int from = floor_i(x - half_w + kEps);
    const int to = floor_i(nx - half_w + kEps);
    for (int col = from - 1; col >= to; --col)
      if (wall(col)) {
        nx = col + 1 + half_w;
        blocked = true;
        break;
      }
  }
  return nx;
}

// Vertical move. Falling stops on solid cells and, when `ladder_floor` is set,
// on ladder tops; rising stops under solid cells.
double move_y(const TileMap& map, double x, double y, double half_w, double height, double vy, bool ladder_floor,
              bool& landed, bool& bumped) {
  landed = bumped = false;
  double ny = y + vy;
  const int c0 = floor_i(x - half_w + kEps);
  const int c1 = floor_i(x + half_w - kEps);
  auto floor_at = [&](int row) {
    for (int c = c0; c <= c1; ++c)
      if (map.solid(c, row) || (ladder_floor && map.ladder_top(c, row))) return true;
    return false;
  };
  auto ceiling_at = [&](int row) {
    for (int c = c0; c <= c1; ++c)
      if (map.solid(c, row)) return true;
    return false;
  };
  if (vy < 0) {
    const int from = floor_i(y + kEps);
    const int to = floor_i(ny + kEps);
    for (int row = from - 1; row >= to; --row)
      if (floor_at(row)) {
        ny = row + 1;
        landed = true;
        break;
      }
  } else if (vy > 0) {
    const int from = floor_i(y + height - kEps);
    const int to = floor_i(ny + height - kEps);
    for (int row = from + 1; row <= to; ++row)
      if (ceiling_at(row)) {
        ny = row - height;
        bumped = true;
        break;
      }
  }
  return ny;
}

bool supported(const TileMap& map, double x, double y, double half_w, bool ladder_floor) {
  if (!on_integer(y)) return false;
  const int row = static_cast<int>(std::lround(y)) - 1;
  for (int c = floor_i(x - half_w + kEps); c <= floor_i(x + half_w - kEps); ++c)
    if (map.solid(c, row) || (ladder_floor && map.ladder_top(c, row))) return true;
  return false;
}

int horizontal(AgentIntent i) {
  switch (i) {
    case AgentIntent::Left:
    case AgentIntent::JumpLeft: return -1;
    case AgentIntent::Right:
    case AgentIntent::JumpRight: return 1;
    default: return 0;
  }
}

bool is_jump(AgentIntent i) {
  return i == AgentIntent::Jump || i == AgentIntent::JumpLeft || i == AgentIntent::JumpRight;
}

struct FrameFlags {
  bool landed = false;
  bool bumped = false;
  bool stomped = false;
  bool coin = false;
  bool gem = false;
};

void quantize_state(CharacterState& c) {
  c.position.x = quantize(c.position.x);
  c.position.y = quantize(c.position.y);
  c.velocity.x = quantize(c.velocity.x);
  c.velocity.y = quantize(c.velocity.y);
}

void update_mugen(SimState& s, AgentIntent intent, std::vector<GameEvent>& events, FrameFlags& flags) {
  const TileMap& map = *s.map;
  const auto& t = traits(EntityKind::Mugen);
  const double half_w = t.width / 2;
  auto& m = s.mugen;
  auto& c = s.control;
  const int dir = horizontal(intent);
  auto emit = [&](EventKind k) { events.push_back({s.frame_idx, k, std::nullopt, std::nullopt}); };

  if (dir != 0) m.facing = dir < 0 ? Facing::Left : Facing::Right;

  const int col = floor_i(m.position.x);
  const bool centred = std::abs(m.position.x - (col + 0.5)) <= 0.35;

  if (!c.climbing) {
    c.grounded = supported(map, m.position.x, m.position.y, half_w, true);
    const bool on_ladder =
        map.ladder(col, floor_i(m.position.y + 0.45)) || map.ladder(col, floor_i(m.position.y + kEps));
    const bool above_ladder = c.grounded && map.ladder_top(col, static_cast<int>(std::lround(m.position.y)) - 1);
    if (centred && ((intent == AgentIntent::Up && on_ladder) || (intent == AgentIntent::Down && above_ladder))) {
      c.climbing = true;
      c.grounded = false;
      c.jumping = false;
      m.position.x = col + 0.5;
      emit(EventKind::LadderMount);
    }
  }

  if (c.climbing) {
    if (dir != 0 || is_jump(intent)) {
      c.climbing = false;
      emit(EventKind::LadderDismount);
      m.velocity = {kPhysics.walk_speed * dir, 0.0};
      if (is_jump(intent)) {
        m.velocity.y = kPhysics.jump_impulse;
        c.jumping = true;
        emit(EventKind::JumpStart);
      }
      // falls through to free motion below
    } else {
      const double vy = intent == AgentIntent::Up     ? kPhysics.climb_speed
                        : intent == AgentIntent::Down ? -kPhysics.climb_speed
                                                      : 0.0;
      m.velocity = {0.0, vy};
      const int feet_row = floor_i(m.position.y + kEps);
      double ny = m.position.y + vy;
      if (vy > 0) {
        if (map.ladder_top(col, feet_row) && ny >= feet_row + 1) {
          ny = feet_row + 1;
          c.climbing = false;
          c.grounded = true;
          emit(EventKind::LadderDismount);
        } else if (map.solid(col, floor_i(ny + t.height - kEps))) {
          ny = m.position.y;
        }
      } else if (vy < 0) {
        const int new_row = floor_i(ny + kEps);
        if (new_row < feet_row && map.solid(col, new_row)) {
          ny = feet_row;
          c.climbing = false;
          c.grounded = true;
          emit(EventKind::LadderDismount);
        } else if (!map.ladder(col, new_row) && !map.ladder(col, floor_i(ny + 0.45))) {
          c.climbing = false;
          c.grounded = false;
          emit(EventKind::LadderDismount);
        }
      }
      m.position.y = ny;
      return;
    }
  } else {
    m.velocity.x = kPhysics.walk_speed * dir;
    if (is_jump(intent) && c.grounded) {
      m.velocity.y = kPhysics.jump_impulse;
      c.grounded = false;
      c.jumping = true;
      emit(EventKind::JumpStart);
    }
  }

  bool blocked = false;
  m.position.x = move_x(map, m.position.x, m.position.y, half_w, t.height, m.velocity.x, blocked);
  if (blocked) m.velocity.x = 0.0;

  if (c.grounded) {
    if (supported(map, m.position.x, m.position.y, half_w, true)) {
      m.velocity.y = 0.0;
      return;
    }
    c.grounded = false;
    c.jumping = false;
    m.velocity.y = 0.0;
  }

  bool landed = false;
  bool bumped = false;
  m.position.y = move_y(map, m.position.x, m.position.y, half_w, t.height, m.velocity.y,
                        intent != AgentIntent::Down, landed, bumped);
  if (landed) {
    m.velocity.y = 0.0;
    c.grounded = true;
    c.jumping = false;
    flags.landed = true;
    emit(EventKind::Land);
    return;
  }
  if (bumped) {
    m.velocity.y = 0.0;
    flags.bumped = true;
    emit(EventKind::BumpHead);
  }
  m.velocity.y = std::max(m.velocity.y - kPhysics.gravity, -kPhysics.terminal_velocity);
}

void update_monster(const TileMap& map, CharacterState& mon, MonsterControl& ctl, SplitMix64& rng) {
  const auto& t = traits(mon.kind);
  const double half_w = t.width / 2;
  auto dir_of = [&] { return mon.facing == Facing::Right ? 1 : -1; };
  auto flip = [&] { mon.facing = mon.facing == Facing::Right ? Facing::Left : Facing::Right; };

  switch (t.ability) {
    case Ability::Walker: {
      if (rng.uniform() < t.turn_probability) flip();
      const int dir = dir_of();
      const double nx = mon.position.x + dir * t.speed;
      const double front = nx + dir * half_w;
      const int col = floor_i(dir > 0 ? front - kEps : front + kEps);
      const int row = static_cast<int>(std::lround(mon.position.y));
      if (map.solid(col, row) || !map.solid(col, row - 1)) {
        flip();
        mon.velocity = {0.0, 0.0};
      } else {
        mon.position.x = nx;
        mon.velocity = {dir * t.speed, 0.0};
      }
      mon.pose = mon.velocity.x == 0.0 ? PoseId::Idle : (dir > 0 ? PoseId::WalkRight : PoseId::WalkLeft);
      break;
    }
    case Ability::Hopper: {
      if (ctl.grounded) {
        mon.velocity = {0.0, 0.0};
        mon.pose = PoseId::Idle;
        if (--ctl.timer > 0) break;
        if (rng.uniform() < 0.25) flip();
        const int dir = dir_of();
        const double airtime = std::ceil(2.0 * t.hop_velocity / kPhysics.gravity) + 1.0;
        const double land_front = mon.position.x + dir * (t.speed * airtime + half_w);
        const int col = floor_i(land_front);
        const int row = static_cast<int>(std::lround(mon.position.y));
        if (map.solid(col, row) || !map.solid(col, row - 1)) {
          flip();
          ctl.timer = 10;
          break;
        }
        mon.velocity = {dir * t.speed, t.hop_velocity};
        ctl.grounded = false;
        ctl.timer = t.hop_interval + rng.range(0, t.hop_interval / 2);
        mon.pose = dir > 0 ? PoseId::JumpRight : PoseId::JumpLeft;
        break;
      }
      bool blocked = false;
      mon.position.x = move_x(map, mon.position.x, mon.position.y, half_w, t.height, mon.velocity.x, blocked);
      if (blocked) mon.velocity.x = 0.0;
      bool landed = false;
      bool bumped = false;
      mon.position.y =
          move_y(map, mon.position.x, mon.position.y, half_w, t.height, mon.velocity.y, false, landed, bumped);
      if (landed) {
        mon.velocity = {0.0, 0.0};
        ctl.grounded = true;
        mon.pose = PoseId::Land;
        break;
      }
      if (bumped) mon.velocity.y = 0.0;
      mon.velocity.y = std::max(mon.velocity.y - kPhysics.gravity, -kPhysics.terminal_velocity);
      break;
    }
    case Ability::Flyer: {
      if (rng.uniform() < t.turn_probability) flip();
      const int dir = dir_of();
      const double nx = mon.position.x + dir * t.speed;
      bool blocked = false;
      const double moved = move_x(map, mon.position.x, mon.position.y, half_w, t.height, dir * t.speed, blocked);
      if (blocked || std::abs(nx - ctl.home_x) > kPhysics.flyer_range) {
        flip();
        mon.velocity.x = 0.0;
      } else {
        mon.position.x = moved;
        mon.velocity.x = dir * t.speed;
      }
      if (++ctl.timer % kPhysics.flyer_bob_period == 0) mon.velocity.y = -mon.velocity.y;
      mon.position.y += mon.velocity.y;
      mon.pose = dir > 0 ? PoseId::JumpRight : PoseId::JumpLeft;
      break;
    }
    case Ability::Stationary:
    case Ability::None:
      mon.velocity = {0.0, 0.0};
      mon.pose = PoseId::Idle;
      break;
  }
  quantize_state(mon);
}

void update_monsters(SimState& s) {
  SplitMix64 rng(s.rng_state);
  for (std::size_t i = 0; i < s.monsters.size(); ++i) {
    auto& mon = s.monsters[i];
    if (!mon.alive) {
      mon.velocity = {0.0, 0.0};
      continue;
    }
    update_monster(*s.map, mon, s.monster_control[i], rng);
  }
  s.rng_state = rng.state();
}

PoseId mugen_pose(const SimState& s, const FrameFlags& f) {
  const auto& m = s.mugen;
  const auto& c = s.control;
  if (!m.alive) return PoseId::Die;
  if (f.stomped) return PoseId::KillStomp;
  if (f.bumped) return PoseId::BumpHead;
  if (f.gem) return PoseId::PowerUp;
  if (f.coin) return PoseId::Collect;
  if (c.pose_hold > 0) return c.held_pose;
  if (c.climbing) {
    if (m.velocity.y > 0) return PoseId::ClimbUp;
    if (m.velocity.y < 0) return PoseId::ClimbDown;
    return PoseId::ClimbIdle;
  }
  if (!c.grounded) {
    if (!c.jumping) return PoseId::Fall;
    if (m.velocity.x > 0) return PoseId::JumpRight;
    if (m.velocity.x < 0) return PoseId::JumpLeft;
    return PoseId::Jump;
  }
  if (f.landed) return PoseId::Land;
  if (m.velocity.x > 0) return PoseId::WalkRight;
  if (m.velocity.x < 0) return PoseId::WalkLeft;
  return PoseId::Idle;
}

}  // namespace

Aabb character_box(EntityKind kind, Vec2 p) {
  const auto& t = traits(kind);
  return {p.x - t.width / 2, p.x + t.width / 2, p.y, p.y + t.height};
}

Aabb item_box(Cell cell) {
  const double cx = cell.x + 0.5;
  const double bottom = cell.y + 0.2;
  return {cx - 0.25, cx + 0.25, bottom, bottom + 0.5};
}

SimState initial_state(std::shared_ptr<const LevelSpec> level, std::uint64_t jitter_seed) {
  SimState s;
  s.map = std::make_shared<const TileMap>(*level);
  s.rng_state = jitter_seed;
  for (const auto& sp : level->spawns) {
    const Vec2 pos{sp.cell.x + 0.5, static_cast<double>(sp.cell.y)};
    if (sp.kind == EntityKind::Mugen) {
      s.mugen = CharacterState{EntityKind::Mugen, pos, {}, PoseId::Idle, true, sp.facing};
    } else if (is_item(sp.kind)) {
      s.items.push_back(ItemState{sp.kind, sp.cell, false});
    } else {
      const auto& t = traits(sp.kind);
      CharacterState mon{sp.kind, pos, {}, PoseId::Idle, true, sp.facing};
      MonsterControl ctl;
      ctl.home_x = pos.x;
      if (t.ability == Ability::Flyer) {
        mon.position.y = quantize(pos.y + 0.2);
        mon.velocity.y = kPhysics.flyer_bob;
      }
      if (t.ability == Ability::Hopper) ctl.timer = t.hop_interval / 2 + (sp.cell.x % 7);
      s.monsters.push_back(mon);
      s.monster_control.push_back(ctl);
    }
  }
  s.level = std::move(level);
  return s;
}

StepResult step(const SimState& state, AgentIntent intent) {
  if (state.terminated) throw Error(ErrorCode::SteppedTerminated, "step called on a finished episode");

  StepResult out{state, {}};
  SimState& s = out.state;
  auto& events = out.events;
  s.frame_idx += 1;

  if (s.lead_in_remaining > 0) {
    --s.lead_in_remaining;
    return out;
  }

  auto finish_if_due = [&] {
    if (s.pending_end && s.frame_idx >= s.end_frame) {
      s.terminated = s.pending_end;
      events.push_back({s.frame_idx, EventKind::EpisodeEnd, std::nullopt, s.pending_end});
    }
  };

  if (s.pending_end) {
    // Tail after the outcome is decided: the world keeps moving, Mugen does not.
    s.mugen.velocity = {0.0, 0.0};
    update_monsters(s);
    finish_if_due();
    return out;
  }

  FrameFlags flags;
  const double old_y = s.mugen.position.y;
  update_mugen(s, intent, events, flags);
  quantize_state(s.mugen);
  update_monsters(s);

  // Monster contact is resolved before item pickup, using the shield state
  // at the start of the frame.
  const Aabb mb = hitbox(s.mugen);
  for (auto& mon : s.monsters) {
    if (!mon.alive || !overlaps(mb, hitbox(mon))) continue;
    const Aabb b = hitbox(mon);
    const bool descending = s.mugen.position.y < old_y;
    if (traits(mon.kind).killable && descending && old_y >= b.top - kPhysics.stomp_tolerance) {
      mon.alive = false;
      mon.pose = PoseId::Die;
      mon.velocity = {0.0, 0.0};
      events.push_back({s.frame_idx, EventKind::MonsterKilled, mon.kind, std::nullopt});
      s.mugen.velocity.y = kPhysics.stomp_bounce;
      s.control.jumping = true;
      s.control.grounded = false;
      flags.stomped = true;
    } else if (!s.shield_active) {
      s.mugen.alive = false;
      s.mugen.velocity = {0.0, 0.0};
      events.push_back({s.frame_idx, EventKind::KilledByMonster, mon.kind, std::nullopt});
      break;
    }
  }

  if (s.mugen.alive) {
    const Aabb pick = hitbox(s.mugen);
    for (auto& it : s.items) {
      if (it.collected || !overlaps(pick, item_box(it.cell))) continue;
      it.collected = true;
      if (it.kind == EntityKind::Coin) {
        s.shield_active = false;
        flags.coin = true;
        events.push_back({s.frame_idx, EventKind::CoinCollected, std::nullopt, std::nullopt});
      } else {
        s.shield_active = true;
        flags.gem = true;
        events.push_back({s.frame_idx, EventKind::GemCollected, std::nullopt, std::nullopt});
      }
    }
  }

  auto& ctl = s.control;
  const PoseId pose = mugen_pose(s, flags);
  if (flags.gem || flags.coin) {
    ctl.held_pose = pose;
    ctl.pose_hold = kPhysics.collect_pose_frames - 1;
  } else if (ctl.pose_hold > 0 && pose == ctl.held_pose) {
    --ctl.pose_hold;
  }
  if (!s.mugen.alive || flags.stomped || flags.bumped) ctl.pose_hold = 0;
  s.mugen.pose = pose;
  quantize_state(s.mugen);

  const bool all_coins = std::none_of(s.items.begin(), s.items.end(), [](const ItemState& it) {
    return it.kind == EntityKind::Coin && !it.collected;
  });
  if (!s.mugen.alive) {
    s.pending_end = EndReason::Death;
    s.end_frame = std::min(s.frame_idx + kPhysics.die_tail_frames, kMaxEpisodeFrames - 1);
  } else if (all_coins) {
    s.pending_end = EndReason::AllCoinsCollected;
    s.end_frame = s.frame_idx;
  } else if (s.frame_idx >= kMaxEpisodeFrames - 1) {
    s.pending_end = EndReason::Timeout;
    s.end_frame = s.frame_idx;
  }
  finish_if_due();
  return out;
}

Observation::CellType Observation::at(int dx, int dy) const {
  if (dx < -kLeft || dx > kRight || dy < -kBelow || dy > kAbove) return CellType::Empty;
  return cells[static_cast<std::size_t>((dy + kBelow) * kCols + (dx + kLeft))];
}

Observation observe(const SimState& s) {
  Observation obs;
  obs.mugen = s.mugen;
  obs.grounded = s.control.grounded;
  obs.climbing = s.control.climbing;
  obs.shield_active = s.shield_active;
  const int cx = floor_i(s.mugen.position.x);
  const int cy = floor_i(s.mugen.position.y + kEps);
  for (int dy = -Observation::kBelow; dy <= Observation::kAbove; ++dy)
    for (int dx = -Observation::kLeft; dx <= Observation::kRight; ++dx) {
      auto type = Observation::CellType::Empty;
      if (s.map->solid(cx + dx, cy + dy))
        type = Observation::CellType::Solid;
      else if (s.map->ladder(cx + dx, cy + dy))
        type = Observation::CellType::Ladder;
      obs.cells[static_cast<std::size_t>((dy + Observation::kBelow) * Observation::kCols + (dx + Observation::kLeft))] =
          type;
    }

  double best = 1e18;
  for (const auto& it : s.items) {
    if (it.collected) continue;
    const double dx = it.cell.x + 0.5 - s.mugen.position.x;
    const double dy = it.cell.y - s.mugen.position.y;
    const double d = dx * dx + dy * dy;
    if (d < best) {
      best = d;
      obs.nearest_item = Observation::Target{dx, dy, it.kind};
    }
  }
  best = 1e18;
  for (const auto& mon : s.monsters) {
    if (!mon.alive) continue;
    const double dx = mon.position.x - s.mugen.position.x;
    const double dy = mon.position.y - s.mugen.position.y;
    const double d = dx * dx + dy * dy;
    if (d < best) {
      best = d;
      obs.nearest_monster = Observation::Target{dx, dy, mon.kind};
    }
  }
  return obs;
}

std::string_view to_string(AgentIntent i) {
  static constexpr std::array<std::string_view, kIntentCount> names = {"None",     "Left",      "Right", "Jump",
                                                                       "JumpLeft", "JumpRight", "Up",    "Down"};
  return names[static_cast<std::size_t>(i)];
}

std::string_view to_string(EndReason r) {
  switch (r) {
    case EndReason::AllCoinsCollected: return "AllCoinsCollected";
    case EndReason::Death: return "Death";
    case EndReason::Timeout: return "Timeout";
  }
  return "";
}

std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::CoinCollected: return "CoinCollected";
    case EventKind::GemCollected: return "GemCollected";
    case EventKind::MonsterKilled: return "MonsterKilled";
    case EventKind::KilledByMonster: return "KilledByMonster";
    case EventKind::JumpStart: return "JumpStart";
    case EventKind::Land: return "Land";
    case EventKind::BumpHead: return "BumpHead";
    case EventKind::LadderMount: return "LadderMount";
    case EventKind::LadderDismount: return "LadderDismount";
    case EventKind::EpisodeEnd: return "EpisodeEnd";
  }
  return "";
}

std::optional<EndReason> parse_end_reason(std::string_view s) {
  for (auto r : {EndReason::AllCoinsCollected, EndReason::Death, EndReason::Timeout})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(EventKind::EpisodeEnd); ++i)
    if (to_string(static_cast<EventKind>(i)) == s) return static_cast<EventKind>(i);
  return std::nullopt;
}

}  // namespace mugen
