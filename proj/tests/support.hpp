#pragma once

#include <algorithm>
#include <memory>

#include "mugen/metadata.hpp"

namespace mugen::testing {

// Ground along row 0, everything else open.
inline LevelSpec flat_level(int width = 24, int height = 12) {
  LevelSpec spec;
  spec.seed = 1;
  spec.width = width;
  spec.height = height;
  for (int x = 0; x < width; ++x) spec.platform_cells.insert({x, 0});
  spec.spawns.push_back({EntityKind::Mugen, {2, 1}, Facing::Right});
  return spec;
}

// `n` frames of Mugen idling at its spawn with every monster parked on its
// spawn cell. Tests then edit the frames they care about.
inline EpisodeMetadata blank_episode(const LevelSpec& level, int n) {
  EpisodeMetadata ep;
  ep.level = level;
  ep.policy_name = "profile-01";
  ep.end_reason = EndReason::Timeout;
  CharacterState mugen;
  std::vector<CharacterState> monsters;
  std::size_t items = 0;
  for (const auto& sp : level.spawns) {
    const Vec2 at{sp.cell.x + 0.5, static_cast<double>(sp.cell.y)};
    if (sp.kind == EntityKind::Mugen) {
      mugen.position = at;
      mugen.facing = sp.facing;
    } else if (is_monster(sp.kind)) {
      CharacterState m;
      m.kind = sp.kind;
      m.position = at;
      m.facing = sp.facing;
      monsters.push_back(m);
    } else {
      ++items;
    }
  }
  for (int f = 0; f < n; ++f) {
    FrameRecord r;
    r.frame_idx = f;
    r.mugen = mugen;
    r.monsters = monsters;
    r.item_flags.assign(items, false);
    ep.frames.push_back(r);
  }
  return ep;
}

struct IdleRun {
  int frames = 0;
  EndReason reason = EndReason::Timeout;
  std::vector<GameEvent> events;
};

// Steps a level with intent None on every frame.
inline IdleRun run_idle(const LevelSpec& level) {
  IdleRun out;
  out.frames = 1;   // the initial frame is recorded too
  SimState s = initial_state(std::make_shared<const LevelSpec>(level), level.seed);
  while (!s.terminated) {
    auto r = step(s, AgentIntent::None);
    out.events.insert(out.events.end(), r.events.begin(), r.events.end());
    s = std::move(r.state);
    ++out.frames;
  }
  out.reason = *s.terminated;
  return out;
}

// Mugen jumps from the ground over a snail onto a raised platform.
inline EpisodeMetadata snail_jump_scenario() {
  auto level = flat_level(24, 12);
  for (int x = 10; x < 14; ++x) level.platform_cells.insert({x, 2});
  level.spawns.front().cell = {4, 1};
  level.spawns.push_back({EntityKind::Snail, {7, 1}, Facing::Left});
  auto ep = blank_episode(level, kClipFrames);
  auto& f = ep.frames;
  for (int k = 0; k < 20; ++k) {
    auto& m = f[static_cast<std::size_t>(3 + k)].mugen;
    m.pose = PoseId::JumpRight;
    m.position = {4.5 + 7.0 * (k + 1) / 21, std::min(1.0 + 0.4 * (k + 1), 4.5)};
  }
  for (int i = 23; i < kClipFrames; ++i) {
    auto& m = f[static_cast<std::size_t>(i)].mugen;
    m.position = {11.5, 3.0};
    m.pose = i < 26 ? PoseId::Land : PoseId::Idle;
  }
  ep.events.push_back({3, EventKind::JumpStart, std::nullopt, std::nullopt});
  ep.events.push_back({23, EventKind::Land, std::nullopt, std::nullopt});
  return ep;
}

// Mugen walks right, jumps onto a ladder top and is caught by a frog there.
inline EpisodeMetadata frog_death_scenario() {
  auto level = flat_level(24, 12);
  for (int y = 1; y <= 2; ++y) level.ladder_cells.insert({12, y});
  level.spawns.front().cell = {3, 1};
  level.spawns.push_back({EntityKind::Frog, {16, 1}, Facing::Left});
  auto ep = blank_episode(level, 47);
  auto& f = ep.frames;
  for (int i = 0; i < 10; ++i) {
    f[static_cast<std::size_t>(i)].mugen.pose = PoseId::WalkRight;
    f[static_cast<std::size_t>(i)].mugen.position.x = 3.5 + 0.2 * i;
  }
  for (int k = 0; k < 20; ++k) {
    auto& m = f[static_cast<std::size_t>(10 + k)].mugen;
    m.pose = PoseId::JumpRight;
    m.position = {5.3 + 7.2 * (k + 1) / 21, k < 12 ? 1.0 + 0.3 * (k + 1) : 4.6 - 0.1 * (k - 11)};
  }
  for (int i = 30; i < 47; ++i) {
    auto& m = f[static_cast<std::size_t>(i)].mugen;
    m.position = {12.5, 3.0};
    m.pose = i == 30 ? PoseId::Land : PoseId::Die;
    m.alive = i == 30;
    auto& frog = f[static_cast<std::size_t>(i)].monsters[0];
    frog.position = {13.2, 3.0};
  }
  ep.events.push_back({10, EventKind::JumpStart, std::nullopt, std::nullopt});
  ep.events.push_back({31, EventKind::KilledByMonster, EntityKind::Frog, std::nullopt});
  ep.events.push_back({46, EventKind::EpisodeEnd, std::nullopt, EndReason::Death});
  ep.end_reason = EndReason::Death;
  return ep;
}

}  // namespace mugen::testing
