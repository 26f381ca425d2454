#include "mugen/autotext.hpp"

#include <algorithm>
#include <cmath>

#include "mugen/error.hpp"

namespace mugen {

namespace {

std::string with_article(EntityKind k) {
  const std::string noun(traits(k).noun);
  const bool vowel = std::string_view("aeiou").find(noun.front()) != std::string_view::npos;
  return (vowel ? "an " : "a ") + noun;
}

std::optional<Surface> surface_under(const TileMap& map, const CharacterState& m) {
  if (std::abs(m.position.y - std::round(m.position.y)) > 1e-9) return std::nullopt;
  const int row = static_cast<int>(std::lround(m.position.y)) - 1;
  const double half = traits(EntityKind::Mugen).width / 2;
  const int centre = static_cast<int>(std::floor(m.position.x));
  std::vector<int> cols = {centre};
  for (int c = static_cast<int>(std::floor(m.position.x - half + 1e-6));
       c <= static_cast<int>(std::floor(m.position.x + half - 1e-6)); ++c)
    if (c != centre) cols.push_back(c);
  for (int c : cols) {
    if (map.ladder_top(c, row)) return Surface::Ladder;
    if (map.ground(c, row)) return Surface::Ground;
    if (map.solid(c, row)) return Surface::Platform;
  }
  return std::nullopt;
}

void annotate(const EpisodeMetadata& ep, const TileMap& map, FrameRange range, PoseSegment& seg) {
  const auto& frames = ep.frames;
  auto at = [&](int i) -> const FrameRecord& { return frames[static_cast<std::size_t>(i)]; };

  const bool airborne = seg.pose == PoseId::Jump || seg.pose == PoseId::Fall;
  const int before = seg.start_frame > 0 ? seg.start_frame - 1 : seg.start_frame;
  int after = seg.end_frame;
  if (airborne && seg.end_frame + 1 < range.end) {
    const auto& next = at(seg.end_frame + 1);
    if (next.mugen.alive) {
      if (auto s = surface_under(map, next.mugen)) {
        after = seg.end_frame + 1;
        seg.landing = s;
      }
    }
  }

  const Vec2 p0 = at(before).mugen.position;
  const Vec2 p1 = at(after).mugen.position;
  const double dy = p1.y - p0.y;
  const double dx = p1.x - p0.x;
  seg.height = dy > 0.5 ? HeightClass::Higher : dy < -0.5 ? HeightClass::Lower : HeightClass::Same;
  seg.horizontal = dx > 0.5 ? HorizontalClass::Right : dx < -0.5 ? HorizontalClass::Left : HorizontalClass::NoMove;

  if (seg.pose == PoseId::Jump) {
    for (int f = std::max(before, range.begin); f < after; ++f) {
      const auto& a = at(f);
      const auto& b = at(f + 1);
      for (std::size_t k = 0; k < a.monsters.size(); ++k) {
        const auto& m0 = a.monsters[k];
        const auto& m1 = b.monsters[k];
        if (!m0.alive) continue;
        const double s0 = a.mugen.position.x - m0.position.x;
        const double s1 = b.mugen.position.x - m1.position.x;
        if ((s0 < 0) == (s1 < 0)) continue;
        const double top = m1.position.y + traits(m1.kind).height;
        if (b.mugen.position.y < top - 0.1) continue;
        if (std::find(seg.jumped_over.begin(), seg.jumped_over.end(), m1.kind) == seg.jumped_over.end())
          seg.jumped_over.push_back(m1.kind);
      }
    }
  }

  for (const auto& ev : ep.events) {
    if (ev.frame_idx < seg.start_frame || ev.frame_idx > seg.end_frame) continue;
    const bool interaction = ev.kind == EventKind::CoinCollected || ev.kind == EventKind::GemCollected ||
                             ev.kind == EventKind::MonsterKilled || ev.kind == EventKind::KilledByMonster;
    if (interaction && !seg.interaction) seg.interaction = ev.kind;
    if (ev.kind == EventKind::MonsterKilled) seg.kill_at_end = ev.monster;
    if (ev.kind == EventKind::KilledByMonster) seg.killed_by = ev.monster;
  }
  if (seg.kill_at_end && airborne) seg.landing = Surface::Monster;
  // A stomped monster is under Mugen, not jumped over.
  if (seg.kill_at_end) {
    auto& v = seg.jumped_over;
    v.erase(std::remove(v.begin(), v.end(), *seg.kill_at_end), v.end());
  }
}

}  // namespace

PoseId segment_key(PoseId p) {
  if (is_jump_pose(p) || p == PoseId::KillStomp) return PoseId::Jump;
  return p;
}

std::vector<PoseSegment> segment_poses(const EpisodeMetadata& ep, FrameRange range) {
  if (range.begin < 0 || range.end > ep.frame_count() || range.begin >= range.end)
    throw Error(ErrorCode::RangeOutOfBounds, "frame range [" + std::to_string(range.begin) + ", " +
                                                 std::to_string(range.end) + ") outside episode");
  std::vector<PoseSegment> segs;
  for (int f = range.begin; f < range.end;) {
    const PoseId key = segment_key(ep.frames[static_cast<std::size_t>(f)].mugen.pose);
    int g = f + 1;
    while (g < range.end && segment_key(ep.frames[static_cast<std::size_t>(g)].mugen.pose) == key) ++g;

    auto same = std::find_if(segs.rbegin(), segs.rend(), [&](const PoseSegment& s) { return s.pose == key; });
    if (same != segs.rend() && f - same->end_frame - 1 <= kMergeGap) {
      auto keep = same.base();   // one past the matching segment
      segs.erase(keep, segs.end());
      segs.back().end_frame = g - 1;
      ++segs.back().merge_count;
    } else {
      PoseSegment s;
      s.pose = key;
      s.start_frame = f;
      s.end_frame = g - 1;
      segs.push_back(s);
    }
    f = g;
  }

  std::vector<PoseSegment> out;
  const TileMap map(ep.level);
  for (auto& s : segs) {
    if (s.length() < kMinSegmentFrames || s.pose == PoseId::Idle) continue;
    annotate(ep, map, range, s);
    out.push_back(std::move(s));
  }
  return out;
}

std::string phrase(const PoseSegment& seg) {
  auto landing = [&](std::string& p) {
    if (!seg.landing) return;
    switch (*seg.landing) {
      case Surface::Platform: p += " to a platform"; break;
      case Surface::Ladder: p += " to a ladder"; break;
      case Surface::Ground: p += " to the ground"; break;
      case Surface::Monster: break;
    }
  };
  switch (seg.pose) {
    case PoseId::WalkLeft: return "walks to the left";
    case PoseId::WalkRight: return "walks to the right";
    case PoseId::Jump: {
      std::string p = "jumps";
      if (seg.merge_count == 2) p += " twice";
      else if (seg.merge_count == 3) p += " three times";
      else if (seg.merge_count >= 4) p += " several times";
      if (seg.height == HeightClass::Higher) p += " up";
      if (seg.height == HeightClass::Lower) p += " down";
      if (seg.horizontal == HorizontalClass::Right) p += " to the right";
      if (seg.horizontal == HorizontalClass::Left) p += " to the left";
      if (!seg.jumped_over.empty()) {
        p += " over ";
        for (std::size_t i = 0; i < seg.jumped_over.size(); ++i) {
          if (i > 0) p += i + 1 == seg.jumped_over.size() ? " and " : ", ";
          p += with_article(seg.jumped_over[i]);
        }
      }
      landing(p);
      if (seg.kill_at_end) p += " and kills " + with_article(*seg.kill_at_end);
      return p;
    }
    case PoseId::Fall: {
      std::string p = "falls";
      landing(p);
      if (seg.kill_at_end) p += " and kills " + with_article(*seg.kill_at_end);
      return p;
    }
    case PoseId::ClimbUp: return "climbs up a ladder";
    case PoseId::ClimbDown: return "climbs down a ladder";
    case PoseId::ClimbIdle: return "hangs on a ladder";
    case PoseId::Collect: return "collects a coin";
    case PoseId::PowerUp: return "collects a gem and powers up";
    case PoseId::BumpHead: return "bumps its head";
    case PoseId::Land: return "lands";
    case PoseId::Die: return seg.killed_by ? "killed by " + with_article(*seg.killed_by) : "dies";
    case PoseId::Idle: return "stands still";
    default: return "moves";
  }
}

std::string caption(const std::vector<PoseSegment>& segments) {
  if (segments.empty()) return "Mugen stands still.";
  std::string out = "Mugen ";
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += ", and ";
    out += phrase(segments[i]);
  }
  return out;
}

std::string generate_autotext(const EpisodeMetadata& ep, FrameRange range) {
  return caption(segment_poses(ep, range));
}

}  // namespace mugen
