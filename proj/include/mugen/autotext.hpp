#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mugen/audiogen.hpp"
#include "mugen/metadata.hpp"

namespace mugen {

inline constexpr int kMergeGap = 4;          // longest interruption merged away
inline constexpr int kMinSegmentFrames = 5;

enum class HeightClass : std::uint8_t { Higher, Lower, Same };
enum class HorizontalClass : std::uint8_t { Left, Right, NoMove };
enum class Surface : std::uint8_t { Platform, Ladder, Ground, Monster };

struct PoseSegment {
  PoseId pose = PoseId::Idle;   // Jump stands for the whole jump family
  int start_frame = 0;
  int end_frame = 0;            // inclusive
  int merge_count = 1;
  HeightClass height = HeightClass::Same;
  HorizontalClass horizontal = HorizontalClass::NoMove;
  std::vector<EntityKind> jumped_over;
  std::optional<Surface> landing;
  std::optional<EntityKind> kill_at_end;
  std::optional<EventKind> interaction;
  std::optional<EntityKind> killed_by;

  int length() const { return end_frame - start_frame + 1; }
};

// Pose used for grouping: Jump, JumpLeft, JumpRight and KillStomp share one key.
PoseId segment_key(PoseId p);

// Throws RangeOutOfBounds.
std::vector<PoseSegment> segment_poses(const EpisodeMetadata& ep, FrameRange range);

std::string phrase(const PoseSegment& seg);
std::string caption(const std::vector<PoseSegment>& segments);
std::string generate_autotext(const EpisodeMetadata& ep, FrameRange range);

}  // namespace mugen
