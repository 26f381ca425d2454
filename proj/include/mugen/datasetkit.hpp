#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mugen/metadata.hpp"

namespace mugen {

inline constexpr double kPlainCap = 0.2;   // largest plain share allowed in val and test

struct Clip {
  std::string episode_ref;
  int episode_index = 0;   // position in the episode list the clip was cut from
  int start_frame = 0;
  int length = kClipFrames;
  std::set<EntityKind> entities;       // seen on camera in any frame
  std::set<std::string> interactions;  // "collect coin", "collect gem", "kill monster", "killed by monster"

  // Only Mugen, optionally with coins.
  bool plain() const;
  std::vector<std::string> tags() const;
};

// Entity centre in camera space: x in [0, 16) with Mugen at 8, y in [0, 16)
// from the bottom. Returns false when the centre is off camera.
bool camera_position(const FrameRecord& f, Vec2 world_centre, Vec2& out);

// Every entity centre visible in a frame, Mugen first.
struct Sighting {
  EntityKind kind;
  Vec2 camera;
};
std::vector<Sighting> on_camera(const EpisodeMetadata& ep, int frame_idx);

std::string interaction_tag(EventKind k);   // empty for non-interactions

std::vector<Clip> split_clips(const EpisodeMetadata& ep, std::string episode_ref = {}, int episode_index = 0);

struct QcResult {
  bool accepted = false;
  std::string reason;
};
QcResult qc_manual_text(std::string_view text);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

enum class SplitName : std::uint8_t { Train, Val, Test };
std::string_view to_string(SplitName s);

struct SplitAssignment {
  std::vector<SplitName> split;   // one per input clip
  int count(SplitName s) const;
  int plain_count(const std::vector<Clip>& clips, SplitName s) const;
};

// Throws InvalidConfig on bad ratios, InsufficientDiverseClips when the
// plain cap cannot be met.
SplitAssignment balance_split(const std::vector<Clip>& clips, std::uint64_t seed, SplitRatios ratios);

using OccurrenceCounts = std::array<std::int64_t, kEntityKindCount>;
OccurrenceCounts occurrence_stats(const std::vector<Clip>& clips);

struct Heatmap2D {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;

  std::int64_t total() const { return counts.sum(); }
  Eigen::MatrixXd display() const;   // log(1 + count)
  std::string to_csv() const;
  void write_png(const std::filesystem::path& path) const;
};

Heatmap2D location_heatmap(std::span<const EpisodeMetadata> eps, const std::vector<Clip>& clips, EntityKind kind,
                           int rows, int cols);

// 96 bins, one per frame of a clip.
Heatmap2D temporal_heatmap(std::span<const EpisodeMetadata> eps, const std::vector<Clip>& clips, EventKind kind);

// Untrimmed episodes: frame f of an L-frame episode lands in bin floor(f * bins / L).
Heatmap2D episode_temporal_heatmap(std::span<const EpisodeMetadata> eps, EventKind kind, int bins = kClipFrames);

}  // namespace mugen
