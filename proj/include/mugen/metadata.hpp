#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mugen/policy.hpp"
#include "mugen/simcore.hpp"
#include "mugen/worldgen.hpp"

namespace mugen {

inline constexpr std::string_view kSchemaVersion = "mugen.meta/1";
inline constexpr std::string_view kEpisodeExtension = ".mugen.json";

struct FrameRecord {
  int frame_idx = 0;
  CharacterState mugen;
  std::vector<CharacterState> monsters;   // level spawn order
  std::vector<bool> item_flags;           // collected, level spawn order
  bool shield_active = false;
  bool operator==(const FrameRecord&) const = default;
};

FrameRecord record_frame(const SimState& state);

struct EpisodeMetadata {
  std::string schema_version{kSchemaVersion};
  LevelSpec level;
  std::string policy_name;
  std::uint64_t policy_seed = 0;
  int fps = kFps;
  std::vector<FrameRecord> frames;
  std::vector<GameEvent> events;
  EndReason end_reason = EndReason::Timeout;
  std::uint64_t checksum = 0;

  int frame_count() const { return static_cast<int>(frames.size()); }
  bool operator==(const EpisodeMetadata&) const = default;
};

// Plays `policy` on `spec` until the episode ends. Episodes that would end
// before 96 frames are replayed behind a frozen lead-in so that they reach
// exactly 96 frames. Throws InvalidLevel.
EpisodeMetadata run_episode(const LevelSpec& spec, Policy policy);

// FNV-1a 64 over the canonical bytes of {events, frames}.
std::uint64_t compute_checksum(const EpisodeMetadata& ep);

// Canonical JSON: sorted keys, 4-decimal floats, no whitespace.
// Throws InvariantViolation.
std::string serialize_episode(const EpisodeMetadata& ep);

// Throws ParseError, SchemaMismatch, ChecksumMismatch, InvariantViolation.
EpisodeMetadata deserialize_episode(std::string_view bytes);

// Throws InvariantViolation naming the first broken invariant.
void check_invariants(const EpisodeMetadata& ep);

struct ReplayReport {
  bool exact = false;
  std::optional<int> first_divergent_frame;
  int frames_compared = 0;
  std::string detail;
};

// Re-simulates from the stored level with the named preset and seed.
// Throws UnknownPolicyPreset.
ReplayReport verify_replay(const EpisodeMetadata& ep, const PresetRegistry& presets = PresetRegistry::builtin());

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

void save_episode(const std::filesystem::path& path, const EpisodeMetadata& ep);
EpisodeMetadata load_episode(const std::filesystem::path& path);

std::string episode_filename(std::uint64_t level_seed);

// One line of index.jsonl.
struct IndexEntry {
  std::string path;   // relative to the dataset directory
  std::uint64_t level_seed = 0;
  std::string policy_name;
  int frames = 0;
  EndReason end_reason = EndReason::Timeout;
  int coins = 0;
  int kills = 0;
  bool operator==(const IndexEntry&) const = default;
};

IndexEntry index_entry(const EpisodeMetadata& ep, std::string path);
std::string index_line(const IndexEntry& e);
IndexEntry parse_index_line(std::string_view line);
// Entries are sorted by path before writing.
void write_index(const std::filesystem::path& dir, std::vector<IndexEntry> entries);
std::vector<IndexEntry> read_index(const std::filesystem::path& dir);

}  // namespace mugen
