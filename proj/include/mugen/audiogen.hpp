#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mugen/metadata.hpp"

namespace mugen {

inline constexpr int kSampleRate = 22050;
inline constexpr int kSamplesPerFrame = kSampleRate / kFps;   // 735

enum class SfxId : std::uint8_t { Walk, Jump, CollectCoin, KillMonster, PowerUp, ClimbLadder, BumpHead, Die };
inline constexpr int kSfxCount = 8;

std::string_view to_string(SfxId id);
// Die 7 > KillMonster 6 > PowerUp 5 > CollectCoin 4 > BumpHead 3 > Jump 2 > ClimbLadder 1 > Walk 0.
int priority(SfxId id);
// Walk and ClimbLadder follow pose runs; the rest fire once per event.
bool is_sustained(SfxId id);
// Length of a one-shot effect in samples.
long oneshot_samples(SfxId id);

struct MixLevels {
  double background_gain = 0.2512;   // -12 dBFS
  double sfx_gain = 0.5012;          // -6 dBFS
  double limiter_knee = 0.8;
};
inline constexpr MixLevels kMix{};

struct SfxEntry {
  SfxId sfx = SfxId::Walk;
  long start_sample = 0;       // relative to the schedule's origin
  long duration_samples = 0;
  long source_offset = 0;      // position inside the effect's waveform at start
  bool operator==(const SfxEntry&) const = default;
};

struct SfxSchedule {
  std::vector<SfxEntry> entries;   // sorted, non-overlapping
  int sample_rate = kSampleRate;
  long origin_sample = 0;          // absolute episode sample of local sample 0
  bool operator==(const SfxSchedule&) const = default;
};

// Half-open frame interval [begin, end).
struct FrameRange {
  int begin = 0;
  int end = 0;
  int size() const { return end - begin; }
};

inline FrameRange whole(const EpisodeMetadata& ep) { return {0, ep.frame_count()}; }

// The schedule for the whole episode is resolved first and then cut to
// `range`, so a clip's schedule is always a slice of its episode's.
// Throws RangeOutOfBounds.
SfxSchedule build_sfx_schedule(const EpisodeMetadata& ep, FrameRange range);

struct AudioTrack {
  int sample_rate = kSampleRate;
  std::vector<std::int16_t> samples;
  SfxSchedule schedule;
  Theme theme = Theme::Snow;
};

inline long samples_for_frames(int frames) { return static_cast<long>(frames) * kSamplesPerFrame; }

AudioTrack synthesize_audio(const SfxSchedule& schedule, Theme theme, int frame_count);

// Raw components in [-1, 1], indexed by absolute sample / waveform position.
double music_sample(Theme theme, long abs_sample);
double sfx_sample(SfxId id, long pos);
double soft_clip(double x);

std::vector<std::uint8_t> encode_wav(const std::vector<std::int16_t>& samples, int sample_rate);
void write_wav(const std::filesystem::path& path, const AudioTrack& track);

}  // namespace mugen
