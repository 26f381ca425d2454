#include "mugen/audiogen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "mugen/error.hpp"
#include "mugen/rng.hpp"

namespace mugen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::optional<SfxId> sfx_for(EventKind k) {
  switch (k) {
    case EventKind::CoinCollected: return SfxId::CollectCoin;
    case EventKind::MonsterKilled: return SfxId::KillMonster;
    case EventKind::GemCollected: return SfxId::PowerUp;
    case EventKind::BumpHead: return SfxId::BumpHead;
    case EventKind::KilledByMonster: return SfxId::Die;
    case EventKind::JumpStart: return SfxId::Jump;
    default: return std::nullopt;
  }
}

std::optional<SfxId> sfx_for(PoseId p) {
  if (p == PoseId::WalkLeft || p == PoseId::WalkRight) return SfxId::Walk;
  if (p == PoseId::ClimbUp || p == PoseId::ClimbDown) return SfxId::ClimbLadder;
  return std::nullopt;
}

struct Candidate {
  SfxEntry e;
  long seq = 0;
  long end() const { return e.start_sample + e.duration_samples; }
};

struct Later {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.e.start_sample != b.e.start_sample) return a.e.start_sample > b.e.start_sample;
    if (priority(a.e.sfx) != priority(b.e.sfx)) return priority(a.e.sfx) < priority(b.e.sfx);
    return a.seq > b.seq;
  }
};

// Resolves overlapping triggers onto one channel.
std::vector<SfxEntry> resolve(std::vector<Candidate> cands) {
  std::priority_queue<Candidate, std::vector<Candidate>, Later> queue(Later{}, std::move(cands));
  long seq = static_cast<long>(queue.size());
  std::vector<SfxEntry> out;
  while (!queue.empty()) {
    Candidate c = queue.top();
    queue.pop();
    if (c.e.duration_samples <= 0) continue;
    if (out.empty() || out.back().start_sample + out.back().duration_samples <= c.e.start_sample) {
      out.push_back(c.e);
      continue;
    }
    SfxEntry& cur = out.back();
    const long cur_end = cur.start_sample + cur.duration_samples;
    if (priority(c.e.sfx) >= priority(cur.sfx)) {
      if (is_sustained(cur.sfx) && cur_end > c.end()) {
        SfxEntry rest = cur;
        rest.source_offset += c.end() - cur.start_sample;
        rest.start_sample = c.end();
        rest.duration_samples = cur_end - c.end();
        queue.push({rest, seq++});
      }
      cur.duration_samples = c.e.start_sample - cur.start_sample;
      if (cur.duration_samples <= 0) out.pop_back();
      out.push_back(c.e);
    } else if (is_sustained(c.e.sfx) && c.end() > cur_end) {
      c.e.source_offset += cur_end - c.e.start_sample;
      c.e.duration_samples = c.end() - cur_end;
      c.e.start_sample = cur_end;
      c.seq = seq++;
      queue.push(c);
    }
  }
  return out;
}

std::vector<SfxEntry> episode_entries(const EpisodeMetadata& ep) {
  std::vector<Candidate> cands;
  long seq = 0;
  for (const auto& ev : ep.events)
    if (auto id = sfx_for(ev.kind))
      cands.push_back({{*id, ev.frame_idx * static_cast<long>(kSamplesPerFrame), oneshot_samples(*id), 0}, seq++});

  const int n = ep.frame_count();
  for (int f = 0; f < n;) {
    const auto id = sfx_for(ep.frames[static_cast<std::size_t>(f)].mugen.pose);
    int g = f + 1;
    while (g < n && sfx_for(ep.frames[static_cast<std::size_t>(g)].mugen.pose) == id) ++g;
    if (id)
      cands.push_back({{*id, f * static_cast<long>(kSamplesPerFrame), (g - f) * static_cast<long>(kSamplesPerFrame), 0},
                       seq++});
    f = g;
  }

  auto entries = resolve(std::move(cands));
  const long total = samples_for_frames(n);
  std::vector<SfxEntry> out;
  for (auto e : entries) {
    if (e.start_sample >= total) continue;
    e.duration_samples = std::min(e.duration_samples, total - e.start_sample);
    out.push_back(e);
  }
  return out;
}

double tone(double freq, double t) { return std::sin(kTwoPi * freq * t); }

// Frequency glide from f0 to f1 over `len` seconds, phase-continuous.
double chirp(double f0, double f1, double len, double t) {
  return std::sin(kTwoPi * (f0 * t + (f1 - f0) * t * t / (2.0 * len)));
}

double noise(long pos, std::uint64_t salt) {
  return static_cast<double>(mix64(static_cast<std::uint64_t>(pos) ^ salt) >> 11) * 0x1.0p-52 - 1.0;
}

double note_freq(int semitones_from_a4) { return 440.0 * std::pow(2.0, semitones_from_a4 / 12.0); }

}  // namespace

std::string_view to_string(SfxId id) {
  static constexpr std::array<std::string_view, kSfxCount> names = {
      "Walk", "Jump", "CollectCoin", "KillMonster", "PowerUp", "ClimbLadder", "BumpHead", "Die"};
  return names[static_cast<std::size_t>(id)];
}

int priority(SfxId id) {
  switch (id) {
    case SfxId::Die: return 7;
    case SfxId::KillMonster: return 6;
    case SfxId::PowerUp: return 5;
    case SfxId::CollectCoin: return 4;
    case SfxId::BumpHead: return 3;
    case SfxId::Jump: return 2;
    case SfxId::ClimbLadder: return 1;
    case SfxId::Walk: return 0;
  }
  return 0;
}

bool is_sustained(SfxId id) { return id == SfxId::Walk || id == SfxId::ClimbLadder; }

long oneshot_samples(SfxId id) {
  switch (id) {
    case SfxId::Jump: return 5513;          // 0.25 s
    case SfxId::CollectCoin: return 4410;   // 0.2 s
    case SfxId::KillMonster: return 6615;   // 0.3 s
    case SfxId::PowerUp: return 11025;      // 0.5 s
    case SfxId::BumpHead: return 3969;      // 0.18 s
    case SfxId::Die: return 13230;          // 0.6 s
    case SfxId::Walk:
    case SfxId::ClimbLadder: return 0;
  }
  return 0;
}

SfxSchedule build_sfx_schedule(const EpisodeMetadata& ep, FrameRange range) {
  if (range.begin < 0 || range.end > ep.frame_count() || range.begin >= range.end)
    throw Error(ErrorCode::RangeOutOfBounds, "frame range [" + std::to_string(range.begin) + ", " +
                                                 std::to_string(range.end) + ") outside episode of " +
                                                 std::to_string(ep.frame_count()) + " frames");
  SfxSchedule s;
  s.origin_sample = samples_for_frames(range.begin);
  const long lo = s.origin_sample;
  const long hi = samples_for_frames(range.end);
  for (const auto& e : episode_entries(ep)) {
    const long a = std::max(e.start_sample, lo);
    const long b = std::min(e.start_sample + e.duration_samples, hi);
    if (a >= b) continue;
    s.entries.push_back({e.sfx, a - lo, b - a, e.source_offset + (a - e.start_sample)});
  }
  return s;
}

double music_sample(Theme theme, long abs_sample) {
  const double t = static_cast<double>(abs_sample) / kSampleRate;
  if (theme == Theme::Snow) {
    // Bell arpeggio over a soft pad, 8-beat loop at 120 bpm.
    static constexpr std::array<int, 16> melody = {3, 7, 10, 15, 14, 10, 7, 10, 5, 8, 12, 17, 15, 12, 8, 12};
    const double beat = 0.25;
    const long step = static_cast<long>(std::floor(t / beat));
    const double local = t - step * beat;
    const int note = melody[static_cast<std::size_t>(step % 16)];
    const double f = note_freq(note);
    const double bell = (tone(f, local) + 0.3 * tone(2.0 * f, local)) * std::exp(-local * 9.0);
    const int root = (step / 8) % 2 == 0 ? -9 : -4;
    const double pad = 0.5 * (tone(note_freq(root - 12), t) + 0.6 * tone(note_freq(root - 5), t));
    return 0.55 * bell + 0.35 * pad;
  }
  // Minor pulse with a slow drone.
  static constexpr std::array<int, 8> melody = {0, 3, 7, 10, 12, 10, 7, 3};
  const double beat = 0.3;
  const long step = static_cast<long>(std::floor(t / beat));
  const double local = t - step * beat;
  const double f = note_freq(melody[static_cast<std::size_t>(step % 8)] - 12);
  const double pulse = (tone(f, local) + 0.33 * tone(3 * f, local) + 0.2 * tone(5 * f, local)) *
                       std::exp(-local * 6.0) / 1.53;
  const double drone = tone(note_freq(-33), t) * (0.7 + 0.3 * std::sin(kTwoPi * 0.25 * t));
  return 0.55 * pulse + 0.4 * drone;
}

double sfx_sample(SfxId id, long pos) {
  const double t = static_cast<double>(pos) / kSampleRate;
  switch (id) {
    case SfxId::Walk: {
      const long p = pos % 5513;   // a step every 0.25 s
      const double lt = static_cast<double>(p) / kSampleRate;
      return 0.7 * std::exp(-lt * 90.0) * (0.6 * noise(p, 0x57A1) + 0.4 * tone(140.0, lt));
    }
    case SfxId::ClimbLadder: {
      const long p = pos % 4410;
      const double lt = static_cast<double>(p) / kSampleRate;
      const double f = (pos / 4410) % 2 == 0 ? 620.0 : 520.0;
      return 0.6 * std::exp(-lt * 40.0) * (tone(f, lt) > 0 ? 1.0 : -1.0);
    }
    case SfxId::Jump: return 0.8 * (1.0 - t / 0.25) * chirp(300.0, 900.0, 0.25, t);
    case SfxId::CollectCoin: {
      const double f = t < 0.07 ? 988.0 : 1319.0;
      return 0.6 * std::exp(-t * 8.0) * (tone(f, t) > 0 ? 1.0 : -1.0);
    }
    case SfxId::KillMonster:
      return std::exp(-t * 7.0) * (0.6 * chirp(420.0, 90.0, 0.3, t) + 0.35 * noise(pos, 0x4B11));
    case SfxId::PowerUp: {
      static constexpr std::array<int, 4> steps = {0, 4, 7, 12};
      const auto k = static_cast<std::size_t>(std::min(3L, static_cast<long>(t / 0.125)));
      const double lt = t - 0.125 * static_cast<double>(k);
      return 0.75 * std::exp(-lt * 6.0) * tone(note_freq(steps[k] + 3), lt);
    }
    case SfxId::BumpHead: return 0.9 * std::exp(-t * 22.0) * (tone(120.0, t) + 0.2 * noise(pos, 0xB0B));
    case SfxId::Die: {
      const double vib = 1.0 + 0.04 * std::sin(kTwoPi * 9.0 * t);
      return 0.8 * (1.0 - t / 0.6) * chirp(600.0 * vib, 80.0, 0.6, t);
    }
  }
  return 0.0;
}

double soft_clip(double x) {
  const double k = kMix.limiter_knee;
  const double a = std::abs(x);
  if (a <= k) return x;
  const double y = k + (1.0 - k) * std::tanh((a - k) / (1.0 - k));
  return x < 0 ? -y : y;
}

AudioTrack synthesize_audio(const SfxSchedule& schedule, Theme theme, int frame_count) {
  AudioTrack track;
  track.theme = theme;
  track.schedule = schedule;
  const long n = samples_for_frames(frame_count);
  track.samples.resize(static_cast<std::size_t>(n));
  std::size_t next = 0;
  for (long t = 0; t < n; ++t) {
    double x = kMix.background_gain * music_sample(theme, schedule.origin_sample + t);
    while (next < schedule.entries.size() &&
           schedule.entries[next].start_sample + schedule.entries[next].duration_samples <= t)
      ++next;
    if (next < schedule.entries.size() && schedule.entries[next].start_sample <= t) {
      const auto& e = schedule.entries[next];
      x += kMix.sfx_gain * sfx_sample(e.sfx, e.source_offset + (t - e.start_sample));
    }
    track.samples[static_cast<std::size_t>(t)] = static_cast<std::int16_t>(std::lround(soft_clip(x) * 32767.0));
  }
  return track;
}

std::vector<std::uint8_t> encode_wav(const std::vector<std::int16_t>& samples, int sample_rate) {
  std::vector<std::uint8_t> out;
  auto u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto u16 = [&](std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto tag = [&](const char* s) { out.insert(out.end(), s, s + 4); };
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  tag("RIFF");
  u32(36 + data_bytes);
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(1);   // PCM
  u16(1);   // mono
  u32(static_cast<std::uint32_t>(sample_rate));
  u32(static_cast<std::uint32_t>(sample_rate * 2));
  u16(2);
  u16(16);
  tag("data");
  u32(data_bytes);
  for (auto s : samples) u16(static_cast<std::uint16_t>(s));
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioTrack& track) {
  const auto bytes = encode_wav(track.samples, track.sample_rate);
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace mugen
