#include "mugen/datasetkit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "mugen/error.hpp"
#include "mugen/png_io.hpp"
#include "mugen/rng.hpp"

namespace mugen {

namespace {

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.bounded(static_cast<std::uint32_t>(i))]);
}

Vec2 centre(EntityKind kind, Vec2 position) {
  return {position.x, position.y + traits(kind).height / 2};
}

}  // namespace

bool Clip::plain() const {
  for (auto k : entities)
    if (k != EntityKind::Mugen && k != EntityKind::Coin) return false;
  for (const auto& i : interactions)
    if (i != "collect coin") return false;
  return true;
}

std::vector<std::string> Clip::tags() const {
  std::vector<std::string> out;
  for (auto k : entities) out.emplace_back(traits(k).noun);
  out.insert(out.end(), interactions.begin(), interactions.end());
  return out;
}

bool camera_position(const FrameRecord& f, Vec2 c, Vec2& out) {
  out = {c.x - f.mugen.position.x + kCameraCells / 2.0, c.y};
  return out.x >= 0.0 && out.x < kCameraCells && out.y >= 0.0 && out.y < kCameraCells;
}

std::vector<Sighting> on_camera(const EpisodeMetadata& ep, int frame_idx) {
  const auto& f = ep.frames[static_cast<std::size_t>(frame_idx)];
  std::vector<Sighting> out;
  Vec2 cam;
  if (camera_position(f, centre(EntityKind::Mugen, f.mugen.position), cam)) out.push_back({EntityKind::Mugen, cam});
  std::size_t item = 0;
  for (const auto& sp : ep.level.spawns) {
    if (!is_item(sp.kind)) continue;
    if (f.item_flags[item++]) continue;
    const Aabb b = item_box(sp.cell);
    if (camera_position(f, {(b.left + b.right) / 2, (b.bottom + b.top) / 2}, cam)) out.push_back({sp.kind, cam});
  }
  for (const auto& m : f.monsters)
    if (m.alive && camera_position(f, centre(m.kind, m.position), cam)) out.push_back({m.kind, cam});
  return out;
}

std::string interaction_tag(EventKind k) {
  switch (k) {
    case EventKind::CoinCollected: return "collect coin";
    case EventKind::GemCollected: return "collect gem";
    case EventKind::MonsterKilled: return "kill monster";
    case EventKind::KilledByMonster: return "killed by monster";
    default: return {};
  }
}

std::vector<Clip> split_clips(const EpisodeMetadata& ep, std::string episode_ref, int episode_index) {
  std::vector<Clip> out;
  for (int start = 0; start + kClipFrames <= ep.frame_count(); start += kClipFrames) {
    Clip c;
    c.episode_ref = episode_ref;
    c.episode_index = episode_index;
    c.start_frame = start;
    for (int f = start; f < start + kClipFrames; ++f)
      for (const auto& s : on_camera(ep, f)) c.entities.insert(s.kind);
    for (const auto& ev : ep.events)
      if (ev.frame_idx >= start && ev.frame_idx < start + kClipFrames)
        if (auto tag = interaction_tag(ev.kind); !tag.empty()) c.interactions.insert(tag);
    out.push_back(std::move(c));
  }
  return out;
}

QcResult qc_manual_text(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower.find("mugen") == std::string::npos) return {false, "Mugen is not mentioned"};
  std::istringstream words{std::string(text)};
  int n = 0;
  for (std::string w; words >> w;) ++n;
  if (n <= 3) return {false, "3 words or fewer"};
  if (text.size() <= 20) return {false, "20 characters or fewer"};
  return {true, {}};
}

std::string_view to_string(SplitName s) {
  switch (s) {
    case SplitName::Train: return "train";
    case SplitName::Val: return "val";
    case SplitName::Test: return "test";
  }
  return "";
}

int SplitAssignment::count(SplitName s) const { return static_cast<int>(std::count(split.begin(), split.end(), s)); }

int SplitAssignment::plain_count(const std::vector<Clip>& clips, SplitName s) const {
  int n = 0;
  for (std::size_t i = 0; i < split.size(); ++i)
    if (split[i] == s && clips[i].plain()) ++n;
  return n;
}

SplitAssignment balance_split(const std::vector<Clip>& clips, std::uint64_t seed, SplitRatios ratios) {
  const double sum = ratios.train + ratios.val + ratios.test;
  if (ratios.train < 0 || ratios.val < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidConfig, "split ratios must be non-negative and sum to 1");

  const int n = static_cast<int>(clips.size());
  const int n_val = static_cast<int>(std::lround(n * ratios.val));
  const int n_test = std::min(n - n_val, static_cast<int>(std::lround(n * ratios.test)));

  std::vector<int> plain;
  std::vector<int> diverse;
  for (int i = 0; i < n; ++i) (clips[static_cast<std::size_t>(i)].plain() ? plain : diverse).push_back(i);

  // Plain clips may take their natural share of val/test, never more than the cap.
  const double plain_share = n > 0 ? static_cast<double>(plain.size()) / n : 0.0;
  auto plain_quota = [&](int size) {
    const int cap = static_cast<int>(std::floor(kPlainCap * size));
    return std::min(cap, static_cast<int>(std::floor(plain_share * size)));
  };
  const int pv = plain_quota(n_val);
  const int pt = plain_quota(n_test);
  const int need = (n_val - pv) + (n_test - pt);
  if (static_cast<int>(diverse.size()) < need)
    throw Error(ErrorCode::InsufficientDiverseClips,
                "val/test need " + std::to_string(need) + " diverse clips, only " + std::to_string(diverse.size()) +
                    " available");

  SplitMix64 rng(seed);
  shuffle(plain, rng);
  shuffle(diverse, rng);

  SplitAssignment a;
  a.split.assign(static_cast<std::size_t>(n), SplitName::Train);
  std::size_t p = 0;
  std::size_t d = 0;
  auto fill = [&](SplitName s, int size, int plain_n) {
    for (int k = 0; k < plain_n; ++k) a.split[static_cast<std::size_t>(plain[p++])] = s;
    for (int k = plain_n; k < size; ++k) a.split[static_cast<std::size_t>(diverse[d++])] = s;
  };
  fill(SplitName::Val, n_val, pv);
  fill(SplitName::Test, n_test, pt);
  return a;
}

OccurrenceCounts occurrence_stats(const std::vector<Clip>& clips) {
  OccurrenceCounts out{};
  for (const auto& c : clips)
    for (auto k : c.entities) ++out[static_cast<std::size_t>(k)];
  return out;
}

Eigen::MatrixXd Heatmap2D::display() const {
  return counts.cast<double>().unaryExpr([](double v) { return std::log1p(v); });
}

std::string Heatmap2D::to_csv() const {
  std::ostringstream out;
  for (Eigen::Index r = 0; r < counts.rows(); ++r) {
    for (Eigen::Index c = 0; c < counts.cols(); ++c) out << (c ? "," : "") << counts(r, c);
    out << "\n";
  }
  return out.str();
}

void Heatmap2D::write_png(const std::filesystem::path& path) const {
  const Eigen::MatrixXd d = display();
  const double peak = d.size() ? d.maxCoeff() : 0.0;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(d.size()));
  for (Eigen::Index r = 0; r < d.rows(); ++r)
    for (Eigen::Index c = 0; c < d.cols(); ++c)
      px[static_cast<std::size_t>(r * d.cols() + c)] =
          static_cast<std::uint8_t>(peak > 0 ? std::lround(255.0 * d(r, c) / peak) : 0);
  mugen::write_png(path, px.data(), static_cast<int>(d.cols()), static_cast<int>(d.rows()), 1);
}

Heatmap2D location_heatmap(std::span<const EpisodeMetadata> eps, const std::vector<Clip>& clips, EntityKind kind,
                           int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidConfig, "heatmap grid must be at least 1x1");
  Heatmap2D h;
  h.counts.setZero(rows, cols);
  for (const auto& c : clips) {
    const auto& ep = eps[static_cast<std::size_t>(c.episode_index)];
    for (int f = c.start_frame; f < c.start_frame + c.length; ++f)
      for (const auto& s : on_camera(ep, f)) {
        if (s.kind != kind) continue;
        const int col = std::min(cols - 1, static_cast<int>(std::floor(s.camera.x / kCameraCells * cols)));
        const int row =
            std::min(rows - 1, static_cast<int>(std::floor((kCameraCells - s.camera.y) / kCameraCells * rows)));
        ++h.counts(row, col);
      }
  }
  return h;
}

Heatmap2D temporal_heatmap(std::span<const EpisodeMetadata> eps, const std::vector<Clip>& clips, EventKind kind) {
  Heatmap2D h;
  h.counts.setZero(1, kClipFrames);
  for (const auto& c : clips)
    for (const auto& ev : eps[static_cast<std::size_t>(c.episode_index)].events)
      if (ev.kind == kind && ev.frame_idx >= c.start_frame && ev.frame_idx < c.start_frame + c.length)
        ++h.counts(0, ev.frame_idx - c.start_frame);
  return h;
}

Heatmap2D episode_temporal_heatmap(std::span<const EpisodeMetadata> eps, EventKind kind, int bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidConfig, "bins must be positive");
  Heatmap2D h;
  h.counts.setZero(1, bins);
  for (const auto& ep : eps)
    for (const auto& ev : ep.events)
      if (ev.kind == kind)
        ++h.counts(0, static_cast<Eigen::Index>(static_cast<long>(ev.frame_idx) * bins / ep.frame_count()));
  return h;
}

}  // namespace mugen
