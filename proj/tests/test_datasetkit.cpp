#include <gtest/gtest.h>

#include "mugen/datasetkit.hpp"
#include "mugen/error.hpp"
#include "support.hpp"

using namespace mugen;

namespace {

std::vector<Clip> corpus(int plain, int diverse) {
  std::vector<Clip> out;
  for (int i = 0; i < plain + diverse; ++i) {
    Clip c;
    c.episode_ref = "ep_" + std::to_string(i);
    c.entities = {EntityKind::Mugen, EntityKind::Coin};
    if (i >= plain) c.entities.insert(EntityKind::Snail);
    out.push_back(c);
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Clips, FullEpisodeGivesSix) {
  const auto clips = split_clips(mugen::testing::blank_episode(mugen::testing::flat_level(), 630), "a");
  ASSERT_EQ(clips.size(), 6u);
  for (std::size_t i = 0; i < clips.size(); ++i) {
    EXPECT_EQ(clips[i].start_frame, static_cast<int>(i) * 96);
    EXPECT_EQ(clips[i].length, 96);
  }
  EXPECT_EQ(split_clips(mugen::testing::blank_episode(mugen::testing::flat_level(), 96)).size(), 1u);
  EXPECT_EQ(split_clips(mugen::testing::blank_episode(mugen::testing::flat_level(), 191)).size(), 1u);
}

TEST(Clips, TagsFollowEvents) {
  auto level = mugen::testing::flat_level();
  level.spawns.push_back({EntityKind::Gem, {5, 1}, Facing::Right});
  auto ep = mugen::testing::blank_episode(level, 192);
  ep.events.push_back({120, EventKind::GemCollected, std::nullopt, std::nullopt});
  const auto clips = split_clips(ep);
  EXPECT_FALSE(clips[0].interactions.count("collect gem"));
  EXPECT_TRUE(clips[1].interactions.count("collect gem"));
  const auto tags = clips[1].tags();
  EXPECT_NE(std::find(tags.begin(), tags.end(), "collect gem"), tags.end());
  EXPECT_NE(std::find(tags.begin(), tags.end(), "gem"), tags.end());
  EXPECT_FALSE(clips[1].plain());
}

TEST(Clips, OffCameraEntitiesNotCounted) {
  auto level = mugen::testing::flat_level(60, 12);
  level.spawns.push_back({EntityKind::Snail, {40, 1}, Facing::Right});
  level.spawns.push_back({EntityKind::Coin, {6, 1}, Facing::Right});
  const auto clips = split_clips(mugen::testing::blank_episode(level, 96));
  EXPECT_EQ(clips[0].entities, (std::set<EntityKind>{EntityKind::Mugen, EntityKind::Coin}));
  EXPECT_TRUE(clips[0].plain());
}

TEST(Qc, Rules) {
  EXPECT_FALSE(qc_manual_text("The snail walks left.").accepted);
  EXPECT_FALSE(qc_manual_text("Mugen jumps up.").accepted);
  EXPECT_EQ(std::string("Mugen jumps up high.").size(), 20u);
  EXPECT_FALSE(qc_manual_text("Mugen jumps up high.").accepted);
  EXPECT_TRUE(qc_manual_text("Mugen jumps up very high.").accepted);
  EXPECT_TRUE(qc_manual_text("then MUGEN walks right slowly").accepted);
}

TEST(Split, RatioArithmetic) {
  const auto clips = corpus(0, 100);
  const auto a = balance_split(clips, 1, {});
  EXPECT_EQ(a.count(SplitName::Train), 80);
  EXPECT_EQ(a.count(SplitName::Val), 10);
  EXPECT_EQ(a.count(SplitName::Test), 10);
}

TEST(Split, PlainCapFeasibility) {
  const SplitRatios r{0.9, 0.1, 0.0};
  const auto ok = corpus(90, 10);
  const auto a = balance_split(ok, 3, r);
  EXPECT_EQ(a.count(SplitName::Val), 10);
  EXPECT_LE(a.plain_count(ok, SplitName::Val), 2);
  EXPECT_EQ(code_of([&] { balance_split(corpus(95, 5), 3, r); }), ErrorCode::InsufficientDiverseClips);
  EXPECT_EQ(code_of([&] { balance_split(corpus(90, 10), 3, {}); }), ErrorCode::InsufficientDiverseClips);
}

TEST(Split, CapHoldsForRandomCorpora) {
  for (int plain = 0; plain <= 60; plain += 7) {
    const auto clips = corpus(plain, 100 - plain);
    const auto a = balance_split(clips, static_cast<std::uint64_t>(plain), {});
    for (auto s : {SplitName::Val, SplitName::Test})
      EXPECT_LE(a.plain_count(clips, s), static_cast<int>(0.2 * a.count(s)));
    EXPECT_EQ(a.count(SplitName::Train) + a.count(SplitName::Val) + a.count(SplitName::Test), 100);
  }
}

TEST(Split, DeterministicAndSeeded) {
  const auto clips = corpus(30, 70);
  EXPECT_EQ(balance_split(clips, 5, {}).split, balance_split(clips, 5, {}).split);
  EXPECT_NE(balance_split(clips, 5, {}).split, balance_split(clips, 6, {}).split);
}

TEST(Split, BadRatios) {
  EXPECT_EQ(code_of([] { balance_split(corpus(0, 10), 1, {0.5, 0.5, 0.5}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { balance_split(corpus(0, 10), 1, {1.2, -0.1, -0.1}); }), ErrorCode::InvalidConfig);
}

TEST(Stats, CountedOncePerClip) {
  auto level = mugen::testing::flat_level();
  for (int x : {5, 7, 9}) level.spawns.push_back({EntityKind::Snail, {x, 1}, Facing::Right});
  const auto clips = split_clips(mugen::testing::blank_episode(level, 96));
  const auto counts = occurrence_stats(clips);
  EXPECT_EQ(counts[static_cast<std::size_t>(EntityKind::Snail)], 1);
  EXPECT_EQ(counts[static_cast<std::size_t>(EntityKind::Mugen)], 1);
  const auto zero = occurrence_stats({});
  for (auto c : zero) EXPECT_EQ(c, 0);
}

TEST(Stats, MugenCentredColumn) {
  std::vector<EpisodeMetadata> eps;
  std::vector<Clip> clips;
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto level = generate_level(s, Theme::Snow, GenConfig{});
    eps.push_back(run_episode(level, make_policy(PresetRegistry::builtin().get("profile-03"), s)));
    const auto c = split_clips(eps.back(), "", static_cast<int>(s));
    clips.insert(clips.end(), c.begin(), c.end());
  }
  const auto h = location_heatmap(eps, clips, EntityKind::Mugen, 16, 16);
  EXPECT_EQ(h.total(), static_cast<std::int64_t>(clips.size()) * kClipFrames);
  EXPECT_EQ(h.counts.col(8).sum(), h.total());
}

TEST(Stats, StationaryBarnacleFillsOneCell) {
  auto level = mugen::testing::flat_level();
  level.spawns.push_back({EntityKind::Barnacle, {6, 1}, Facing::Right});
  const std::vector<EpisodeMetadata> eps = {mugen::testing::blank_episode(level, 96)};
  const auto h = location_heatmap(eps, split_clips(eps[0]), EntityKind::Barnacle, 16, 16);
  EXPECT_EQ(h.total(), 96);
  EXPECT_EQ(h.counts.maxCoeff(), 96);
}

TEST(Stats, NoDeathsNoDeathMass) {
  const std::vector<EpisodeMetadata> eps = {mugen::testing::blank_episode(mugen::testing::flat_level(), 192)};
  EXPECT_EQ(temporal_heatmap(eps, split_clips(eps[0]), EventKind::KilledByMonster).total(), 0);
  EXPECT_EQ(episode_temporal_heatmap(eps, EventKind::KilledByMonster).total(), 0);
}

TEST(Stats, EpisodeBins) {
  auto ep = mugen::testing::blank_episode(mugen::testing::flat_level(), 200);
  ep.events.push_back({0, EventKind::CoinCollected, std::nullopt, std::nullopt});
  ep.events.push_back({199, EventKind::CoinCollected, std::nullopt, std::nullopt});
  ep.events.push_back({100, EventKind::CoinCollected, std::nullopt, std::nullopt});
  const std::vector<EpisodeMetadata> eps = {ep};
  const auto h = episode_temporal_heatmap(eps, EventKind::CoinCollected, 10);
  EXPECT_EQ(h.counts(0, 0), 1);
  EXPECT_EQ(h.counts(0, 5), 1);
  EXPECT_EQ(h.counts(0, 9), 1);
}

TEST(Heatmap, DisplayAndCsv) {
  Heatmap2D h;
  h.counts.setZero(2, 3);
  h.counts(1, 2) = 7;
  EXPECT_EQ(h.to_csv(), "0,0,0\n0,0,7\n");
  EXPECT_DOUBLE_EQ(h.display()(1, 2), std::log(8.0));
  EXPECT_DOUBLE_EQ(h.display()(0, 0), 0.0);
}
