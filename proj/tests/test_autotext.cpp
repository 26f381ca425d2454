#include <gtest/gtest.h>

#include "mugen/autotext.hpp"
#include "mugen/error.hpp"
#include "support.hpp"

using namespace mugen;

namespace {

EpisodeMetadata with_poses(const std::vector<std::pair<PoseId, int>>& runs) {
  int n = 0;
  for (const auto& r : runs) n += r.second;
  auto ep = mugen::testing::blank_episode(mugen::testing::flat_level(), n);
  int f = 0;
  for (const auto& [pose, len] : runs)
    for (int i = 0; i < len; ++i) ep.frames[static_cast<std::size_t>(f++)].mugen.pose = pose;
  return ep;
}

}  // namespace

TEST(Autotext, SnailJumpCaption) {
  const auto ep = mugen::testing::snail_jump_scenario();
  const auto segs = segment_poses(ep, whole(ep));
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(phrase(segs[0]), "jumps up to the right over a snail to a platform");
  EXPECT_EQ(generate_autotext(ep, whole(ep)), "Mugen jumps up to the right over a snail to a platform");
}

TEST(Autotext, FrogDeathCaption) {
  const auto ep = mugen::testing::frog_death_scenario();
  EXPECT_EQ(generate_autotext(ep, whole(ep)),
            "Mugen walks to the right, and jumps up to the right to a ladder, and killed by a frog");
}

TEST(Autotext, ConstantWalkIsOneSegment) {
  const auto ep = with_poses({{PoseId::WalkRight, 96}});
  const auto segs = segment_poses(ep, whole(ep));
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].merge_count, 1);
  EXPECT_EQ(segs[0].length(), 96);
}

TEST(Autotext, ShortInterruptionMerges) {
  const auto ep = with_poses({{PoseId::JumpRight, 20}, {PoseId::WalkRight, 3}, {PoseId::Jump, 25}});
  const auto segs = segment_poses(ep, whole(ep));
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].pose, PoseId::Jump);
  EXPECT_EQ(segs[0].merge_count, 2);
  EXPECT_EQ(segs[0].start_frame, 0);
  EXPECT_EQ(segs[0].end_frame, 47);
  EXPECT_EQ(phrase(segs[0]).rfind("jumps twice", 0), 0u);
}

TEST(Autotext, LongInterruptionSplits) {
  const auto ep = with_poses({{PoseId::Jump, 20}, {PoseId::WalkRight, 5}, {PoseId::Jump, 25}});
  EXPECT_EQ(segment_poses(ep, whole(ep)).size(), 3u);
}

TEST(Autotext, FourFrameRunsAreDropped) {
  const auto ep = with_poses({{PoseId::Idle, 40}, {PoseId::WalkLeft, 4}, {PoseId::Idle, 52}});
  EXPECT_TRUE(segment_poses(ep, whole(ep)).empty());
  EXPECT_EQ(generate_autotext(ep, whole(ep)), "Mugen stands still.");
  const auto five = with_poses({{PoseId::Idle, 40}, {PoseId::WalkLeft, 5}, {PoseId::Idle, 51}});
  EXPECT_EQ(generate_autotext(five, whole(five)), "Mugen walks to the left");
}

TEST(Autotext, AllIdleStandsStill) {
  const auto ep = with_poses({{PoseId::Idle, 96}});
  EXPECT_EQ(generate_autotext(ep, whole(ep)), "Mugen stands still.");
}

TEST(Autotext, JumpFamilySharesKey) {
  for (auto p : {PoseId::Jump, PoseId::JumpLeft, PoseId::JumpRight, PoseId::KillStomp})
    EXPECT_EQ(segment_key(p), PoseId::Jump);
  EXPECT_EQ(segment_key(PoseId::Fall), PoseId::Fall);
}

TEST(Autotext, PhraseTemplates) {
  PoseSegment s;
  s.pose = PoseId::Jump;
  s.merge_count = 5;
  s.height = HeightClass::Lower;
  s.horizontal = HorizontalClass::Left;
  s.jumped_over = {EntityKind::Bee, EntityKind::Ghost};
  s.landing = Surface::Ground;
  EXPECT_EQ(phrase(s), "jumps several times down to the left over a bee and a ghost to the ground");
  s = {};
  s.pose = PoseId::Jump;
  s.merge_count = 3;
  s.landing = Surface::Monster;
  s.kill_at_end = EntityKind::Worm;
  EXPECT_EQ(phrase(s), "jumps three times and kills a worm");
  s = {};
  s.pose = PoseId::ClimbUp;
  EXPECT_EQ(phrase(s), "climbs up a ladder");
  s.pose = PoseId::Die;
  EXPECT_EQ(phrase(s), "dies");
  s.killed_by = EntityKind::Ladybug;
  EXPECT_EQ(phrase(s), "killed by a ladybug");
}

TEST(Autotext, CaptionJoins) {
  PoseSegment a;
  a.pose = PoseId::WalkLeft;
  PoseSegment b;
  b.pose = PoseId::Collect;
  EXPECT_EQ(caption({a, b}), "Mugen walks to the left, and collects a coin");
  EXPECT_EQ(caption({}), "Mugen stands still.");
}

TEST(Autotext, RangeChecked) {
  const auto ep = with_poses({{PoseId::Idle, 10}});
  try {
    segment_poses(ep, {5, 11});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeOutOfBounds);
  }
}

TEST(Autotext, DeterministicOnPlayedEpisodes) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto level = generate_level(s, Theme::Snow, GenConfig{});
    const auto ep = run_episode(level, make_policy(PresetRegistry::builtin().get("profile-10"), s));
    for (int c = 0; c + kClipFrames <= ep.frame_count(); c += kClipFrames) {
      const FrameRange r{c, c + kClipFrames};
      const auto text = generate_autotext(ep, r);
      EXPECT_EQ(text, generate_autotext(ep, r));
      EXPECT_EQ(text.rfind("Mugen ", 0), 0u);
      for (const auto& seg : segment_poses(ep, r)) EXPECT_GE(seg.length(), kMinSegmentFrames);
    }
  }
}
