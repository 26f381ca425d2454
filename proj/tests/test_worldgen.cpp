#include <gtest/gtest.h>

#include <algorithm>

#include "mugen/error.hpp"
#include "mugen/worldgen.hpp"
#include "support.hpp"

using namespace mugen;

namespace {

int count_kind(const LevelSpec& s, EntityKind k) {
  return static_cast<int>(std::count_if(s.spawns.begin(), s.spawns.end(), [k](const EntitySpawn& e) { return e.kind == k; }));
}

}  // namespace

TEST(Worldgen, SameSeedSameLevel) {
  const GenConfig cfg;
  EXPECT_EQ(generate_level(7, Theme::Snow, cfg), generate_level(7, Theme::Snow, cfg));
}

TEST(Worldgen, NeighbouringSeedsDiffer) {
  const GenConfig cfg;
  for (std::uint64_t s = 0; s < 1000; ++s)
    ASSERT_FALSE(generate_level(s, Theme::Snow, cfg) == generate_level(s + 1, Theme::Snow, cfg)) << s;
}

TEST(Worldgen, CountsFollowConfig) {
  GenConfig cfg;
  cfg.coin_count = 1;
  cfg.monster_count = 0;
  cfg.gem_count = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto spec = generate_level(s, Theme::Space, cfg);
    EXPECT_EQ(count_kind(spec, EntityKind::Coin), 1);
    EXPECT_EQ(count_kind(spec, EntityKind::Mugen), 1);
    int monsters = 0;
    for (auto k : kMonsterKinds) monsters += count_kind(spec, k);
    EXPECT_EQ(monsters, 0);
    EXPECT_EQ(spec.theme, Theme::Space);
  }
}

TEST(Worldgen, GeneratedLevelsValidate) {
  const GenConfig cfg;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto spec = generate_level(s, s % 2 ? Theme::Snow : Theme::Space, cfg);
    const auto rep = validate_level(spec);
    ASSERT_TRUE(rep.ok()) << "seed " << s << ": " << rep.violations.front().rule;
    EXPECT_EQ(rep.coins_reachable, rep.coins_total);
  }
}

TEST(Worldgen, RejectsBadConfig) {
  GenConfig cfg;
  cfg.width = 3;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.coin_count = 0;
  try {
    generate_level(1, Theme::Snow, cfg);
    FAIL() << "expected InvalidConfig";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Worldgen, ConfigKeysOverrideDefaults) {
  const auto cfg = GenConfig::from_config(KvConfig::parse("worldgen.width = 60\n# comment\nworldgen.coins=5\n"));
  EXPECT_EQ(cfg.width, 60);
  EXPECT_EQ(cfg.coin_count, 5);
  EXPECT_EQ(cfg.height, GenConfig{}.height);
}

TEST(Worldgen, ExhaustedRetriesReportGenerationFailed) {
  try {
    detail::generate_level_checked(3, Theme::Snow, GenConfig{}, [](const LevelSpec&) { return false; });
    FAIL() << "expected GenerationFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GenerationFailed);
  }
}

TEST(Validate, FloatingCoinIsUnsupported) {
  auto spec = mugen::testing::flat_level();
  spec.spawns.push_back({EntityKind::Coin, {8, 5}, Facing::Right});
  EXPECT_TRUE(validate_level(spec).has("unsupported spawn"));
}

TEST(Validate, CoinBehindTallWallIsUnreachable) {
  auto spec = mugen::testing::flat_level();
  for (int y = 1; y <= 10; ++y) spec.platform_cells.insert({10, y});
  spec.spawns.push_back({EntityKind::Coin, {15, 1}, Facing::Right});
  const auto rep = validate_level(spec);
  EXPECT_TRUE(rep.has("unreachable coin"));
  EXPECT_EQ(rep.coins_reachable, 0);
}

TEST(Validate, LowWallIsJumpable) {
  auto spec = mugen::testing::flat_level();
  spec.platform_cells.insert({10, 1});
  spec.platform_cells.insert({10, 2});
  spec.spawns.push_back({EntityKind::Coin, {15, 1}, Facing::Right});
  EXPECT_TRUE(validate_level(spec).ok());
}

TEST(Validate, LadderReachesUpperPlatform) {
  auto spec = mugen::testing::flat_level();
  for (int x = 8; x < 14; ++x) spec.platform_cells.insert({x, 6});
  for (int y = 1; y <= 6; ++y) spec.ladder_cells.insert({7, y});
  spec.spawns.push_back({EntityKind::Coin, {10, 7}, Facing::Right});
  EXPECT_TRUE(validate_level(spec).ok());
  spec.ladder_cells.clear();
  EXPECT_TRUE(validate_level(spec).has("unreachable coin"));
}

TEST(Validate, ReachableCellsCoverEveryCoin) {
  const GenConfig cfg;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto spec = generate_level(s, Theme::Snow, cfg);
    const TileMap map(spec);
    Cell start;
    for (const auto& sp : spec.spawns)
      if (sp.kind == EntityKind::Mugen) start = sp.cell;
    const auto reach = reachable_cells(spec, start);
    for (const auto& c : reach) EXPECT_TRUE(map.standable(c.x, c.y) || map.ladder(c.x, c.y)) << c.x << "," << c.y;
    for (const auto& sp : spec.spawns)
      if (sp.kind == EntityKind::Coin) EXPECT_TRUE(reach.count(sp.cell)) << "seed " << s;
  }
}

TEST(TileMap, OutsideIsSolid) {
  const TileMap map(mugen::testing::flat_level(10, 8));
  EXPECT_TRUE(map.solid(-1, 3));
  EXPECT_TRUE(map.solid(10, 3));
  EXPECT_TRUE(map.solid(4, -1));
  EXPECT_TRUE(map.solid(4, 8));
  EXPECT_FALSE(map.solid(4, 1));
  EXPECT_TRUE(map.standable(4, 1));
  EXPECT_TRUE(map.ground(4, 0));
}
