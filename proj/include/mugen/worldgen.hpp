#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "mugen/kv_config.hpp"
#include "mugen/types.hpp"

namespace mugen {

inline constexpr std::string_view kEngineVersion = "mugenforge/1";

struct EntitySpawn {
  EntityKind kind = EntityKind::Coin;
  Cell cell;
  Facing facing = Facing::Right;
  bool operator==(const EntitySpawn&) const = default;
};

// World space is measured in cells; y grows upwards and row 0 is the bottom
// row. A spawn at cell (x, y) stands on the platform cell (x, y - 1).
struct LevelSpec {
  std::uint64_t seed = 0;
  Theme theme = Theme::Snow;
  int width = 0;
  int height = 0;
  std::set<Cell> platform_cells;
  std::set<Cell> ladder_cells;
  std::vector<EntitySpawn> spawns;
  std::string engine_version{kEngineVersion};

  bool operator==(const LevelSpec&) const = default;
};

struct GenConfig {
  int width = 40;
  int height = 12;
  int monster_count = 3;
  int coin_count = 3;
  int gem_count = 1;

  // Throws InvalidConfig when a field lies outside its documented range.
  void validate() const;

  // Reads `worldgen.*` keys; missing keys keep their defaults.
  static GenConfig from_config(const KvConfig& cfg);
};

// Dense lookup over a level's static geometry. Everything outside
// [0, width) horizontally, below row 0 or at/above `height` is solid.
class TileMap {
 public:
  explicit TileMap(const LevelSpec& spec);

  int width() const { return width_; }
  int height() const { return height_; }

  bool solid(int x, int y) const;
  bool ladder(int x, int y) const;
  // Topmost cell of a ladder column; its upper edge is a one-way floor.
  bool ladder_top(int x, int y) const { return ladder(x, y) && !ladder(x, y + 1); }
  // A cell that can be stood in: free, with a platform or ladder top below.
  bool standable(int x, int y) const;
  // Solid cell whose column is solid all the way down to row 0.
  bool ground(int x, int y) const;

 private:
  enum Tile : std::uint8_t { Empty = 0, Solid = 1, Ladder = 2 };
  Tile at(int x, int y) const { return static_cast<Tile>(tiles_[static_cast<std::size_t>(y * width_ + x)]); }

  int width_;
  int height_;
  std::vector<std::uint8_t> tiles_;
};

struct Violation {
  std::string rule;    // "unsupported spawn", "unreachable coin", ...
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  int coins_total = 0;
  int coins_reachable = 0;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view rule) const;
};

LevelSpec generate_level(std::uint64_t seed, Theme theme, const GenConfig& config);

// Cell-graph reachability uses walk, fall, jump (up to 2 cells up and 3 cells
// across, with headroom) and ladder climbing moves. Every coin must be
// reachable from Mugen's spawn.
ValidationReport validate_level(const LevelSpec& spec);

// Standable cells reachable from `start` under the same move graph.
std::set<Cell> reachable_cells(const LevelSpec& spec, Cell start);

namespace detail {
// Generation with an injectable acceptance check, used to exercise the retry
// budget. `accept` is consulted after the built-in validation passes.
LevelSpec generate_level_checked(std::uint64_t seed, Theme theme, const GenConfig& config,
                                 const std::function<bool(const LevelSpec&)>& accept);
inline constexpr int kGenerationAttempts = 32;
}  // namespace detail

}  // namespace mugen
