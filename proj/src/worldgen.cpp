#include "mugen/worldgen.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "mugen/error.hpp"
#include "mugen/rng.hpp"

namespace mugen {

// ---------------------------------------------------------------------------
// GenConfig

void GenConfig::validate() const {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
  };
  check(width >= 20 && width <= 64, "width must lie in [20, 64]");
  check(height >= 10 && height <= 16, "height must lie in [10, 16]");
  check(monster_count >= 0 && monster_count <= 6, "monster count must lie in [0, 6]");
  check(coin_count >= 1 && coin_count <= 8, "coin count must lie in [1, 8]");
  check(gem_count >= 0 && gem_count <= 2, "gem count must lie in [0, 2]");
}

GenConfig GenConfig::from_config(const KvConfig& cfg) {
  GenConfig out;
  auto read = [&](std::string_view key, int& field) {
    if (auto v = cfg.get_int(key)) field = static_cast<int>(*v);
  };
  read("worldgen.width", out.width);
  read("worldgen.height", out.height);
  read("worldgen.monsters", out.monster_count);
  read("worldgen.coins", out.coin_count);
  read("worldgen.gems", out.gem_count);
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// TileMap

TileMap::TileMap(const LevelSpec& spec)
    : width_(spec.width), height_(spec.height),
      tiles_(static_cast<std::size_t>(std::max(0, spec.width * spec.height)), Empty) {
  auto inside = [&](const Cell& c) { return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_; };
  for (const auto& c : spec.platform_cells)
    if (inside(c)) tiles_[static_cast<std::size_t>(c.y * width_ + c.x)] = Solid;
  for (const auto& c : spec.ladder_cells)
    if (inside(c)) tiles_[static_cast<std::size_t>(c.y * width_ + c.x)] = Ladder;
}

bool TileMap::solid(int x, int y) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return true;
  return at(x, y) == Solid;
}

bool TileMap::ladder(int x, int y) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return false;
  return at(x, y) == Ladder;
}

bool TileMap::standable(int x, int y) const {
  if (x < 0 || x >= width_ || y < 1 || y >= height_) return false;
  return !solid(x, y) && (solid(x, y - 1) || ladder_top(x, y - 1));
}

bool TileMap::ground(int x, int y) const {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return false;
  for (int r = y; r >= 0; --r)
    if (at(x, r) != Solid) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reachability

namespace {

struct Node {
  int x;
  int y;
  bool climbing;
  auto operator<=>(const Node&) const = default;
};

bool column_clear(const TileMap& map, int x, int lo, int hi) {
  for (int y = lo; y <= hi; ++y)
    if (map.solid(x, y)) return false;
  return true;
}

template <typename Visit>
void for_each_move(const TileMap& map, const Node& n, Visit&& visit) {
  if (n.climbing) {
    if (map.ladder(n.x, n.y + 1)) visit(Node{n.x, n.y + 1, true});
    if (map.ladder(n.x, n.y - 1)) visit(Node{n.x, n.y - 1, true});
    if (map.ladder_top(n.x, n.y) && map.standable(n.x, n.y + 1)) visit(Node{n.x, n.y + 1, false});
    if (map.standable(n.x, n.y)) visit(Node{n.x, n.y, false});
    return;
  }

  const int x = n.x;
  const int y = n.y;
  for (int dir : {-1, 1}) {
    const int nx = x + dir;
    if (map.standable(nx, y)) {
      visit(Node{nx, y, false});
    } else if (!map.solid(nx, y)) {
      for (int fy = y - 1; fy >= 1 && !map.solid(nx, fy); --fy) {
        if (map.standable(nx, fy)) {
          visit(Node{nx, fy, false});
          break;
        }
      }
    }
  }

  // Jumps: the arc needs rows up to y + 3 free in every column it spans.
  if (column_clear(map, x, y, y + 3)) {
    for (int dx = -3; dx <= 3; ++dx) {
      if (dx == 0) continue;
      for (int dy = -2; dy <= 2; ++dy) {
        const int tx = x + dx;
        const int ty = y + dy;
        if (!map.standable(tx, ty)) continue;
        const int lo = std::min(y, ty);
        const int step = dx > 0 ? 1 : -1;
        bool clear = true;
        for (int cx = x + step; clear; cx += step) {
          clear = column_clear(map, cx, cx == tx ? ty : lo, y + 3);
          if (cx == tx) break;
        }
        if (clear) visit(Node{tx, ty, false});
      }
    }
  }

  if (map.ladder(x, y)) visit(Node{x, y, true});
  if (map.ladder_top(x, y - 1)) visit(Node{x, y - 1, true});
}

std::set<Node> explore(const TileMap& map, Cell start) {
  std::set<Node> seen;
  std::deque<Node> queue;
  const Node origin{start.x, start.y, false};
  seen.insert(origin);
  queue.push_back(origin);
  while (!queue.empty()) {
    const Node n = queue.front();
    queue.pop_front();
    for_each_move(map, n, [&](const Node& m) {
      if (seen.insert(m).second) queue.push_back(m);
    });
  }
  return seen;
}

}  // namespace

std::set<Cell> reachable_cells(const LevelSpec& spec, Cell start) {
  const TileMap map(spec);
  std::set<Cell> out;
  for (const auto& n : explore(map, start))
    if (!n.climbing) out.insert(Cell{n.x, n.y});
  return out;
}

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

ValidationReport validate_level(const LevelSpec& spec) {
  ValidationReport report;
  auto fail = [&](std::string rule, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(detail)});
  };
  auto where = [](const EntitySpawn& s) {
    return std::string(to_string(s.kind)) + " at (" + std::to_string(s.cell.x) + "," + std::to_string(s.cell.y) + ")";
  };

  if (spec.width <= 0 || spec.height <= 0) {
    fail("empty grid", "grid has no cells");
    return report;
  }

  const TileMap map(spec);
  int mugen_count = 0;
  std::set<Cell> occupied;
  const EntitySpawn* mugen = nullptr;
  for (const auto& s : spec.spawns) {
    if (s.kind == EntityKind::Mugen) {
      ++mugen_count;
      mugen = &s;
    }
    if (s.kind == EntityKind::Coin) ++report.coins_total;
    if (s.cell.x < 0 || s.cell.x >= spec.width || s.cell.y < 0 || s.cell.y >= spec.height) {
      fail("spawn out of bounds", where(s));
      continue;
    }
    if (!occupied.insert(s.cell).second) fail("overlapping spawns", where(s));
    if (map.solid(s.cell.x, s.cell.y)) fail("spawn inside platform", where(s));
    if (traits(s.kind).ability != Ability::Flyer && !spec.platform_cells.contains(Cell{s.cell.x, s.cell.y - 1}))
      fail("unsupported spawn", where(s));
  }
  if (mugen_count != 1) fail("mugen count", std::to_string(mugen_count) + " Mugen spawns");
  if (report.coins_total == 0) fail("no coin", "level has no coin");

  if (mugen_count == 1) {
    const auto reach = reachable_cells(spec, mugen->cell);
    for (const auto& s : spec.spawns) {
      if (s.kind != EntityKind::Coin) continue;
      if (reach.contains(s.cell))
        ++report.coins_reachable;
      else
        fail("unreachable coin", where(s));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Generation

namespace {

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.bounded(static_cast<std::uint32_t>(i))]);
}

LevelSpec build_attempt(std::uint64_t seed, Theme theme, const GenConfig& config, int attempt) {
  SplitMix64 rng(mix64(seed ^ (static_cast<std::uint64_t>(theme) << 56)) + static_cast<std::uint64_t>(attempt) * 0x632BE59BD9B4E019ULL);
  const int W = config.width;
  const int H = config.height;
  const int max_h = H - 6;

  LevelSpec spec;
  spec.seed = seed;
  spec.theme = theme;
  spec.width = W;
  spec.height = H;

  // Terrain as runs of constant height.
  std::vector<int> h(static_cast<std::size_t>(W), 1);
  int cur = rng.range(1, 2);
  int x = 0;
  int run = 4;
  while (x < W) {
    for (int i = 0; i < run && x < W; ++i, ++x) h[static_cast<std::size_t>(x)] = cur;
    run = rng.range(3, 7);
    int delta = 0;
    if (rng.uniform() < 0.15) {
      delta = rng.range(3, 4) * (rng.uniform() < 0.5 ? -1 : 1);
    } else {
      static constexpr int kSteps[] = {-2, -1, 0, 0, 1, 2};
      delta = kSteps[rng.bounded(6)];
    }
    cur = std::clamp(cur + delta, 1, max_h);
  }
  auto height_at = [&](int c) { return h[static_cast<std::size_t>(c)]; };

  for (int c = 0; c < W; ++c)
    for (int r = 0; r < height_at(c); ++r) spec.platform_cells.insert(Cell{c, r});

  // A ladder on the low side of every rise a jump cannot clear.
  std::set<int> ladder_columns;
  for (int c = 0; c + 1 < W; ++c) {
    const int a = height_at(c);
    const int b = height_at(c + 1);
    if (std::abs(a - b) < 3) continue;
    const int col = a < b ? c : c + 1;
    for (int r = std::min(a, b); r < std::max(a, b); ++r) spec.ladder_cells.insert(Cell{col, r});
    ladder_columns.insert(col);
  }

  // Floating ledges, two rows above flat terrain.
  std::vector<std::pair<int, int>> ledges;  // (first column, length)
  std::set<Cell> ledge_tops;
  const int ledge_tries = W / 14 + static_cast<int>(rng.bounded(2));
  for (int t = 0; t < ledge_tries; ++t) {
    const int len = rng.range(2, 3);
    const int start = rng.range(4, W - len - 2);
    const int base = height_at(start);
    if (base + 2 > H - 4) continue;
    bool ok = true;
    for (int c = start - 1; c <= start + len && ok; ++c)
      ok = height_at(c) == base && !ladder_columns.contains(c);
    for (const auto& [ls, ll] : ledges)
      ok = ok && (start + len + 1 < ls || ls + ll + 1 < start);
    if (!ok) continue;
    ledges.emplace_back(start, len);
    for (int c = start; c < start + len; ++c) {
      spec.platform_cells.insert(Cell{c, base + 1});
      ledge_tops.insert(Cell{c, base + 2});
    }
  }

  std::set<Cell> used;
  spec.spawns.push_back({EntityKind::Mugen, Cell{1, height_at(1)}, Facing::Right});
  used.insert(Cell{1, height_at(1)});

  std::vector<Cell> ground_spots;
  std::vector<Cell> spots;
  for (int c = 3; c < W; ++c) {
    if (ladder_columns.contains(c)) continue;
    ground_spots.push_back(Cell{c, height_at(c)});
  }
  spots = ground_spots;
  spots.insert(spots.end(), ledge_tops.begin(), ledge_tops.end());
  shuffle(spots, rng);
  shuffle(ground_spots, rng);

  auto take = [&](const std::vector<Cell>& pool, int min_x) -> std::optional<Cell> {
    for (const auto& c : pool) {
      if (c.x < min_x || used.contains(c)) continue;
      used.insert(c);
      return c;
    }
    return std::nullopt;
  };
  auto random_facing = [&] { return rng.uniform() < 0.5 ? Facing::Left : Facing::Right; };

  for (int i = 0; i < config.coin_count; ++i) {
    auto c = take(spots, 3);
    if (!c) return {};
    spec.spawns.push_back({EntityKind::Coin, *c, random_facing()});
  }
  for (int i = 0; i < config.gem_count; ++i) {
    auto c = take(spots, 3);
    if (!c) return {};
    spec.spawns.push_back({EntityKind::Gem, *c, random_facing()});
  }
  const TileMap terrain(spec);
  for (int i = 0; i < config.monster_count; ++i) {
    const EntityKind kind = kMonsterKinds[rng.bounded(static_cast<std::uint32_t>(kMonsterKinds.size()))];
    std::optional<Cell> c;
    if (traits(kind).ability == Ability::Flyer) {
      std::vector<Cell> air;
      for (int col = 5; col < W; ++col) {
        const int y = height_at(col) + 2;
        if (y + 1 < H && column_clear(terrain, col, y - 2, y + 1) && !ladder_columns.contains(col))
          air.push_back(Cell{col, y});
      }
      shuffle(air, rng);
      c = take(air, 5);
    } else {
      c = take(ground_spots, 5);
    }
    if (!c) return {};
    spec.spawns.push_back({kind, *c, random_facing()});
  }
  return spec;
}

}  // namespace

namespace detail {

LevelSpec generate_level_checked(std::uint64_t seed, Theme theme, const GenConfig& config,
                                 const std::function<bool(const LevelSpec&)>& accept) {
  config.validate();
  for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
    LevelSpec spec = build_attempt(seed, theme, config, attempt);
    if (spec.width == 0) continue;
    if (!validate_level(spec).ok()) continue;
    if (accept && !accept(spec)) continue;
    return spec;
  }
  throw Error(ErrorCode::GenerationFailed,
              "no valid level for seed " + std::to_string(seed) + " within " + std::to_string(kGenerationAttempts) +
                  " attempts");
}

}  // namespace detail

LevelSpec generate_level(std::uint64_t seed, Theme theme, const GenConfig& config) {
  return detail::generate_level_checked(seed, theme, config, {});
}

}  // namespace mugen
