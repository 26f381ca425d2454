#include "mugen/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mugen/canonical_json.hpp"
#include "mugen/error.hpp"
#include "mugen/kv_config.hpp"
#include "mugen/rng.hpp"

namespace mugen {

namespace {

Rgb mix(Rgb a, Rgb b, double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto ch = [t](std::uint8_t x, std::uint8_t y) {
    return static_cast<std::uint8_t>(std::lround(x + (y - x) * t));
  };
  return {ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

Rgb shade(Rgb c, double f) {
  auto ch = [f](std::uint8_t x) { return static_cast<std::uint8_t>(std::clamp(std::lround(x * f), 0L, 255L)); };
  return {ch(c.r), ch(c.g), ch(c.b)};
}

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kBlack{20, 20, 24};

double hash01(std::int64_t x, std::int64_t y, std::uint64_t salt) {
  const std::uint64_t h =
      mix64(static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4FULL ^ salt);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double value_noise(double x, double y, std::uint64_t salt) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  double tx = x - fx;
  double ty = y - fy;
  tx = tx * tx * (3 - 2 * tx);
  ty = ty * ty * (3 - 2 * ty);
  const double a = hash01(ix, iy, salt);
  const double b = hash01(ix + 1, iy, salt);
  const double c = hash01(ix, iy + 1, salt);
  const double d = hash01(ix + 1, iy + 1, salt);
  return (a + (b - a) * tx) + ((c + (d - c) * tx) - (a + (b - a) * tx)) * ty;
}

double fbm(double x, double y, std::uint64_t salt) {
  return 0.6 * value_noise(x, y, salt) + 0.3 * value_noise(2 * x, 2 * y, salt + 1) +
         0.1 * value_noise(4 * x, 4 * y, salt + 2);
}

// Point sprites scattered on a lattice of `spacing` cells.
double sparkle(double wx, double wy, double spacing, double density, double radius, std::uint64_t salt) {
  const double gx = wx / spacing;
  const double gy = wy / spacing;
  const auto ix = static_cast<std::int64_t>(std::floor(gx));
  const auto iy = static_cast<std::int64_t>(std::floor(gy));
  if (hash01(ix, iy, salt) >= density) return 0.0;
  const double cx = ix + 0.2 + 0.6 * hash01(ix, iy, salt + 7);
  const double cy = iy + 0.2 + 0.6 * hash01(ix, iy, salt + 9);
  const double d = std::hypot(gx - cx, gy - cy) * spacing;
  return d < radius ? 1.0 - d / radius * 0.5 : 0.0;
}

Rgb background(Theme theme, double wx, double wy) {
  const double h = std::clamp(wy / kCameraCells, 0.0, 1.0);
  if (theme == Theme::Snow) {
    Rgb c = mix(Rgb{222, 236, 250}, Rgb{120, 170, 225}, h);
    const double cloud = fbm(wx / 4.0, wy / 2.5, 11);
    if (cloud > 0.55) c = mix(c, Rgb{248, 250, 255}, (cloud - 0.55) * 3.0);
    const double flake = sparkle(wx, wy, 0.55, 0.22, 0.07, 23);
    if (flake > 0) c = mix(c, kWhite, flake);
    return c;
  }
  Rgb c = mix(Rgb{24, 18, 52}, Rgb{6, 6, 20}, h);
  const double neb = fbm(wx / 5.0, wy / 3.5, 31);
  if (neb > 0.5) c = mix(c, Rgb{110, 50, 150}, (neb - 0.5) * 1.6);
  const double neb2 = fbm(wx / 3.0 + 40, wy / 3.0, 37);
  if (neb2 > 0.6) c = mix(c, Rgb{40, 90, 170}, (neb2 - 0.6) * 1.5);
  const double star = sparkle(wx, wy, 0.45, 0.16, 0.05, 41);
  if (star > 0) c = mix(c, Rgb{255, 250, 215}, star);
  return c;
}

Rgb platform_texel(Theme theme, Rgb base, int cx, int cy, double u, double v, bool top_exposed) {
  const double grain = value_noise((cx + u) * 6.0, (cy + v) * 6.0, 53);
  if (theme == Theme::Snow) {
    if (top_exposed && v > 0.78 - 0.08 * value_noise((cx + u) * 3.0, 0.5, 59)) return shade(kWhite, 0.94 + 0.06 * grain);
    const bool mortar = std::fmod(v, 0.5) < 0.06 || std::fmod(u + (std::fmod(v, 1.0) < 0.5 ? 0.0 : 0.5), 1.0) < 0.05;
    return mortar ? shade(base, 0.7) : shade(base, 0.85 + 0.2 * grain);
  }
  const bool rivet = (std::hypot(u - 0.15, v - 0.15) < 0.06) || (std::hypot(u - 0.85, v - 0.15) < 0.06) ||
                     (std::hypot(u - 0.15, v - 0.85) < 0.06) || (std::hypot(u - 0.85, v - 0.85) < 0.06);
  if (rivet) return shade(base, 1.35);
  if (u < 0.04 || v < 0.04) return shade(base, 0.55);
  if (top_exposed && v > 0.9) return shade(base, 1.25);
  return shade(base, 0.8 + 0.25 * grain);
}

bool ladder_texel(Rgb base, double u, double v, Rgb& out) {
  const bool rail = (u > 0.12 && u < 0.24) || (u > 0.76 && u < 0.88);
  const bool rung = u >= 0.24 && u <= 0.76 && std::fmod(v, 1.0 / 3.0) < 0.08;
  if (!rail && !rung) return false;
  out = rail ? base : shade(base, 0.85);
  return true;
}

bool in_ellipse(double u, double v, double cu, double cv, double ru, double rv) {
  const double a = (u - cu) / ru;
  const double b = (v - cv) / rv;
  return a * a + b * b <= 1.0;
}

bool in_rect(double u, double v, double u0, double u1, double v0, double v1) {
  return u >= u0 && u < u1 && v >= v0 && v < v1;
}

// Per-kind silhouettes over the unit box, u left to right (already mirrored
// for left-facing sprites), v bottom to top.
bool mugen_texel(PoseId pose, int frame, double u, double v, Rgb base, Rgb& out) {
  if (pose == PoseId::Die) v = 1.0 - v;
  const bool airborne = is_jump_pose(pose) || pose == PoseId::Fall || pose == PoseId::KillStomp;
  const bool climbing = pose == PoseId::ClimbUp || pose == PoseId::ClimbDown || pose == PoseId::ClimbIdle;
  const bool arms_up = airborne || climbing || pose == PoseId::Collect || pose == PoseId::PowerUp;
  const double squash = pose == PoseId::BumpHead || pose == PoseId::Land ? 0.9 : 1.0;
  v /= squash;

  if (in_ellipse(u, v, 0.5, 0.78, 0.3, 0.2)) {
    if (!climbing && in_ellipse(u, v, 0.7, 0.8, 0.07, 0.05)) out = kBlack;
    else if (!climbing && v < 0.7 && u > 0.55 && u < 0.8) out = shade(base, 0.75);
    else out = mix(base, kWhite, 0.35);
    return true;
  }
  if (in_rect(u, v, 0.22, 0.78, 0.28, 0.62)) {
    out = shade(base, 0.95 + 0.1 * (v - 0.28));
    return true;
  }
  if (arms_up) {
    if (in_rect(u, v, 0.04, 0.2, 0.48, 0.8) || in_rect(u, v, 0.8, 0.96, 0.48, 0.8)) {
      out = shade(base, 0.8);
      return true;
    }
  } else if (in_rect(u, v, 0.08, 0.22, 0.32, 0.58) || in_rect(u, v, 0.78, 0.92, 0.32, 0.58)) {
    out = shade(base, 0.8);
    return true;
  }
  double stride = 0.0;
  if (pose == PoseId::WalkLeft || pose == PoseId::WalkRight) stride = (frame / 4) % 2 == 0 ? 0.08 : -0.08;
  if (airborne) stride = 0.1;
  const double leg_top = 0.28;
  const double leg_bottom = airborne ? 0.08 : 0.0;
  if (in_rect(u, v, 0.24 - stride, 0.44 - stride, leg_bottom, leg_top) ||
      in_rect(u, v, 0.56 + stride, 0.76 + stride, leg_bottom, leg_top)) {
    out = shade(base, 0.55);
    return true;
  }
  return false;
}

bool monster_texel(EntityKind kind, int frame, double u, double v, Rgb base, Rgb& out) {
  switch (kind) {
    case EntityKind::Coin:
      if (!in_ellipse(u, v, 0.5, 0.5, 0.42, 0.5)) return false;
      out = in_ellipse(u, v, 0.5, 0.5, 0.28, 0.36) ? mix(base, kWhite, 0.25) : shade(base, 0.8);
      if (in_rect(u, v, 0.46, 0.54, 0.3, 0.7)) out = shade(base, 0.65);
      return true;
    case EntityKind::Gem:
      if (std::abs(u - 0.5) / 0.5 + std::abs(v - 0.5) / 0.5 > 1.0) return false;
      out = (u < 0.5) == (v > 0.5) ? mix(base, kWhite, 0.3) : base;
      return true;
    case EntityKind::Snail:
      if (in_ellipse(u, v, 0.55, 0.55, 0.38, 0.45)) {
        const double r = std::hypot((u - 0.55) / 0.38, (v - 0.55) / 0.45);
        out = std::fmod(r * 3.0 + std::atan2(v - 0.55, u - 0.55) / 6.2832, 1.0) < 0.2 ? shade(base, 0.6) : base;
        return true;
      }
      if (in_rect(u, v, 0.0, 1.0, 0.0, 0.22) || in_ellipse(u, v, 0.9, 0.32, 0.1, 0.22)) {
        out = Rgb{200, 190, 150};
        return true;
      }
      return false;
    case EntityKind::Worm: {
      const double center = 0.5 + 0.25 * std::sin(u * 9.0 + frame * 0.3);
      if (std::abs(v - center) > 0.24) return false;
      out = std::fmod(u * 6.0, 1.0) < 0.15 ? shade(base, 0.75) : base;
      if (u > 0.85 && std::abs(v - center) < 0.08) out = kBlack;
      return true;
    }
    case EntityKind::Face:
      if (!in_ellipse(u, v, 0.5, 0.5, 0.5, 0.5)) return false;
      out = base;
      if (in_ellipse(u, v, 0.65, 0.62, 0.08, 0.1) || in_ellipse(u, v, 0.35, 0.62, 0.08, 0.1)) out = kBlack;
      if (in_rect(u, v, 0.3, 0.7, 0.25, 0.32)) out = shade(base, 0.5);
      return true;
    case EntityKind::Ladybug:
      if (v < 0.1) return in_rect(u, v, 0.15, 0.85, 0.0, 0.1) ? (out = kBlack, true) : false;
      if (in_ellipse(u, v, 0.9, 0.35, 0.14, 0.22)) {
        out = kBlack;
        return true;
      }
      if (!in_ellipse(u, v, 0.45, 0.1, 0.45, 0.9)) return false;
      out = base;
      if (std::abs(u - 0.45) < 0.03 || in_ellipse(u, v, 0.3, 0.5, 0.07, 0.1) ||
          in_ellipse(u, v, 0.6, 0.35, 0.07, 0.1) || in_ellipse(u, v, 0.25, 0.25, 0.06, 0.09))
        out = kBlack;
      return true;
    case EntityKind::Frog:
      if (in_ellipse(u, v, 0.65, 0.82, 0.12, 0.16) || in_ellipse(u, v, 0.35, 0.82, 0.12, 0.16)) {
        out = in_ellipse(u, v, 0.68, 0.84, 0.05, 0.07) || in_ellipse(u, v, 0.38, 0.84, 0.05, 0.07) ? kBlack : kWhite;
        return true;
      }
      if (in_ellipse(u, v, 0.5, 0.38, 0.5, 0.38)) {
        out = v < 0.2 ? mix(base, Rgb{230, 230, 150}, 0.6) : base;
        return true;
      }
      return false;
    case EntityKind::Barnacle: {
      const double half = 0.5 * (1.0 - v);
      if (std::abs(u - 0.5) > half + 0.05 * std::sin(v * 25.0)) return false;
      out = std::fmod(v * 5.0, 1.0) < 0.25 ? shade(base, 0.7) : base;
      if (v > 0.8 && std::abs(u - 0.5) < 0.06) out = Rgb{200, 40, 60};
      return true;
    }
    case EntityKind::Bee: {
      const bool flap = (frame / 3) % 2 == 0;
      if (in_ellipse(u, v, 0.45, flap ? 0.82 : 0.72, 0.18, 0.18)) {
        out = mix(kWhite, Rgb{180, 220, 255}, 0.4);
        return true;
      }
      if (!in_ellipse(u, v, 0.5, 0.4, 0.5, 0.38)) return false;
      out = std::fmod(u * 4.0, 1.0) < 0.45 ? kBlack : base;
      if (in_ellipse(u, v, 0.85, 0.48, 0.06, 0.08)) out = kWhite;
      return true;
    }
    case EntityKind::Mouse:
      if (in_ellipse(u, v, 0.7, 0.82, 0.12, 0.18)) {
        out = Rgb{240, 170, 180};
        return true;
      }
      if (in_ellipse(u, v, 0.55, 0.38, 0.45, 0.38)) {
        out = in_ellipse(u, v, 0.86, 0.5, 0.05, 0.07) ? kBlack : base;
        return true;
      }
      if (v < 0.25 && v > 0.15 && u < 0.12) {
        out = shade(base, 0.7);
        return true;
      }
      return false;
    case EntityKind::Slime: {
      const double top = 0.55 + 0.35 * std::sin(u * 3.14159) + 0.04 * std::sin(frame * 0.2 + u * 10);
      if (v > top || u < 0.02 || u > 0.98) return false;
      out = in_ellipse(u, v, 0.65, 0.45, 0.1, 0.12) ? kWhite : mix(base, kWhite, v * 0.3);
      if (in_ellipse(u, v, 0.67, 0.45, 0.04, 0.05)) out = kBlack;
      return true;
    }
    case EntityKind::Ghost: {
      const bool body = in_ellipse(u, v, 0.5, 0.55, 0.5, 0.45) ||
                        (in_rect(u, v, 0.0, 1.0, 0.0, 0.55) && v > 0.08 * (1 + std::sin(u * 18.85 + frame * 0.2)));
      if (!body) return false;
      out = base;
      if (in_ellipse(u, v, 0.62, 0.62, 0.07, 0.11) || in_ellipse(u, v, 0.38, 0.62, 0.07, 0.11)) out = kBlack;
      return true;
    }
    case EntityKind::Mugen: return false;
  }
  return false;
}

struct Raster {
  int res;
  double scale;   // pixels per cell
  int cam;        // world pixel of the left image column
  Theme theme;
  const Assets* assets;
  bool draw;      // false: background only
  RenderOutput out;

  double wx(int px) const { return (px + cam + 0.5) / scale; }
  double wy(int py) const { return (res - py - 0.5) / scale; }

  void put(int px, int py, Rgb c, std::uint8_t cls) {
    const auto i = static_cast<std::size_t>(py * res + px);
    out.rgb.rgb[3 * i] = c.r;
    out.rgb.rgb[3 * i + 1] = c.g;
    out.rgb.rgb[3 * i + 2] = c.b;
    out.semantic.classes[i] = cls;
    out.touched[i] = 1;
  }

  // Visits every pixel whose centre lies in the box, with unit coordinates.
  template <class F>
  void box(const Aabb& b, F&& f) {
    const int px0 = std::max(0, static_cast<int>(std::ceil(b.left * scale - cam - 0.5)));
    const int px1 = std::min(res - 1, static_cast<int>(std::ceil(b.right * scale - cam - 0.5)) - 1);
    const int py0 = std::max(0, static_cast<int>(std::floor(res - 0.5 - b.top * scale)) + 1);
    const int py1 = std::min(res - 1, static_cast<int>(std::floor(res - 0.5 - b.bottom * scale)));
    const double w = b.right - b.left;
    const double h = b.top - b.bottom;
    for (int py = py0; py <= py1; ++py) {
      const double v = (wy(py) - b.bottom) / h;
      if (v < 0.0 || v >= 1.0) continue;
      for (int px = px0; px <= px1; ++px) {
        const double u = (wx(px) - b.left) / w;
        if (u < 0.0 || u >= 1.0) continue;
        f(px, py, u, v);
      }
    }
  }
};

}  // namespace

std::string class_name(std::uint8_t id) {
  if (id == kClassBackground) return "Background";
  if (id == kClassPlatform) return "Platform";
  if (id == kClassLadder) return "Ladder";
  if (id < kClassCount) return std::string(to_string(static_cast<EntityKind>(id - 3)));
  return "Unknown";
}

std::string palette_json() {
  nlohmann::json j = nlohmann::json::object();
  for (int id = 0; id < kClassCount; ++id) j[std::to_string(id)] = class_name(static_cast<std::uint8_t>(id));
  return canonical_dump(j);
}

Assets Assets::defaults() {
  Assets a;
  a.sprite = {{
      {235, 95, 55},    // Mugen
      {250, 205, 40},   // Coin
      {205, 60, 225},   // Gem
      {170, 110, 60},   // Snail
      {235, 140, 175},  // Worm
      {125, 205, 80},   // Face
      {215, 35, 35},    // Ladybug
      {55, 165, 60},    // Frog
      {125, 120, 145},  // Barnacle
      {255, 170, 10},   // Bee
      {150, 150, 155},  // Mouse
      {70, 205, 130},   // Slime
      {232, 232, 250},  // Ghost
  }};
  a.platform = {Rgb{150, 175, 200}, Rgb{110, 115, 135}};
  a.ladder = {Rgb{140, 90, 45}, Rgb{150, 200, 210}};
  return a;
}

Assets Assets::load(const std::filesystem::path& dir) {
  Assets a = defaults();
  const auto file = dir / "sprites.cfg";
  if (!std::filesystem::exists(file)) return a;
  const auto cfg = KvConfig::load(file);
  auto parse_rgb = [](const std::string& key, const std::string& s) {
    std::istringstream in(s);
    int r, g, b;
    char c1, c2;
    if (!(in >> r >> c1 >> g >> c2 >> b) || c1 != ',' || c2 != ',' || r < 0 || r > 255 || g < 0 || g > 255 ||
        b < 0 || b > 255)
      throw Error(ErrorCode::InvalidConfig, key + ": expected r,g,b");
    return Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
  };
  for (const auto& [key, value] : cfg.values()) {
    const Rgb c = parse_rgb(key, value);
    if (auto k = parse_entity_kind(key)) a.sprite[static_cast<std::size_t>(*k)] = c;
    else if (key == "snow.platform") a.platform[0] = c;
    else if (key == "space.platform") a.platform[1] = c;
    else if (key == "snow.ladder") a.ladder[0] = c;
    else if (key == "space.ladder") a.ladder[1] = c;
    else if (key == "shield") a.shield = c;
    else throw Error(ErrorCode::InvalidConfig, "unknown sprite key: " + key);
  }
  return a;
}

Assets Assets::from_env() {
  if (const char* dir = std::getenv("MUGENFORGE_ASSETS"); dir && *dir) return load(dir);
  return defaults();
}

void RenderConfig::validate() const {
  if (resolution < kMinResolution || resolution > kMaxResolution)
    throw Error(ErrorCode::BadResolution,
                "resolution " + std::to_string(resolution) + " outside [64, 1400]");
}

int camera_left_px(double mugen_x, int resolution) {
  const double scale = static_cast<double>(resolution) / kCameraCells;
  return static_cast<int>(std::floor(mugen_x * scale + 0.5)) - resolution / 2;
}

namespace {

RenderOutput rasterize(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg, bool draw) {
  cfg.validate();
  if (frame_idx < 0 || frame_idx >= ep.frame_count())
    throw Error(ErrorCode::FrameOutOfRange, "frame " + std::to_string(frame_idx) + " of " +
                                                std::to_string(ep.frame_count()));
  const FrameRecord& f = ep.frames[static_cast<std::size_t>(frame_idx)];
  const int res = cfg.resolution;
  Raster r{res, static_cast<double>(res) / kCameraCells, camera_left_px(f.mugen.position.x, res), ep.level.theme,
           &cfg.assets, draw, {}};
  const auto n = static_cast<std::size_t>(res) * static_cast<std::size_t>(res);
  r.out.rgb = Image{res, res, std::vector<std::uint8_t>(3 * n)};
  r.out.semantic.width = r.out.semantic.height = res;
  r.out.semantic.classes.assign(n, kClassBackground);
  for (int id = 0; id < kClassCount; ++id) r.out.semantic.palette.push_back(class_name(static_cast<std::uint8_t>(id)));
  r.out.touched.assign(n, 0);

  for (int py = 0; py < res; ++py) {
    const double wy = r.wy(py);
    for (int px = 0; px < res; ++px) {
      const Rgb c = background(r.theme, r.wx(px), wy);
      const auto i = static_cast<std::size_t>(py * res + px);
      r.out.rgb.rgb[3 * i] = c.r;
      r.out.rgb.rgb[3 * i + 1] = c.g;
      r.out.rgb.rgb[3 * i + 2] = c.b;
    }
  }
  if (!draw) return std::move(r.out);

  const auto theme_i = static_cast<std::size_t>(r.theme);
  const Assets& as = cfg.assets;
  const int col0 = static_cast<int>(std::floor(r.cam / r.scale)) - 1;
  const int col1 = static_cast<int>(std::floor((r.cam + res) / r.scale)) + 1;
  for (const Cell& c : ep.level.platform_cells) {
    if (c.x < col0 || c.x > col1) continue;
    const bool top = !ep.level.platform_cells.count({c.x, c.y + 1});
    r.box(Aabb{double(c.x), c.x + 1.0, double(c.y), c.y + 1.0}, [&](int px, int py, double u, double v) {
      r.put(px, py, platform_texel(r.theme, as.platform[theme_i], c.x, c.y, u, v, top), kClassPlatform);
    });
  }
  for (const Cell& c : ep.level.ladder_cells) {
    if (c.x < col0 || c.x > col1) continue;
    r.box(Aabb{double(c.x), c.x + 1.0, double(c.y), c.y + 1.0}, [&](int px, int py, double u, double v) {
      Rgb out;
      if (ladder_texel(as.ladder[theme_i], u, v, out)) r.put(px, py, out, kClassLadder);
    });
  }

  std::size_t item = 0;
  for (const auto& sp : ep.level.spawns) {
    if (!is_item(sp.kind)) continue;
    if (f.item_flags[item++]) continue;
    const Rgb base = as.sprite[static_cast<std::size_t>(sp.kind)];
    r.box(item_box(sp.cell), [&](int px, int py, double u, double v) {
      Rgb out;
      if (monster_texel(sp.kind, frame_idx, u, v, base, out)) r.put(px, py, out, class_of(sp.kind));
    });
  }

  for (const auto& m : f.monsters) {
    if (!m.alive) continue;
    const Rgb base = as.sprite[static_cast<std::size_t>(m.kind)];
    const bool flip = m.facing == Facing::Left;
    r.box(character_box(m.kind, m.position), [&](int px, int py, double u, double v) {
      Rgb out;
      if (monster_texel(m.kind, frame_idx, flip ? 1.0 - u : u, v, base, out)) r.put(px, py, out, class_of(m.kind));
    });
  }

  const auto& mg = f.mugen;
  const Rgb base = as.sprite[static_cast<std::size_t>(EntityKind::Mugen)];
  const bool flip = mg.facing == Facing::Left;
  r.box(character_box(EntityKind::Mugen, mg.position), [&](int px, int py, double u, double v) {
    Rgb out;
    if (!mugen_texel(mg.pose, frame_idx, flip ? 1.0 - u : u, v, base, out)) return;
    // The shield is a tint over Mugen's own pixels and has no class.
    if (f.shield_active) out = mix(out, as.shield, 0.45);
    r.put(px, py, out, class_of(EntityKind::Mugen));
  });
  return std::move(r.out);
}

}  // namespace

RenderOutput render_frame(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg) {
  return rasterize(ep, frame_idx, cfg, true);
}

Image render_rgb(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg) {
  return rasterize(ep, frame_idx, cfg, true).rgb;
}

SemanticFrame render_semantic(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg) {
  return rasterize(ep, frame_idx, cfg, true).semantic;
}

Image render_background(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg) {
  return rasterize(ep, frame_idx, cfg, false).rgb;
}

}  // namespace mugen
