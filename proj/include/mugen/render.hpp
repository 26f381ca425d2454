#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mugen/metadata.hpp"

namespace mugen {

inline constexpr int kMinResolution = 64;
inline constexpr int kMaxResolution = 1400;

// Semantic class ids.
inline constexpr std::uint8_t kClassBackground = 0;
inline constexpr std::uint8_t kClassPlatform = 1;
inline constexpr std::uint8_t kClassLadder = 2;
inline constexpr std::uint8_t class_of(EntityKind k) { return static_cast<std::uint8_t>(3 + static_cast<int>(k)); }
inline constexpr int kClassCount = 3 + kEntityKindCount;
std::string class_name(std::uint8_t id);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// Colours for every sprite and tile set. Defaults are built in; a
// `sprites.cfg` in the asset directory may override any of them with lines
// such as `Snail = 200,120,40` or `snow.platform = 230,240,255`.
struct Assets {
  std::array<Rgb, kEntityKindCount> sprite;
  std::array<Rgb, 2> platform;   // per theme
  std::array<Rgb, 2> ladder;
  Rgb shield{90, 220, 255};

  static Assets defaults();
  static Assets load(const std::filesystem::path& dir);
  // MUGENFORGE_ASSETS when set, otherwise the defaults.
  static Assets from_env();
};

struct RenderConfig {
  int resolution = 256;
  Assets assets = Assets::defaults();

  void validate() const;   // throws BadResolution
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;   // row-major, 3 bytes per pixel, top row first

  Rgb at(int x, int y) const {
    const auto i = static_cast<std::size_t>(3 * (y * width + x));
    return {rgb[i], rgb[i + 1], rgb[i + 2]};
  }
  bool operator==(const Image&) const = default;
};

struct SemanticFrame {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> classes;   // row-major, top row first
  std::vector<std::string> palette;    // class id -> name

  std::uint8_t at(int x, int y) const { return classes[static_cast<std::size_t>(y * width + x)]; }
};

// Everything one rasterization pass produces. `touched` marks pixels written
// by any sprite or tile; it is the complement of the Background class.
struct RenderOutput {
  Image rgb;
  SemanticFrame semantic;
  std::vector<std::uint8_t> touched;
};

// Left edge of the camera window in world pixels. Only Mugen's x moves it.
int camera_left_px(double mugen_x, int resolution);

RenderOutput render_frame(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg);
Image render_rgb(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg);
SemanticFrame render_semantic(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg);
// The same frame with no tiles or sprites drawn.
Image render_background(const EpisodeMetadata& ep, int frame_idx, const RenderConfig& cfg);

// {"0":"Background","1":"Platform",...}
std::string palette_json();

}  // namespace mugen
