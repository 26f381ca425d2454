#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace mugen {

// 8-bit PNG encoding. `channels` is 3 (RGB) or 1 (grayscale); rows are top
// first and tightly packed.
std::vector<std::uint8_t> encode_png(const std::uint8_t* pixels, int width, int height, int channels);
void write_png(const std::filesystem::path& path, const std::uint8_t* pixels, int width, int height, int channels);

struct DecodedPng {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

DecodedPng decode_png(const std::vector<std::uint8_t>& bytes);

}  // namespace mugen
