#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "mugen/metadata.hpp"

namespace fs = std::filesystem;
using namespace mugen;

namespace {

struct Ran {
  int status;
  std::string out;
};

Ran run(const std::string& args) {
  const std::string cmd = std::string(MUGENFORGE_BIN) + " " + args + " 2>&1";
  Ran r{0, {}};
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  r.status = WEXITSTATUS(pclose(p));
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("mugenforge_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, GenVerifyAutotext) {
  const auto d = (dir / "a").string();
  ASSERT_EQ(run("gen --seeds 0..10 --theme snow --policy profile-03 --workers 2 --out " + d).status, 0);
  const auto again = (dir / "b").string();
  ASSERT_EQ(run("gen --seeds 0..10 --theme snow --policy profile-03 --workers 1 --out " + again).status, 0);

  int files = 0;
  int clips = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto name = episode_filename(s);
    const auto bytes = read_file(fs::path(d) / name);
    EXPECT_EQ(bytes, read_file(fs::path(again) / name));
    clips += load_episode(fs::path(d) / name).frame_count() / kClipFrames;
    ++files;
  }
  EXPECT_EQ(files, 10);
  EXPECT_EQ(read_file(fs::path(d) / "gen_summary.json"), read_file(fs::path(again) / "gen_summary.json"));
  EXPECT_EQ(read_index(d).size(), 10u);

  const auto v = run("verify --in " + d + " --out " + (dir / "v").string());
  EXPECT_EQ(v.status, 0);
  EXPECT_NE(v.out.find("10/10 exact replay"), std::string::npos) << v.out;

  ASSERT_EQ(run("autotext --clips --in " + d + " --out " + (dir / "t").string()).status, 0);
  const auto captions = read_file(dir / "t" / "captions.jsonl");
  EXPECT_EQ(std::count(captions.begin(), captions.end(), '\n'), clips);
}

TEST_F(Cli, RenderAudioSplitStats) {
  const auto d = (dir / "eps").string();
  ASSERT_EQ(run("gen --seeds 20..26 --theme space --out " + d).status, 0);
  ASSERT_EQ(run("render --res 64 --fps-subsample 8 --semantic --in " + d + "/ep_20.mugen.json --out " +
                (dir / "r").string())
                .status,
            0);
  EXPECT_TRUE(fs::exists(dir / "r" / "ep_20" / "clip_0" / "rgb_0000.png"));
  EXPECT_TRUE(fs::exists(dir / "r" / "ep_20" / "clip_0" / "sem_0084.png"));
  EXPECT_TRUE(fs::exists(dir / "r" / "palette.json"));
  ASSERT_EQ(run("audio --clips --in " + d + " --out " + (dir / "w").string()).status, 0);
  EXPECT_EQ(fs::file_size(dir / "w" / "ep_20_clip0.wav"), 44u + 2u * 70560u);
  ASSERT_EQ(run("dataset-split --ratios 0.8,0.1,0.1 --in " + d + " --out " + (dir / "s").string()).status, 0);
  EXPECT_TRUE(fs::exists(dir / "s" / "split.jsonl"));
  ASSERT_EQ(run("stats --in " + d + " --out " + (dir / "st").string()).status, 0);
  EXPECT_TRUE(fs::exists(dir / "st" / "location_Mugen.csv"));
}

TEST_F(Cli, Metrics) {
  fs::create_directories(dir);
  write_file_atomic(dir / "s.csv", "1,0,0\n0,1,0\n0.5,0.9,0.2\n");
  const auto r = run("metrics --ks 1,3 --scores " + (dir / "s.csv").string() + " --out " + (dir / "m").string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"R@1\":0.6667"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"R@3\":1.0000"), std::string::npos) << r.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("gen --seeds 5..2 --out " + dir.string()).status, 2);
  EXPECT_NE(run("gen --seeds 0..1 --policy nobody --out " + dir.string()).status, 0);
  EXPECT_NE(run("render --res 32 --in " + dir.string()).status, 0);
  EXPECT_NE(run("frobnicate").status, 0);
}
