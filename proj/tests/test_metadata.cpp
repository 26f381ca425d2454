#include <gtest/gtest.h>

#include <filesystem>

#include "mugen/canonical_json.hpp"
#include "mugen/error.hpp"
#include "mugen/metadata.hpp"

using namespace mugen;
using nlohmann::json;

namespace {

EpisodeMetadata play(std::uint64_t seed, const char* preset = "profile-02", Theme theme = Theme::Snow) {
  const auto level = generate_level(seed, theme, GenConfig{});
  return run_episode(level, make_policy(PresetRegistry::builtin().get(preset), default_policy_seed(seed)));
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

TEST(CanonicalJson, SortedKeysFixedDecimals) {
  const json j = {{"b", 1.5}, {"a", json::array({2, 0.1, -0.00004})}, {"c", "x"}};
  EXPECT_EQ(canonical_dump(j), R"({"a":[2,0.1000,0.0000],"b":1.5000,"c":"x"})");
}

TEST(CanonicalJson, NestedObjectsSorted) {
  const json j = json::parse(R"({"z":{"y":1,"x":[{"q":true,"p":null}]},"a":"é"})");
  EXPECT_EQ(canonical_dump(j), "{\"a\":\"\xc3\xa9\",\"z\":{\"x\":[{\"p\":null,\"q\":true}],\"y\":1}}");
}

TEST(Episode, RoundTrip) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto ep = play(s, s % 2 ? "profile-07" : "profile-11", s % 3 ? Theme::Snow : Theme::Space);
    const auto bytes = serialize_episode(ep);
    const auto back = deserialize_episode(bytes);
    EXPECT_EQ(back, ep);
    EXPECT_EQ(serialize_episode(back), bytes);
  }
}

TEST(Episode, EqualEpisodesEqualBytes) {
  EXPECT_EQ(serialize_episode(play(3)), serialize_episode(play(3)));
}

TEST(Episode, FrameCountWithinBounds) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto ep = play(s, "profile-09");
    EXPECT_GE(ep.frame_count(), kMinEpisodeFrames);
    EXPECT_LE(ep.frame_count(), kMaxEpisodeFrames);
    ASSERT_FALSE(ep.events.empty());
    EXPECT_EQ(ep.events.back().kind, EventKind::EpisodeEnd);
    EXPECT_EQ(ep.events.back().frame_idx, ep.frame_count() - 1);
    EXPECT_NO_THROW(check_invariants(ep));
  }
}

TEST(Episode, TruncatedBytesAreParseError) {
  const auto bytes = serialize_episode(play(1));
  EXPECT_EQ(code_of([&] { deserialize_episode(bytes.substr(0, bytes.size() / 2)); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { deserialize_episode(""); }), ErrorCode::ParseError);
}

TEST(Episode, FlippedChecksumIsDetected) {
  const auto ep = play(2);
  auto j = json::parse(serialize_episode(ep));
  auto hex = j["checksum"].get<std::string>();
  hex.back() = hex.back() == '0' ? '1' : '0';
  j["checksum"] = hex;
  EXPECT_EQ(code_of([&] { deserialize_episode(canonical_dump(j)); }), ErrorCode::ChecksumMismatch);
}

TEST(Episode, EditedFrameIsDetected) {
  auto j = json::parse(serialize_episode(play(2)));
  j["frames"][10]["m"][0] = j["frames"][10]["m"][0].get<double>() + 1.0;
  EXPECT_EQ(code_of([&] { deserialize_episode(canonical_dump(j)); }), ErrorCode::ChecksumMismatch);
}

TEST(Episode, WrongSchemaIsRejected) {
  auto j = json::parse(serialize_episode(play(2)));
  j["schema_version"] = "mugen.meta/0";
  EXPECT_EQ(code_of([&] { deserialize_episode(canonical_dump(j)); }), ErrorCode::SchemaMismatch);
}

TEST(Episode, StaleChecksumRefusedOnWrite) {
  auto ep = play(4);
  ep.frames[5].mugen.position.x += 1.0;
  EXPECT_EQ(code_of([&] { serialize_episode(ep); }), ErrorCode::InvariantViolation);
}

TEST(Episode, BrokenInvariantsAreNamed) {
  auto ep = play(4);
  ep.frames.resize(50);
  ep.checksum = compute_checksum(ep);
  EXPECT_EQ(code_of([&] { check_invariants(ep); }), ErrorCode::InvariantViolation);
}

TEST(Replay, FreshEpisodeIsExact) {
  const auto rep = verify_replay(play(5));
  EXPECT_TRUE(rep.exact) << rep.detail;
  EXPECT_FALSE(rep.first_divergent_frame);
}

TEST(Replay, EditedPositionIsLocated) {
  auto ep = play(5);
  ep.frames[37].mugen.position.x += 0.5;
  const auto rep = verify_replay(ep);
  EXPECT_FALSE(rep.exact);
  ASSERT_TRUE(rep.first_divergent_frame);
  EXPECT_EQ(*rep.first_divergent_frame, 37);
}

TEST(Replay, UnknownPresetThrows) {
  auto ep = play(5);
  ep.policy_name = "nobody";
  EXPECT_EQ(code_of([&] { verify_replay(ep); }), ErrorCode::UnknownPolicyPreset);
}

TEST(Episode, ShortEpisodesGetFrozenLeadIn) {
  // Some seeds finish fast; every episode is still at least one clip long
  // and its first frames repeat the spawn state.
  int padded = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto ep = play(s, "profile-13");
    ASSERT_GE(ep.frame_count(), kClipFrames);
    if (ep.frame_count() == kClipFrames && ep.frames[1].mugen == ep.frames[0].mugen) {
      ++padded;
      for (const auto& e : ep.events) EXPECT_GT(e.frame_idx, 0);
    }
  }
  SUCCEED() << padded << " padded episodes";
}

TEST(Files, SaveLoadAndIndex) {
  const auto dir = std::filesystem::temp_directory_path() / "mugen_metadata_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::vector<IndexEntry> entries;
  for (std::uint64_t s : {12u, 3u}) {
    const auto ep = play(s);
    const auto name = episode_filename(s);
    save_episode(dir / name, ep);
    EXPECT_EQ(load_episode(dir / name), ep);
    entries.push_back(index_entry(ep, name));
  }
  EXPECT_EQ(episode_filename(12), "ep_12.mugen.json");
  write_index(dir, entries);
  const auto back = read_index(dir);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], entries[0]);   // sorted by path: ep_12 < ep_3
  EXPECT_EQ(parse_index_line(index_line(entries[1])), entries[1]);
  EXPECT_EQ(code_of([&] { load_episode(dir / "missing.mugen.json"); }), ErrorCode::IoError);
  std::filesystem::remove_all(dir);
}
