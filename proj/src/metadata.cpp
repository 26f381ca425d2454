#include "mugen/metadata.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "mugen/canonical_json.hpp"
#include "mugen/error.hpp"

namespace mugen {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  if (s.size() != 16 || s.find_first_not_of("0123456789abcdef") != std::string::npos)
    parse_fail("bad 64-bit hex value: " + s);
  return std::stoull(s, nullptr, 16);
}

json character_json(const CharacterState& c) {
  return json::array({c.position.x, c.position.y, c.velocity.x, c.velocity.y, to_string(c.pose),
                      to_string(c.facing), c.alive ? 1 : 0});
}

CharacterState character_from(const json& j, EntityKind kind) {
  if (!j.is_array() || j.size() != 7) parse_fail("character record must be a 7-element array");
  CharacterState c;
  c.kind = kind;
  c.position = {j[0].get<double>(), j[1].get<double>()};
  c.velocity = {j[2].get<double>(), j[3].get<double>()};
  auto pose = parse_pose(j[4].get<std::string>());
  auto facing = parse_facing(j[5].get<std::string>());
  if (!pose || !facing) parse_fail("bad pose or facing");
  c.pose = *pose;
  c.facing = *facing;
  c.alive = j[6].get<int>() != 0;
  return c;
}

json frame_json(const FrameRecord& f) {
  json monsters = json::array();
  for (const auto& m : f.monsters) monsters.push_back(character_json(m));
  std::string items;
  for (bool b : f.item_flags) items.push_back(b ? '1' : '0');
  return json{{"m", character_json(f.mugen)}, {"o", monsters}, {"i", items}, {"s", f.shield_active ? 1 : 0}};
}

json event_json(const GameEvent& e) {
  json j{{"f", e.frame_idx}, {"k", to_string(e.kind)}};
  if (e.monster) j["m"] = to_string(*e.monster);
  if (e.reason) j["r"] = to_string(*e.reason);
  return j;
}

GameEvent event_from(const json& j) {
  GameEvent e;
  e.frame_idx = j.at("f").get<int>();
  auto kind = parse_event_kind(j.at("k").get<std::string>());
  if (!kind) parse_fail("unknown event kind");
  e.kind = *kind;
  if (j.contains("m")) {
    auto m = parse_entity_kind(j["m"].get<std::string>());
    if (!m) parse_fail("unknown monster kind");
    e.monster = *m;
  }
  if (j.contains("r")) {
    auto r = parse_end_reason(j["r"].get<std::string>());
    if (!r) parse_fail("unknown end reason");
    e.reason = *r;
  }
  return e;
}

json level_json(const LevelSpec& s) {
  json rows = json::array();
  for (int y = s.height - 1; y >= 0; --y) {
    std::string row(static_cast<std::size_t>(s.width), '.');
    for (int x = 0; x < s.width; ++x) {
      if (s.platform_cells.count({x, y})) row[static_cast<std::size_t>(x)] = '#';
      else if (s.ladder_cells.count({x, y})) row[static_cast<std::size_t>(x)] = 'H';
    }
    rows.push_back(row);
  }
  json spawns = json::array();
  for (const auto& sp : s.spawns)
    spawns.push_back(json::array({to_string(sp.kind), sp.cell.x, sp.cell.y, to_string(sp.facing)}));
  return json{{"seed", s.seed},     {"theme", to_string(s.theme)}, {"width", s.width},
              {"height", s.height}, {"rows", rows},                {"spawns", spawns},
              {"engine_version", s.engine_version}};
}

LevelSpec level_from(const json& j) {
  LevelSpec s;
  s.seed = j.at("seed").get<std::uint64_t>();
  auto theme = parse_theme(j.at("theme").get<std::string>());
  if (!theme) parse_fail("unknown theme");
  s.theme = *theme;
  s.width = j.at("width").get<int>();
  s.height = j.at("height").get<int>();
  s.engine_version = j.at("engine_version").get<std::string>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != s.height) parse_fail("row count does not match height");
  for (int i = 0; i < s.height; ++i) {
    const auto row = rows[static_cast<std::size_t>(i)].get<std::string>();
    if (static_cast<int>(row.size()) != s.width) parse_fail("row width does not match width");
    const int y = s.height - 1 - i;
    for (int x = 0; x < s.width; ++x) {
      switch (row[static_cast<std::size_t>(x)]) {
        case '#': s.platform_cells.insert({x, y}); break;
        case 'H': s.ladder_cells.insert({x, y}); break;
        case '.': break;
        default: parse_fail("unknown tile character");
      }
    }
  }
  for (const auto& sp : j.at("spawns")) {
    if (!sp.is_array() || sp.size() != 4) parse_fail("spawn must be a 4-element array");
    auto kind = parse_entity_kind(sp[0].get<std::string>());
    auto facing = parse_facing(sp[3].get<std::string>());
    if (!kind || !facing) parse_fail("bad spawn");
    s.spawns.push_back({*kind, {sp[1].get<int>(), sp[2].get<int>()}, *facing});
  }
  return s;
}

json body_json(const EpisodeMetadata& ep) {
  json frames = json::array();
  for (const auto& f : ep.frames) frames.push_back(frame_json(f));
  json events = json::array();
  for (const auto& e : ep.events) events.push_back(event_json(e));
  return json{{"events", events}, {"frames", frames}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<EntityKind> monster_kinds(const LevelSpec& s) {
  std::vector<EntityKind> out;
  for (const auto& sp : s.spawns)
    if (is_monster(sp.kind)) out.push_back(sp.kind);
  return out;
}

std::size_t item_count(const LevelSpec& s) {
  return static_cast<std::size_t>(
      std::count_if(s.spawns.begin(), s.spawns.end(), [](const EntitySpawn& sp) { return is_item(sp.kind); }));
}

}  // namespace

FrameRecord record_frame(const SimState& s) {
  FrameRecord f;
  f.frame_idx = s.frame_idx;
  f.mugen = s.mugen;
  f.monsters = s.monsters;
  for (const auto& it : s.items) f.item_flags.push_back(it.collected);
  f.shield_active = s.shield_active;
  return f;
}

EpisodeMetadata run_episode(const LevelSpec& spec, Policy policy) {
  const auto report = validate_level(spec);
  if (!report.ok())
    throw Error(ErrorCode::InvalidLevel, report.violations.front().rule + ": " + report.violations.front().detail);

  auto level = std::make_shared<const LevelSpec>(spec);
  auto play = [&](int lead_in) {
    Policy p = policy;
    EpisodeMetadata ep;
    ep.level = spec;
    ep.policy_name = p.profile().name;
    ep.policy_seed = p.seed();
    SimState s = initial_state(level, spec.seed ^ p.seed());
    s.lead_in_remaining = lead_in;
    ep.frames.push_back(record_frame(s));
    while (!s.terminated) {
      const AgentIntent intent = s.lead_in_remaining > 0 ? AgentIntent::None : p.decide(observe(s));
      auto r = step(s, intent);
      s = std::move(r.state);
      ep.frames.push_back(record_frame(s));
      ep.events.insert(ep.events.end(), r.events.begin(), r.events.end());
    }
    ep.end_reason = *s.terminated;
    ep.checksum = compute_checksum(ep);
    return ep;
  };

  EpisodeMetadata ep = play(0);
  if (ep.frame_count() < kMinEpisodeFrames) ep = play(kMinEpisodeFrames - ep.frame_count());
  return ep;
}

std::uint64_t compute_checksum(const EpisodeMetadata& ep) { return fnv1a64(canonical_dump(body_json(ep))); }

void check_invariants(const EpisodeMetadata& ep) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); };
  if (ep.schema_version != kSchemaVersion) fail("schema_version must be " + std::string(kSchemaVersion));
  if (ep.fps != kFps) fail("fps must be 30");
  if (ep.frame_count() < kMinEpisodeFrames || ep.frame_count() > kMaxEpisodeFrames)
    fail("frame count " + std::to_string(ep.frame_count()) + " outside [96, 630]");
  const auto kinds = monster_kinds(ep.level);
  const auto items = item_count(ep.level);
  for (int i = 0; i < ep.frame_count(); ++i) {
    const auto& f = ep.frames[static_cast<std::size_t>(i)];
    if (f.frame_idx != i) fail("frame_idx " + std::to_string(f.frame_idx) + " at position " + std::to_string(i));
    if (f.monsters.size() != kinds.size()) fail("monster count differs from level at frame " + std::to_string(i));
    for (std::size_t k = 0; k < kinds.size(); ++k)
      if (f.monsters[k].kind != kinds[k]) fail("monster kind differs from level at frame " + std::to_string(i));
    if (f.item_flags.size() != items) fail("item count differs from level at frame " + std::to_string(i));
  }
  for (std::size_t i = 1; i < ep.events.size(); ++i)
    if (ep.events[i].frame_idx < ep.events[i - 1].frame_idx) fail("events not sorted by frame");
  if (ep.events.empty() || ep.events.back().kind != EventKind::EpisodeEnd) fail("last event must be EpisodeEnd");
  if (ep.events.back().reason != ep.end_reason) fail("EpisodeEnd reason differs from end_reason");
  if (ep.events.back().frame_idx != ep.frame_count() - 1) fail("EpisodeEnd must be on the last frame");
}

std::string serialize_episode(const EpisodeMetadata& ep) {
  check_invariants(ep);
  if (ep.checksum != compute_checksum(ep)) throw Error(ErrorCode::InvariantViolation, "stale checksum");
  json j = body_json(ep);
  j["schema_version"] = ep.schema_version;
  j["level"] = level_json(ep.level);
  j["policy_name"] = ep.policy_name;
  j["policy_seed"] = hex64(ep.policy_seed);
  j["fps"] = ep.fps;
  j["end_reason"] = to_string(ep.end_reason);
  j["checksum"] = hex64(ep.checksum);
  return canonical_dump(j);
}

EpisodeMetadata deserialize_episode(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("top level must be an object");

  EpisodeMetadata ep;
  try {
    ep.schema_version = j.at("schema_version").get<std::string>();
    if (ep.schema_version != kSchemaVersion)
      throw Error(ErrorCode::SchemaMismatch, "unsupported schema_version '" + ep.schema_version + "'");
    ep.level = level_from(j.at("level"));
    ep.policy_name = j.at("policy_name").get<std::string>();
    ep.policy_seed = parse_hex64(j.at("policy_seed").get<std::string>());
    ep.fps = j.at("fps").get<int>();
    auto reason = parse_end_reason(j.at("end_reason").get<std::string>());
    if (!reason) parse_fail("unknown end_reason");
    ep.end_reason = *reason;
    ep.checksum = parse_hex64(j.at("checksum").get<std::string>());

    const auto kinds = monster_kinds(ep.level);
    int idx = 0;
    for (const auto& fj : j.at("frames")) {
      FrameRecord f;
      f.frame_idx = idx++;
      f.mugen = character_from(fj.at("m"), EntityKind::Mugen);
      const auto& mons = fj.at("o");
      if (mons.size() != kinds.size()) parse_fail("monster count differs from level");
      for (std::size_t k = 0; k < kinds.size(); ++k) f.monsters.push_back(character_from(mons[k], kinds[k]));
      for (char c : fj.at("i").get<std::string>()) {
        if (c != '0' && c != '1') parse_fail("bad item flag");
        f.item_flags.push_back(c == '1');
      }
      f.shield_active = fj.at("s").get<int>() != 0;
      ep.frames.push_back(std::move(f));
    }
    for (const auto& ej : j.at("events")) ep.events.push_back(event_from(ej));
  } catch (const json::exception& e) {
    parse_fail(std::string("bad episode structure: ") + e.what());
  }

  if (compute_checksum(ep) != ep.checksum) throw Error(ErrorCode::ChecksumMismatch, "checksum does not match frames and events");
  check_invariants(ep);
  return ep;
}

ReplayReport verify_replay(const EpisodeMetadata& ep, const PresetRegistry& presets) {
  const PolicyProfile& profile = presets.get(ep.policy_name);
  const EpisodeMetadata fresh = run_episode(ep.level, make_policy(profile, ep.policy_seed));

  ReplayReport rep;
  const std::size_t n = std::min(fresh.frames.size(), ep.frames.size());
  for (std::size_t i = 0; i < n; ++i) {
    ++rep.frames_compared;
    if (!(fresh.frames[i] == ep.frames[i])) {
      rep.first_divergent_frame = static_cast<int>(i);
      rep.detail = "frame " + std::to_string(i) + " differs";
      return rep;
    }
  }
  if (fresh.frames.size() != ep.frames.size()) {
    rep.first_divergent_frame = static_cast<int>(n);
    rep.detail = "frame count " + std::to_string(ep.frames.size()) + " vs " + std::to_string(fresh.frames.size());
    return rep;
  }
  if (fresh.events != ep.events || fresh.end_reason != ep.end_reason) {
    rep.detail = "frames match but events differ";
    for (std::size_t i = 0; i < std::min(fresh.events.size(), ep.events.size()); ++i)
      if (!(fresh.events[i] == ep.events[i])) {
        rep.first_divergent_frame = std::min(fresh.events[i].frame_idx, ep.events[i].frame_idx);
        break;
      }
    if (!rep.first_divergent_frame) rep.first_divergent_frame = ep.frame_count() - 1;
    return rep;
  }
  rep.exact = true;
  rep.detail = "all " + std::to_string(rep.frames_compared) + " frames match";
  return rep;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()) % 100000) + "-" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_episode(const std::filesystem::path& path, const EpisodeMetadata& ep) {
  write_file_atomic(path, serialize_episode(ep));
}

EpisodeMetadata load_episode(const std::filesystem::path& path) { return deserialize_episode(read_file(path)); }

std::string episode_filename(std::uint64_t level_seed) {
  return "ep_" + std::to_string(level_seed) + std::string(kEpisodeExtension);
}

IndexEntry index_entry(const EpisodeMetadata& ep, std::string path) {
  IndexEntry e;
  e.path = std::move(path);
  e.level_seed = ep.level.seed;
  e.policy_name = ep.policy_name;
  e.frames = ep.frame_count();
  e.end_reason = ep.end_reason;
  for (const auto& ev : ep.events) {
    if (ev.kind == EventKind::CoinCollected) ++e.coins;
    if (ev.kind == EventKind::MonsterKilled) ++e.kills;
  }
  return e;
}

std::string index_line(const IndexEntry& e) {
  return canonical_dump(json{{"path", e.path},
                             {"level_seed", e.level_seed},
                             {"policy", e.policy_name},
                             {"frames", e.frames},
                             {"end_reason", to_string(e.end_reason)},
                             {"coins", e.coins},
                             {"kills", e.kills}});
}

IndexEntry parse_index_line(std::string_view line) {
  try {
    const json j = json::parse(line.begin(), line.end());
    IndexEntry e;
    e.path = j.at("path").get<std::string>();
    e.level_seed = j.at("level_seed").get<std::uint64_t>();
    e.policy_name = j.at("policy").get<std::string>();
    e.frames = j.at("frames").get<int>();
    auto r = parse_end_reason(j.at("end_reason").get<std::string>());
    if (!r) parse_fail("unknown end_reason in index");
    e.end_reason = *r;
    e.coins = j.at("coins").get<int>();
    e.kills = j.at("kills").get<int>();
    return e;
  } catch (const json::exception& ex) {
    parse_fail(std::string("bad index line: ") + ex.what());
  }
}

void write_index(const std::filesystem::path& dir, std::vector<IndexEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const IndexEntry& a, const IndexEntry& b) { return a.path < b.path; });
  std::string out;
  for (const auto& e : entries) out += index_line(e) + "\n";
  write_file_atomic(dir / "index.jsonl", out);
}

std::vector<IndexEntry> read_index(const std::filesystem::path& dir) {
  std::vector<IndexEntry> out;
  std::istringstream in(read_file(dir / "index.jsonl"));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_index_line(line));
  return out;
}

}  // namespace mugen
