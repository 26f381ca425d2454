// mugenforge: batch front end for generating, rendering and analysing
// episodes.
#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "mugen/audiogen.hpp"
#include "mugen/autotext.hpp"
#include "mugen/canonical_json.hpp"
#include "mugen/datasetkit.hpp"
#include "mugen/error.hpp"
#include "mugen/metadata.hpp"
#include "mugen/png_io.hpp"
#include "mugen/render.hpp"
#include "mugen/xmetrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mugen;

namespace {

struct SeedRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;   // exclusive
};

SeedRange parse_seeds(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(s);
      return {v, v + 1};
    }
    SeedRange r{std::stoull(s.substr(0, dots)), std::stoull(s.substr(dots + 2))};
    if (r.end <= r.begin) throw Error(ErrorCode::UsageError, "empty seed range " + s);
    return r;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::UsageError, "bad seed range '" + s + "', expected A..B");
  }
}

// Runs job(i) for i in [0, n) on `workers` threads. Results are written by
// index, so output never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, int workers, F&& job) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < n;) job(i);
  };
  const int k = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

std::vector<fs::path> episode_files(const fs::path& in) {
  if (fs::is_regular_file(in)) return {in};
  if (!fs::is_directory(in)) throw Error(ErrorCode::IoError, "no such input: " + in.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(in)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > kEpisodeExtension.size() &&
        name.compare(name.size() - kEpisodeExtension.size(), kEpisodeExtension.size(), kEpisodeExtension) == 0)
      out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string stem_of(const fs::path& p) {
  auto name = p.filename().string();
  return name.substr(0, name.size() - kEpisodeExtension.size());
}

struct Common {
  std::string in;
  std::string out = ".";
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string config;
};

KvConfig load_config(const Common& c) { return c.config.empty() ? KvConfig{} : KvConfig::load(c.config); }

void finish(const std::string& cmd, const fs::path& out, json summary, std::chrono::steady_clock::time_point t0) {
  fs::create_directories(out);
  summary["command"] = cmd;
  write_file_atomic(out / (cmd + "_summary.json"), canonical_dump(summary) + "\n");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file_atomic(out / (cmd + "_timing.json"), canonical_dump(json{{"elapsed_s", elapsed}}) + "\n");
  std::cout << canonical_dump(summary) << "\n" << cmd << ": " << elapsed << " s\n";
}

std::vector<EpisodeMetadata> load_all(const std::vector<fs::path>& files, int workers) {
  std::vector<EpisodeMetadata> eps(files.size());
  parallel_for(files.size(), workers, [&](std::size_t i) { eps[i] = load_episode(files[i]); });
  return eps;
}

int cmd_gen(const Common& c, const std::string& seeds, const std::string& theme_s, const std::string& policy) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto range = parse_seeds(seeds);
  const auto theme = parse_theme(theme_s);
  if (!theme) throw Error(ErrorCode::UsageError, "unknown theme '" + theme_s + "'");
  const auto cfg = load_config(c);
  const GenConfig gen = GenConfig::from_config(cfg);
  gen.validate();
  PresetRegistry presets = PresetRegistry::builtin();
  presets.apply_overrides(cfg);
  if (policy != "cycle") presets.get(policy);

  const fs::path out = c.out;
  fs::create_directories(out);
  const std::size_t n = range.end - range.begin;
  std::vector<std::optional<IndexEntry>> entries(n);
  std::vector<std::string> failures(n);
  parallel_for(n, c.workers, [&](std::size_t i) {
    const std::uint64_t seed = range.begin + i;
    try {
      const auto& profile =
          policy == "cycle" ? presets.all()[seed % presets.all().size()] : presets.get(policy);
      const LevelSpec level = generate_level(seed, *theme, gen);
      const EpisodeMetadata ep = run_episode(level, make_policy(profile, default_policy_seed(seed)));
      const std::string name = episode_filename(seed);
      save_episode(out / name, ep);
      entries[i] = index_entry(ep, name);
    } catch (const Error& e) {
      failures[i] = e.what();
    }
  });

  std::vector<IndexEntry> ok;
  json failed = json::array();
  std::map<std::string, int> reasons;
  long frames = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i]) {
      ok.push_back(*entries[i]);
      ++reasons[std::string(to_string(entries[i]->end_reason))];
      frames += entries[i]->frames;
    } else {
      failed.push_back(json{{"seed", range.begin + i}, {"error", failures[i]}});
    }
  }
  write_index(out, ok);
  finish("gen", out,
         json{{"episodes", ok.size()}, {"failures", failed}, {"end_reasons", reasons}, {"frames", frames},
              {"theme", to_string(*theme)}, {"policy", policy}},
         t0);
  return failed.empty() ? 0 : 1;
}

std::vector<int> sample_frames(int clip_start, int subsample) {
  std::vector<int> out;
  const int n = subsample > 0 ? subsample : kClipFrames;
  for (int i = 0; i < n; ++i) out.push_back(clip_start + i * kClipFrames / n);
  return out;
}

int cmd_render(const Common& c, int res, int subsample, bool semantic) {
  const auto t0 = std::chrono::steady_clock::now();
  if (subsample != 0 && subsample != 8 && subsample != 16 && subsample != 32)
    throw Error(ErrorCode::UsageError, "--fps-subsample must be 8, 16 or 32");
  RenderConfig cfg;
  cfg.resolution = res;
  cfg.assets = Assets::from_env();
  cfg.validate();
  const auto files = episode_files(c.in);
  const fs::path out = c.out;
  fs::create_directories(out);
  write_file_atomic(out / "palette.json", palette_json() + "\n");

  struct Job {
    std::size_t file;
    int clip;
  };
  std::vector<Job> jobs;
  const auto eps = load_all(files, c.workers);
  for (std::size_t f = 0; f < eps.size(); ++f)
    for (int k = 0; k < eps[f].frame_count() / kClipFrames; ++k) jobs.push_back({f, k});

  std::atomic<long> images{0};
  parallel_for(jobs.size(), c.workers, [&](std::size_t j) {
    const auto& job = jobs[j];
    const auto& ep = eps[job.file];
    const fs::path dir = out / stem_of(files[job.file]) / ("clip_" + std::to_string(job.clip));
    fs::create_directories(dir);
    json manifest{{"episode", files[job.file].filename().string()},
                  {"start_frame", job.clip * kClipFrames},
                  {"resolution", res},
                  {"frames", json::array()}};
    for (int f : sample_frames(job.clip * kClipFrames, subsample)) {
      const auto r = render_frame(ep, f, cfg);
      char name[32];
      std::snprintf(name, sizeof name, "%04d", f);
      write_png(dir / ("rgb_" + std::string(name) + ".png"), r.rgb.rgb.data(), res, res, 3);
      ++images;
      if (semantic) {
        write_png(dir / ("sem_" + std::string(name) + ".png"), r.semantic.classes.data(), res, res, 1);
        ++images;
      }
      manifest["frames"].push_back(f);
    }
    write_file_atomic(dir / "manifest.json", canonical_dump(manifest) + "\n");
  });
  finish("render", out,
         json{{"episodes", files.size()}, {"clips", jobs.size()}, {"images", images.load()}, {"resolution", res}},
         t0);
  return 0;
}

int cmd_audio(const Common& c, bool clips) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = episode_files(c.in);
  const fs::path out = c.out;
  fs::create_directories(out);
  std::vector<long> samples(files.size());
  std::vector<int> tracks(files.size());
  parallel_for(files.size(), c.workers, [&](std::size_t i) {
    const auto ep = load_episode(files[i]);
    std::vector<FrameRange> ranges;
    if (clips)
      for (int s = 0; s + kClipFrames <= ep.frame_count(); s += kClipFrames) ranges.push_back({s, s + kClipFrames});
    else
      ranges.push_back(whole(ep));
    for (const auto& r : ranges) {
      const auto track = synthesize_audio(build_sfx_schedule(ep, r), ep.level.theme, r.size());
      const std::string name =
          stem_of(files[i]) + (clips ? "_clip" + std::to_string(r.begin / kClipFrames) : std::string()) + ".wav";
      write_wav(out / name, track);
      samples[i] += static_cast<long>(track.samples.size());
      ++tracks[i];
    }
  });
  long total = 0;
  int n = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    total += samples[i];
    n += tracks[i];
  }
  finish("audio", out,
         json{{"episodes", files.size()}, {"tracks", n}, {"samples", total}, {"sample_rate", kSampleRate}}, t0);
  return 0;
}

int cmd_autotext(const Common& c, bool clips) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = episode_files(c.in);
  const fs::path out = c.out;
  fs::create_directories(out);
  std::vector<std::string> lines(files.size());
  std::vector<int> counts(files.size());
  parallel_for(files.size(), c.workers, [&](std::size_t i) {
    const auto ep = load_episode(files[i]);
    std::vector<FrameRange> ranges;
    if (clips)
      for (int s = 0; s + kClipFrames <= ep.frame_count(); s += kClipFrames) ranges.push_back({s, s + kClipFrames});
    else
      ranges.push_back(whole(ep));
    for (const auto& r : ranges) {
      lines[i] += canonical_dump(json{{"episode", files[i].filename().string()},
                                      {"start_frame", r.begin},
                                      {"frames", r.size()},
                                      {"text", generate_autotext(ep, r)}}) +
                  "\n";
      ++counts[i];
    }
  });
  std::string all;
  int n = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    all += lines[i];
    n += counts[i];
  }
  write_file_atomic(out / "captions.jsonl", all);
  finish("autotext", out, json{{"episodes", files.size()}, {"captions", n}, {"clips", clips}}, t0);
  return 0;
}

struct ClipSet {
  std::vector<fs::path> files;
  std::vector<EpisodeMetadata> eps;
  std::vector<Clip> clips;
};

ClipSet load_clips(const Common& c) {
  ClipSet s;
  s.files = episode_files(c.in);
  s.eps = load_all(s.files, c.workers);
  std::vector<std::vector<Clip>> per(s.eps.size());
  parallel_for(s.eps.size(), c.workers, [&](std::size_t i) {
    per[i] = split_clips(s.eps[i], s.files[i].filename().string(), static_cast<int>(i));
  });
  for (auto& v : per) s.clips.insert(s.clips.end(), v.begin(), v.end());
  return s;
}

int cmd_split(const Common& c, std::uint64_t seed, const std::vector<double>& ratios) {
  const auto t0 = std::chrono::steady_clock::now();
  if (ratios.size() != 3) throw Error(ErrorCode::UsageError, "--ratios needs three values");
  const auto set = load_clips(c);
  const auto a = balance_split(set.clips, seed, {ratios[0], ratios[1], ratios[2]});
  const fs::path out = c.out;
  fs::create_directories(out);
  std::string lines;
  for (std::size_t i = 0; i < set.clips.size(); ++i) {
    const auto& clip = set.clips[i];
    lines += canonical_dump(json{{"episode", clip.episode_ref},
                                 {"start_frame", clip.start_frame},
                                 {"split", to_string(a.split[i])},
                                 {"plain", clip.plain()},
                                 {"tags", clip.tags()}}) +
             "\n";
  }
  write_file_atomic(out / "split.jsonl", lines);
  json summary{{"clips", set.clips.size()}, {"seed", seed}};
  for (auto s : {SplitName::Train, SplitName::Val, SplitName::Test})
    summary[std::string(to_string(s))] = json{{"clips", a.count(s)}, {"plain", a.plain_count(set.clips, s)}};
  finish("dataset-split", out, summary, t0);
  return 0;
}

int cmd_stats(const Common& c, int grid) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto set = load_clips(c);
  const fs::path out = c.out;
  fs::create_directories(out);
  const auto occ = occurrence_stats(set.clips);
  json occurrence;
  for (auto k : kAllKinds) occurrence[std::string(to_string(k))] = occ[static_cast<std::size_t>(k)];

  std::vector<EntityKind> kinds(kAllKinds.begin(), kAllKinds.end());
  std::vector<Heatmap2D> maps(kinds.size());
  parallel_for(kinds.size(), c.workers,
               [&](std::size_t i) { maps[i] = location_heatmap(set.eps, set.clips, kinds[i], grid, grid); });
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    const std::string name = "location_" + std::string(to_string(kinds[i]));
    write_file_atomic(out / (name + ".csv"), maps[i].to_csv());
    maps[i].write_png(out / (name + ".png"));
  }
  json temporal;
  for (auto k : {EventKind::CoinCollected, EventKind::GemCollected, EventKind::MonsterKilled,
                 EventKind::KilledByMonster}) {
    const std::string name = std::string(to_string(k));
    const auto clip_map = temporal_heatmap(set.eps, set.clips, k);
    const auto ep_map = episode_temporal_heatmap(set.eps, k);
    write_file_atomic(out / ("temporal_" + name + ".csv"), clip_map.to_csv());
    write_file_atomic(out / ("temporal_episode_" + name + ".csv"), ep_map.to_csv());
    clip_map.write_png(out / ("temporal_" + name + ".png"));
    temporal[name] = json{{"clip_events", clip_map.total()}, {"episode_events", ep_map.total()}};
  }
  write_file_atomic(out / "occurrence.json", canonical_dump(occurrence) + "\n");
  finish("stats", out,
         json{{"episodes", set.eps.size()}, {"clips", set.clips.size()}, {"occurrence", occurrence},
              {"temporal", temporal}},
         t0);
  return 0;
}

int cmd_verify(const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = episode_files(c.in);
  PresetRegistry presets = PresetRegistry::builtin();
  presets.apply_overrides(load_config(c));
  std::vector<std::string> problems(files.size());
  parallel_for(files.size(), c.workers, [&](std::size_t i) {
    try {
      const auto rep = verify_replay(load_episode(files[i]), presets);
      if (!rep.exact) problems[i] = rep.detail;
    } catch (const Error& e) {
      problems[i] = e.what();
    }
  });
  json bad = json::array();
  for (std::size_t i = 0; i < files.size(); ++i)
    if (!problems[i].empty()) bad.push_back(json{{"episode", files[i].filename().string()}, {"error", problems[i]}});
  const std::size_t exact = files.size() - bad.size();
  std::cout << exact << "/" << files.size() << " exact replay\n";
  finish("verify", c.out, json{{"episodes", files.size()}, {"exact", exact}, {"mismatches", bad}}, t0);
  return bad.empty() ? 0 : 1;
}

int cmd_metrics(const Common& c, const std::string& scores, const std::string& scores2, std::vector<int> ks,
                const std::string& rsim_out, const std::string& rsim_gt) {
  const auto t0 = std::chrono::steady_clock::now();
  json summary;
  if (!scores.empty()) {
    auto s = xmetrics::read_matrix_csv(scores);
    if (!scores2.empty()) s = xmetrics::ensemble_scores(s, xmetrics::read_matrix_csv(scores2));
    const auto r = xmetrics::recall_at_k(s, ks);
    json recall;
    for (std::size_t i = 0; i < ks.size(); ++i) recall["R@" + std::to_string(ks[i])] = r[i];
    summary["recall"] = recall;
    summary["queries"] = s.rows();
  }
  if (!rsim_out.empty() || !rsim_gt.empty()) {
    if (rsim_out.empty() || rsim_gt.empty())
      throw Error(ErrorCode::UsageError, "--rsim-out and --rsim-gt go together");
    auto column = [](const std::string& path) {
      const auto m = xmetrics::read_matrix_csv(path);
      return std::vector<double>(m.data(), m.data() + m.size());
    };
    summary["relative_similarity"] = xmetrics::relative_similarity(column(rsim_out), column(rsim_gt));
  }
  if (summary.is_null()) throw Error(ErrorCode::UsageError, "metrics needs --scores or --rsim-out/--rsim-gt");
  finish("metrics", c.out, summary, t0);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural platformer dataset generator"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, Common& c, bool needs_in) {
    auto* in = sub->add_option("--in", c.in, "Episode file or directory");
    if (needs_in) in->required();
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--config", c.config, "key=value config file")->check(CLI::ExistingFile);
  };

  Common gen_c, render_c, audio_c, text_c, split_c, stats_c, verify_c, metrics_c;

  std::string seeds, theme = "snow", policy = "cycle";
  auto* gen = app.add_subcommand("gen", "Generate and play levels");
  add_common(gen, gen_c, false);
  gen->add_option("--seeds", seeds, "Level seeds A..B (B exclusive)")->required();
  gen->add_option("--theme", theme, "snow or space");
  gen->add_option("--policy", policy, "Preset name, or 'cycle' to rotate through all presets");

  int res = 256;
  int subsample = 0;
  bool semantic = false;
  auto* render = app.add_subcommand("render", "Render RGB and semantic frames");
  add_common(render, render_c, true);
  render->add_option("--res", res, "Square resolution")->check(CLI::Range(kMinResolution, kMaxResolution));
  render->add_option("--fps-subsample", subsample, "Frames kept per 96-frame clip (8, 16 or 32)");
  render->add_flag("--semantic", semantic, "Also write semantic maps");

  bool audio_clips = false;
  auto* audio = app.add_subcommand("audio", "Synthesize WAV tracks");
  add_common(audio, audio_c, true);
  audio->add_flag("--clips", audio_clips, "One track per 96-frame clip");

  bool text_clips = false;
  auto* text = app.add_subcommand("autotext", "Caption episodes");
  add_common(text, text_c, true);
  text->add_flag("--clips", text_clips, "One caption per 96-frame clip");

  std::uint64_t split_seed = 0;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
  auto* split = app.add_subcommand("dataset-split", "Assign clips to train/val/test");
  add_common(split, split_c, true);
  split->add_option("--seed", split_seed, "Shuffle seed");
  split->add_option("--ratios", ratios, "train,val,test")->delimiter(',')->expected(3);

  int grid = 16;
  auto* stats = app.add_subcommand("stats", "Occurrence counts and heatmaps");
  add_common(stats, stats_c, true);
  stats->add_option("--grid", grid, "Location heatmap side")->check(CLI::Range(1, 256));

  auto* verify = app.add_subcommand("verify", "Replay episodes and compare");
  add_common(verify, verify_c, true);

  std::string scores, scores2, rsim_out, rsim_gt;
  std::vector<int> ks = {1, 5, 10};
  auto* metrics = app.add_subcommand("metrics", "Retrieval metrics from CSV matrices");
  add_common(metrics, metrics_c, false);
  metrics->add_option("--scores", scores, "Similarity matrix CSV");
  metrics->add_option("--scores2", scores2, "Second matrix, summed with the first");
  metrics->add_option("--ks", ks, "Recall cut-offs")->delimiter(',');
  metrics->add_option("--rsim-out", rsim_out, "Input-output similarities CSV");
  metrics->add_option("--rsim-gt", rsim_gt, "Input-ground-truth similarities CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_c, seeds, theme, policy);
    if (*render) return cmd_render(render_c, res, subsample, semantic);
    if (*audio) return cmd_audio(audio_c, audio_clips);
    if (*text) return cmd_autotext(text_c, text_clips);
    if (*split) return cmd_split(split_c, split_seed, ratios);
    if (*stats) return cmd_stats(stats_c, grid);
    if (*verify) return cmd_verify(verify_c);
    if (*metrics) return cmd_metrics(metrics_c, scores, scores2, ks, rsim_out, rsim_gt);
  } catch (const Error& e) {
    std::cerr << "mugenforge: " << e.what() << "\n";
    return e.code() == ErrorCode::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "mugenforge: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
