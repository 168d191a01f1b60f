// Corpus preparation CLI: normalize, g2p, features, align, stats, all.
//
// Exit codes: 0 success, 1 any per-utterance failure, 2 usage/config error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "tts/corpus/config_file.hpp"
#include "tts/corpus/manifest.hpp"
#include "tts/corpus/matrix_file.hpp"
#include "tts/corpus/pipeline.hpp"
#include "tts/corpus/stats.hpp"

namespace fs = std::filesystem;
using namespace tts;

namespace {

constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::string manifest;
  std::string root = ".";
  std::string out;
  std::string config;
  std::size_t workers = 1;
  std::string posteriors;
  std::map<std::string, std::optional<std::string>> overrides;
};

void add_common(CLI::App& cmd, CommonArgs& args, bool needs_out) {
  cmd.add_option("--manifest", args.manifest, "Corpus manifest (id<TAB>path<TAB>transcript)")->required();
  cmd.add_option("--root", args.root, "Directory audio paths are relative to");
  auto* out = cmd.add_option("--out", args.out, "Output directory");
  if (needs_out) out->required();
  cmd.add_option("--config", args.config, "key = value configuration file");
  cmd.add_option("--workers", args.workers, "Parallel workers")->check(CLI::PositiveNumber);
  cmd.add_option("--posteriors", args.posteriors, "Directory of <id>.post posteriorgrams");
  for (const auto& key : corpus::config_keys()) {
    cmd.add_option("--" + key, args.overrides[key], "Override config key " + key);
  }
}

corpus::PipelineConfig load_config(const CommonArgs& args) {
  corpus::PipelineConfig cfg;
  if (!args.config.empty()) corpus::apply_config_text(cfg, corpus::read_text(args.config));
  for (const auto& [key, value] : args.overrides) {
    if (value) corpus::set_config_value(cfg, key, *value);
  }
  cfg.validate();
  return cfg;
}

int run_stats(const CommonArgs& args, const corpus::PipelineConfig& cfg, const corpus::CorpusManifest& manifest) {
  corpus::CorpusStats stats;
  try {
    stats = corpus::corpus_stats(manifest, args.root, cfg.features.trim_threshold_db, args.workers);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailures;
  }
  const std::string text = stats.format();
  std::cout << text;
  if (!args.out.empty()) {
    fs::create_directories(args.out);
    corpus::write_text((fs::path(args.out) / "stats.txt").string(), text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanish TTS corpus preparation"};
  app.require_subcommand(1);

  CommonArgs args;
  struct Command {
    const char* name;
    const char* help;
    corpus::PipelineSteps steps;
    bool needs_out;
  };
  const Command commands[] = {
      {"normalize", "Write normalized transcripts (<id>.txt)", {true, false, false, false}, true},
      {"g2p", "Write phoneme sequences (<id>.phn)", {false, true, false, false}, true},
      {"features", "Write normalized log-mel features (<id>.mel) and norm_stats.txt", {false, false, true, false}, true},
      {"align", "Write phoneme durations (<id>.dur) from posteriorgrams", {false, false, false, true}, true},
      {"stats", "Report sample, word and post-trim hour counts", {}, false},
      {"all", "Run every step and write summary.txt", {true, true, true, true}, true},
  };
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(*sub, args, c.needs_out);
    by_app[sub] = &c;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const Command* cmd = nullptr;
  for (const auto& [sub, c] : by_app) {
    if (sub->parsed()) cmd = c;
  }

  corpus::PipelineConfig cfg;
  corpus::CorpusManifest manifest;
  try {
    cfg = load_config(args);
    manifest = corpus::parse_manifest(corpus::read_text(args.manifest));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (std::string(cmd->name) == "stats") return run_stats(args, cfg, manifest);

  const bool is_align = std::string(cmd->name) == "align";
  if (is_align && args.posteriors.empty()) {
    std::cerr << "error: align requires --posteriors\n";
    return kExitUsage;
  }

  corpus::PipelineOptions opt;
  opt.root = args.root;
  opt.output_dir = args.out;
  opt.workers = args.workers;
  opt.steps = cmd->steps;
  opt.require_posteriors = is_align;
  if (!args.posteriors.empty()) opt.posteriors_dir = fs::path(args.posteriors);

  corpus::PipelineReport report;
  try {
    report = corpus::run_pipeline(manifest, cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << report.summary();
  if (report.failures() != 0) {
    for (const auto& u : report.utterances) {
      if (!u.ok()) std::cerr << "failed: " << u.id << ": " << u.error << "\n";
    }
    return kExitFailures;
  }
  return 0;
}
