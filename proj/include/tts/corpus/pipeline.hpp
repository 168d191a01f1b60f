#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tts/align/ctc.hpp"
#include "tts/align/monotonic_path.hpp"
#include "tts/corpus/config_file.hpp"
#include "tts/corpus/durations_file.hpp"
#include "tts/corpus/manifest.hpp"
#include "tts/corpus/matrix_file.hpp"
#include "tts/corpus/parallel.hpp"
#include "tts/corpus/stats.hpp"
#include "tts/dsp/mel.hpp"
#include "tts/dsp/normalize.hpp"
#include "tts/dsp/resample.hpp"
#include "tts/dsp/trim.hpp"
#include "tts/dsp/waveform.hpp"
#include "tts/text/g2p.hpp"
#include "tts/text/normalize.hpp"

namespace tts::corpus {

namespace fs = std::filesystem;

inline constexpr const char* kSummaryFile = "summary.txt";
inline constexpr const char* kNormStatsFile = "norm_stats.txt";
inline constexpr const char* kInventoryFile = "phonemes.txt";
inline constexpr const char* kPosteriorSuffix = ".post";

/// Resample to the target rate, trim silence, then log-mel (unnormalized).
inline dsp::MelSpectrogram extract_features(const dsp::Waveform& raw, const dsp::FeatureConfig& cfg) {
  const dsp::Waveform resampled = dsp::resample(raw, cfg.target_rate);
  const dsp::Waveform trimmed = dsp::trim_silence(resampled, cfg.trim_threshold_db);
  if (trimmed.empty()) throw Error("audio is silent after trimming");
  return dsp::mel_spectrogram(trimmed, cfg);
}

struct PipelineSteps {
  bool text = true;      // <id>.txt
  bool phonemes = true;  // <id>.phn
  bool features = true;  // <id>.mel + norm_stats.txt
  bool align = true;     // <id>.dur
};

struct PipelineOptions {
  fs::path root = ".";
  fs::path output_dir;
  std::optional<fs::path> posteriors_dir;
  std::size_t workers = 1;
  PipelineSteps steps;
  /// With false, ids without a posteriorgram file are simply not aligned.
  bool require_posteriors = false;
};

struct UtteranceResult {
  std::string id;
  std::string error;  // empty on success
  std::size_t words = 0;
  double trimmed_seconds = 0.0;
  std::size_t frames = 0;
  bool aligned = false;

  bool ok() const { return error.empty(); }
};

struct PipelineReport {
  std::vector<UtteranceResult> utterances;
  std::optional<dsp::NormStats> norm_stats;
  std::optional<CorpusStats> stats;  // set when audio was read

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& u : utterances) n += u.ok() ? 0 : 1;
    return n;
  }

  /// Deterministic text report: counts, stats, then one line per id in
  /// manifest order.
  std::string summary() const {
    std::string out;
    out += "utterances=" + std::to_string(utterances.size()) + "\n";
    out += "succeeded=" + std::to_string(utterances.size() - failures()) + "\n";
    out += "failed=" + std::to_string(failures()) + "\n";
    if (stats) out += stats->format();
    if (norm_stats) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "norm_min=%.9g\nnorm_max=%.9g\n", norm_stats->min_val, norm_stats->max_val);
      out += buf;
    }
    for (const auto& u : utterances) {
      out += u.id;
      if (u.ok()) {
        out += "\tok";
        if (u.frames != 0) out += "\tframes=" + std::to_string(u.frames);
        if (u.aligned) out += "\taligned";
      } else {
        out += "\tfailed\t" + u.error;
      }
      out += '\n';
    }
    return out;
  }
};

namespace detail {

inline std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return s;
}

inline dsp::Waveform load_entry_audio(const fs::path& root, const ManifestEntry& e) {
  const fs::path path = resolve_audio(root, e);
  std::vector<std::uint8_t> bytes;
  try {
    bytes = dsp::read_file_bytes(path.string());
  } catch (const Error&) {
    throw Error("cannot read audio '" + e.audio_path + "'");
  }
  try {
    return dsp::load_wav(bytes);
  } catch (const Error& ex) {
    throw Error("'" + e.audio_path + "': " + ex.what());
  }
}

}  // namespace detail

/// Two-pass corpus run. Pass 1 extracts features to collect corpus min/max;
/// pass 2 writes per-utterance artifacts. Work fans out over `workers`
/// threads but every output depends only on its utterance and the merged
/// statistics, so the tree is identical for any worker count.
inline PipelineReport run_pipeline(const CorpusManifest& manifest, const PipelineConfig& cfg,
                                   const PipelineOptions& opt) {
  cfg.validate();
  const auto inventory = text::PhonemeInventory::castilian();
  fs::create_directories(opt.output_dir);
  const std::size_t n = manifest.size();

  PipelineReport report;
  report.utterances.resize(n);
  std::vector<text::PhonemeSequence> phonemes(n);
  std::vector<std::string> normalized(n);
  std::vector<dsp::NormStats> local_stats(n);

  const bool need_audio = opt.steps.features;
  parallel_for(n, opt.workers, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    UtteranceResult& r = report.utterances[i];
    r.id = e.id;
    try {
      normalized[i] = text::normalize_text(e.transcript);
      r.words = text::count_words(normalized[i]);
      phonemes[i] = text::grapheme_to_phoneme(normalized[i], inventory);
      if (need_audio) {
        const dsp::Waveform raw = detail::load_entry_audio(opt.root, e);
        r.trimmed_seconds = trimmed_seconds(raw, cfg.features.trim_threshold_db);
        const auto mel = extract_features(raw, cfg.features);
        r.frames = mel.frames();
        local_stats[i].include(mel.values);
      }
    } catch (const std::exception& ex) {
      r.error = detail::one_line(ex.what());
    }
  });

  // Barrier: corpus statistics are merged in manifest order.
  if (need_audio) {
    dsp::NormStats merged;
    CorpusStats stats;
    double seconds = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!report.utterances[i].ok()) continue;
      merged.merge(local_stats[i]);
      ++stats.n_samples;
      stats.n_words += report.utterances[i].words;
      seconds += report.utterances[i].trimmed_seconds;
    }
    stats.total_hours = seconds / 3600.0;
    report.stats = stats;
    if (merged.valid()) {
      report.norm_stats = merged;
      write_text((opt.output_dir / kNormStatsFile).string(), merged.serialize());
    } else {
      for (auto& r : report.utterances) {
        if (r.ok()) r.error = "no valid normalization statistics for this corpus";
      }
    }
  }
  if (opt.steps.phonemes || opt.steps.align) {
    write_text((opt.output_dir / kInventoryFile).string(), inventory.serialize());
  }

  parallel_for(n, opt.workers, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    UtteranceResult& r = report.utterances[i];
    if (!r.ok()) return;
    const fs::path stem = opt.output_dir / e.id;
    try {
      if (opt.steps.text) write_text(stem.string() + ".txt", normalized[i] + "\n");
      if (opt.steps.phonemes) write_text(stem.string() + ".phn", text::to_string(phonemes[i]) + "\n");
      if (opt.steps.features) {
        const auto mel = extract_features(detail::load_entry_audio(opt.root, e), cfg.features);
        const auto norm = dsp::normalize_mel(mel, *report.norm_stats);
        write_matrix_file(stem.string() + ".mel", norm.values, kFeatureMagic);
      }
      if (opt.steps.align && opt.posteriors_dir) {
        const fs::path post_path = *opt.posteriors_dir / (e.id + kPosteriorSuffix);
        if (!fs::exists(post_path)) {
          if (opt.require_posteriors) throw Error("missing posteriorgram '" + post_path.filename().string() + "'");
          return;
        }
        align::PosteriorGram post{read_matrix_file(post_path.string(), kPosteriorMagic)};
        if (post.classes() != inventory.num_classes()) {
          throw Error("posteriorgram has " + std::to_string(post.classes()) + " classes, inventory needs " +
                      std::to_string(inventory.num_classes()));
        }
        post.validate();
        if (opt.steps.features && post.frames() != r.frames) {
          throw Error("posteriorgram has " + std::to_string(post.frames()) + " frames, features have " +
                      std::to_string(r.frames));
        }
        const auto labels = inventory.encode(phonemes[i]);
        const auto durations = align::durations_from_path(align::best_monotonic_path(post, labels));
        if (durations.size() != phonemes[i].size() || durations.total() != post.frames()) {
          throw Error("alignment does not cover every phoneme and frame");
        }
        write_text(stem.string() + ".dur", format_durations(phonemes[i], durations));
        r.aligned = true;
      } else if (opt.steps.align && opt.require_posteriors) {
        throw Error("no posteriorgram directory given");
      }
    } catch (const std::exception& ex) {
      r.error = detail::one_line(ex.what());
    }
  });

  write_text((opt.output_dir / kSummaryFile).string(), report.summary());
  return report;
}

}  // namespace tts::corpus
