#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tts/corpus/manifest.hpp"
#include "tts/corpus/parallel.hpp"
#include "tts/dsp/trim.hpp"
#include "tts/dsp/waveform.hpp"
#include "tts/error.hpp"
#include "tts/text/normalize.hpp"

namespace tts::corpus {

struct CorpusStats {
  std::size_t n_samples = 0;
  std::size_t n_words = 0;
  double total_hours = 0.0;

  CorpusStats& operator+=(const CorpusStats& o) {
    n_samples += o.n_samples;
    n_words += o.n_words;
    total_hours += o.total_hours;
    return *this;
  }

  std::string format() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "n_samples=%zu\nn_words=%zu\ntotal_hours=%.9f\n", n_samples, n_words, total_hours);
    return buf;
  }
};

/// Seconds of audio left after trimming leading/trailing silence at the
/// file's native rate.
inline double trimmed_seconds(const dsp::Waveform& w, double threshold_db) {
  return dsp::trim_silence(w, threshold_db).duration_seconds();
}

/// Samples, normalized word count and post-trim hours. Any unreadable file
/// aborts with an error naming its id.
inline CorpusStats corpus_stats(const CorpusManifest& manifest, const std::filesystem::path& root,
                                double trim_threshold_db, std::size_t workers = 1) {
  struct Item {
    std::size_t words = 0;
    double seconds = 0.0;
    std::string error;
  };
  std::vector<Item> items(manifest.size());
  parallel_for(manifest.size(), workers, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    try {
      items[i].words = text::count_words(text::normalize_text(e.transcript));
      const auto w = dsp::load_wav_file(resolve_audio(root, e).string());
      items[i].seconds = trimmed_seconds(w, trim_threshold_db);
    } catch (const std::exception& ex) {
      items[i].error = ex.what();
    }
  });
  CorpusStats stats;
  double seconds = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].error.empty()) {
      throw Error("corpus_stats: utterance '" + manifest.entries[i].id + "': " + items[i].error);
    }
    ++stats.n_samples;
    stats.n_words += items[i].words;
    seconds += items[i].seconds;
  }
  stats.total_hours = seconds / 3600.0;
  return stats;
}

}  // namespace tts::corpus
