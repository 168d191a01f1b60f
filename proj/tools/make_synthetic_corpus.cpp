// Writes the bundled 5-utterance synthetic corpus: 48 kHz 16-bit mono WAVs,
// a manifest, and one posteriorgram per utterance whose frame count matches
// the extracted features. Output is a pure function of the fixed seed.
//
//   make_synthetic_corpus <out_dir>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tts/tts.hpp"

namespace fs = std::filesystem;
using namespace tts;

namespace {

constexpr int kRate = 48000;
constexpr double kPhonemeSeconds = 0.07;
constexpr double kSilenceSeconds = 0.25;

// mt19937 output is specified by the standard; the distributions are not,
// so uniform draws are derived from raw words.
double uniform(std::mt19937& rng) { return static_cast<double>(rng()) / 4294967296.0; }

struct Utterance {
  const char* id;
  const char* transcript;
};

constexpr Utterance kUtterances[] = {
    {"utt001", "Hola, mundo."},
    {"utt002", "¿Dónde está la estación de tren?"},
    {"utt003", "Tengo 42 años y vivo en Madrid."},
    {"utt004", "El perro corre rápido por la calle."},
    {"utt005", "¡Qué bonita es la ciudad!"},
};

// Harmonic tone per phoneme with a raised-cosine envelope, framed by silence.
dsp::Waveform synthesize(const text::PhonemeSequence& phonemes, std::mt19937& rng) {
  const auto seg = static_cast<std::size_t>(kPhonemeSeconds * kRate);
  const auto sil = static_cast<std::size_t>(kSilenceSeconds * kRate);
  dsp::Waveform w{std::vector<double>(2 * sil + seg * phonemes.size(), 0.0), kRate};
  for (std::size_t i = 0; i < phonemes.size(); ++i) {
    const double f0 = 140.0 + 80.0 * uniform(rng);
    const double formant = 400.0 + 2000.0 * uniform(rng);
    const double gain = 0.2 + 0.2 * uniform(rng);
    for (std::size_t k = 0; k < seg; ++k) {
      const double t = static_cast<double>(k) / kRate;
      const double env = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (k + 0.5) / seg);
      double s = 0.0;
      for (int h = 1; h <= 12; ++h) {
        const double f = f0 * h;
        const double a = std::exp(-std::pow((f - formant) / 600.0, 2.0)) + 0.1 / h;
        s += a * std::sin(2.0 * std::numbers::pi * f * t);
      }
      s += 0.05 * (2.0 * uniform(rng) - 1.0);
      w.samples[sil + i * seg + k] = gain * env * s / 3.0;
    }
  }
  return w;
}

// Log-softmax rows peaked on a proportional ground-truth segmentation.
Matrix make_posteriorgram(const std::vector<text::PhonemeId>& labels, std::size_t frames, std::size_t classes,
                          std::mt19937& rng) {
  Matrix lp(frames, classes);
  const std::size_t blank = classes - 1;
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t target = std::min(labels.size() - 1, t * labels.size() / frames);
    std::vector<double> logits(classes);
    for (std::size_t k = 0; k < classes; ++k) logits[k] = 2.0 * uniform(rng);
    logits[labels[target]] += 6.0;
    logits[blank] += 2.0;
    const double z = align::log_sum_exp(logits);
    for (std::size_t k = 0; k < classes; ++k) lp(t, k) = logits[k] - z;
  }
  return lp;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_synthetic_corpus <out_dir>\n";
    return 2;
  }
  const fs::path out(argv[1]);
  fs::create_directories(out / "wav");
  fs::create_directories(out / "posteriors");

  const auto inventory = text::PhonemeInventory::castilian();
  const dsp::FeatureConfig cfg;
  std::mt19937 rng(20210901u);
  corpus::CorpusManifest manifest;

  for (const auto& u : kUtterances) {
    const auto phonemes = text::grapheme_to_phoneme(text::normalize_text(u.transcript), inventory);
    const auto bytes = dsp::encode_wav(synthesize(phonemes, rng));
    const std::string rel = std::string("wav/") + u.id + ".wav";
    corpus::write_bytes((out / rel).string(), bytes);
    manifest.entries.push_back({u.id, rel, u.transcript});

    // Frame count must match what the pipeline extracts from the quantized file.
    const auto mel = corpus::extract_features(dsp::load_wav(bytes), cfg);
    const auto lp = make_posteriorgram(inventory.encode(phonemes), mel.frames(), inventory.num_classes(), rng);
    corpus::write_matrix_file((out / "posteriors" / (std::string(u.id) + ".post")).string(), lp,
                              corpus::kPosteriorMagic);
    std::cout << u.id << ": " << phonemes.size() << " phonemes, " << mel.frames() << " frames\n";
  }
  corpus::write_text((out / "manifest.tsv").string(), corpus::format_manifest(manifest));
  return 0;
}
