#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tts/dsp/mel.hpp"
#include "tts/dsp/normalize.hpp"
#include "tts/dsp/resample.hpp"
#include "tts/dsp/trim.hpp"
#include "tts/dsp/waveform.hpp"

using namespace tts;
using namespace tts::dsp;

namespace {

Waveform sine(double freq, double amplitude, int rate, std::size_t n) {
  Waveform w{std::vector<double>(n), rate};
  for (std::size_t k = 0; k < n; ++k) {
    w.samples[k] = amplitude * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(k) / rate);
  }
  return w;
}

std::vector<std::uint8_t> wav_header(std::uint16_t format, std::uint16_t channels, std::uint16_t bits,
                                     std::uint32_t data_bytes, std::uint32_t actual_payload) {
  std::vector<std::uint8_t> out = {'R', 'I', 'F', 'F'};
  detail::put_u32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  detail::put_u32(out, 16);
  detail::put_u16(out, format);
  detail::put_u16(out, channels);
  detail::put_u32(out, 48000);
  detail::put_u32(out, 48000u * channels * bits / 8);
  detail::put_u16(out, static_cast<std::uint16_t>(channels * bits / 8));
  detail::put_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  detail::put_u32(out, data_bytes);
  out.resize(out.size() + actual_payload, 0);
  return out;
}

std::string load_error(const std::vector<std::uint8_t>& bytes) {
  try {
    load_wav(bytes);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(LoadWav, DecodesPcm16) {
  auto bytes = wav_header(1, 1, 16, 6, 0);
  for (std::int16_t s : {std::int16_t{16384}, std::int16_t{0}, std::int16_t{-32768}}) {
    detail::put_u16(bytes, static_cast<std::uint16_t>(s));
  }
  const Waveform w = load_wav(bytes);
  EXPECT_EQ(w.sample_rate, 48000);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.samples[0], 0.5);
  EXPECT_EQ(w.samples[1], 0.0);
  EXPECT_EQ(w.samples[2], -1.0);
}

TEST(LoadWav, RejectsWithDiagnostics) {
  EXPECT_NE(load_error(wav_header(1, 2, 16, 8, 8)).find("mono required"), std::string::npos);
  EXPECT_NE(load_error(wav_header(3, 1, 32, 8, 8)).find("PCM required"), std::string::npos);
  EXPECT_NE(load_error(wav_header(1, 1, 8, 8, 8)).find("16-bit"), std::string::npos);
  EXPECT_NE(load_error(wav_header(1, 1, 16, 100, 10)).find("truncated"), std::string::npos);
  EXPECT_NE(load_error({'R', 'I', 'F', 'F'}).find("RIFF/WAVE"), std::string::npos);
}

TEST(LoadWav, EncodeRoundTripIsExactOnPcmGrid) {
  std::mt19937 rng(3);
  Waveform w{std::vector<double>(500), 22050};
  for (double& s : w.samples) s = static_cast<double>(static_cast<std::int16_t>(rng())) / 32768.0;
  const Waveform back = load_wav(encode_wav(w));
  EXPECT_EQ(back.sample_rate, 22050);
  EXPECT_EQ(back.samples, w.samples);
}

TEST(Resample, LengthAndIdentity) {
  const Waveform w{std::vector<double>(3200, 0.25), 48000};
  EXPECT_EQ(resample(w, 22050).size(), 1470u);
  EXPECT_EQ(resample(Waveform{std::vector<double>(1001, 0.0), 48000}, 22050).size(), 460u);  // ceil(459.9)
  const Waveform same = resample(w, 48000);
  EXPECT_EQ(same.samples, w.samples);
  EXPECT_THROW(resample(Waveform{{0.0}, 0}, 22050), Error);
}

TEST(Resample, PreservesDcAwayFromEdges) {
  for (int source : {48000, 16000, 44100}) {
    const Waveform w{std::vector<double>(static_cast<std::size_t>(source / 5), 0.7), source};
    Resampler r(source, 22050);
    const Waveform out = resample(w, 22050);
    // one filter length at the output rate
    const auto edge = static_cast<std::size_t>(
        std::ceil(2.0 * r.half_width() * 22050.0 / source)) + 2;
    ASSERT_GT(out.size(), 2 * edge);
    for (std::size_t n = edge; n + edge < out.size(); ++n) {
      ASSERT_NEAR(out.samples[n], 0.7, 1e-4) << source << " " << n;
    }
  }
}

TEST(Resample, FullScaleDcWithinOneMillesimal) {
  const Waveform w{std::vector<double>(9600, 1.0), 48000};
  Resampler r(48000, 22050);
  const Waveform out = resample(w, 22050);
  const auto edge = static_cast<std::size_t>(std::ceil(2.0 * r.half_width() * 22050.0 / 48000.0)) + 2;
  for (std::size_t n = edge; n + edge < out.size(); ++n) ASSERT_LT(std::abs(out.samples[n] - 1.0), 1e-3);
}

TEST(Resample, SinePeakStaysAtOneKilohertz) {
  const Waveform out = resample(sine(1000.0, 0.5, 48000, 48000), 22050);
  const std::size_t n = 4096;
  std::vector<double> x(out.samples.begin() + 4000, out.samples.begin() + 4000 + static_cast<long>(n));
  for (std::size_t k = 0; k < n; ++k) x[k] *= 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / n);
  const auto mag = oracle::dft_magnitude(x);
  const auto peak = static_cast<double>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  EXPECT_LE(std::abs(peak - 1000.0 * n / 22050.0), 1.0);
}

TEST(TrimSilence, AllZeroGivesEmpty) {
  EXPECT_TRUE(trim_silence(Waveform{std::vector<double>(5000, 0.0), 22050}, -40.0).empty());
}

TEST(TrimSilence, ExactZeroFramesRemoved) {
  // 10 ms is exactly 480 samples at 48 kHz
  Waveform w{std::vector<double>(480, 0.0), 48000};
  for (int k = 0; k < 960; ++k) w.samples.push_back(k % 2 ? 0.8 : -0.8);
  w.samples.resize(w.samples.size() + 960, 0.0);
  const Waveform t = trim_silence(w, -40.0);
  ASSERT_EQ(t.size(), 960u);
  EXPECT_EQ(t.samples.front(), -0.8);
}

TEST(TrimSilence, QuietLeadBelowThresholdRemoved) {
  // 48 kHz: 10 ms frames are exactly 480 samples.
  const Waveform quiet = sine(440.0, 1e-3, 48000, 4800);  // -60 dB
  const Waveform loud = sine(440.0, 1.0, 48000, 9600);
  Waveform w{quiet.samples, 48000};
  w.samples.insert(w.samples.end(), loud.samples.begin(), loud.samples.end());
  w.samples.insert(w.samples.end(), quiet.samples.begin(), quiet.samples.end());

  // Oracle: the threshold is 1e-2; the quiet part never reaches it and every
  // loud frame does.
  const double threshold = 1.0 * std::pow(10.0, -40.0 / 20.0);
  for (double s : quiet.samples) ASSERT_LT(std::abs(s), threshold);
  const Waveform t = trim_silence(w, -40.0);
  EXPECT_EQ(t.samples, loud.samples);
}

TEST(TrimSilence, InteriorSilenceKept) {
  Waveform w{std::vector<double>(960, 0.5), 48000};
  w.samples.insert(w.samples.end(), 4800, 0.0);
  w.samples.insert(w.samples.end(), 960, -0.5);
  EXPECT_EQ(trim_silence(w, -40.0).size(), w.size());
  EXPECT_THROW(trim_silence(w, 0.0), Error);
}

TEST(MelFilterbank, CentersIncreaseAndWeightsPositive) {
  const FeatureConfig cfg;
  const MelFilterbank fb(cfg.n_mels, cfg.n_fft, cfg.target_rate, cfg.fmin, cfg.fmax);
  ASSERT_EQ(fb.size(), 100u);
  for (std::size_t m = 0; m < fb.size(); ++m) {
    if (m != 0) {
      EXPECT_GT(fb.center_hz(m), fb.center_hz(m - 1));
    }
    double sum = 0.0;
    for (double v : fb.weights().row(m)) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_GT(sum, 0.0) << m;
  }
}

TEST(MelSpectrogram, ZeroInputIsLogFloor) {
  const FeatureConfig cfg;
  const auto mel = mel_spectrogram(Waveform{std::vector<double>(22050, 0.0), 22050}, cfg);
  ASSERT_EQ(mel.frames(), 80u);
  ASSERT_EQ(mel.bins(), 100u);
  for (double v : mel.values.data()) ASSERT_DOUBLE_EQ(v, std::log(1e-5));
  EXPECT_NEAR(std::log(1e-5), -11.5129, 1e-4);
}

TEST(MelSpectrogram, FrameCountLaw) {
  const FeatureConfig cfg;
  std::mt19937 rng(5);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t n = oracle::uniform_int(rng, 276, 30000);
    Waveform w{std::vector<double>(n), 22050};
    for (double& s : w.samples) s = oracle::uniform(rng, -0.5, 0.5);
    const auto mel = mel_spectrogram(w, cfg);
    ASSERT_EQ(mel.frames(), 1 + n / 276) << n;
    ASSERT_EQ(mel.bins(), 100u);
  }
}

TEST(MelSpectrogram, RejectsShortOrWrongRate) {
  const FeatureConfig cfg;
  EXPECT_THROW(mel_spectrogram(Waveform{std::vector<double>(275, 0.1), 22050}, cfg), Error);
  EXPECT_THROW(mel_spectrogram(Waveform{std::vector<double>(5000, 0.1), 48000}, cfg), Error);
  FeatureConfig bad;
  bad.win_length = 2048;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(MelSpectrogram, SineArgmaxMatchesFilterResponse) {
  const FeatureConfig cfg;
  const MelFilterbank fb(cfg.n_mels, cfg.n_fft, cfg.target_rate, cfg.fmin, cfg.fmax);
  std::size_t expected = 0;
  for (std::size_t m = 1; m < fb.size(); ++m) {
    if (fb.response(m, 1000.0) > fb.response(expected, 1000.0)) expected = m;
  }
  EXPECT_LE(fb.center_hz(expected - 1), 1000.0);
  EXPECT_GE(fb.center_hz(expected + 1), 1000.0);

  const auto mel = mel_spectrogram(sine(1000.0, 0.5, 22050, 22050), cfg);
  for (std::size_t t = 2; t + 2 < mel.frames(); ++t) {
    const auto row = mel.values.row(t);
    const auto arg = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    ASSERT_EQ(arg, expected) << "frame " << t;
  }
}

TEST(MelSpectrogram, Deterministic) {
  std::mt19937 rng(9);
  Waveform w{std::vector<double>(10000), 22050};
  for (double& s : w.samples) s = oracle::uniform(rng, -1, 1);
  EXPECT_EQ(mel_spectrogram(w, FeatureConfig{}).values, mel_spectrogram(w, FeatureConfig{}).values);
}

TEST(NormalizeMel, EndpointsRangeAndRoundTrip) {
  MelSpectrogram m{Matrix(2, 3, std::vector<double>{-11.0, -3.0, 2.0, -20.0, 5.0, -1.5}), false, FeatureConfig{}};
  const NormStats stats{-11.0, 2.0};
  const auto n = normalize_mel(m, stats);
  EXPECT_TRUE(n.normalized);
  EXPECT_EQ(n.values(0, 0), 0.0);
  EXPECT_EQ(n.values(0, 2), 4.0);
  EXPECT_EQ(n.values(1, 0), 0.0);  // clamped
  EXPECT_EQ(n.values(1, 1), 4.0);  // clamped
  for (double v : n.values.data()) EXPECT_TRUE(v >= 0.0 && v <= 4.0);
  const auto back = denormalize_mel(n, stats);
  EXPECT_NEAR(back.values(0, 1), -3.0, 1e-6);
  EXPECT_NEAR(back.values(1, 2), -1.5, 1e-6);
}

TEST(NormalizeMel, DegenerateStatsRejected) {
  MelSpectrogram m{Matrix(1, 1, 0.0), false, FeatureConfig{}};
  EXPECT_THROW(normalize_mel(m, NormStats{1.0, 1.0}), Error);
  EXPECT_THROW(normalize_mel(m, NormStats{2.0, 1.0}), Error);
  EXPECT_THROW(normalize_mel(m, NormStats{}), Error);
}

TEST(NormStats, TextFileRoundTrip) {
  const NormStats s{-11.512925464970229, 0.12345678901234567};
  const NormStats back = NormStats::parse(s.serialize());
  EXPECT_EQ(back.min_val, s.min_val);
  EXPECT_EQ(back.max_val, s.max_val);
  EXPECT_EQ(NormStats::parse("min=-1.5\nmax=2\n").max_val, 2.0);
  EXPECT_THROW(NormStats::parse("min=1\n"), Error);
  EXPECT_THROW(NormStats::parse("min=3\nmax=2\n"), Error);
  EXPECT_THROW(NormStats::parse("min=x\nmax=2\n"), Error);
}
