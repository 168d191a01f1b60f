#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "tts/error.hpp"

namespace tts::dsp {

/// Mono audio, samples nominally in [-1, 1).
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

namespace detail {

inline std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

inline std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>((v >> (8 * k)) & 0xFF));
}

inline bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return b[at] == tag[0] && b[at + 1] == tag[1] && b[at + 2] == tag[2] && b[at + 3] == tag[3];
}

}  // namespace detail

/// Decodes a RIFF/WAVE container holding mono 16-bit PCM. Sample s maps to
/// s / 32768.
inline Waveform load_wav(std::span<const std::uint8_t> bytes) {
  using detail::read_u16;
  using detail::read_u32;
  if (bytes.size() < 12 || !detail::tag_is(bytes, 0, "RIFF") || !detail::tag_is(bytes, 8, "WAVE")) {
    throw Error("wav: not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  int rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t chunk_size = read_u32(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (detail::tag_is(bytes, pos, "fmt ")) {
      if (chunk_size < 16 || body + 16 > bytes.size()) throw Error("wav: truncated fmt chunk");
      std::uint16_t format = read_u16(bytes, body);
      const std::uint16_t channels = read_u16(bytes, body + 2);
      rate = static_cast<int>(read_u32(bytes, body + 4));
      const std::uint16_t bits = read_u16(bytes, body + 14);
      // WAVE_FORMAT_EXTENSIBLE carries the real format in the sub-format GUID.
      if (format == 0xFFFE && chunk_size >= 40 && body + 26 <= bytes.size()) {
        format = read_u16(bytes, body + 24);
      }
      if (channels != 1) throw Error("wav: mono required (file has " + std::to_string(channels) + " channels)");
      if (format != 1) throw Error("wav: PCM required (format tag " + std::to_string(format) + ")");
      if (bits != 16) throw Error("wav: 16-bit samples required (file has " + std::to_string(bits) + ")");
      if (rate <= 0) throw Error("wav: invalid sample rate");
      have_fmt = true;
    } else if (detail::tag_is(bytes, pos, "data")) {
      if (!have_fmt) throw Error("wav: data chunk before fmt chunk");
      if (body + chunk_size > bytes.size()) throw Error("wav: truncated data chunk");
      if (chunk_size % 2 != 0) throw Error("wav: truncated data chunk (odd byte count)");
      Waveform w;
      w.sample_rate = rate;
      w.samples.resize(chunk_size / 2);
      for (std::size_t k = 0; k < w.samples.size(); ++k) {
        const auto s = static_cast<std::int16_t>(read_u16(bytes, body + 2 * k));
        w.samples[k] = static_cast<double>(s) / 32768.0;
      }
      return w;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }
  throw Error(have_fmt ? "wav: missing data chunk" : "wav: missing fmt chunk");
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Waveform load_wav_file(const std::string& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return load_wav(bytes);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

/// Encodes as mono 16-bit PCM, rounding to nearest and clamping to int16.
inline std::vector<std::uint8_t> encode_wav(const Waveform& w) {
  std::vector<std::uint8_t> out;
  const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  detail::put_u32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  detail::put_u32(out, 16);
  detail::put_u16(out, 1);
  detail::put_u16(out, 1);
  detail::put_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  detail::put_u32(out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  detail::put_u16(out, 2);
  detail::put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  detail::put_u32(out, data_bytes);
  for (double s : w.samples) {
    double v = std::round(s * 32768.0);
    v = std::min(32767.0, std::max(-32768.0, v));
    detail::put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  return out;
}

}  // namespace tts::dsp
