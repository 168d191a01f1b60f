#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tts/dsp/waveform.hpp"
#include "tts/error.hpp"
#include "tts/matrix.hpp"

namespace tts::corpus {

inline constexpr std::string_view kFeatureMagic = "MF01";
inline constexpr std::string_view kPosteriorMagic = "MP01";

/// Layout: 4-byte magic, u32 rows, u32 cols, rows*cols f32, all little-endian
/// and row-major.
template <typename T>
std::vector<std::uint8_t> encode_matrix_file(const BasicMatrix<T>& m, std::string_view magic) {
  if (magic.size() != 4) throw Error("matrix file magic must be 4 bytes");
  std::vector<std::uint8_t> out;
  out.reserve(12 + 4 * m.size());
  out.insert(out.end(), magic.begin(), magic.end());
  dsp::detail::put_u32(out, static_cast<std::uint32_t>(m.rows()));
  dsp::detail::put_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto v = static_cast<float>(m.data()[k]);
    if (!std::isfinite(v)) throw Error("matrix file: non-finite value at index " + std::to_string(k));
    dsp::detail::put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

inline BasicMatrix<float> decode_matrix_file(std::span<const std::uint8_t> bytes, std::string_view magic) {
  if (bytes.size() < 12) throw Error("matrix file: truncated header");
  if (std::memcmp(bytes.data(), magic.data(), 4) != 0) throw Error("matrix file: bad magic");
  const std::uint32_t rows = dsp::detail::read_u32(bytes, 4);
  const std::uint32_t cols = dsp::detail::read_u32(bytes, 8);
  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  if (bytes.size() - 12 != count * 4) {
    throw Error(bytes.size() - 12 < count * 4 ? "matrix file: truncated payload" : "matrix file: trailing bytes");
  }
  std::vector<float> data(static_cast<std::size_t>(count));
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] = std::bit_cast<float>(dsp::detail::read_u32(bytes, 12 + 4 * k));
    if (!std::isfinite(data[k])) throw Error("matrix file: non-finite value at index " + std::to_string(k));
  }
  return BasicMatrix<float>(rows, cols, std::move(data));
}

inline Matrix to_double(const BasicMatrix<float>& m) {
  return Matrix(m.rows(), m.cols(), std::vector<double>(m.data().begin(), m.data().end()));
}

inline void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

inline void write_text(const std::string& path, std::string_view text) {
  write_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

inline std::string read_text(const std::string& path) {
  const auto bytes = dsp::read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

template <typename T>
void write_matrix_file(const std::string& path, const BasicMatrix<T>& m, std::string_view magic) {
  write_bytes(path, encode_matrix_file(m, magic));
}

inline Matrix read_matrix_file(const std::string& path, std::string_view magic) {
  const auto bytes = dsp::read_file_bytes(path);
  try {
    return to_double(decode_matrix_file(bytes, magic));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace tts::corpus
