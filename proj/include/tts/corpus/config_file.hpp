#pragma once

#include <charconv>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tts/dsp/mel.hpp"
#include "tts/error.hpp"
#include "tts/losses/config.hpp"

namespace tts::corpus {

/// Every tunable of a pipeline run. Keys in the config file and CLI flags
/// use the field names.
struct PipelineConfig {
  dsp::FeatureConfig features;
  losses::LossConfig losses;

  void validate() const {
    features.validate();
    losses.validate();
  }
};

namespace detail {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw Error("config: bad value '" + value + "' for key '" + key + "'");
  return out;
}

using Setter = std::function<void(PipelineConfig&, const std::string&, const std::string&)>;

template <typename T, typename Field>
Setter setter(Field field) {
  return [field](PipelineConfig& c, const std::string& k, const std::string& v) { field(c) = parse_number<T>(k, v); };
}

inline const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"target_rate", setter<int>([](PipelineConfig& c) -> int& { return c.features.target_rate; })},
      {"n_fft", setter<int>([](PipelineConfig& c) -> int& { return c.features.n_fft; })},
      {"win_length", setter<int>([](PipelineConfig& c) -> int& { return c.features.win_length; })},
      {"hop_length", setter<int>([](PipelineConfig& c) -> int& { return c.features.hop_length; })},
      {"n_mels", setter<int>([](PipelineConfig& c) -> int& { return c.features.n_mels; })},
      {"fmin", setter<double>([](PipelineConfig& c) -> double& { return c.features.fmin; })},
      {"fmax", setter<double>([](PipelineConfig& c) -> double& { return c.features.fmax; })},
      {"log_floor", setter<double>([](PipelineConfig& c) -> double& { return c.features.log_floor; })},
      {"norm_lo", setter<double>([](PipelineConfig& c) -> double& { return c.features.norm_lo; })},
      {"norm_hi", setter<double>([](PipelineConfig& c) -> double& { return c.features.norm_hi; })},
      {"trim_threshold_db", setter<double>([](PipelineConfig& c) -> double& { return c.features.trim_threshold_db; })},
      {"lambda_l1", setter<double>([](PipelineConfig& c) -> double& { return c.losses.lambda_l1; })},
      {"lambda_ssim", setter<double>([](PipelineConfig& c) -> double& { return c.losses.lambda_ssim; })},
      {"lambda_dur", setter<double>([](PipelineConfig& c) -> double& { return c.losses.lambda_dur; })},
      {"ssim_window", setter<int>([](PipelineConfig& c) -> int& { return c.losses.ssim_window; })},
      {"ssim_sigma", setter<double>([](PipelineConfig& c) -> double& { return c.losses.ssim_sigma; })},
      {"dynamic_range", setter<double>([](PipelineConfig& c) -> double& { return c.losses.dynamic_range; })},
      {"huber_delta", setter<double>([](PipelineConfig& c) -> double& { return c.losses.huber_delta; })},
  };
  return table;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : detail::setters()) keys.push_back(k);
  return keys;
}

inline void set_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = detail::setters();
  auto it = table.find(key);
  if (it == table.end()) throw Error("config: unknown key '" + key + "'");
  it->second(cfg, key, value);
}

/// Applies `key = value` lines on top of `cfg`. '#' starts a comment.
inline void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    set_config_value(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

}  // namespace tts::corpus
