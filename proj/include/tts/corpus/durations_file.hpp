#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tts/align/durations.hpp"
#include "tts/error.hpp"
#include "tts/text/inventory.hpp"

namespace tts::corpus {

/// `symbol<TAB>frames` per phoneme.
inline std::string format_durations(const text::PhonemeSequence& phonemes, const align::DurationSequence& d) {
  if (phonemes.size() != d.size()) throw Error("durations file: phoneme and duration counts differ");
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out += phonemes.symbols[i];
    out += '\t';
    out += std::to_string(d.frames[i]);
    out += '\n';
  }
  return out;
}

inline std::pair<text::PhonemeSequence, align::DurationSequence> parse_durations(const std::string& text) {
  text::PhonemeSequence phonemes;
  align::DurationSequence d;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw Error("durations file: malformed line " + std::to_string(line_no));
    const std::string count = line.substr(tab + 1);
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos) {
      throw Error("durations file: bad frame count on line " + std::to_string(line_no));
    }
    phonemes.symbols.push_back(line.substr(0, tab));
    d.frames.push_back(std::stoul(count));
  }
  return {std::move(phonemes), std::move(d)};
}

}  // namespace tts::corpus
