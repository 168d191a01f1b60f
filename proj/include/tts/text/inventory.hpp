#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tts/error.hpp"

namespace tts::text {

using PhonemeId = std::uint32_t;

inline constexpr std::string_view kStressMarker = "ˈ";
inline constexpr std::string_view kWordBoundary = "#";

/// Ordered phoneme symbols as produced by grapheme_to_phoneme. Never contains
/// the CTC blank.
struct PhonemeSequence {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  friend bool operator==(const PhonemeSequence&, const PhonemeSequence&) = default;
};

/// Space-joined rendering used for .phn files and diagnostics.
inline std::string to_string(const PhonemeSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.symbols.size(); ++i) {
    if (i != 0) out += ' ';
    out += seq.symbols[i];
  }
  return out;
}

/// Symbol table mapping phonemes to dense integer ids. The CTC blank is the
/// id one past the last symbol and has no textual form.
class PhonemeInventory {
 public:
  explicit PhonemeInventory(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].empty()) throw Error("phoneme inventory: empty symbol at line " + std::to_string(i + 1));
      if (!index_.emplace(symbols_[i], static_cast<PhonemeId>(i)).second) {
        throw Error("phoneme inventory: duplicate symbol '" + symbols_[i] + "'");
      }
    }
  }

  /// Castilian Spanish with distinción and yeísmo, plus stress and boundary
  /// markers.
  static PhonemeInventory castilian() {
    return PhonemeInventory({"a", "e", "i", "o", "u",
                             "p", "t", "k", "b", "d", "g", "f", "s", "x", "θ", "tʃ",
                             "m", "n", "ɲ", "l", "ʝ", "r", "ɾ", "w", "j",
                             std::string(kStressMarker), std::string(kWordBoundary)});
  }

  /// One symbol per line; line index is the id. Blank lines and a trailing
  /// newline are ignored, CR is stripped.
  static PhonemeInventory parse(std::string_view text) {
    std::vector<std::string> symbols;
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(start, end - start));
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) symbols.push_back(std::move(line));
      start = end + 1;
    }
    return PhonemeInventory(std::move(symbols));
  }

  std::string serialize() const {
    std::string out;
    for (const auto& s : symbols_) {
      out += s;
      out += '\n';
    }
    return out;
  }

  std::size_t size() const { return symbols_.size(); }
  PhonemeId blank_id() const { return static_cast<PhonemeId>(symbols_.size()); }
  /// Phonemes plus blank; the column count of a posteriorgram.
  std::size_t num_classes() const { return symbols_.size() + 1; }
  const std::vector<std::string>& symbols() const { return symbols_; }

  bool contains(std::string_view symbol) const { return index_.count(std::string(symbol)) != 0; }

  PhonemeId id(std::string_view symbol) const {
    auto it = index_.find(std::string(symbol));
    if (it == index_.end()) throw Error("phoneme '" + std::string(symbol) + "' not in inventory");
    return it->second;
  }

  const std::string& symbol(PhonemeId id) const {
    if (id >= symbols_.size()) throw Error("phoneme id " + std::to_string(id) + " out of inventory");
    return symbols_[id];
  }

  std::vector<PhonemeId> encode(const PhonemeSequence& seq) const {
    std::vector<PhonemeId> ids;
    ids.reserve(seq.size());
    for (const auto& s : seq.symbols) ids.push_back(id(s));
    return ids;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, PhonemeId> index_;
};

}  // namespace tts::text
