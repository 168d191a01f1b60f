#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tts/error.hpp"
#include "tts/text/inventory.hpp"
#include "tts/text/normalize.hpp"
#include "tts/text/utf8.hpp"

namespace tts::text {

/// Raised for input that is not normalized text. `position` is the code point
/// offset of the offending character.
class G2PError : public Error {
 public:
  G2PError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

// One sound slot of a word. Vowel slots are resolved to glide or nucleus
// after the whole word is scanned.
struct Segment {
  enum class Kind { kConsonant, kVowel } kind;
  std::string symbol;     // consonant symbol, or vowel quality a/e/i/o/u
  bool weak = false;      // unaccented i/u/ü (and vocalic y)
  bool accented = false;  // written accent mark
  bool from_y = false;
  bool nucleus = false;
};

inline bool is_front_vowel(char32_t c) {
  return c == U'e' || c == U'i' || c == U'é' || c == U'í';
}

inline bool is_vowel_letter(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü':
      return true;
    default:
      return false;
  }
}

inline std::optional<Segment> vowel_segment(char32_t c) {
  auto v = [](const char* q, bool weak, bool accented) {
    return Segment{Segment::Kind::kVowel, q, weak, accented};
  };
  switch (c) {
    case U'a': return v("a", false, false);
    case U'e': return v("e", false, false);
    case U'o': return v("o", false, false);
    case U'i': return v("i", true, false);
    case U'u': case U'ü': return v("u", true, false);
    case U'á': return v("a", false, true);
    case U'é': return v("e", false, true);
    case U'í': return v("i", false, true);
    case U'ó': return v("o", false, true);
    case U'ú': return v("u", false, true);
    default: return std::nullopt;
  }
}

inline Segment consonant(std::string_view symbol) {
  return Segment{Segment::Kind::kConsonant, std::string(symbol)};
}

inline std::vector<Segment> scan_word(std::u32string_view w) {
  std::vector<Segment> out;
  auto at = [&](std::size_t i) -> char32_t { return i < w.size() ? w[i] : 0; };
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char32_t c = w[i];
    if (auto v = vowel_segment(c)) {
      out.push_back(*v);
      continue;
    }
    switch (c) {
      case U'h':
        break;  // silent
      case U'c':
        if (at(i + 1) == U'h') {
          out.push_back(consonant("tʃ"));
          ++i;
        } else {
          out.push_back(consonant(is_front_vowel(at(i + 1)) ? "θ" : "k"));
        }
        break;
      case U'g':
        if (at(i + 1) == U'u' && is_front_vowel(at(i + 2))) {
          out.push_back(consonant("g"));
          ++i;
        } else {
          out.push_back(consonant(is_front_vowel(at(i + 1)) ? "x" : "g"));
        }
        break;
      case U'q':
        out.push_back(consonant("k"));
        if (at(i + 1) == U'u') ++i;
        break;
      case U'l':
        if (at(i + 1) == U'l') {
          out.push_back(consonant("ʝ"));
          ++i;
        } else {
          out.push_back(consonant("l"));
        }
        break;
      case U'r': {
        if (at(i + 1) == U'r') {
          out.push_back(consonant("r"));
          ++i;
          break;
        }
        const char32_t prev = i == 0 ? 0 : w[i - 1];
        const bool trill = i == 0 || prev == U'l' || prev == U'n' || prev == U's';
        out.push_back(consonant(trill ? "r" : "ɾ"));
        break;
      }
      case U'y':
        if (is_vowel_letter(at(i + 1))) {
          out.push_back(consonant("ʝ"));
        } else {
          Segment s{Segment::Kind::kVowel, "i", true, false};
          s.from_y = true;
          out.push_back(s);
        }
        break;
      case U'ñ': out.push_back(consonant("ɲ")); break;
      case U'v': out.push_back(consonant("b")); break;
      case U'z': out.push_back(consonant("θ")); break;
      case U'j': out.push_back(consonant("x")); break;
      case U'x':
        out.push_back(consonant("k"));
        out.push_back(consonant("s"));
        break;
      case U'b': case U'd': case U'f': case U'k': case U'm': case U'n':
      case U'p': case U's': case U't': case U'w': {
        std::string s;
        utf8::append(s, c);
        out.push_back(consonant(s));
        break;
      }
      default:
        throw Error("unhandled letter");  // unreachable for normalized input
    }
  }
  return out;
}

// Marks syllable nuclei inside each run of adjacent vowel segments. Strong
// vowels (a e o and accented vowels) are always nuclei; weak vowels next to a
// strong one become glides; a run of only weak vowels keeps its last non-y
// member as the nucleus.
inline void mark_nuclei(std::vector<Segment>& segs) {
  std::size_t i = 0;
  while (i < segs.size()) {
    if (segs[i].kind != Segment::Kind::kVowel) {
      ++i;
      continue;
    }
    std::size_t end = i;
    bool has_strong = false;
    while (end < segs.size() && segs[end].kind == Segment::Kind::kVowel) {
      has_strong = has_strong || !segs[end].weak;
      ++end;
    }
    if (has_strong) {
      for (std::size_t k = i; k < end; ++k) segs[k].nucleus = !segs[k].weak;
    } else {
      std::size_t pick = end - 1;
      for (std::size_t k = end; k-- > i;) {
        if (!segs[k].from_y) {
          pick = k;
          break;
        }
      }
      segs[pick].nucleus = true;
    }
    i = end;
  }
}

inline bool ends_in_vowel_n_s(std::u32string_view w) {
  const char32_t last = w.back();
  return last == U'a' || last == U'e' || last == U'i' || last == U'o' || last == U'u' ||
         last == U'n' || last == U's';
}

inline void word_to_phonemes(std::u32string_view w, std::vector<std::string>& out) {
  std::vector<Segment> segs = scan_word(w);
  mark_nuclei(segs);

  std::vector<std::size_t> nuclei;
  std::optional<std::size_t> accented;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!segs[k].nucleus) continue;
    nuclei.push_back(k);
    if (segs[k].accented && !accented) accented = k;
  }

  std::optional<std::size_t> stressed;
  if (accented) {
    stressed = accented;
  } else if (!nuclei.empty()) {
    const bool penultimate = ends_in_vowel_n_s(w) && nuclei.size() >= 2;
    stressed = nuclei[nuclei.size() - (penultimate ? 2 : 1)];
  }

  if (!stressed) out.emplace_back(kStressMarker);  // no vowel at all
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const Segment& s = segs[k];
    if (s.kind == Segment::Kind::kVowel && !s.nucleus) {
      out.emplace_back(s.symbol == "i" ? "j" : "w");
      continue;
    }
    if (stressed && *stressed == k) out.emplace_back(kStressMarker);
    out.push_back(s.symbol);
  }
}

}  // namespace detail

/// Rule-based Castilian G2P over normalized text. Words are joined by the
/// boundary marker and each word carries exactly one stress marker, placed
/// directly before the stressed vowel.
inline PhonemeSequence grapheme_to_phoneme(std::string_view text, const PhonemeInventory& inventory) {
  const std::u32string in = utf8::decode(text);
  PhonemeSequence seq;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= in.size(); ++i) {
    if (i < in.size() && in[i] != U' ') {
      if (!is_normalized_letter(in[i])) {
        std::string shown;
        utf8::append(shown, in[i]);
        throw G2PError("grapheme_to_phoneme: character '" + shown + "' at position " +
                           std::to_string(i) + " is outside the normalized alphabet",
                       i);
      }
      continue;
    }
    if (i > start) {
      if (!seq.empty()) seq.symbols.emplace_back(kWordBoundary);
      detail::word_to_phonemes(std::u32string_view(in).substr(start, i - start), seq.symbols);
    }
    start = i + 1;
  }
  for (const auto& s : seq.symbols) {
    if (!inventory.contains(s)) throw Error("grapheme_to_phoneme: inventory lacks symbol '" + s + "'");
  }
  return seq;
}

}  // namespace tts::text
