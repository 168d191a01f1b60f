#pragma once

#include <string>
#include <string_view>

#include "tts/text/cardinal.hpp"
#include "tts/text/utf8.hpp"

namespace tts::text {

/// True for the code points a normalized transcript may contain besides space:
/// a-z and á é í ó ú ü ñ.
inline bool is_normalized_letter(char32_t c) {
  if (c >= U'a' && c <= U'z') return true;
  switch (c) {
    case U'á': case U'é': case U'í': case U'ó': case U'ú': case U'ü': case U'ñ':
      return true;
    default:
      return false;
  }
}

namespace detail {

// Maps a code point to its normalized lowercase letter, or 0 if it is not a
// letter we keep. Latin-1 letters outside the Spanish alphabet lose their
// diacritic.
inline char32_t fold_letter(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (is_normalized_letter(c)) return c;
  switch (c) {
    case U'Á': case U'É': case U'Í': case U'Ó': case U'Ú': case U'Ü': case U'Ñ':
      return c + 32;
    case U'À': case U'Â': case U'Ã': case U'Ä': case U'Å':
    case U'à': case U'â': case U'ã': case U'ä': case U'å':
      return U'a';
    case U'È': case U'Ê': case U'Ë': case U'è': case U'ê': case U'ë':
      return U'e';
    case U'Ì': case U'Î': case U'Ï': case U'ì': case U'î': case U'ï':
      return U'i';
    case U'Ò': case U'Ô': case U'Õ': case U'Ö': case U'ò': case U'ô': case U'õ': case U'ö':
      return U'o';
    case U'Ù': case U'Û': case U'ù': case U'û':
      return U'u';
    case U'Ç': case U'ç':
      return U'c';
    case U'Ý': case U'ý': case U'ÿ':
      return U'y';
    default:
      return 0;
  }
}

inline bool is_ascii_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline std::string spell_digit_run(std::u32string_view digits) {
  std::string out;
  if (digits.size() <= 6) {
    long value = 0;
    for (char32_t d : digits) value = value * 10 + static_cast<long>(d - U'0');
    return expand_cardinal(value);
  }
  // Too long for a cardinal: read digit by digit.
  for (char32_t d : digits) {
    if (!out.empty()) out += ' ';
    out += expand_cardinal(static_cast<long>(d - U'0'));
  }
  return out;
}

}  // namespace detail

/// Lowercases, spells out digit groups, drops punctuation and collapses
/// whitespace. The result only contains normalized letters and single spaces.
inline std::string normalize_text(std::string_view raw) {
  const std::u32string in = utf8::decode(raw);
  std::u32string mapped;
  mapped.reserve(in.size() + 8);
  for (std::size_t i = 0; i < in.size();) {
    if (detail::is_ascii_digit(in[i])) {
      std::size_t j = i;
      while (j < in.size() && detail::is_ascii_digit(in[j])) ++j;
      mapped += U' ';
      mapped += utf8::decode(detail::spell_digit_run(std::u32string_view(in).substr(i, j - i)));
      mapped += U' ';
      i = j;
      continue;
    }
    const char32_t letter = detail::fold_letter(in[i]);
    mapped += letter != 0 ? letter : U' ';
    ++i;
  }

  std::u32string out;
  out.reserve(mapped.size());
  for (char32_t c : mapped) {
    if (c == U' ') {
      if (!out.empty() && out.back() != U' ') out += U' ';
    } else {
      out += c;
    }
  }
  if (!out.empty() && out.back() == U' ') out.pop_back();
  return utf8::encode(out);
}

/// Whitespace-separated tokens of an already-normalized transcript.
inline std::size_t count_words(std::string_view normalized) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : normalized) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

}  // namespace tts::text
