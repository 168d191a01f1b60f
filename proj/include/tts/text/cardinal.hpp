#pragma once

#include <array>
#include <string>
#include <string_view>

#include "tts/error.hpp"

namespace tts::text {

inline constexpr long kMaxCardinal = 999999;

namespace detail {

// 0..29 have their own spellings.
inline constexpr std::array<std::string_view, 30> kBelowThirty = {
    "cero",       "uno",        "dos",         "tres",        "cuatro",
    "cinco",      "seis",       "siete",       "ocho",        "nueve",
    "diez",       "once",       "doce",        "trece",       "catorce",
    "quince",     "dieciséis",  "diecisiete",  "dieciocho",   "diecinueve",
    "veinte",     "veintiuno",  "veintidós",   "veintitrés",  "veinticuatro",
    "veinticinco", "veintiséis", "veintisiete", "veintiocho",  "veintinueve"};

inline constexpr std::array<std::string_view, 10> kTens = {
    "", "", "", "treinta", "cuarenta", "cincuenta", "sesenta", "setenta", "ochenta", "noventa"};

inline constexpr std::array<std::string_view, 10> kHundreds = {
    "",           "ciento",       "doscientos",  "trescientos", "cuatrocientos",
    "quinientos", "seiscientos",  "setecientos", "ochocientos", "novecientos"};

// 1..99
inline std::string below_hundred(int n) {
  if (n < 30) return std::string(kBelowThirty[n]);
  std::string out(kTens[n / 10]);
  if (n % 10 != 0) {
    out += " y ";
    out += kBelowThirty[n % 10];
  }
  return out;
}

// 1..999
inline std::string below_thousand(int n) {
  if (n == 100) return "cien";
  std::string out;
  if (n >= 100) {
    out = kHundreds[n / 100];
    if (n % 100 != 0) out += ' ';
  }
  if (n % 100 != 0) out += below_hundred(n % 100);
  return out;
}

}  // namespace detail

/// Spells 0..999999 as Spanish cardinal words. Numbers ending in "uno" keep
/// the full form before "mil" (no apocope), e.g. 21000 -> "veintiuno mil".
inline std::string expand_cardinal(long n) {
  if (n < 0 || n > kMaxCardinal) {
    throw Error("expand_cardinal: " + std::to_string(n) + " outside [0, 999999]");
  }
  if (n == 0) return "cero";
  const int thousands = static_cast<int>(n / 1000);
  const int rest = static_cast<int>(n % 1000);
  std::string out;
  if (thousands == 1) {
    out = "mil";
  } else if (thousands > 1) {
    out = detail::below_thousand(thousands) + " mil";
  }
  if (rest != 0) {
    if (!out.empty()) out += ' ';
    out += detail::below_thousand(rest);
  }
  return out;
}

}  // namespace tts::text
