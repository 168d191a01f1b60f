#pragma once

// Hand-derived pronunciations (Castilian, distinción + yeísmo) and cardinal
// spellings. Each word lists the rule it exercises.

#include <string_view>
#include <utility>

namespace tts::oracle {

struct GoldenWord {
  std::string_view word;
  std::string_view phonemes;  // space separated
};

inline constexpr GoldenWord kGoldenWords[] = {
    {"casa", "k ˈ a s a"},                 // c -> k, penultimate stress
    {"cero", "θ ˈ e ɾ o"},                 // c + e -> θ, intervocalic r
    {"camión", "k a m j ˈ o n"},           // accent mark, i glide
    {"chico", "tʃ ˈ i k o"},               // ch
    {"calle", "k ˈ a ʝ e"},                // ll yeísmo
    {"perro", "p ˈ e r o"},                // rr
    {"queso", "k ˈ e s o"},                // qu
    {"guerra", "g ˈ e r a"},               // gu + e
    {"guitarra", "g i t ˈ a r a"},         // gu + i
    {"gato", "g ˈ a t o"},                 // plain g
    {"gente", "x ˈ e n t e"},              // g + e -> x
    {"girasol", "x i ɾ a s ˈ o l"},        // g + i -> x, final stress after l
    {"zapato", "θ a p ˈ a t o"},           // z -> θ
    {"cielo", "θ j ˈ e l o"},              // c + i, diphthong ie
    {"jamón", "x a m ˈ o n"},              // j -> x, accent
    {"rosa", "r ˈ o s a"},                 // initial r trill
    {"pero", "p ˈ e ɾ o"},                 // intervocalic r tap
    {"amor", "a m ˈ o ɾ"},                 // final r tap, final stress
    {"vaca", "b ˈ a k a"},                 // v -> b
    {"hola", "ˈ o l a"},                   // silent h
    {"yo", "ʝ ˈ o"},                       // consonantal y
    {"rey", "r ˈ e j"},                    // y glide, final stress after y
    {"y", "ˈ i"},                          // vocalic y
    {"niño", "n ˈ i ɲ o"},                 // ñ
    {"reloj", "r e l ˈ o x"},              // final j, final stress
    {"ciudad", "θ j u d ˈ a d"},           // iu: second weak vowel is the nucleus
    {"pingüino", "p i n g w ˈ i n o"},     // gü
    {"árbol", "ˈ a ɾ b o l"},              // accent on first syllable
    {"lápiz", "l ˈ a p i θ"},              // accent, final z
    {"canción", "k a n θ j ˈ o n"},        // accent on final syllable
    {"examen", "e k s ˈ a m e n"},         // x -> k s, penultimate after n
    {"honra", "ˈ o n r a"},                // r after n trill
    {"israel", "i s r a ˈ e l"},           // r after s trill, hiatus ae
    {"ciencia", "θ j ˈ e n θ j a"},        // two diphthongs
    {"agua", "ˈ a g w a"},                 // gu + a keeps u as glide
    {"kilo", "k ˈ i l o"},                 // loanword k
    {"web", "w ˈ e b"},                    // loanword w
    {"máquina", "m ˈ a k i n a"},          // accent on antepenultimate
    {"teléfono", "t e l ˈ e f o n o"},     // accent on antepenultimate
    {"ratón", "r a t ˈ o n"},              // initial r, accent
    {"muy", "m ˈ u j"},                    // uy: y stays a glide
    {"fuego", "f w ˈ e g o"},              // ue diphthong
    {"guiso", "g ˈ i s o"},                // gu + i
    {"quince", "k ˈ i n θ e"},             // qu + i, c + e
    {"acción", "a k θ j ˈ o n"},           // cc -> k θ
    {"tres", "t ɾ ˈ e s"},                 // cluster r tap, monosyllable
    {"ñandú", "ɲ a n d ˈ u"},              // accent on final vowel
    {"mayo", "m ˈ a ʝ o"},                 // intervocalic y
    {"huevo", "w ˈ e b o"},                // h + ue
    {"país", "p a ˈ i s"},                 // accented í breaks the diphthong
};

inline constexpr std::pair<long, std::string_view> kGoldenCardinals[] = {
    {0, "cero"},
    {1, "uno"},
    {15, "quince"},
    {16, "dieciséis"},
    {21, "veintiuno"},
    {22, "veintidós"},
    {30, "treinta"},
    {42, "cuarenta y dos"},
    {99, "noventa y nueve"},
    {100, "cien"},
    {101, "ciento uno"},
    {115, "ciento quince"},
    {200, "doscientos"},
    {555, "quinientos cincuenta y cinco"},
    {1000, "mil"},
    {1001, "mil uno"},
    {2021, "dos mil veintiuno"},
    {21000, "veintiuno mil"},
    {100000, "cien mil"},
    {999999, "novecientos noventa y nueve mil novecientos noventa y nueve"},
};

}  // namespace tts::oracle
