#pragma once

#include <filesystem>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "tts/error.hpp"

namespace tts::corpus {

struct ManifestEntry {
  std::string id;
  std::string audio_path;  // relative to the corpus root
  std::string transcript;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

/// UTF-8 TSV, `id<TAB>path<TAB>transcript` per line, no header. Blank lines
/// are skipped. Tabs inside the transcript are kept.
inline CorpusManifest parse_manifest(const std::string& text) {
  CorpusManifest m;
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error("manifest line " + std::to_string(line_no) + ": expected id<TAB>path<TAB>transcript");
    }
    ManifestEntry e{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)};
    if (e.id.empty()) throw Error("manifest line " + std::to_string(line_no) + ": empty id");
    if (e.id.find('/') != std::string::npos || e.id == "." || e.id == "..") {
      throw Error("manifest line " + std::to_string(line_no) + ": id '" + e.id + "' is not a valid file stem");
    }
    if (e.audio_path.empty()) throw Error("manifest line " + std::to_string(line_no) + ": empty audio path");
    if (!seen.insert(e.id).second) {
      throw Error("manifest line " + std::to_string(line_no) + ": duplicate id '" + e.id + "'");
    }
    m.entries.push_back(std::move(e));
  }
  return m;
}

inline std::string format_manifest(const CorpusManifest& m) {
  std::string out;
  for (const auto& e : m.entries) out += e.id + '\t' + e.audio_path + '\t' + e.transcript + '\n';
  return out;
}

inline std::filesystem::path resolve_audio(const std::filesystem::path& root, const ManifestEntry& e) {
  const std::filesystem::path p(e.audio_path);
  return p.is_absolute() ? p : root / p;
}

}  // namespace tts::corpus
