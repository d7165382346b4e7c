#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "necorr/nea_format.hpp"
#include "necorr/similarity.hpp"

namespace necorr {

struct DictEntry {
  TokenSeq surface;
  TokenSeq phonemes;

  friend bool operator==(const DictEntry&, const DictEntry&) = default;
};

/// Result of scanning the lexicon for one phoneme query.
struct BestMatch {
  std::size_t index = 0;  // 1-based, smallest index attaining the maximum
  SimilarityScore score;
  bool tie = false;  // another entry reaches the same ratio
  std::size_t comparisons = 0;
};

/// Ordered, immutable NE dictionary. Entries keep file order and duplicates
/// (the same phonemes under different spellings) are allowed.
class Lexicon {
 public:
  Lexicon() = default;
  /// Validates every entry; throws InvalidEntry (line = 1-based entry index).
  explicit Lexicon(std::vector<DictEntry> entries);

  /// Tab-separated: surface tokens, TAB, phoneme tokens (each space joined).
  /// Blank lines are skipped.
  static Lexicon from_tsv(std::istream& in);
  /// One {"surface": [...], "phonemes": [...]} object per line.
  static Lexicon from_jsonl(std::istream& in);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<DictEntry>& entries() const noexcept { return entries_; }
  /// 1-based.
  const DictEntry& at(std::size_t index) const;

  /// First `count` entries (all of them if count >= size()).
  Lexicon prefix(std::size_t count) const;

  /// Linear scan: exactly size() similarity evaluations. Throws EmptyLexicon.
  BestMatch best_match(const TokenSeq& query) const;

 private:
  std::vector<DictEntry> entries_;
};

/// Format chosen by extension: ".jsonl" is JSONL, anything else TSV.
/// Throws FormatError (including when the file cannot be opened).
Lexicon load_lexicon(const std::filesystem::path& path);

void write_lexicon_tsv(std::ostream& out, const Lexicon& lex);

}  // namespace necorr
