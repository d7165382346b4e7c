#pragma once

// Seeded synthetic ASR error channel. Turns annotated references into the
// kind of NE-aware hypotheses a tagging recognizer would emit: enharmonic
// surface confusions, missed spans, phoneme errors and spurious spans.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "necorr/nea_format.hpp"

namespace necorr {

struct ChannelParams {
  double p_phon_sub = 0.0;  // per phoneme
  double p_phon_ins = 0.0;  // per phoneme, insertion after it
  double p_phon_del = 0.0;  // per phoneme
  double p_surface_confuse = 0.0;  // per span
  double p_miss = 0.0;   // per span: emitted untagged
  double p_false = 0.0;  // per utterance: a plain run tagged as an entity
  double p_plain_sub = 0.0;  // per plain token; off in every preset
  std::uint64_t seed = 0;

  /// "default", "identity" or "confusion". Throws ConfigError.
  static ChannelParams preset(std::string_view name);

  /// Probabilities in [0, 1] and p_phon_sub + p_phon_ins + p_phon_del <= 1.
  void validate() const;

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Reads `key = value` lines (`#` starts a comment) on top of `base`.
/// Keys: preset, seed, and the ChannelParams field names. A `preset` line
/// resets every field except seed to that preset.
ChannelParams read_channel_config(std::istream& in, ChannelParams base = {});
ChannelParams load_channel_config(const std::filesystem::path& path,
                                  ChannelParams base = {});
void write_channel_config(std::ostream& out, const ChannelParams& params);

/// Phoneme sequence -> enharmonic surface variants (same reading, different
/// spelling). Variants never equal the gold spelling they were built for.
class ConfusionTable {
 public:
  void add(const TokenSeq& phonemes, std::vector<TokenSeq> variants);
  /// nullptr when the reading has no entry.
  const std::vector<TokenSeq>* find(const TokenSeq& phonemes) const;
  std::size_t size() const noexcept { return table_.size(); }
  const std::map<TokenSeq, std::vector<TokenSeq>>& entries() const noexcept {
    return table_;
  }

  /// {"phonemes": [...], "variants": [[...], ...]} per line.
  static ConfusionTable from_jsonl(std::istream& in);
  static ConfusionTable load(const std::filesystem::path& path);
  void write_jsonl(std::ostream& out) const;

 private:
  std::map<TokenSeq, std::vector<TokenSeq>> table_;
};

/// Symbols the channel draws from, collected from the reference corpus.
struct ChannelInventory {
  TokenSeq phonemes;  // sorted, unique
  TokenSeq plain;     // sorted, unique
  std::size_t min_span_phonemes = 1;
  std::size_t max_span_phonemes = 1;

  static ChannelInventory from_corpus(std::span<const Reference> refs);
};

struct CorruptionResult {
  NeaHypothesis hypothesis;
  /// 1-based reference spans drawn for confusion whose reading has no table
  /// entry; they pass through unconfused.
  std::vector<std::size_t> missing_confusion;
};

/// Deterministic in (reference id, params, table, inventory). Draw order per
/// utterance: for each segment in order, a plain token takes one draw
/// (plus one index draw if substituted); a span takes a confusion draw (plus
/// a variant index), a miss draw, then per phoneme one draw (plus one index
/// draw on substitution or insertion). Finally one draw for a spurious span
/// and, if it fires, its start, length and phonemes.
CorruptionResult corrupt(const Reference& ref, const ChannelParams& params,
                         const ConfusionTable& table,
                         const ChannelInventory& inventory);

std::vector<NeaHypothesis> corrupt_corpus(std::span<const Reference> refs,
                                          const ChannelParams& params,
                                          const ConfusionTable& table,
                                          std::size_t* missing_confusion = nullptr);

}  // namespace necorr
