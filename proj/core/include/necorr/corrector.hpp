#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "necorr/lexicon.hpp"
#include "necorr/nea_format.hpp"
#include "necorr/rational.hpp"
#include "necorr/similarity.hpp"

namespace necorr {

/// Replacement gate V_th in [0, 1]. A span is replaced when its best
/// similarity is strictly greater than V_th; at V_th = 1 an exact match
/// (r = 1) also passes, so 1 means "exact phoneme match only".
class Threshold {
 public:
  /// Throws ConfigError outside [0, 1].
  explicit Threshold(Rational value);
  /// Decimal or fraction text, parsed exactly ("0.8" is 4/5).
  static Threshold parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }
  bool admits(const Rational& similarity) const noexcept;

 private:
  Rational value_;
};

inline constexpr std::string_view kDefaultThreshold = "0.8";

enum class SpanAction { kReplaced, kKept, kNoLexicon, kDegenerateEmpty };

const char* to_string(SpanAction action);

struct SpanDecision {
  std::size_t span_index = 0;  // n, 1-based
  SimilarityScore r_max;
  std::optional<std::size_t> maxi;  // 1-based lexicon index
  SpanAction action = SpanAction::kKept;
  bool tie = false;

  friend bool operator==(const SpanDecision&, const SpanDecision&) = default;
};

struct CorrectionOutcome {
  std::string id;
  /// Plain output tokens: no markers, no phonemes.
  TokenSeq corrected;
  /// owner[i] = 1-based span that emitted corrected[i], 0 for plain tokens.
  std::vector<std::size_t> owner;
  std::vector<SpanDecision> decisions;
  std::size_t similarity_calls = 0;

  friend bool operator==(const CorrectionOutcome&,
                         const CorrectionOutcome&) = default;
};

/// Per-span lookup, threshold gate, then replacement of the surface with the
/// best dictionary entry or keeping it. Markers and phonemes are always
/// dropped from the output. Spans are independent of each other.
CorrectionOutcome correct(const NeaHypothesis& h, const Lexicon& lex,
                          const Threshold& th);

/// Utterance that failed to parse in a batch.
struct SkipRecord {
  std::size_t line = 0;  // 1-based
  std::string reason;

  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

using BatchItem = std::variant<CorrectionOutcome, SkipRecord>;

struct BatchResult {
  std::vector<BatchItem> items;  // input order
  std::size_t utterances = 0;
  std::size_t spans = 0;
  std::size_t replaced = 0;
  std::size_t skipped = 0;
};

/// Parses and corrects each non-blank line; malformed lines become
/// SkipRecords. `jobs` > 1 spreads utterances over threads; output order is
/// the input order either way.
BatchResult correct_batch(std::span<const std::string> lines, LineFormat format,
                          const FormatConfig& fmt, const Lexicon& lex,
                          const Threshold& th, unsigned jobs = 1);

std::vector<CorrectionOutcome> correct_all(std::span<const NeaHypothesis> hyps,
                                           const Lexicon& lex,
                                           const Threshold& th,
                                           unsigned jobs = 1);

/// Output of the "no correction" path: markers and phonemes removed,
/// surfaces kept.
CorrectionOutcome strip(const NeaHypothesis& h);

}  // namespace necorr
