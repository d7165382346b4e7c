#pragma once

// Character error rates over whole utterances (CER-all) and over the target
// named entities (CER-NE), plus the per-entity outcome breakdown.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "necorr/corrector.hpp"
#include "necorr/nea_format.hpp"

namespace necorr {

enum class EditKind { kMatch, kSubstitution, kInsertion, kDeletion };

/// One step of an alignment. For insertions `ref_pos` is the insertion
/// point (index of the next reference token); for deletions `hyp_pos` is
/// the index of the next hypothesis token.
struct AlignedOp {
  EditKind kind;
  std::size_t ref_pos;
  std::size_t hyp_pos;

  friend bool operator==(const AlignedOp&, const AlignedOp&) = default;
};

struct EditOps {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_length = 0;

  std::size_t errors() const noexcept {
    return substitutions + insertions + deletions;
  }
  /// (S + I + D) / N. Throws EmptyReference when N = 0.
  double rate() const;

  EditOps& operator+=(const EditOps& o) noexcept {
    substitutions += o.substitutions;
    insertions += o.insertions;
    deletions += o.deletions;
    reference_length += o.reference_length;
    return *this;
  }
  friend bool operator==(const EditOps&, const EditOps&) = default;
};

struct Alignment {
  std::vector<AlignedOp> ops;
  EditOps totals;

  double cer() const { return totals.rate(); }
};

/// Minimum edit distance alignment. Among optimal paths the backtrace
/// prefers match, then substitution, then deletion, then insertion.
/// Throws EmptyReference for an empty reference.
Alignment align(std::span<const Token> ref, std::span<const Token> hyp);

/// NE-restricted counts. Reference-side errors follow the reference spans;
/// `false_alarms` counts substitutions and insertions of hypothesis tokens
/// emitted by an entity span on non-entity reference positions (these are
/// included in `ops`).
struct NeScore {
  EditOps ops;
  std::size_t false_alarms = 0;

  double rate() const { return ops.rate(); }
};

/// Splits an alignment into its NE part. `ref_owner` / `hyp_owner` give the
/// 1-based span of each token (0 = plain); an empty `hyp_owner` means the
/// hypothesis carries no span information.
NeScore attribute_ne(const Alignment& alignment,
                     std::span<const std::size_t> ref_owner,
                     std::span<const std::size_t> hyp_owner = {});

/// CER-NE of one utterance. Throws NoNeSpans if the reference has no span.
NeScore cer_ne(const Reference& ref, std::span<const Token> hyp,
               std::span<const std::size_t> hyp_owner = {});

struct UtteranceScore {
  std::string id;
  EditOps all;
  NeScore ne;
  std::size_t entities = 0;
};

UtteranceScore score_utterance(const Reference& ref,
                               const CorrectionOutcome& hyp);

struct CorpusScore {
  EditOps all;
  EditOps ne;
  std::size_t false_alarms = 0;
  std::size_t utterances = 0;
  std::size_t entities = 0;
  std::vector<UtteranceScore> per_utterance;

  double cer_all() const { return all.rate(); }
  /// Throws NoNeSpans when no reference carries a span.
  double cer_ne() const;
};

/// Pairs hypotheses with references by id (any order). Throws IdMismatch
/// when the id sets differ or an id repeats.
CorpusScore score_corpus(std::span<const Reference> refs,
                         std::span<const CorrectionOutcome> hyps,
                         bool keep_per_utterance = false);

/// Known in-vocabulary entity spellings, one space-joined surface per line.
class VocabList {
 public:
  VocabList() = default;
  static VocabList load(const std::filesystem::path& path);
  static VocabList from_stream(std::istream& in);
  void add(const TokenSeq& surface);
  bool contains(const TokenSeq& surface) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::set<std::string> entries_;
};

enum class VocabularyClass { kIn, kOut, kUnknown };

/// Outcome counts for extracted reference spans of one vocabulary class.
/// A span counts as a substitution error when its reference tokens are not
/// all matched one-to-one (or something is inserted inside it).
struct ClassCounts {
  std::size_t extracted = 0;
  std::size_t substitution_pre = 0;
  std::size_t substitution_post = 0;
  std::size_t recovered = 0;  // wrong before correction, right after
  std::size_t regressed = 0;  // right before, wrong after

  ClassCounts& operator+=(const ClassCounts& o) noexcept;
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

struct BreakdownReport {
  std::size_t reference_spans = 0;
  std::size_t not_extracted = 0;
  std::size_t spurious = 0;  // hypothesis spans matched to no reference span
  ClassCounts in_vocabulary;
  ClassCounts out_of_vocabulary;
  ClassCounts unknown_vocabulary;

  ClassCounts extracted() const;
  /// share of reference spans
  double fraction(std::size_t count) const;
};

/// Classifies each reference span: extracted or not (a hypothesis span
/// whose aligned reference interval overlaps it; one-to-one by largest
/// overlap, ties to the earliest spans), IV/OOV from the reference flag or
/// the vocab list, and correctness before/after correction.
/// All three streams must share one id set. Throws IdMismatch.
BreakdownReport breakdown(std::span<const Reference> refs,
                          std::span<const NeaHypothesis> before,
                          std::span<const CorrectionOutcome> after,
                          const VocabList* vocab = nullptr);

}  // namespace necorr
