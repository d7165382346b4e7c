#pragma once

// NE-aware token sequences: plain tokens interleaved with entity spans of the
// form  SNE surface... SEP phoneme... ENE.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace necorr {

/// Opaque non-empty token: a surface unit or a phoneme symbol.
using Token = std::string;
using TokenSeq = std::vector<Token>;

struct NeSpan {
  TokenSeq surface;
  TokenSeq phonemes;

  /// Parsed with no phonemes; the corrector can never match it.
  bool degenerate() const noexcept { return phonemes.empty(); }

  friend bool operator==(const NeSpan&, const NeSpan&) = default;
};

using Segment = std::variant<Token, NeSpan>;

struct NeaHypothesis {
  std::string id;
  std::vector<Segment> segments;

  std::size_t entity_count() const noexcept;

  friend bool operator==(const NeaHypothesis&, const NeaHypothesis&) = default;
};

/// Gold annotation. Every span carries its phonemes; `in_vocabulary` is
/// either empty or holds one optional flag per span.
struct Reference {
  NeaHypothesis text;
  std::vector<std::optional<bool>> in_vocabulary;

  const std::string& id() const noexcept { return text.id; }
  std::optional<bool> span_in_vocabulary(std::size_t n) const;

  friend bool operator==(const Reference&, const Reference&) = default;
};

/// Marker triple. The default is unambiguous; `paper()` gives the literal
/// `<` `,` `>` triple, which makes a bare comma token unusable.
struct FormatConfig {
  std::string sne = "<SNE>";
  std::string sep = "<SEP>";
  std::string ene = "<ENE>";

  static FormatConfig safe() { return {}; }
  static FormatConfig paper() { return {"<", ",", ">"}; }
  /// "safe" or "paper".
  static FormatConfig from_name(std::string_view name);

  bool is_marker(std::string_view token) const noexcept {
    return token == sne || token == sep || token == ene;
  }
};

enum class LineFormat { kJsonl, kMarkerText };

/// ".jsonl"/".json" select JSONL, anything else the marker-text form.
LineFormat infer_line_format(const std::filesystem::path& path);

/// Runs the marker state machine over an already tokenized utterance.
/// Throws MalformedSpan with the index of the offending token.
NeaHypothesis parse_tokens(std::string id, std::span<const Token> tokens,
                           const FormatConfig& fmt);

/// Inverse of parse_tokens. Throws ReservedTokenCollision if any token is a
/// marker under `fmt`.
TokenSeq render_tokens(const NeaHypothesis& h, const FormatConfig& fmt);

/// Parses one serialized utterance. In marker-text form the id is the
/// 1-based line number. Throws FormatError or MalformedSpan.
NeaHypothesis parse_hypothesis(std::string_view line, std::size_t line_number,
                               LineFormat format, const FormatConfig& fmt);

std::string render_hypothesis(const NeaHypothesis& h, LineFormat format,
                              const FormatConfig& fmt);

/// Like parse_hypothesis, plus the optional `iv_flags` array (JSONL only).
/// Spans without phonemes are rejected.
Reference parse_reference(std::string_view line, std::size_t line_number,
                          LineFormat format, const FormatConfig& fmt);

std::string render_reference(const Reference& ref, LineFormat format,
                             const FormatConfig& fmt);

/// Phonemes of the n-th entity, 1-based. Throws IndexOutOfRange.
const TokenSeq& extract_phoneme(const NeaHypothesis& h, std::size_t n);

/// n-th entity span, 1-based. Throws IndexOutOfRange.
const NeSpan& entity(const NeaHypothesis& h, std::size_t n);

/// Token stream with markers and phonemes removed. `owner[i]` is the
/// 1-based entity that produced tokens[i], or 0 for a plain token.
struct FlatText {
  TokenSeq tokens;
  std::vector<std::size_t> owner;
};

FlatText flatten(const NeaHypothesis& h);

}  // namespace necorr
