#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace necorr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text could not be read as the expected format. `line` is 1-based,
/// 0 when the input is not line oriented.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Marker structure of an NE-aware token sequence is broken.
class MalformedSpan : public Error {
 public:
  enum class Kind {
    kUnclosedStart,     // SNE never closed by ENE
    kEndWithoutStart,   // ENE outside a span
    kNestedStart,       // SNE inside a span
    kMissingSeparator,  // ENE reached before SEP
    kStraySeparator,    // SEP outside a span, or a second SEP in a span
    kEmptySurface,      // SEP directly after SNE
    kEmptyToken,
  };

  MalformedSpan(Kind kind, std::size_t position);

  Kind kind() const noexcept { return kind_; }
  /// Index of the offending token in the serialized token list.
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

const char* to_string(MalformedSpan::Kind kind);

class ReservedTokenCollision : public Error {
 public:
  explicit ReservedTokenCollision(const std::string& token);
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyLexicon : public Error {
 public:
  EmptyLexicon() : Error("lexicon has no entries") {}
};

/// Dictionary entry with an empty surface or phoneme column.
class InvalidEntry : public FormatError {
 public:
  enum class Kind { kEmptySurface, kEmptyPhonemes };
  InvalidEntry(Kind kind, std::size_t line);
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class EmptyReference : public Error {
 public:
  EmptyReference() : Error("reference sequence is empty") {}
};

class NoNeSpans : public Error {
 public:
  NoNeSpans() : Error("reference has no named-entity spans") {}
};

class IdMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter values (probabilities, thresholds, config keys).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace necorr
