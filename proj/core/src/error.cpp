#include "necorr/error.hpp"

namespace necorr {

namespace {

std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

const char* to_string(MalformedSpan::Kind kind) {
  switch (kind) {
    case MalformedSpan::Kind::kUnclosedStart:
      return "unclosed start-of-entity marker";
    case MalformedSpan::Kind::kEndWithoutStart:
      return "end-of-entity marker without start";
    case MalformedSpan::Kind::kNestedStart:
      return "nested start-of-entity marker";
    case MalformedSpan::Kind::kMissingSeparator:
      return "entity closed before the phoneme separator";
    case MalformedSpan::Kind::kStraySeparator:
      return "separator outside an entity or repeated";
    case MalformedSpan::Kind::kEmptySurface:
      return "entity with empty surface";
    case MalformedSpan::Kind::kEmptyToken:
      return "empty token";
  }
  return "malformed span";
}

MalformedSpan::MalformedSpan(Kind kind, std::size_t position)
    : Error(std::string(to_string(kind)) + " at token " +
            std::to_string(position)),
      kind_(kind),
      position_(position) {}

ReservedTokenCollision::ReservedTokenCollision(const std::string& token)
    : Error("token collides with a reserved marker: '" + token + "'") {}

InvalidEntry::InvalidEntry(Kind kind, std::size_t line)
    : FormatError(kind == Kind::kEmptySurface ? "empty surface column"
                                              : "empty phoneme column",
                  line),
      kind_(kind) {}

}  // namespace necorr
