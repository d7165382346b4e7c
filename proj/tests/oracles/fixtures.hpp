#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "necorr/nea_format.hpp"

namespace testing_util {

inline std::vector<std::string> split(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// "x [a b] y" -> reference with one span {surface [a b], phonemes [p]}.
// Phonemes do not matter for scoring, only for the corrector.
inline necorr::Reference bracket_reference(const std::string& text,
                                           const std::string& id = "u") {
  necorr::Reference ref;
  ref.text.id = id;
  necorr::NeSpan span;
  bool open = false;
  for (const auto& t : split(text)) {
    if (t == "[") {
      open = true;
      span = {};
    } else if (t == "]") {
      span.phonemes = {"p"};
      ref.text.segments.emplace_back(span);
      ref.in_vocabulary.emplace_back();
      open = false;
    } else if (open) {
      span.surface.push_back(t);
    } else {
      ref.text.segments.emplace_back(t);
    }
  }
  return ref;
}

}  // namespace testing_util
