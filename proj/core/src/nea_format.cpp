#include "necorr/nea_format.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "necorr/error.hpp"

namespace necorr {

using json = nlohmann::json;

std::size_t NeaHypothesis::entity_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(segments.begin(), segments.end(), [](const Segment& s) {
        return std::holds_alternative<NeSpan>(s);
      }));
}

std::optional<bool> Reference::span_in_vocabulary(std::size_t n) const {
  if (n == 0 || n > in_vocabulary.size()) return std::nullopt;
  return in_vocabulary[n - 1];
}

FormatConfig FormatConfig::from_name(std::string_view name) {
  if (name == "safe") return safe();
  if (name == "paper") return paper();
  throw ConfigError("unknown marker mode '" + std::string(name) +
                    "' (expected paper|safe)");
}

LineFormat infer_line_format(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return (ext == ".jsonl" || ext == ".json") ? LineFormat::kJsonl
                                             : LineFormat::kMarkerText;
}

NeaHypothesis parse_tokens(std::string id, std::span<const Token> tokens,
                           const FormatConfig& fmt) {
  enum class State { kOutside, kSurface, kPhonemes };
  using Kind = MalformedSpan::Kind;

  NeaHypothesis h{std::move(id), {}};
  State state = State::kOutside;
  NeSpan current;
  std::size_t open_at = 0;

  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    const Token& tok = tokens[pos];
    if (tok.empty()) throw MalformedSpan(Kind::kEmptyToken, pos);

    if (tok == fmt.sne) {
      if (state != State::kOutside) throw MalformedSpan(Kind::kNestedStart, pos);
      state = State::kSurface;
      open_at = pos;
      current = {};
    } else if (tok == fmt.sep) {
      if (state != State::kSurface)
        throw MalformedSpan(Kind::kStraySeparator, pos);
      if (current.surface.empty())
        throw MalformedSpan(Kind::kEmptySurface, pos);
      state = State::kPhonemes;
    } else if (tok == fmt.ene) {
      if (state == State::kOutside)
        throw MalformedSpan(Kind::kEndWithoutStart, pos);
      if (state == State::kSurface)
        throw MalformedSpan(Kind::kMissingSeparator, pos);
      h.segments.emplace_back(std::move(current));
      current = {};
      state = State::kOutside;
    } else {
      switch (state) {
        case State::kOutside:
          h.segments.emplace_back(tok);
          break;
        case State::kSurface:
          current.surface.push_back(tok);
          break;
        case State::kPhonemes:
          current.phonemes.push_back(tok);
          break;
      }
    }
  }
  if (state != State::kOutside)
    throw MalformedSpan(Kind::kUnclosedStart, open_at);
  return h;
}

TokenSeq render_tokens(const NeaHypothesis& h, const FormatConfig& fmt) {
  TokenSeq out;
  auto put = [&](const Token& t) {
    if (fmt.is_marker(t)) throw ReservedTokenCollision(t);
    out.push_back(t);
  };
  for (const auto& seg : h.segments) {
    if (const auto* plain = std::get_if<Token>(&seg)) {
      put(*plain);
      continue;
    }
    const auto& span = std::get<NeSpan>(seg);
    out.push_back(fmt.sne);
    for (const auto& t : span.surface) put(t);
    out.push_back(fmt.sep);
    for (const auto& t : span.phonemes) put(t);
    out.push_back(fmt.ene);
  }
  return out;
}

namespace {

TokenSeq split_whitespace(std::string_view line) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

json parse_object(std::string_view line, std::size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what(), line_number);
  }
  if (!obj.is_object()) throw FormatError("expected a JSON object", line_number);
  return obj;
}

TokenSeq string_array(const json& obj, const char* key, std::size_t line_number) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array())
    throw FormatError(std::string("missing array field '") + key + "'",
                      line_number);
  TokenSeq out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string())
      throw FormatError(std::string("non-string element in '") + key + "'",
                        line_number);
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_id(const json& obj, std::size_t line_number) {
  auto it = obj.find("id");
  if (it == obj.end()) throw FormatError("missing field 'id'", line_number);
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw FormatError("field 'id' must be a string", line_number);
}

std::string join_text(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.empty() || std::any_of(t.begin(), t.end(), [](unsigned char c) {
          return std::isspace(c);
        }))
      throw FormatError("token '" + t + "' cannot be written in marker-text form");
    if (i) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

NeaHypothesis parse_hypothesis(std::string_view line, std::size_t line_number,
                               LineFormat format, const FormatConfig& fmt) {
  if (format == LineFormat::kMarkerText) {
    auto tokens = split_whitespace(line);
    return parse_tokens(std::to_string(line_number), tokens, fmt);
  }
  auto obj = parse_object(line, line_number);
  auto tokens = string_array(obj, "tokens", line_number);
  return parse_tokens(string_id(obj, line_number), tokens, fmt);
}

std::string render_hypothesis(const NeaHypothesis& h, LineFormat format,
                              const FormatConfig& fmt) {
  auto tokens = render_tokens(h, fmt);
  if (format == LineFormat::kMarkerText) return join_text(tokens);
  json obj = {{"id", h.id}, {"tokens", tokens}};
  return obj.dump();
}

Reference parse_reference(std::string_view line, std::size_t line_number,
                          LineFormat format, const FormatConfig& fmt) {
  Reference ref;
  if (format == LineFormat::kMarkerText) {
    ref.text = parse_hypothesis(line, line_number, format, fmt);
  } else {
    auto obj = parse_object(line, line_number);
    auto tokens = string_array(obj, "tokens", line_number);
    ref.text = parse_tokens(string_id(obj, line_number), tokens, fmt);
    if (auto it = obj.find("iv_flags"); it != obj.end() && !it->is_null()) {
      if (!it->is_array())
        throw FormatError("'iv_flags' must be an array", line_number);
      for (const auto& v : *it) {
        if (v.is_null())
          ref.in_vocabulary.emplace_back(std::nullopt);
        else if (v.is_boolean())
          ref.in_vocabulary.emplace_back(v.get<bool>());
        else
          throw FormatError("'iv_flags' elements must be booleans",
                            line_number);
      }
      if (ref.in_vocabulary.size() != ref.text.entity_count())
        throw FormatError("'iv_flags' length differs from the span count",
                          line_number);
    }
  }
  std::size_t n = 0;
  for (const auto& seg : ref.text.segments) {
    if (const auto* span = std::get_if<NeSpan>(&seg)) {
      ++n;
      if (span->degenerate())
        throw FormatError("reference span " + std::to_string(n) +
                              " has no phonemes",
                          line_number);
    }
  }
  return ref;
}

std::string render_reference(const Reference& ref, LineFormat format,
                             const FormatConfig& fmt) {
  if (format == LineFormat::kMarkerText || ref.in_vocabulary.empty())
    return render_hypothesis(ref.text, format, fmt);
  json flags = json::array();
  for (const auto& f : ref.in_vocabulary) {
    if (f)
      flags.push_back(*f);
    else
      flags.push_back(nullptr);
  }
  json obj = {{"id", ref.text.id},
              {"tokens", render_tokens(ref.text, fmt)},
              {"iv_flags", flags}};
  return obj.dump();
}

const NeSpan& entity(const NeaHypothesis& h, std::size_t n) {
  if (n >= 1) {
    std::size_t seen = 0;
    for (const auto& seg : h.segments) {
      if (const auto* span = std::get_if<NeSpan>(&seg)) {
        if (++seen == n) return *span;
      }
    }
  }
  throw IndexOutOfRange("entity index " + std::to_string(n) +
                        " out of range 1.." +
                        std::to_string(h.entity_count()));
}

const TokenSeq& extract_phoneme(const NeaHypothesis& h, std::size_t n) {
  return entity(h, n).phonemes;
}

FlatText flatten(const NeaHypothesis& h) {
  FlatText flat;
  std::size_t n = 0;
  for (const auto& seg : h.segments) {
    if (const auto* plain = std::get_if<Token>(&seg)) {
      flat.tokens.push_back(*plain);
      flat.owner.push_back(0);
      continue;
    }
    ++n;
    for (const auto& t : std::get<NeSpan>(seg).surface) {
      flat.tokens.push_back(t);
      flat.owner.push_back(n);
    }
  }
  return flat;
}

}  // namespace necorr
