#include "necorr/corrector.hpp"

#include <algorithm>
#include <thread>

#include "necorr/error.hpp"

namespace necorr {

Threshold::Threshold(Rational value) : value_(value) {
  if (value_ > Rational(1, 1))
    throw ConfigError("threshold must lie in [0, 1], got " +
                      value_.reduced().to_string());
}

Threshold Threshold::parse(std::string_view text) {
  return Threshold(Rational::parse(text));
}

bool Threshold::admits(const Rational& similarity) const noexcept {
  if (similarity > value_) return true;
  return value_ == Rational(1, 1) && similarity == Rational(1, 1);
}

const char* to_string(SpanAction action) {
  switch (action) {
    case SpanAction::kReplaced:
      return "replaced";
    case SpanAction::kKept:
      return "kept";
    case SpanAction::kNoLexicon:
      return "no_lexicon";
    case SpanAction::kDegenerateEmpty:
      return "degenerate_empty";
  }
  return "?";
}

namespace {

void emit(CorrectionOutcome& out, const TokenSeq& tokens, std::size_t owner) {
  for (const auto& t : tokens) {
    out.corrected.push_back(t);
    out.owner.push_back(owner);
  }
}

template <class Decide>
CorrectionOutcome walk(const NeaHypothesis& h, Decide&& decide) {
  CorrectionOutcome out;
  out.id = h.id;
  std::size_t n = 0;
  for (const auto& seg : h.segments) {
    if (const auto* plain = std::get_if<Token>(&seg)) {
      out.corrected.push_back(*plain);
      out.owner.push_back(0);
      continue;
    }
    ++n;
    const auto& span = std::get<NeSpan>(seg);
    emit(out, decide(out, span, n), n);
  }
  return out;
}

}  // namespace

CorrectionOutcome correct(const NeaHypothesis& h, const Lexicon& lex,
                          const Threshold& th) {
  return walk(h, [&](CorrectionOutcome& out, const NeSpan& span,
                     std::size_t n) -> const TokenSeq& {
    SpanDecision d;
    d.span_index = n;
    d.r_max = {0, span.phonemes.size()};

    if (lex.empty()) {
      d.action = SpanAction::kNoLexicon;
      out.decisions.push_back(d);
      return span.surface;
    }

    auto best = lex.best_match(span.phonemes);
    out.similarity_calls += best.comparisons;
    d.r_max = best.score;

    if (span.degenerate()) {
      d.action = SpanAction::kDegenerateEmpty;
      out.decisions.push_back(d);
      return span.surface;
    }

    d.maxi = best.index;
    d.tie = best.tie;
    if (th.admits(best.score.ratio())) {
      d.action = SpanAction::kReplaced;
      out.decisions.push_back(d);
      return lex.at(best.index).surface;
    }
    d.action = SpanAction::kKept;
    out.decisions.push_back(d);
    return span.surface;
  });
}

CorrectionOutcome strip(const NeaHypothesis& h) {
  return walk(h, [](CorrectionOutcome& out, const NeSpan& span,
                    std::size_t n) -> const TokenSeq& {
    SpanDecision d;
    d.span_index = n;
    d.r_max = {0, span.phonemes.size()};
    d.action = SpanAction::kNoLexicon;
    out.decisions.push_back(d);
    return span.surface;
  });
}

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads, contiguous chunks.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

BatchResult correct_batch(std::span<const std::string> lines, LineFormat format,
                          const FormatConfig& fmt, const Lexicon& lex,
                          const Threshold& th, unsigned jobs) {
  std::vector<std::size_t> line_index;
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!blank(lines[i])) line_index.push_back(i);

  std::vector<BatchItem> items(line_index.size());
  parallel_for(line_index.size(), jobs, [&](std::size_t k) {
    const std::size_t i = line_index[k];
    try {
      auto h = parse_hypothesis(lines[i], i + 1, format, fmt);
      items[k] = correct(h, lex, th);
    } catch (const Error& e) {
      items[k] = SkipRecord{i + 1, e.what()};
    }
  });

  BatchResult result;
  for (const auto& item : items) {
    if (const auto* out = std::get_if<CorrectionOutcome>(&item)) {
      ++result.utterances;
      result.spans += out->decisions.size();
      result.replaced += static_cast<std::size_t>(std::count_if(
          out->decisions.begin(), out->decisions.end(),
          [](const SpanDecision& d) { return d.action == SpanAction::kReplaced; }));
    } else {
      ++result.skipped;
    }
  }
  result.items = std::move(items);
  return result;
}

std::vector<CorrectionOutcome> correct_all(std::span<const NeaHypothesis> hyps,
                                           const Lexicon& lex,
                                           const Threshold& th,
                                           unsigned jobs) {
  std::vector<CorrectionOutcome> out(hyps.size());
  parallel_for(hyps.size(), jobs,
               [&](std::size_t i) { out[i] = correct(hyps[i], lex, th); });
  return out;
}

}  // namespace necorr
