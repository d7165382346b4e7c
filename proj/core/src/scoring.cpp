#include "necorr/scoring.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <tuple>
#include <unordered_map>

#include "necorr/error.hpp"

namespace necorr {

double EditOps::rate() const {
  if (reference_length == 0) throw EmptyReference();
  return static_cast<double>(errors()) / static_cast<double>(reference_length);
}

Alignment align(std::span<const Token> ref, std::span<const Token> hyp) {
  if (ref.empty()) throw EmptyReference();
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& {
    return cost[i * width + j];
  };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment out;
  out.totals.reference_length = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && here == at(i - 1, j - 1)) {
      out.ops.push_back({EditKind::kMatch, i - 1, j - 1});
      --i, --j;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] &&
               here == at(i - 1, j - 1) + 1) {
      out.ops.push_back({EditKind::kSubstitution, i - 1, j - 1});
      ++out.totals.substitutions;
      --i, --j;
    } else if (i > 0 && here == at(i - 1, j) + 1) {
      out.ops.push_back({EditKind::kDeletion, i - 1, j});
      ++out.totals.deletions;
      --i;
    } else {
      out.ops.push_back({EditKind::kInsertion, i, j - 1});
      ++out.totals.insertions;
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

namespace {

// Insertion strictly inside one reference span.
bool inside_span(std::span<const std::size_t> ref_owner, std::size_t point) {
  return point > 0 && point < ref_owner.size() && ref_owner[point - 1] != 0 &&
         ref_owner[point - 1] == ref_owner[point];
}

}  // namespace

NeScore attribute_ne(const Alignment& alignment,
                     std::span<const std::size_t> ref_owner,
                     std::span<const std::size_t> hyp_owner) {
  NeScore score;
  score.ops.reference_length = static_cast<std::size_t>(
      std::count_if(ref_owner.begin(), ref_owner.end(),
                    [](std::size_t o) { return o != 0; }));
  auto hyp_entity = [&](std::size_t pos) {
    return !hyp_owner.empty() && hyp_owner[pos] != 0;
  };

  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        break;
      case EditKind::kSubstitution:
        if (ref_owner[op.ref_pos] != 0) {
          ++score.ops.substitutions;
        } else if (hyp_entity(op.hyp_pos)) {
          ++score.ops.substitutions;
          ++score.false_alarms;
        }
        break;
      case EditKind::kDeletion:
        if (ref_owner[op.ref_pos] != 0) ++score.ops.deletions;
        break;
      case EditKind::kInsertion:
        if (inside_span(ref_owner, op.ref_pos)) {
          ++score.ops.insertions;
        } else if (hyp_entity(op.hyp_pos)) {
          ++score.ops.insertions;
          ++score.false_alarms;
        }
        break;
    }
  }
  return score;
}

NeScore cer_ne(const Reference& ref, std::span<const Token> hyp,
               std::span<const std::size_t> hyp_owner) {
  auto flat = flatten(ref.text);
  if (std::none_of(flat.owner.begin(), flat.owner.end(),
                   [](std::size_t o) { return o != 0; }))
    throw NoNeSpans();
  return attribute_ne(align(flat.tokens, hyp), flat.owner, hyp_owner);
}

UtteranceScore score_utterance(const Reference& ref,
                               const CorrectionOutcome& hyp) {
  auto flat = flatten(ref.text);
  UtteranceScore s;
  s.id = ref.id();
  if (flat.tokens.empty()) {
    // Nothing to align against: every output token is an insertion.
    s.all.insertions = hyp.corrected.size();
    s.ne.false_alarms = static_cast<std::size_t>(std::count_if(
        hyp.owner.begin(), hyp.owner.end(), [](std::size_t o) { return o != 0; }));
    s.ne.ops.insertions = s.ne.false_alarms;
    return s;
  }
  auto alignment = align(flat.tokens, hyp.corrected);
  s.all = alignment.totals;
  s.ne = attribute_ne(alignment, flat.owner, hyp.owner);
  s.entities = ref.text.entity_count();
  return s;
}

double CorpusScore::cer_ne() const {
  if (ne.reference_length == 0) throw NoNeSpans();
  return ne.rate();
}

namespace {

template <class T, class IdOf>
std::unordered_map<std::string, const T*> index_by_id(std::span<const T> items,
                                                     IdOf id_of,
                                                     const char* what) {
  std::unordered_map<std::string, const T*> index;
  index.reserve(items.size());
  for (const auto& item : items) {
    if (!index.emplace(id_of(item), &item).second)
      throw IdMismatch(std::string("duplicate ") + what + " id '" +
                       id_of(item) + "'");
  }
  return index;
}

template <class T>
const T& lookup(const std::unordered_map<std::string, const T*>& index,
                const std::string& id, const char* what) {
  auto it = index.find(id);
  if (it == index.end())
    throw IdMismatch(std::string("no ") + what + " for reference id '" + id + "'");
  return *it->second;
}

}  // namespace

CorpusScore score_corpus(std::span<const Reference> refs,
                         std::span<const CorrectionOutcome> hyps,
                         bool keep_per_utterance) {
  auto index = index_by_id(
      hyps, [](const CorrectionOutcome& o) { return o.id; }, "hypothesis");
  if (hyps.size() != refs.size())
    throw IdMismatch("reference and hypothesis counts differ (" +
                     std::to_string(refs.size()) + " vs " +
                     std::to_string(hyps.size()) + ")");

  CorpusScore corpus;
  for (const auto& ref : refs) {
    auto s = score_utterance(ref, lookup(index, ref.id(), "hypothesis"));
    corpus.all += s.all;
    corpus.ne += s.ne.ops;
    corpus.false_alarms += s.ne.false_alarms;
    corpus.entities += s.entities;
    ++corpus.utterances;
    if (keep_per_utterance) corpus.per_utterance.push_back(std::move(s));
  }
  return corpus;
}

VocabList VocabList::from_stream(std::istream& in) {
  VocabList v;
  std::string line;
  while (std::getline(in, line)) {
    TokenSeq tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      auto start = line.find_first_not_of(" \t\r", i);
      if (start == std::string::npos) break;
      auto end = line.find_first_of(" \t\r", start);
      if (end == std::string::npos) end = line.size();
      tokens.push_back(line.substr(start, end - start));
      i = end;
    }
    if (!tokens.empty()) v.add(tokens);
  }
  return v;
}

VocabList VocabList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open vocabulary " + path.string());
  return from_stream(in);
}

namespace {

std::string join_surface(const TokenSeq& surface) {
  std::string key;
  for (std::size_t i = 0; i < surface.size(); ++i) {
    if (i) key += ' ';
    key += surface[i];
  }
  return key;
}

}  // namespace

void VocabList::add(const TokenSeq& surface) {
  entries_.insert(join_surface(surface));
}

bool VocabList::contains(const TokenSeq& surface) const {
  return entries_.count(join_surface(surface)) != 0;
}

ClassCounts& ClassCounts::operator+=(const ClassCounts& o) noexcept {
  extracted += o.extracted;
  substitution_pre += o.substitution_pre;
  substitution_post += o.substitution_post;
  recovered += o.recovered;
  regressed += o.regressed;
  return *this;
}

ClassCounts BreakdownReport::extracted() const {
  ClassCounts all = in_vocabulary;
  all += out_of_vocabulary;
  all += unknown_vocabulary;
  return all;
}

double BreakdownReport::fraction(std::size_t count) const {
  return reference_spans == 0 ? 0.0
                              : static_cast<double>(count) /
                                    static_cast<double>(reference_spans);
}

namespace {

// correct[n] for n in 1..spans: every reference token of span n matched
// and nothing inserted inside it.
std::vector<bool> spans_reproduced(const Alignment& alignment,
                                   std::span<const std::size_t> ref_owner,
                                   std::size_t spans) {
  std::vector<bool> ok(spans + 1, true);
  for (const auto& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        break;
      case EditKind::kSubstitution:
      case EditKind::kDeletion:
        ok[ref_owner[op.ref_pos]] = false;
        break;
      case EditKind::kInsertion:
        if (inside_span(ref_owner, op.ref_pos)) ok[ref_owner[op.ref_pos]] = false;
        break;
    }
  }
  return ok;
}

struct Extraction {
  std::vector<std::size_t> ref_to_hyp;  // 0 = not extracted
  std::size_t unmatched_hyp = 0;
};

Extraction match_spans(const Alignment& alignment,
                       std::span<const std::size_t> ref_owner,
                       std::span<const std::size_t> hyp_owner,
                       std::size_t ref_spans, std::size_t hyp_spans) {
  // overlap[r][h]: reference tokens of span r aligned to tokens of span h.
  std::vector<std::vector<std::size_t>> overlap(
      ref_spans + 1, std::vector<std::size_t>(hyp_spans + 1, 0));
  for (const auto& op : alignment.ops) {
    if (op.kind != EditKind::kMatch && op.kind != EditKind::kSubstitution)
      continue;
    ++overlap[ref_owner[op.ref_pos]][hyp_owner[op.hyp_pos]];
  }

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
  for (std::size_t r = 1; r <= ref_spans; ++r)
    for (std::size_t h = 1; h <= hyp_spans; ++h)
      if (overlap[r][h] > 0) pairs.emplace_back(overlap[r][h], r, h);
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::tie(std::get<1>(x), std::get<2>(x)) <
           std::tie(std::get<1>(y), std::get<2>(y));
  });

  Extraction ex;
  ex.ref_to_hyp.assign(ref_spans + 1, 0);
  std::vector<bool> hyp_taken(hyp_spans + 1, false);
  for (const auto& [count, r, h] : pairs) {
    if (ex.ref_to_hyp[r] != 0 || hyp_taken[h]) continue;
    ex.ref_to_hyp[r] = h;
    hyp_taken[h] = true;
  }
  for (std::size_t h = 1; h <= hyp_spans; ++h)
    if (!hyp_taken[h]) ++ex.unmatched_hyp;
  return ex;
}

}  // namespace

BreakdownReport breakdown(std::span<const Reference> refs,
                          std::span<const NeaHypothesis> before,
                          std::span<const CorrectionOutcome> after,
                          const VocabList* vocab) {
  auto before_index = index_by_id(
      before, [](const NeaHypothesis& h) { return h.id; }, "raw hypothesis");
  auto after_index = index_by_id(
      after, [](const CorrectionOutcome& o) { return o.id; }, "hypothesis");
  if (before.size() != refs.size() || after.size() != refs.size())
    throw IdMismatch("reference and hypothesis streams differ in length");

  BreakdownReport report;
  for (const auto& ref : refs) {
    const auto& raw = lookup(before_index, ref.id(), "raw hypothesis");
    const auto& corrected = lookup(after_index, ref.id(), "hypothesis");

    auto ref_flat = flatten(ref.text);
    auto raw_flat = flatten(raw);
    const std::size_t ref_spans = ref.text.entity_count();
    const std::size_t hyp_spans = raw.entity_count();
    report.reference_spans += ref_spans;
    if (ref_flat.tokens.empty()) {
      report.spurious += hyp_spans;
      continue;
    }

    auto raw_alignment = align(ref_flat.tokens, raw_flat.tokens);
    auto after_alignment = align(ref_flat.tokens, corrected.corrected);
    auto ex = match_spans(raw_alignment, ref_flat.owner, raw_flat.owner,
                          ref_spans, hyp_spans);
    report.spurious += ex.unmatched_hyp;

    auto ok_before = spans_reproduced(raw_alignment, ref_flat.owner, ref_spans);
    auto ok_after = spans_reproduced(after_alignment, ref_flat.owner, ref_spans);

    for (std::size_t r = 1; r <= ref_spans; ++r) {
      if (ex.ref_to_hyp[r] == 0) {
        ++report.not_extracted;
        continue;
      }
      auto flag = ref.span_in_vocabulary(r);
      if (!flag && vocab) flag = vocab->contains(entity(ref.text, r).surface);
      ClassCounts& bucket = !flag   ? report.unknown_vocabulary
                            : *flag ? report.in_vocabulary
                                    : report.out_of_vocabulary;
      ++bucket.extracted;
      if (!ok_before[r]) ++bucket.substitution_pre;
      if (!ok_after[r]) ++bucket.substitution_post;
      if (!ok_before[r] && ok_after[r]) ++bucket.recovered;
      if (ok_before[r] && !ok_after[r]) ++bucket.regressed;
    }
  }
  return report;
}

}  // namespace necorr
