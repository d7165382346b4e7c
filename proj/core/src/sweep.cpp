#include "necorr/sweep.hpp"

#include <charconv>
#include <cstdio>

namespace necorr {

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string format_threshold(const Threshold& th) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, th.value().to_double());
  return std::string(buf, ptr);
}

std::vector<DictSweepRow> run_dict_sweep(std::span<const Reference> refs,
                                         const Lexicon& base,
                                         std::span<const std::size_t> sizes,
                                         const ChannelParams& params,
                                         const ConfusionTable& table,
                                         const Threshold& th, unsigned jobs) {
  auto hyps = corrupt_corpus(refs, params, table);
  std::vector<DictSweepRow> rows;
  for (auto size : sizes) {
    auto lex = base.prefix(size);
    auto outcomes = correct_all(hyps, lex, th, jobs);
    rows.push_back({lex.size(), score_corpus(refs, outcomes)});
  }
  return rows;
}

std::vector<ThresholdSweepRow> run_threshold_sweep(
    std::span<const Reference> refs, const Lexicon& lex,
    std::span<const Threshold> thresholds, const ChannelParams& params,
    const ConfusionTable& table, unsigned jobs) {
  auto hyps = corrupt_corpus(refs, params, table);
  std::vector<ThresholdSweepRow> rows;
  for (const auto& th : thresholds) {
    auto outcomes = correct_all(hyps, lex, th, jobs);
    std::size_t replaced = 0;
    for (const auto& o : outcomes)
      for (const auto& d : o.decisions)
        if (d.action == SpanAction::kReplaced) ++replaced;
    rows.push_back({th, score_corpus(refs, outcomes), replaced});
  }
  return rows;
}

std::string dict_sweep_csv(std::span<const DictSweepRow> rows) {
  std::string out = "I,cer_ne\n";
  for (const auto& r : rows)
    out += std::to_string(r.size) + "," + fixed6(r.score.cer_ne()) + "\n";
  return out;
}

std::string threshold_sweep_csv(std::span<const ThresholdSweepRow> rows) {
  std::string out = "v_th,cer_all,cer_ne\n";
  for (const auto& r : rows)
    out += format_threshold(r.threshold) + "," + fixed6(r.score.cer_all()) +
           "," + fixed6(r.score.cer_ne()) + "\n";
  return out;
}

}  // namespace necorr
