#include <benchmark/benchmark.h>

#include "necorr/channel.hpp"
#include "necorr/corrector.hpp"
#include "necorr/synthetic.hpp"

namespace {

struct Setup {
  necorr::SyntheticCorpus corpus;
  std::vector<necorr::NeaHypothesis> hyps;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup out;
    necorr::SyntheticConfig sc;
    sc.utterances = 200;
    out.corpus = necorr::make_synthetic_corpus(sc);
    auto params = necorr::ChannelParams::preset("default");
    params.seed = 1;
    out.hyps = necorr::corrupt_corpus(out.corpus.refs, params, out.corpus.confusion);
    return out;
  }();
  return s;
}

// One utterance batch against dictionaries of growing size.
void BM_CorrectBatch(benchmark::State& state) {
  const auto& s = setup();
  const auto lex = s.corpus.lexicon.prefix(static_cast<std::size_t>(state.range(0)));
  const auto th = necorr::Threshold::parse("0.8");
  std::size_t spans = 0;
  for (const auto& h : s.hyps) spans += h.entity_count();
  for (auto _ : state) benchmark::DoNotOptimize(necorr::correct_all(s.hyps, lex, th));
  state.counters["spans/s"] = benchmark::Counter(
      static_cast<double>(spans), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_CorrectBatch)->Arg(33)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BestMatch(benchmark::State& state) {
  const auto& s = setup();
  const auto& query = s.corpus.lexicon.at(1).phonemes;
  for (auto _ : state) benchmark::DoNotOptimize(s.corpus.lexicon.best_match(query));
}
BENCHMARK(BM_BestMatch)->Unit(benchmark::kMicrosecond);

}  // namespace
