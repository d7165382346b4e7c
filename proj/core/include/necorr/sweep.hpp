#pragma once

// Experiment drivers: corrupt a reference set once, then correct and score
// it under a range of dictionary sizes or thresholds.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "necorr/channel.hpp"
#include "necorr/corrector.hpp"
#include "necorr/lexicon.hpp"
#include "necorr/scoring.hpp"

namespace necorr {

struct DictSweepRow {
  std::size_t size = 0;  // I, entries actually used
  CorpusScore score;
};

/// For each I in `sizes`, corrects with the first I lexicon entries.
/// I = 0 is the no-dictionary condition.
std::vector<DictSweepRow> run_dict_sweep(std::span<const Reference> refs,
                                         const Lexicon& base,
                                         std::span<const std::size_t> sizes,
                                         const ChannelParams& params,
                                         const ConfusionTable& table,
                                         const Threshold& th,
                                         unsigned jobs = 1);

struct ThresholdSweepRow {
  Threshold threshold;
  CorpusScore score;
  std::size_t replaced = 0;
};

std::vector<ThresholdSweepRow> run_threshold_sweep(
    std::span<const Reference> refs, const Lexicon& lex,
    std::span<const Threshold> thresholds, const ChannelParams& params,
    const ConfusionTable& table, unsigned jobs = 1);

/// "I,cer_ne" with one row per size; rates as fractions, 6 decimals.
std::string dict_sweep_csv(std::span<const DictSweepRow> rows);
/// "v_th,cer_all,cer_ne".
std::string threshold_sweep_csv(std::span<const ThresholdSweepRow> rows);

/// Shortest decimal text for a threshold ("0", "0.5", "1").
std::string format_threshold(const Threshold& th);

}  // namespace necorr
