#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "necorr/channel.hpp"
#include "necorr/lexicon.hpp"
#include "necorr/nea_format.hpp"

namespace necorr {

/// Shape of a generated evaluation set. Names are Japanese-like readings
/// (one phoneme token per consonant or vowel) written with one ideograph per
/// reading group, so every reading has several spellings.
struct SyntheticConfig {
  std::size_t utterances = 500;
  std::size_t names = 33;          // distinct entities used in utterances
  std::size_t lexicon_size = 1000;  // names first, then distractors
  std::size_t variants_per_name = 2;
  double entity_rate = 1.0;         // utterances with at least one entity
  double second_entity_rate = 0.2;  // of those, with a second entity
  double iv_fraction = 0.6;
  std::uint64_t seed = 1;
};

struct SyntheticCorpus {
  std::vector<Reference> refs;
  /// The first `names` entries are exactly the in-corpus entities.
  Lexicon lexicon;
  ConfusionTable confusion;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config);

}  // namespace necorr
