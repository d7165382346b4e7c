#include "necorr/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>

#include "necorr/error.hpp"
#include "necorr/random.hpp"

namespace necorr {

namespace {

constexpr const char* kConsonants[] = {"",  "k", "s", "t", "n", "h", "m", "y",
                                       "r", "w", "g", "z", "d", "b", "p"};
constexpr const char* kVowels[] = {"a", "i", "u", "e", "o"};
constexpr std::size_t kSpellingsPerReading = 4;

std::string utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

struct Name {
  std::vector<TokenSeq> groups;  // phonemes per reading group
  TokenSeq phonemes;
};

class NameFactory {
 public:
  explicit NameFactory(Rng& rng) : rng_(rng) {}

  Name reading() {
    Name name;
    const std::size_t groups = 2;
    for (std::size_t g = 0; g < groups; ++g) {
      TokenSeq group;
      const std::size_t morae = rng_.between(1, 2);
      for (std::size_t m = 0; m < morae; ++m) {
        const char* c = kConsonants[rng_.index(std::size(kConsonants))];
        if (*c) group.emplace_back(c);
        group.emplace_back(kVowels[rng_.index(std::size(kVowels))]);
      }
      name.phonemes.insert(name.phonemes.end(), group.begin(), group.end());
      name.groups.push_back(std::move(group));
    }
    return name;
  }

  // Ideographs that can write a reading group; fixed once first requested.
  const std::vector<Token>& spellings(const TokenSeq& group) {
    auto [it, fresh] = pools_.try_emplace(group);
    if (fresh) {
      std::set<Token> chosen;
      while (chosen.size() < kSpellingsPerReading)
        chosen.insert(utf8(0x4E00 + static_cast<char32_t>(rng_.index(0x5000))));
      it->second.assign(chosen.begin(), chosen.end());
    }
    return it->second;
  }

  TokenSeq spell(const Name& name) {
    TokenSeq surface;
    for (const auto& g : name.groups) {
      const auto& pool = spellings(g);
      surface.push_back(pool[rng_.index(pool.size())]);
    }
    return surface;
  }

  // Up to `count` spellings of `name` that differ from `gold` in every
  // reading group, the way 安倍 and 阿部 share no character.
  std::vector<TokenSeq> variants(const Name& name, const TokenSeq& gold,
                                 std::size_t count) {
    std::vector<TokenSeq> all{{}};
    for (std::size_t g = 0; g < name.groups.size(); ++g) {
      std::vector<TokenSeq> next;
      for (const auto& prefix : all)
        for (const auto& ch : spellings(name.groups[g])) {
          if (ch == gold[g]) continue;
          auto s = prefix;
          s.push_back(ch);
          next.push_back(std::move(s));
        }
      all = std::move(next);
    }
    std::vector<TokenSeq> picked;
    while (picked.size() < count && !all.empty()) {
      const std::size_t k = rng_.index(all.size());
      picked.push_back(std::move(all[k]));
      all.erase(all.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return picked;
  }

 private:
  Rng& rng_;
  std::map<TokenSeq, std::vector<Token>> pools_;
};

}  // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticConfig& config) {
  if (config.names == 0) throw ConfigError("synthetic corpus needs names >= 1");
  if (config.lexicon_size < config.names)
    throw ConfigError("lexicon_size must be at least names");

  Rng rng(splitmix64(config.seed));
  NameFactory factory(rng);
  SyntheticCorpus corpus;

  struct Gold {
    Name name;
    TokenSeq surface;
    bool in_vocabulary;
  };
  std::vector<Gold> gold;
  std::set<TokenSeq> readings;
  while (gold.size() < config.names) {
    auto name = factory.reading();
    if (!readings.insert(name.phonemes).second) continue;
    auto surface = factory.spell(name);
    gold.push_back({std::move(name), std::move(surface),
                    rng.bernoulli(config.iv_fraction)});
  }

  std::vector<DictEntry> entries;
  for (const auto& g : gold) {
    entries.push_back({g.surface, g.name.phonemes});
    corpus.confusion.add(g.name.phonemes,
                         factory.variants(g.name, g.surface,
                                          config.variants_per_name));
  }
  while (entries.size() < config.lexicon_size) {
    auto name = factory.reading();
    entries.push_back({factory.spell(name), name.phonemes});
  }
  corpus.lexicon = Lexicon(std::move(entries));

  // Plain text: single hiragana tokens.
  TokenSeq kana;
  for (char32_t cp = 0x3042; cp < 0x3042 + 40; ++cp) kana.push_back(utf8(cp));

  for (std::size_t u = 0; u < config.utterances; ++u) {
    char id[32];
    std::snprintf(id, sizeof id, "utt%05zu", u + 1);
    Reference ref;
    ref.text.id = id;

    std::vector<Segment> plain;
    const std::size_t length = rng.between(4, 12);
    for (std::size_t i = 0; i < length; ++i)
      plain.emplace_back(kana[rng.index(kana.size())]);

    std::size_t spans = 0;
    if (rng.bernoulli(config.entity_rate))
      spans = rng.bernoulli(config.second_entity_rate) ? 2 : 1;

    // Entities go into distinct gaps between plain tokens, in order.
    std::vector<std::size_t> gaps;
    while (gaps.size() < spans) {
      auto g = rng.index(length + 1);
      if (std::find(gaps.begin(), gaps.end(), g) == gaps.end()) gaps.push_back(g);
    }
    std::sort(gaps.begin(), gaps.end());

    std::size_t next_gap = 0;
    for (std::size_t i = 0; i <= length; ++i) {
      while (next_gap < gaps.size() && gaps[next_gap] == i) {
        const auto& g = gold[rng.index(gold.size())];
        ref.text.segments.emplace_back(NeSpan{g.surface, g.name.phonemes});
        ref.in_vocabulary.emplace_back(g.in_vocabulary);
        ++next_gap;
      }
      if (i < length) ref.text.segments.push_back(plain[i]);
    }
    corpus.refs.push_back(std::move(ref));
  }
  return corpus;
}

}  // namespace necorr
