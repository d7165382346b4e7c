#include "necorr/channel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "necorr/error.hpp"
#include "necorr/random.hpp"

namespace necorr {

ChannelParams ChannelParams::preset(std::string_view name) {
  ChannelParams p;
  if (name == "identity") return p;
  if (name == "confusion") {
    p.p_surface_confuse = 1.0;
    return p;
  }
  if (name == "default") {
    p.p_phon_sub = 0.05;
    p.p_phon_ins = 0.02;
    p.p_phon_del = 0.02;
    p.p_surface_confuse = 0.5;
    p.p_miss = 0.1;
    p.p_false = 0.05;
    return p;
  }
  throw ConfigError("unknown channel preset '" + std::string(name) +
                    "' (expected default|identity|confusion)");
}

void ChannelParams::validate() const {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
  };
  check(p_phon_sub, "p_phon_sub");
  check(p_phon_ins, "p_phon_ins");
  check(p_phon_del, "p_phon_del");
  check(p_surface_confuse, "p_surface_confuse");
  check(p_miss, "p_miss");
  check(p_false, "p_false");
  check(p_plain_sub, "p_plain_sub");
  if (p_phon_sub + p_phon_ins + p_phon_del > 1.0)
    throw ConfigError("p_phon_sub + p_phon_ins + p_phon_del exceeds 1");
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_probability(const std::string& text, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw FormatError("not a number: '" + text + "'", line);
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

ChannelParams read_channel_config(std::istream& in, ChannelParams base) {
  ChannelParams p = base;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto line = trim(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("expected key = value", line_no);
    auto key = trim(std::string_view(line).substr(0, eq));
    auto value = trim(std::string_view(line).substr(eq + 1));

    if (key == "preset") {
      auto seed = p.seed;
      p = ChannelParams::preset(value);
      p.seed = seed;
    } else if (key == "seed") {
      std::uint64_t s = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || ptr != value.data() + value.size())
        throw FormatError("seed must be an unsigned integer", line_no);
      p.seed = s;
    } else if (key == "p_phon_sub") {
      p.p_phon_sub = parse_probability(value, line_no);
    } else if (key == "p_phon_ins") {
      p.p_phon_ins = parse_probability(value, line_no);
    } else if (key == "p_phon_del") {
      p.p_phon_del = parse_probability(value, line_no);
    } else if (key == "p_surface_confuse") {
      p.p_surface_confuse = parse_probability(value, line_no);
    } else if (key == "p_miss") {
      p.p_miss = parse_probability(value, line_no);
    } else if (key == "p_false") {
      p.p_false = parse_probability(value, line_no);
    } else if (key == "p_plain_sub") {
      p.p_plain_sub = parse_probability(value, line_no);
    } else {
      throw FormatError("unknown key '" + key + "'", line_no);
    }
  }
  p.validate();
  return p;
}

ChannelParams load_channel_config(const std::filesystem::path& path,
                                  ChannelParams base) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open channel config " + path.string());
  return read_channel_config(in, base);
}

void write_channel_config(std::ostream& out, const ChannelParams& p) {
  out << "seed = " << p.seed << '\n'
      << "p_phon_sub = " << format_double(p.p_phon_sub) << '\n'
      << "p_phon_ins = " << format_double(p.p_phon_ins) << '\n'
      << "p_phon_del = " << format_double(p.p_phon_del) << '\n'
      << "p_surface_confuse = " << format_double(p.p_surface_confuse) << '\n'
      << "p_miss = " << format_double(p.p_miss) << '\n'
      << "p_false = " << format_double(p.p_false) << '\n'
      << "p_plain_sub = " << format_double(p.p_plain_sub) << '\n';
}

void ConfusionTable::add(const TokenSeq& phonemes, std::vector<TokenSeq> variants) {
  auto& slot = table_[phonemes];
  for (auto& v : variants) {
    if (v.empty()) throw FormatError("empty confusion variant");
    if (std::find(slot.begin(), slot.end(), v) == slot.end())
      slot.push_back(std::move(v));
  }
}

const std::vector<TokenSeq>* ConfusionTable::find(const TokenSeq& phonemes) const {
  auto it = table_.find(phonemes);
  if (it == table_.end() || it->second.empty()) return nullptr;
  return &it->second;
}

ConfusionTable ConfusionTable::from_jsonl(std::istream& in) {
  using nlohmann::json;
  ConfusionTable table;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto obj = json::parse(line);
      table.add(obj.at("phonemes").get<TokenSeq>(),
                obj.at("variants").get<std::vector<TokenSeq>>());
    } catch (const json::exception& e) {
      throw FormatError(std::string("bad confusion entry: ") + e.what(), line_no);
    }
  }
  return table;
}

ConfusionTable ConfusionTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open confusion table " + path.string());
  return from_jsonl(in);
}

void ConfusionTable::write_jsonl(std::ostream& out) const {
  for (const auto& [phonemes, variants] : table_) {
    nlohmann::json obj = {{"phonemes", phonemes}, {"variants", variants}};
    out << obj.dump() << '\n';
  }
}

ChannelInventory ChannelInventory::from_corpus(std::span<const Reference> refs) {
  std::set<Token> phonemes, plain;
  ChannelInventory inv;
  bool first = true;
  for (const auto& ref : refs) {
    for (const auto& seg : ref.text.segments) {
      if (const auto* tok = std::get_if<Token>(&seg)) {
        plain.insert(*tok);
        continue;
      }
      const auto& span = std::get<NeSpan>(seg);
      phonemes.insert(span.phonemes.begin(), span.phonemes.end());
      const std::size_t len = span.phonemes.size();
      inv.min_span_phonemes = first ? len : std::min(inv.min_span_phonemes, len);
      inv.max_span_phonemes = first ? len : std::max(inv.max_span_phonemes, len);
      first = false;
    }
  }
  inv.phonemes.assign(phonemes.begin(), phonemes.end());
  inv.plain.assign(plain.begin(), plain.end());
  inv.min_span_phonemes = std::max<std::size_t>(1, inv.min_span_phonemes);
  inv.max_span_phonemes = std::max(inv.min_span_phonemes, inv.max_span_phonemes);
  return inv;
}

namespace {

// Uniform pick from `pool` other than `current`; `current` when impossible.
Token substitute(Rng& rng, const TokenSeq& pool, const Token& current) {
  auto it = std::lower_bound(pool.begin(), pool.end(), current);
  const bool present = it != pool.end() && *it == current;
  const std::size_t choices = pool.size() - (present ? 1 : 0);
  if (choices == 0) return current;
  std::size_t k = rng.index(choices);
  if (present && k >= static_cast<std::size_t>(it - pool.begin())) ++k;
  return pool[k];
}

TokenSeq corrupt_phonemes(Rng& rng, const TokenSeq& gold, const ChannelParams& p,
                          const TokenSeq& inventory) {
  TokenSeq out;
  out.reserve(gold.size() + 2);
  for (const auto& ph : gold) {
    const double u = rng.uniform();
    if (u < p.p_phon_del) continue;
    if (u < p.p_phon_del + p.p_phon_sub) {
      out.push_back(substitute(rng, inventory, ph));
    } else if (u < p.p_phon_del + p.p_phon_sub + p.p_phon_ins) {
      out.push_back(ph);
      if (!inventory.empty()) out.push_back(inventory[rng.index(inventory.size())]);
    } else {
      out.push_back(ph);
    }
  }
  return out;
}

}  // namespace

CorruptionResult corrupt(const Reference& ref, const ChannelParams& params,
                         const ConfusionTable& table,
                         const ChannelInventory& inventory) {
  Rng rng = Rng::for_stream(params.seed, ref.id());
  CorruptionResult result;
  auto& out = result.hypothesis;
  out.id = ref.id();
  // Positions in out.segments copied from reference plain tokens.
  std::vector<std::size_t> plain_slots;

  std::size_t n = 0;
  for (const auto& seg : ref.text.segments) {
    if (const auto* tok = std::get_if<Token>(&seg)) {
      Token t = *tok;
      if (rng.uniform() < params.p_plain_sub) t = substitute(rng, inventory.plain, t);
      plain_slots.push_back(out.segments.size());
      out.segments.emplace_back(std::move(t));
      continue;
    }
    ++n;
    const auto& gold = std::get<NeSpan>(seg);
    TokenSeq surface = gold.surface;
    if (rng.uniform() < params.p_surface_confuse) {
      if (const auto* variants = table.find(gold.phonemes))
        surface = (*variants)[rng.index(variants->size())];
      else
        result.missing_confusion.push_back(n);
    }
    if (rng.uniform() < params.p_miss) {
      for (auto& t : surface) out.segments.emplace_back(std::move(t));
      continue;
    }
    out.segments.emplace_back(NeSpan{
        std::move(surface),
        corrupt_phonemes(rng, gold.phonemes, params, inventory.phonemes)});
  }

  if (rng.uniform() < params.p_false && !plain_slots.empty() &&
      !inventory.phonemes.empty()) {
    const std::size_t k = rng.index(plain_slots.size());
    std::size_t run = 1;
    if (k + 1 < plain_slots.size() && plain_slots[k + 1] == plain_slots[k] + 1)
      run += rng.index(2);
    const std::size_t len =
        rng.between(inventory.min_span_phonemes, inventory.max_span_phonemes);
    TokenSeq phonemes;
    for (std::size_t i = 0; i < len; ++i)
      phonemes.push_back(inventory.phonemes[rng.index(inventory.phonemes.size())]);

    const std::size_t first = plain_slots[k];
    NeSpan spurious;
    for (std::size_t i = 0; i < run; ++i)
      spurious.surface.push_back(std::get<Token>(out.segments[first + i]));
    spurious.phonemes = std::move(phonemes);
    out.segments.erase(out.segments.begin() + static_cast<std::ptrdiff_t>(first),
                       out.segments.begin() + static_cast<std::ptrdiff_t>(first + run));
    out.segments.insert(out.segments.begin() + static_cast<std::ptrdiff_t>(first),
                        Segment{std::move(spurious)});
  }
  return result;
}

std::vector<NeaHypothesis> corrupt_corpus(std::span<const Reference> refs,
                                          const ChannelParams& params,
                                          const ConfusionTable& table,
                                          std::size_t* missing_confusion) {
  params.validate();
  auto inventory = ChannelInventory::from_corpus(refs);
  std::vector<NeaHypothesis> out;
  out.reserve(refs.size());
  std::size_t missing = 0;
  for (const auto& ref : refs) {
    auto r = corrupt(ref, params, table, inventory);
    missing += r.missing_confusion.size();
    out.push_back(std::move(r.hypothesis));
  }
  if (missing_confusion) *missing_confusion = missing;
  return out;
}

}  // namespace necorr
