#include "necorr/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "necorr/error.hpp"

namespace necorr {

namespace {

TokenSeq split_spaces(const std::string& column) {
  TokenSeq out;
  std::istringstream in(column);
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

void validate(const DictEntry& e, std::size_t line) {
  if (e.surface.empty())
    throw InvalidEntry(InvalidEntry::Kind::kEmptySurface, line);
  if (e.phonemes.empty())
    throw InvalidEntry(InvalidEntry::Kind::kEmptyPhonemes, line);
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string join(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

Lexicon::Lexicon(std::vector<DictEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) validate(entries_[i], i + 1);
}

Lexicon Lexicon::from_tsv(std::istream& in) {
  std::vector<DictEntry> entries;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError("expected <surface>TAB<phonemes>", line_no);
    if (line.find('\t', tab + 1) != std::string::npos)
      throw FormatError("more than two columns", line_no);
    DictEntry e{split_spaces(line.substr(0, tab)),
                split_spaces(line.substr(tab + 1))};
    validate(e, line_no);
    entries.push_back(std::move(e));
  }
  Lexicon lex;
  lex.entries_ = std::move(entries);
  return lex;
}

Lexicon Lexicon::from_jsonl(std::istream& in) {
  using nlohmann::json;
  std::vector<DictEntry> entries;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    DictEntry e;
    try {
      e.surface = obj.at("surface").get<TokenSeq>();
      e.phonemes = obj.at("phonemes").get<TokenSeq>();
    } catch (const json::exception&) {
      throw FormatError("expected {\"surface\": [...], \"phonemes\": [...]}",
                        line_no);
    }
    validate(e, line_no);
    entries.push_back(std::move(e));
  }
  Lexicon lex;
  lex.entries_ = std::move(entries);
  return lex;
}

const DictEntry& Lexicon::at(std::size_t index) const {
  if (index == 0 || index > entries_.size())
    throw IndexOutOfRange("lexicon index " + std::to_string(index) +
                          " out of range 1.." + std::to_string(entries_.size()));
  return entries_[index - 1];
}

Lexicon Lexicon::prefix(std::size_t count) const {
  Lexicon lex;
  count = std::min(count, entries_.size());
  lex.entries_.assign(entries_.begin(), entries_.begin() + count);
  return lex;
}

BestMatch Lexicon::best_match(const TokenSeq& query) const {
  if (entries_.empty()) throw EmptyLexicon();
  BestMatch best;
  Rational best_ratio;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto score = gestalt_similarity(entries_[i].phonemes, query);
    ++best.comparisons;
    auto ratio = score.ratio();
    if (i == 0 || ratio > best_ratio) {
      best.index = i + 1;
      best.score = score;
      best.tie = false;
      best_ratio = ratio;
    } else if (ratio == best_ratio) {
      best.tie = true;
    }
  }
  return best;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open dictionary " + path.string());
  return path.extension() == ".jsonl" ? Lexicon::from_jsonl(in)
                                      : Lexicon::from_tsv(in);
}

void write_lexicon_tsv(std::ostream& out, const Lexicon& lex) {
  for (const auto& e : lex.entries())
    out << join(e.surface) << '\t' << join(e.phonemes) << '\n';
}

}  // namespace necorr
