#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "necorr/channel.hpp"
#include "necorr/corrector.hpp"
#include "necorr/error.hpp"
#include "necorr/io.hpp"
#include "necorr/lexicon.hpp"
#include "necorr/scoring.hpp"
#include "necorr/similarity.hpp"
#include "necorr/sweep.hpp"
#include "necorr/synthetic.hpp"

namespace necorr::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// Records were read but rejected; maps to kExitData.
class DataError : public Error {
 public:
  using Error::Error;
};

void require_file(const fs::path& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string(flag) + " is required");
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw ConfigError(std::string(flag) + ": cannot read " + path.string());
}

void require_output_dir(const fs::path& path, const char* flag) {
  if (path.empty()) return;
  auto parent = path.parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec))
    throw ConfigError(std::string(flag) + ": no such directory " + parent.string());
}

// Dictionaries and channel files are configuration: their errors are usage
// errors, not data errors.
template <class F>
auto load_config(const fs::path& path, const char* flag, F&& load) {
  require_file(path, flag);
  try {
    return load();
  } catch (const Error& e) {
    throw ConfigError(std::string(flag) + " " + path.string() + ": " + e.what());
  }
}

template <class F>
auto load_data(F&& load) {
  try {
    return load();
  } catch (const FormatError& e) {
    throw DataError(e.what());
  } catch (const MalformedSpan& e) {
    throw DataError(e.what());
  }
}

void emit(const fs::path& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

FormatConfig markers(const RunConfig& cfg) {
  return FormatConfig::from_name(cfg.markers);
}

ChannelParams channel_params(const RunConfig& cfg) {
  auto params = ChannelParams::preset(cfg.preset);
  if (!cfg.channel_config.empty())
    params = load_config(cfg.channel_config, "--channel-config", [&] {
      return load_channel_config(cfg.channel_config, params);
    });
  if (cfg.seed) params.seed = *cfg.seed;
  params.validate();
  return params;
}

ConfusionTable confusion_table(const RunConfig& cfg) {
  if (cfg.confusion.empty()) return {};
  return load_config(cfg.confusion, "--confusion",
                     [&] { return ConfusionTable::load(cfg.confusion); });
}

Lexicon dictionary(const RunConfig& cfg) {
  return load_config(cfg.dict, "--dict", [&] { return load_lexicon(cfg.dict); });
}

std::vector<Reference> references(const RunConfig& cfg) {
  require_file(cfg.refs, "--refs");
  auto fmt = markers(cfg);
  return load_data([&] { return read_references(cfg.refs, fmt); });
}

json ops_json(const EditOps& ops) {
  return {{"S", ops.substitutions},
          {"I", ops.insertions},
          {"D", ops.deletions},
          {"N", ops.reference_length},
          {"errors", ops.errors()}};
}

json rate_or_null(const EditOps& ops) {
  return ops.reference_length == 0 ? json(nullptr) : json(ops.rate());
}

json counts_json(const ClassCounts& c) {
  return {{"extracted", c.extracted},
          {"substitution_pre", c.substitution_pre},
          {"substitution_post", c.substitution_post},
          {"recovered", c.recovered},
          {"regressed", c.regressed}};
}

json breakdown_json(const BreakdownReport& b) {
  auto ext = b.extracted();
  // Shares of the extracted spans; these three sum to 1.
  auto share = [&](const ClassCounts& c) {
    return ext.extracted == 0 ? 0.0
                              : static_cast<double>(c.extracted) /
                                    static_cast<double>(ext.extracted);
  };
  return {{"reference_spans", b.reference_spans},
          {"extracted_shares",
           {{"in_vocabulary", share(b.in_vocabulary)},
            {"out_of_vocabulary", share(b.out_of_vocabulary)},
            {"unknown_vocabulary", share(b.unknown_vocabulary)}}},
          {"not_extracted", b.not_extracted},
          {"spurious", b.spurious},
          {"extracted", counts_json(ext)},
          {"in_vocabulary", counts_json(b.in_vocabulary)},
          {"out_of_vocabulary", counts_json(b.out_of_vocabulary)},
          {"unknown_vocabulary", counts_json(b.unknown_vocabulary)},
          {"fractions",
           {{"not_extracted", b.fraction(b.not_extracted)},
            {"substitution_pre", b.fraction(ext.substitution_pre)},
            {"substitution_post", b.fraction(ext.substitution_post)}}}};
}

void summarize_missing(std::size_t missing, std::ostream& err) {
  if (missing > 0)
    err << "warning: " << missing
        << " span(s) drawn for confusion have no confusion-table entry\n";
}

}  // namespace

int cmd_correct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto th = Threshold::parse(cfg.threshold);
  auto fmt = markers(cfg);
  require_file(cfg.input, "--in");
  require_output_dir(cfg.output, "--out");
  require_output_dir(cfg.decisions, "--decisions");
  auto lex = dictionary(cfg);

  auto lines = read_lines(cfg.input);
  auto batch = correct_batch(lines, infer_line_format(cfg.input), fmt, lex, th,
                             cfg.jobs);

  std::string corrected, decisions;
  for (const auto& item : batch.items) {
    if (const auto* skip = std::get_if<SkipRecord>(&item)) {
      err << cfg.input.string() << ":" << skip->line << ": skipped: "
          << skip->reason << "\n";
      continue;
    }
    const auto& o = std::get<CorrectionOutcome>(item);
    corrected += render_corrected(o) + "\n";
    decisions += render_decisions(o) + "\n";
  }
  if (cfg.strict && batch.skipped > 0)
    throw DataError(std::to_string(batch.skipped) +
                    " malformed utterance(s) under --strict; nothing written");

  emit(cfg.output, corrected, out);
  if (!cfg.decisions.empty()) write_file_atomic(cfg.decisions, decisions);
  err << "utterances=" << batch.utterances << " spans=" << batch.spans
      << " replaced=" << batch.replaced << " skipped=" << batch.skipped << "\n";
  return kExitOk;
}

int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_file(cfg.hyps, "--hyps");
  if (!cfg.hyps_raw.empty()) require_file(cfg.hyps_raw, "--hyps-raw");
  require_output_dir(cfg.report, "--report");
  VocabList vocab;
  if (!cfg.vocab.empty())
    vocab = load_config(cfg.vocab, "--vocab",
                        [&] { return VocabList::load(cfg.vocab); });

  auto refs = references(cfg);
  auto hyps = load_data([&] { return read_corrected(cfg.hyps); });
  auto score = score_corpus(refs, hyps, cfg.per_utt);
  if (cfg.require_ne && score.entities == 0)
    throw DataError("references contain no named-entity spans (--require-ne)");

  json report = {{"utterances", score.utterances},
                 {"entities", score.entities},
                 {"cer_all", rate_or_null(score.all)},
                 {"cer_ne", rate_or_null(score.ne)},
                 {"ops",
                  {{"all", ops_json(score.all)},
                   {"ne", ops_json(score.ne)},
                   {"ne_false_alarms", score.false_alarms}}}};

  if (!cfg.hyps_raw.empty()) {
    auto fmt = markers(cfg);
    auto raw = load_data([&] { return read_hypotheses(cfg.hyps_raw, fmt); });
    report["breakdown"] = breakdown_json(
        breakdown(refs, raw, hyps, cfg.vocab.empty() ? nullptr : &vocab));
  }
  if (cfg.per_utt) {
    json rows = json::array();
    for (const auto& u : score.per_utterance) {
      json ne = ops_json(u.ne.ops);
      ne["false_alarms"] = u.ne.false_alarms;
      rows.push_back({{"id", u.id},
                      {"entities", u.entities},
                      {"cer_all", rate_or_null(u.all)},
                      {"cer_ne", rate_or_null(u.ne.ops)},
                      {"all", ops_json(u.all)},
                      {"ne", ne}});
    }
    report["per_utterance"] = std::move(rows);
  }

  emit(cfg.report, report.dump(2) + "\n", out);
  char line[128];
  std::snprintf(line, sizeof line, "utterances=%zu entities=%zu cer_all=%.4f",
                score.utterances, score.entities,
                score.all.reference_length ? score.cer_all() : 0.0);
  err << line;
  if (score.entities > 0) {
    std::snprintf(line, sizeof line, " cer_ne=%.4f", score.cer_ne());
    err << line;
  }
  err << "\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto params = channel_params(cfg);
  auto table = confusion_table(cfg);
  auto fmt = markers(cfg);
  require_output_dir(cfg.output, "--out");
  auto refs = references(cfg);

  std::size_t missing = 0;
  auto hyps = corrupt_corpus(refs, params, table, &missing);
  const auto format =
      cfg.output.empty() ? LineFormat::kJsonl : infer_line_format(cfg.output);
  std::string text;
  for (const auto& h : hyps) text += render_hypothesis(h, format, fmt) + "\n";
  emit(cfg.output, text, out);
  summarize_missing(missing, err);
  err << "utterances=" << hyps.size() << " seed=" << params.seed << "\n";
  return kExitOk;
}

int cmd_sweep_dict(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto th = Threshold::parse(cfg.threshold);
  auto params = channel_params(cfg);
  auto table = confusion_table(cfg);
  require_output_dir(cfg.output, "--out");
  require_output_dir(cfg.json, "--json");
  auto lex = dictionary(cfg);
  auto refs = references(cfg);

  std::size_t missing = 0;
  corrupt_corpus(refs, params, table, &missing);
  auto rows = run_dict_sweep(refs, lex, cfg.sizes, params, table, th, cfg.jobs);
  emit(cfg.output, dict_sweep_csv(rows), out);
  if (!cfg.json.empty()) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"I", r.size},
                     {"cer_all", r.score.cer_all()},
                     {"cer_ne", r.score.cer_ne()},
                     {"ne", ops_json(r.score.ne)},
                     {"all", ops_json(r.score.all)}});
    write_file_atomic(cfg.json, doc.dump(2) + "\n");
  }
  summarize_missing(missing, err);
  err << "rows=" << rows.size() << " seed=" << params.seed << "\n";
  return kExitOk;
}

int cmd_sweep_threshold(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  std::vector<Threshold> thresholds;
  for (const auto& t : cfg.thresholds) thresholds.push_back(Threshold::parse(t));
  auto params = channel_params(cfg);
  auto table = confusion_table(cfg);
  require_output_dir(cfg.output, "--out");
  require_output_dir(cfg.json, "--json");
  auto lex = dictionary(cfg);
  auto refs = references(cfg);

  std::size_t missing = 0;
  corrupt_corpus(refs, params, table, &missing);
  auto rows = run_threshold_sweep(refs, lex, thresholds, params, table, cfg.jobs);
  emit(cfg.output, threshold_sweep_csv(rows), out);
  if (!cfg.json.empty()) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"v_th", format_threshold(r.threshold)},
                     {"cer_all", r.score.cer_all()},
                     {"cer_ne", r.score.cer_ne()},
                     {"replaced", r.replaced},
                     {"ne", ops_json(r.score.ne)},
                     {"all", ops_json(r.score.all)}});
    write_file_atomic(cfg.json, doc.dump(2) + "\n");
  }
  summarize_missing(missing, err);
  err << "rows=" << rows.size() << " seed=" << params.seed << "\n";
  return kExitOk;
}

int cmd_sim(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto s = gestalt_similarity(cfg.sim_a, cfg.sim_b);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", s.value());
  out << "k=" << s.matched << " r=" << buf
      << " exact=" << s.ratio().reduced().to_string() << "\n";
  return kExitOk;
}

int cmd_make_corpus(const RunConfig& cfg, std::ostream&, std::ostream& err) {
  if (cfg.out_dir.empty()) throw ConfigError("--out-dir is required");
  SyntheticConfig sc;
  sc.utterances = cfg.utterances;
  sc.names = cfg.names;
  sc.lexicon_size = cfg.lexicon_size;
  sc.variants_per_name = cfg.variants;
  sc.entity_rate = cfg.entity_rate;
  sc.second_entity_rate = cfg.second_entity_rate;
  sc.iv_fraction = cfg.iv_fraction;
  if (cfg.seed) sc.seed = *cfg.seed;
  auto corpus = make_synthetic_corpus(sc);

  fs::create_directories(cfg.out_dir);
  auto fmt = markers(cfg);
  std::string refs;
  std::set<std::string> iv;
  for (const auto& r : corpus.refs) {
    refs += render_reference(r, LineFormat::kJsonl, fmt) + "\n";
    std::size_t n = 0;
    for (const auto& seg : r.text.segments) {
      const auto* span = std::get_if<NeSpan>(&seg);
      if (!span) continue;
      ++n;
      if (r.span_in_vocabulary(n).value_or(false)) {
        std::string line;
        for (const auto& t : span->surface) line += (line.empty() ? "" : " ") + t;
        iv.insert(line);
      }
    }
  }
  write_file_atomic(cfg.out_dir / "refs.jsonl", refs);

  std::ostringstream lex, conf;
  write_lexicon_tsv(lex, corpus.lexicon);
  write_file_atomic(cfg.out_dir / "lexicon.tsv", lex.str());
  corpus.confusion.write_jsonl(conf);
  write_file_atomic(cfg.out_dir / "confusion.jsonl", conf.str());
  std::string vocab;
  for (const auto& v : iv) vocab += v + "\n";
  write_file_atomic(cfg.out_dir / "vocab.txt", vocab);

  err << "utterances=" << corpus.refs.size()
      << " lexicon=" << corpus.lexicon.size()
      << " confusion=" << corpus.confusion.size() << "\n";
  return kExitOk;
}

namespace {

// `sim a b c -- x y z`; CLI11 would swallow the separator.
int run_sim(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  cfg.subcommand = "sim";
  bool second = false;
  for (int i = 2; i < argc; ++i) {
    std::string_view arg = argv[i];
    if (arg == "-h" || arg == "--help") {
      out << "usage: necorr sim A_TOKENS... -- B_TOKENS...\n"
             "Prints the matched count k and the gestalt ratio r.\n";
      return kExitOk;
    }
    if (arg == "--" && !second) {
      second = true;
      continue;
    }
    (second ? cfg.sim_b : cfg.sim_a).emplace_back(arg);
  }
  if (!second) {
    err << "error: sim needs two token lists separated by --\n";
    return kExitUsage;
  }
  return cmd_sim(cfg, out, err);
}

void add_markers(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--markers", cfg.markers, "Marker set: safe or paper")
      ->check(CLI::IsMember({"safe", "paper"}))
      ->capture_default_str();
}

void add_channel(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--preset", cfg.preset, "Channel preset: default, identity, confusion")
      ->check(CLI::IsMember({"default", "identity", "confusion"}))
      ->capture_default_str();
  sub->add_option("--channel-config", cfg.channel_config, "Key-value channel config");
  sub->add_option("--confusion", cfg.confusion, "Confusion table (JSONL)");
  sub->add_option("--seed", cfg.seed, "Channel seed");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (argc >= 2 && std::string_view(argv[1]) == "sim")
    return run_sim(argc, argv, out, err);

  RunConfig cfg;
  CLI::App app{"Named-entity error correction for tagged ASR hypotheses", "necorr"};
  app.require_subcommand(1);

  auto* correct = app.add_subcommand("correct", "Correct NE spans against a dictionary");
  correct->add_option("--dict", cfg.dict, "Dictionary (.tsv or .jsonl)")->required();
  correct->add_option("--in", cfg.input, "NEA hypotheses (.jsonl or marker text)")->required();
  correct->add_option("--out", cfg.output, "Corrected JSONL (default: stdout)");
  correct->add_option("--decisions", cfg.decisions, "Per-span decisions JSONL");
  correct->add_option("--threshold", cfg.threshold, "Replacement threshold")->capture_default_str();
  correct->add_flag("--strict", cfg.strict, "Fail on any malformed utterance");
  correct->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_markers(correct, cfg);

  auto* score = app.add_subcommand("score", "Compute CER-all, CER-NE and the breakdown");
  score->add_option("--refs", cfg.refs, "Annotated references")->required();
  score->add_option("--hyps", cfg.hyps, "Corrected JSONL")->required();
  score->add_option("--hyps-raw", cfg.hyps_raw, "NEA hypotheses before correction");
  score->add_option("--vocab", cfg.vocab, "In-vocabulary surfaces, one per line");
  score->add_option("--report", cfg.report, "report.json (default: stdout)");
  score->add_flag("--per-utt", cfg.per_utt, "Include per-utterance detail");
  score->add_flag("--require-ne", cfg.require_ne, "Fail when references have no NE span");
  add_markers(score, cfg);

  auto* simulate = app.add_subcommand("simulate", "Corrupt references into NEA hypotheses");
  simulate->add_option("--refs", cfg.refs, "Annotated references")->required();
  simulate->add_option("--out", cfg.output, "Hypotheses (default: JSONL on stdout)");
  add_channel(simulate, cfg);
  add_markers(simulate, cfg);

  auto* sweep_dict = app.add_subcommand("sweep-dict", "CER-NE over dictionary sizes");
  auto* sweep_th = app.add_subcommand("sweep-threshold", "CER over thresholds");
  for (auto* sub : {sweep_dict, sweep_th}) {
    sub->add_option("--refs", cfg.refs, "Annotated references")->required();
    sub->add_option("--dict", cfg.dict, "Base dictionary")->required();
    sub->add_option("--out", cfg.output, "CSV (default: stdout)");
    sub->add_option("--json", cfg.json, "Per-row detail as JSON");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_channel(sub, cfg);
    add_markers(sub, cfg);
  }
  sweep_dict->add_option("--sizes", cfg.sizes, "Dictionary sizes I")
      ->delimiter(',')
      ->capture_default_str();
  sweep_dict->add_option("--threshold", cfg.threshold, "Replacement threshold")
      ->capture_default_str();
  sweep_th->add_option("--thresholds", cfg.thresholds, "Threshold grid")
      ->delimiter(',')
      ->capture_default_str();

  app.add_subcommand("sim", "Debug similarity: sim A... -- B...");

  auto* make = app.add_subcommand("make-corpus", "Write a synthetic evaluation set");
  make->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  make->add_option("--utterances", cfg.utterances)->capture_default_str();
  make->add_option("--names", cfg.names)->capture_default_str();
  make->add_option("--lexicon-size", cfg.lexicon_size)->capture_default_str();
  make->add_option("--variants", cfg.variants)->capture_default_str();
  make->add_option("--entity-rate", cfg.entity_rate)->capture_default_str();
  make->add_option("--second-entity-rate", cfg.second_entity_rate)->capture_default_str();
  make->add_option("--iv-fraction", cfg.iv_fraction)->capture_default_str();
  make->add_option("--seed", cfg.seed, "Generator seed (default 1)");
  add_markers(make, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (cfg.subcommand == "correct") return cmd_correct(cfg, out, err);
    if (cfg.subcommand == "score") return cmd_score(cfg, out, err);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out, err);
    if (cfg.subcommand == "sweep-dict") return cmd_sweep_dict(cfg, out, err);
    if (cfg.subcommand == "sweep-threshold") return cmd_sweep_threshold(cfg, out, err);
    if (cfg.subcommand == "make-corpus") return cmd_make_corpus(cfg, out, err);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const IdMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: sim takes its tokens as: necorr sim A... -- B...\n";
  return kExitUsage;
}

}  // namespace necorr::cli
