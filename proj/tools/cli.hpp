#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace necorr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // bad flags, config or unreadable files
  kExitData = 2,   // input records rejected (strict mode, id mismatch, ...)
};

struct RunConfig {
  std::string subcommand;

  std::filesystem::path input;   // correct --in
  std::filesystem::path output;  // empty = standard output
  std::filesystem::path decisions;
  std::filesystem::path dict;
  std::filesystem::path refs;
  std::filesystem::path hyps;
  std::filesystem::path hyps_raw;
  std::filesystem::path vocab;
  std::filesystem::path report;
  std::filesystem::path json;  // sweep detail
  std::filesystem::path channel_config;
  std::filesystem::path confusion;
  std::filesystem::path out_dir;  // make-corpus

  std::string threshold = "0.8";
  std::string markers = "safe";
  std::string preset = "default";
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> sizes{0, 33, 100, 1000};
  std::vector<std::string> thresholds{"0", "0.5", "0.8", "1"};

  bool strict = false;
  bool per_utt = false;
  bool require_ne = false;
  unsigned jobs = 1;

  // make-corpus
  std::size_t utterances = 500;
  std::size_t names = 33;
  std::size_t lexicon_size = 1000;
  std::size_t variants = 2;
  double entity_rate = 1.0;
  double second_entity_rate = 0.2;
  double iv_fraction = 0.6;

  // sim
  std::vector<std::string> sim_a;
  std::vector<std::string> sim_b;
};

int cmd_correct(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep_dict(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep_threshold(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err);
int cmd_sim(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_make_corpus(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace necorr::cli
