#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "necorr/io.hpp"
#include "necorr/scoring.hpp"
#include "necorr/synthetic.hpp"

namespace necorr::cli {
namespace {

namespace fs = std::filesystem;
const fs::path kGolden = fs::path(NECORR_TEST_DATA) / "golden";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("necorr_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "necorr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out.str({});
    err.str({});
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
  }

  std::string path(const char* name) const { return (dir / name).string(); }
  static std::string golden(const char* name) { return (kGolden / name).string(); }

  void make_corpus(std::size_t utterances = 60) {
    ASSERT_EQ(run_cli({"make-corpus", "--out-dir", dir.string(), "--utterances",
                       std::to_string(utterances), "--seed", "3"}),
              kExitOk)
        << err.str();
  }

  fs::path dir;
  std::ostringstream out, err;
};

TEST_F(CliTest, CorrectMatchesGoldenFiles) {
  ASSERT_EQ(run_cli({"correct", "--dict", golden("lexicon.tsv"), "--in", golden("hyps.jsonl"),
                     "--out", path("c.jsonl"), "--decisions", path("d.jsonl")}),
            kExitOk)
      << err.str();
  EXPECT_EQ(slurp(dir / "c.jsonl"), slurp(kGolden / "expected_corrected.jsonl"));
  EXPECT_EQ(slurp(dir / "d.jsonl"), slurp(kGolden / "expected_decisions.jsonl"));
  EXPECT_EQ(err.str(), "utterances=4 spans=3 replaced=2 skipped=0\n");
}

TEST_F(CliTest, ScoreMatchesGoldenReport) {
  ASSERT_EQ(run_cli({"score", "--refs", golden("refs.jsonl"), "--hyps",
                     golden("expected_corrected.jsonl"), "--hyps-raw", golden("hyps.jsonl"),
                     "--report", path("r.json"), "--per-utt"}),
            kExitOk)
      << err.str();
  EXPECT_EQ(slurp(dir / "r.json"), slurp(kGolden / "expected_report.json"));
  auto report = nlohmann::json::parse(slurp(dir / "r.json"));
  EXPECT_DOUBLE_EQ(report["cer_all"].get<double>(), 1.0 / 14.0);
  EXPECT_DOUBLE_EQ(report["cer_ne"].get<double>(), 1.0 / 6.0);
}

TEST_F(CliTest, MissingDictionaryWritesNothing) {
  EXPECT_EQ(run_cli({"correct", "--dict", path("nope.tsv"), "--in", golden("hyps.jsonl"),
                     "--out", path("c.jsonl"), "--decisions", path("d.jsonl")}),
            kExitUsage);
  EXPECT_FALSE(fs::exists(dir / "c.jsonl"));
  EXPECT_FALSE(fs::exists(dir / "d.jsonl"));
  EXPECT_NE(err.str().find("--dict"), std::string::npos);
}

TEST_F(CliTest, MalformedLineSkippedUnlessStrict) {
  std::vector<std::string> args{"correct", "--dict", golden("lexicon.tsv"), "--in",
                                golden("malformed.jsonl"), "--out", path("c.jsonl")};
  EXPECT_EQ(run_cli(args), kExitOk);
  EXPECT_NE(err.str().find("malformed.jsonl:2: skipped"), std::string::npos) << err.str();
  EXPECT_EQ(read_lines(dir / "c.jsonl").size(), 2u);
  fs::remove(dir / "c.jsonl");

  args.push_back("--strict");
  EXPECT_EQ(run_cli(args), kExitData);
  EXPECT_NE(err.str().find("malformed.jsonl:2"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "c.jsonl"));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}), kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run_cli({"correct", "--in", golden("hyps.jsonl")}), kExitUsage);
  EXPECT_EQ(run_cli({"correct", "--dict", golden("lexicon.tsv"), "--in", golden("hyps.jsonl"),
                     "--threshold", "1.5"}),
            kExitUsage);
  EXPECT_EQ(run_cli({"correct", "--dict", golden("lexicon.tsv"), "--in", golden("hyps.jsonl"),
                     "--markers", "curly"}),
            kExitUsage);
  EXPECT_EQ(run_cli({"--help"}), kExitOk);
  EXPECT_EQ(run_cli({"sim", "a", "b"}), kExitUsage);
}

TEST_F(CliTest, ScoreIdenticalAndRequireNe) {
  // References scored against themselves (spans stripped).
  std::string self;
  for (const auto& ref : read_references(kGolden / "refs.jsonl", FormatConfig::safe()))
    self += render_corrected(strip(ref.text)) + "\n";
  write_file_atomic(dir / "self.jsonl", self);
  ASSERT_EQ(run_cli({"score", "--refs", golden("refs.jsonl"), "--hyps", path("self.jsonl")}),
            kExitOk);
  auto report = nlohmann::json::parse(out.str());
  EXPECT_EQ(report["cer_all"].get<double>(), 0.0);
  EXPECT_EQ(report["cer_ne"].get<double>(), 0.0);

  write_file_atomic(dir / "plain.jsonl", R"({"id":"p","tokens":["a","b"]})" "\n");
  EXPECT_EQ(run_cli({"score", "--refs", path("plain.jsonl"), "--hyps", path("plain.jsonl")}),
            kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(out.str())["cer_ne"].is_null());
  EXPECT_EQ(run_cli({"score", "--refs", path("plain.jsonl"), "--hyps", path("plain.jsonl"),
                     "--require-ne"}),
            kExitData);
  EXPECT_EQ(run_cli({"score", "--refs", golden("refs.jsonl"), "--hyps", path("plain.jsonl")}),
            kExitData);
}

TEST_F(CliTest, PipelineEqualsInProcess) {
  make_corpus();
  ASSERT_EQ(run_cli({"simulate", "--refs", path("refs.jsonl"), "--confusion",
                     path("confusion.jsonl"), "--seed", "12", "--out", path("hyps.jsonl")}),
            kExitOk);
  ASSERT_EQ(run_cli({"correct", "--dict", path("lexicon.tsv"), "--in", path("hyps.jsonl"),
                     "--out", path("c.jsonl"), "--jobs", "3"}),
            kExitOk);
  ASSERT_EQ(run_cli({"score", "--refs", path("refs.jsonl"), "--hyps", path("c.jsonl"),
                     "--report", path("r.json")}),
            kExitOk);
  auto report = nlohmann::json::parse(slurp(dir / "r.json"));

  auto fmt = FormatConfig::safe();
  auto refs = read_references(dir / "refs.jsonl", fmt);
  auto params = ChannelParams::preset("default");
  params.seed = 12;
  auto hyps = corrupt_corpus(refs, params, ConfusionTable::load(dir / "confusion.jsonl"));
  auto score = score_corpus(
      refs, correct_all(hyps, load_lexicon(dir / "lexicon.tsv"), Threshold::parse("0.8")));
  EXPECT_EQ(report["ops"]["ne"]["errors"].get<std::size_t>(), score.ne.errors());
  EXPECT_EQ(report["ops"]["all"]["errors"].get<std::size_t>(), score.all.errors());
  EXPECT_DOUBLE_EQ(report["cer_ne"].get<double>(), score.cer_ne());
}

TEST_F(CliTest, SweepsAreByteIdenticalPerSeed) {
  make_corpus(80);
  std::vector<std::string> th{"sweep-threshold", "--refs", path("refs.jsonl"), "--dict",
                              path("lexicon.tsv"), "--confusion", path("confusion.jsonl"),
                              "--seed", "7", "--thresholds", "0,0.5,0.8,1.0"};
  auto first = th, second = th;
  first.insert(first.end(), {"--out", path("t1.csv"), "--json", path("t1.json")});
  second.insert(second.end(), {"--out", path("t2.csv"), "--json", path("t2.json")});
  ASSERT_EQ(run_cli(first), kExitOk) << err.str();
  ASSERT_EQ(run_cli(second), kExitOk);
  EXPECT_EQ(slurp(dir / "t1.csv"), slurp(dir / "t2.csv"));
  EXPECT_EQ(slurp(dir / "t1.json"), slurp(dir / "t2.json"));
  auto rows = read_lines(dir / "t1.csv");
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "v_th,cer_all,cer_ne");
  EXPECT_EQ(rows[4].substr(0, 2), "1,");

  std::vector<std::string> dict{"sweep-dict", "--refs", path("refs.jsonl"), "--dict",
                                path("lexicon.tsv"), "--confusion", path("confusion.jsonl"),
                                "--seed", "7", "--sizes", "0,33,100,1000"};
  ASSERT_EQ(run_cli(dict), kExitOk) << err.str();
  auto csv = out.str();
  ASSERT_EQ(run_cli(dict), kExitOk);
  EXPECT_EQ(out.str(), csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.substr(0, 9), "I,cer_ne\n");

  dict[8] = "8";  // --seed
  ASSERT_EQ(run_cli(dict), kExitOk);
  EXPECT_NE(out.str().substr(0, 40), csv.substr(0, 40));
}

TEST_F(CliTest, ChannelConfigAndPresets) {
  make_corpus(20);
  write_file_atomic(dir / "ch.cfg", "preset = identity\nseed = 4\n");
  ASSERT_EQ(run_cli({"simulate", "--refs", path("refs.jsonl"), "--channel-config",
                     path("ch.cfg")}),
            kExitOk)
      << err.str();
  // The identity channel reproduces the references.
  auto refs = read_references(dir / "refs.jsonl", FormatConfig::safe());
  std::istringstream lines(out.str());
  std::string line;
  for (std::size_t i = 0; std::getline(lines, line); ++i)
    EXPECT_EQ(parse_hypothesis(line, i + 1, LineFormat::kJsonl, FormatConfig::safe()),
              refs.at(i).text);

  write_file_atomic(dir / "bad.cfg", "p_miss = 3\n");
  EXPECT_EQ(run_cli({"simulate", "--refs", path("refs.jsonl"), "--channel-config",
                     path("bad.cfg")}),
            kExitUsage);
  EXPECT_EQ(run_cli({"simulate", "--refs", path("refs.jsonl"), "--preset", "loud"}),
            kExitUsage);
}

TEST_F(CliTest, Sim) {
  ASSERT_EQ(run_cli({"sim", "a", "b", "c", "d", "--", "b", "c", "d", "e"}), kExitOk);
  EXPECT_EQ(out.str(), "k=3 r=0.750000 exact=3/4\n");
  ASSERT_EQ(run_cli({"sim", "--", "x"}), kExitOk);
  EXPECT_EQ(out.str(), "k=0 r=0.000000 exact=0/1\n");
}

TEST_F(CliTest, PaperMarkersInMarkerText) {
  write_file_atomic(dir / "h.txt", "my name is < 阿 部 , a b e >\n");
  ASSERT_EQ(run_cli({"correct", "--dict", golden("lexicon.tsv"), "--in", path("h.txt"),
                     "--markers", "paper"}),
            kExitOk);
  EXPECT_EQ(out.str(),
            R"({"entity_ranges":[[3,5]],"id":"1","tokens":["my","name","is","安","倍"]})" "\n");
}

}  // namespace
}  // namespace necorr::cli
