#include <gtest/gtest.h>

#include <random>

#include "necorr/error.hpp"
#include "necorr/nea_format.hpp"
#include "oracles/fixtures.hpp"

namespace necorr {
namespace {

using testing_util::split;

const FormatConfig kPaper = FormatConfig::paper();
const FormatConfig kSafe = FormatConfig::safe();

NeaHypothesis parse(const std::string& text, const FormatConfig& fmt = kPaper) {
  auto tokens = split(text);
  return parse_tokens("u", tokens, fmt);
}

TEST(NeaFormatTest, MyNameIsExample) {
  auto h = parse("my name is < A b e , a b e >");
  ASSERT_EQ(h.segments.size(), 4u);
  EXPECT_EQ(std::get<Token>(h.segments[0]), "my");
  EXPECT_EQ(std::get<Token>(h.segments[2]), "is");
  const auto& span = std::get<NeSpan>(h.segments[3]);
  EXPECT_EQ(span.surface, (TokenSeq{"A", "b", "e"}));
  EXPECT_EQ(span.phonemes, (TokenSeq{"a", "b", "e"}));
  EXPECT_EQ(h.entity_count(), 1u);
}

TEST(NeaFormatTest, NoMarkers) {
  auto h = parse("hello world");
  EXPECT_EQ(h.segments.size(), 2u);
  EXPECT_EQ(h.entity_count(), 0u);
}

TEST(NeaFormatTest, EmptyPhonemesAreDegenerate) {
  auto h = parse("< X , >");
  ASSERT_EQ(h.segments.size(), 1u);
  const auto& span = std::get<NeSpan>(h.segments[0]);
  EXPECT_EQ(span.surface, TokenSeq{"X"});
  EXPECT_TRUE(span.phonemes.empty());
  EXPECT_TRUE(span.degenerate());
}

struct BadCase {
  const char* text;
  MalformedSpan::Kind kind;
  std::size_t position;
};

class MalformedTest : public ::testing::TestWithParam<BadCase> {};

TEST_P(MalformedTest, ReportsKindAndPosition) {
  const auto& c = GetParam();
  try {
    parse(c.text, kSafe);
    FAIL() << "parsed: " << c.text;
  } catch (const MalformedSpan& e) {
    EXPECT_EQ(e.kind(), c.kind) << c.text;
    EXPECT_EQ(e.position(), c.position) << c.text;
  }
}

using K = MalformedSpan::Kind;
INSTANTIATE_TEST_SUITE_P(
    Grammar, MalformedTest,
    ::testing::Values(BadCase{"a <SNE> b <SEP> c", K::kUnclosedStart, 1},
                      BadCase{"a <ENE>", K::kEndWithoutStart, 1},
                      BadCase{"<SNE> a <SNE> b <SEP> c <ENE>", K::kNestedStart, 2},
                      BadCase{"<SNE> a <ENE>", K::kMissingSeparator, 2},
                      BadCase{"a <SEP> b", K::kStraySeparator, 1},
                      BadCase{"<SNE> a <SEP> b <SEP> c <ENE>", K::kStraySeparator, 4},
                      BadCase{"<SNE> <SEP> a <ENE>", K::kEmptySurface, 1}));

TEST(NeaFormatTest, EmptyTokenRejected) {
  TokenSeq tokens{"a", ""};
  EXPECT_THROW(parse_tokens("u", tokens, kSafe), MalformedSpan);
}

TEST(NeaFormatTest, RenderExample) {
  NeaHypothesis h{"u", {NeSpan{{"A", "b", "e"}, {"a", "b", "e"}}}};
  EXPECT_EQ(render_tokens(h, kPaper), split("< A b e , a b e >"));
  EXPECT_TRUE(render_tokens(NeaHypothesis{}, kPaper).empty());
}

TEST(NeaFormatTest, RenderRejectsMarkerCollision) {
  NeaHypothesis h{"u", {Token(","), Token("x")}};
  EXPECT_THROW(render_tokens(h, kPaper), ReservedTokenCollision);
  EXPECT_NO_THROW(render_tokens(h, kSafe));
}

TEST(NeaFormatTest, ExtractPhoneme) {
  auto h = parse("<SNE> A <SEP> a <ENE> x <SNE> B <SEP> b1 b2 <ENE> <SNE> C <SEP> c <ENE>",
                 kSafe);
  EXPECT_EQ(extract_phoneme(h, 1), TokenSeq{"a"});
  EXPECT_EQ(extract_phoneme(h, 2), (TokenSeq{"b1", "b2"}));
  EXPECT_EQ(entity(h, 3).surface, TokenSeq{"C"});
  EXPECT_THROW(extract_phoneme(h, 0), IndexOutOfRange);
  EXPECT_THROW(extract_phoneme(h, 4), IndexOutOfRange);
  auto one = parse("< X , a b e >");
  EXPECT_EQ(extract_phoneme(one, 1), (TokenSeq{"a", "b", "e"}));
  EXPECT_THROW(extract_phoneme(one, 2), IndexOutOfRange);
}

TEST(NeaFormatTest, JsonlLine) {
  auto h = parse_hypothesis(
      R"({"id":"x1","tokens":["a","<SNE>","B","<SEP>","b","<ENE>"]})", 3,
      LineFormat::kJsonl, kSafe);
  EXPECT_EQ(h.id, "x1");
  EXPECT_EQ(h.entity_count(), 1u);
  auto numeric = parse_hypothesis(R"({"id":7,"tokens":[]})", 1, LineFormat::kJsonl, kSafe);
  EXPECT_EQ(numeric.id, "7");
  EXPECT_THROW(parse_hypothesis("{not json", 1, LineFormat::kJsonl, kSafe), FormatError);
  EXPECT_THROW(parse_hypothesis(R"({"tokens":[]})", 1, LineFormat::kJsonl, kSafe),
               FormatError);
  EXPECT_THROW(parse_hypothesis(R"({"id":"a","tokens":[1]})", 1, LineFormat::kJsonl, kSafe),
               FormatError);
}

TEST(NeaFormatTest, MarkerTextIdIsLineNumber) {
  auto h = parse_hypothesis("a <SNE> B <SEP> b <ENE>", 12, LineFormat::kMarkerText, kSafe);
  EXPECT_EQ(h.id, "12");
  EXPECT_EQ(render_hypothesis(h, LineFormat::kMarkerText, kSafe),
            "a <SNE> B <SEP> b <ENE>");
}

TEST(NeaFormatTest, ReferenceFlags) {
  auto ref = parse_reference(
      R"({"id":"r","tokens":["<SNE>","A","<SEP>","a","<ENE>","<SNE>","B","<SEP>","b","<ENE>"],"iv_flags":[true,null]})",
      1, LineFormat::kJsonl, kSafe);
  EXPECT_EQ(ref.span_in_vocabulary(1), std::optional<bool>(true));
  EXPECT_EQ(ref.span_in_vocabulary(2), std::nullopt);
  auto line = render_reference(ref, LineFormat::kJsonl, kSafe);
  EXPECT_EQ(parse_reference(line, 1, LineFormat::kJsonl, kSafe), ref);

  EXPECT_THROW(parse_reference(R"({"id":"r","tokens":["<SNE>","A","<SEP>","a","<ENE>"],"iv_flags":[true,false]})",
                               1, LineFormat::kJsonl, kSafe),
               FormatError);
  // Gold spans need phonemes.
  EXPECT_THROW(parse_reference(R"({"id":"r","tokens":["<SNE>","A","<SEP>","<ENE>"]})",
                               1, LineFormat::kJsonl, kSafe),
               FormatError);
}

TEST(NeaFormatTest, LineFormatFromExtension) {
  EXPECT_EQ(infer_line_format("a/b.jsonl"), LineFormat::kJsonl);
  EXPECT_EQ(infer_line_format("b.json"), LineFormat::kJsonl);
  EXPECT_EQ(infer_line_format("b.txt"), LineFormat::kMarkerText);
  EXPECT_THROW(FormatConfig::from_name("fancy"), ConfigError);
}

// Random valid hypotheses; tokens drawn so they never equal a marker.
NeaHypothesis random_hypothesis(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 3), len(0, 4), sym(0, 5);
  auto token = [&] { return std::string(1, static_cast<char>('a' + sym(rng))) + "x"; };
  NeaHypothesis h;
  h.id = "r";
  for (int i = 0, n = len(rng) * 2; i < n; ++i) {
    if (coin(rng) == 0) {
      NeSpan span;
      for (int k = 0, s = 1 + len(rng); k < s; ++k) span.surface.push_back(token());
      for (int k = 0, p = len(rng); k < p; ++k) span.phonemes.push_back(token());
      h.segments.emplace_back(span);
    } else {
      h.segments.emplace_back(token());
    }
  }
  return h;
}

TEST(NeaFormatProperty, RoundTripAndConservation) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    auto h = random_hypothesis(rng);
    for (const auto* fmt : {&kPaper, &kSafe}) {
      auto tokens = render_tokens(h, *fmt);
      auto back = parse_tokens(h.id, tokens, *fmt);
      ASSERT_EQ(back, h);

      std::size_t sne = 0, ene = 0, content = 0;
      for (const auto& t : tokens) {
        sne += t == fmt->sne;
        ene += t == fmt->ene;
        content += !fmt->is_marker(t);
      }
      EXPECT_EQ(sne, h.entity_count());
      EXPECT_EQ(ene, h.entity_count());
      std::size_t parsed = 0;
      for (const auto& seg : back.segments) {
        if (const auto* s = std::get_if<NeSpan>(&seg))
          parsed += s->surface.size() + s->phonemes.size();
        else
          ++parsed;
      }
      EXPECT_EQ(parsed, content);
    }
    for (auto format : {LineFormat::kJsonl, LineFormat::kMarkerText}) {
      auto line = render_hypothesis(h, format, kSafe);
      auto back = parse_hypothesis(line, 1, format, kSafe);
      if (format == LineFormat::kMarkerText) back.id = h.id;
      ASSERT_EQ(back, h) << line;
    }
  }
}

TEST(NeaFormatTest, FlattenOwners) {
  auto h = parse("a < B C , b > d < E , e >");
  auto flat = flatten(h);
  EXPECT_EQ(flat.tokens, split("a B C d E"));
  EXPECT_EQ(flat.owner, (std::vector<std::size_t>{0, 1, 1, 0, 2}));
}

}  // namespace
}  // namespace necorr
