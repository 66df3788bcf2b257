#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "lexgram/error.hpp"
#include "lexgram/textproc.hpp"
#include "test_support.hpp"

using namespace lexgram;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::string strip_space(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\n' && c != '\t' && c != '\r') out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("tokenize: elision and hyphens") {
  CHECK(surfaces(tokenize("l'embarras")) == std::vector<std::string>{"l'", "embarras"});
  CHECK(surfaces(tokenize("qu'aura")) == std::vector<std::string>{"qu'", "aura"});
  CHECK(surfaces(tokenize("contre-courant")) == std::vector<std::string>{"contre-courant"});
  CHECK(surfaces(tokenize("aujourd'hui")) == std::vector<std::string>{"aujourd'hui"});
}

TEST_CASE("tokenize: sentence structure") {
  auto tokens = tokenize("Bob a donné son avis.");
  REQUIRE(tokens.size() == 6);
  CHECK(tokens[0].sentence_initial);
  CHECK(tokens[5].surface == ".");
  CHECK(tokens[5].kind == TokenKind::punct);
  CHECK(std::count_if(tokens.begin(), tokens.end(),
                      [](const Token& t) { return t.sentence_initial; }) == 1);

  auto two = tokenize("Il dort. Elle lit. puis rien");
  CHECK(two.back().sentence == 1);
  CHECK(two[3].sentence_initial);
  CHECK(two[3].surface == "Elle");
  CHECK_FALSE(two[6].sentence_initial);

  auto num = tokenize("depuis 2005.");
  CHECK(num[1].kind == TokenKind::number);
}

TEST_CASE("tokenize: invalid encoding") {
  CHECK_THROWS_AS(tokenize("abc\xFF"), InvalidEncoding);
}

TEST_CASE("tokens partition the text minus whitespace") {
  for (const auto& doc : testing::fixture_documents()) {
    auto tokens = tokenize(doc.text);
    std::string joined;
    for (const auto& t : tokens) {
      CHECK(doc.text.substr(t.start, t.end - t.start) == t.surface);
      joined += t.surface;
    }
    CHECK(joined == strip_space(doc.text));
    CHECK(surfaces(tokenize(doc.text)) == surfaces(tokens));
  }
}

TEST_CASE("tag: ambiguity, punctuation and unknown words") {
  auto index = build_index(testing::fixture_lexicon());
  auto t = tag_text("Les nouvelles données ( pilliers", index);
  REQUIRE(t.tokens.size() == 5);
  CHECK(t.tokens[2].analyses.size() == 2);
  CHECK(t.tokens[3].analyses.size() == 1);
  CHECK(t.tokens[3].analyses[0].category == kPunctCategory);
  CHECK(t.tokens[3].analyses[0].has_feature("OPEN"));
  CHECK(is_unknown(t.tokens[4].analyses[0]));
  CHECK_FALSE(t.tokens[0].analyses.empty());
  CHECK_FALSE(is_unknown(t.tokens[0].analyses[0]));
}

TEST_CASE("tag never prunes analyses of non-initial words") {
  auto entries = testing::fixture_lexicon();
  auto index = build_index(entries);
  for (const auto& doc : testing::fixture_documents()) {
    auto t = tag_text(doc.text, index);
    for (const auto& tt : t.tokens) {
      if (tt.token.kind != TokenKind::word || tt.token.sentence_initial) continue;
      auto expected = testing::scan_lookup(entries, tt.token.surface);
      if (expected.empty()) {
        CHECK(is_unknown(tt.analyses[0]));
      } else {
        CHECK(tt.analyses == expected);
      }
    }
  }
}

TEST_CASE("tag and tag_serial agree") {
  auto index = build_index(testing::fixture_lexicon());
  for (const auto& doc : testing::fixture_documents()) {
    auto tokens = tokenize(doc.text);
    auto a = tag(doc.text, tokens, index);
    auto b = tag_serial(doc.text, tokens, index);
    REQUIRE(a.tokens.size() == b.tokens.size());
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
      CHECK(a.tokens[i].analyses == b.tokens[i].analyses);
    }
    CHECK(a.sentence_starts == b.sentence_starts);
  }
}

TEST_CASE("tagging coverage") {
  auto index = build_index(testing::fixture_lexicon());
  CHECK(tagging_coverage(tag_text("le vol", index)) == doctest::Approx(1.0));
  CHECK(tagging_coverage(tag_text("le vol zzz le vol le vol le vol le", index)) ==
        doctest::Approx(0.9));
  CHECK_THROWS_AS(tagging_coverage(tag_text(". ,", index)), EmptyInput);

  // Hand count over the fixture corpus: 137 word tokens; unknown are Bob (3),
  // Marie (2), pilliers and bouleversement.
  std::size_t words = 0;
  std::vector<std::string> unknown;
  for (const auto& doc : testing::fixture_documents()) {
    auto t = tag_text(doc.text, index);
    for (const auto& tt : t.tokens) {
      if (tt.token.kind != TokenKind::word) continue;
      ++words;
      if (is_unknown(tt.analyses[0])) unknown.push_back(tt.token.surface);
    }
  }
  std::sort(unknown.begin(), unknown.end());
  CHECK(words == 137);
  CHECK(unknown == std::vector<std::string>{"Bob", "Bob", "Bob", "Marie", "Marie",
                                            "bouleversement", "pilliers"});
  std::string all;
  for (const auto& doc : testing::fixture_documents()) all += doc.text + "\n";
  CHECK(tagging_coverage(tag_text(all, index)) == doctest::Approx(130.0 / 137.0));
}

TEST_CASE("sentence ranges") {
  auto index = build_index({});
  auto t = tag_text("Un chat. Deux chats.", index);
  REQUIRE(t.sentence_count() == 2);
  CHECK(t.sentence_range(0) == std::pair<std::size_t, std::size_t>{0, 3});
  CHECK(t.sentence_range(1) == std::pair<std::size_t, std::size_t>{3, 6});
}

TEST_CASE("tagged dump") {
  auto index = build_index(testing::fixture_lexicon());
  std::ostringstream out;
  write_tagged_tsv(out, tag_text("le vol", index));
  CHECK(out.str().find("0\t2\tle\tle,le.DET:ms") == 0);
}
