#include "doctest.h"

#include <sstream>

#include "lexgram/concord.hpp"
#include "lexgram/error.hpp"
#include "lexgram/utf8.hpp"
#include "test_support.hpp"

using namespace lexgram;

namespace {

struct DocRun {
  TaggedText text;
  std::vector<Match> matches;
};

DocRun run_pn(const Document& doc) {
  static const LexIndex index = build_index(testing::fixture_lexicon());
  static const Graph pn = flatten(testing::fixture_grammar("PN"));
  DocRun r{tag_text(doc.text, index), {}};
  r.matches = locate(pn, r.text);
  return r;
}

std::vector<std::string> centers(const std::vector<ConcordanceLine>& lines) {
  std::vector<std::string> out;
  for (const auto& l : lines) out.push_back(l.center);
  return out;
}

}  // namespace

TEST_CASE("build_concordance: contexts and boundaries") {
  auto docs = testing::fixture_documents();
  auto r = run_pn(docs[0]);
  auto lines = build_concordance(r.matches, r.text, 10, docs[0].id);
  REQUIRE(lines.size() == r.matches.size());
  CHECK(lines[0].center == "l'embarras");
  CHECK(lines[0].left == " est dans ");
  CHECK(lines[0].right.substr(0, 1) == ".");
  CHECK(lines[0].doc_id == "d01");

  auto zero = build_concordance(r.matches, r.text, 0, "d01");
  for (const auto& l : zero) {
    CHECK(l.left.empty());
    CHECK(l.right.empty());
    CHECK_FALSE(l.center.empty());
  }

  auto d2 = run_pn(docs[1]);
  auto at_start = build_concordance(d2.matches, d2.text, kDefaultContextWidth, "d02");
  REQUIRE_FALSE(at_start.empty());
  CHECK(at_start[0].match.start_byte == 0);
  CHECK(at_start[0].left.empty());
}

TEST_CASE("build_concordance: width counts characters, never bytes") {
  auto index = build_index(testing::fixture_lexicon());
  auto pn = flatten(testing::fixture_grammar("PN"));
  auto text = tag_text("Été été été été, la pêche été été été.", index);
  auto matches = locate(pn, text);
  REQUIRE(matches.size() == 1);
  for (std::size_t w = 0; w < 20; ++w) {
    auto lines = build_concordance(matches, text, w, "x");
    CHECK(utf8::length(lines[0].left) == std::min<std::size_t>(w, 17));
    CHECK(utf8::length(lines[0].right) <= w);
    CHECK_FALSE(utf8::first_invalid(lines[0].left));
    CHECK_FALSE(utf8::first_invalid(lines[0].right));
  }
}

TEST_CASE("line/match bijection over the fixture") {
  for (const auto& doc : testing::fixture_documents()) {
    auto r = run_pn(doc);
    auto lines = build_concordance(r.matches, r.text, kDefaultContextWidth, doc.id);
    REQUIRE(lines.size() == r.matches.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
      CHECK(lines[i].match == r.matches[i]);
      CHECK(lines[i].center ==
            doc.text.substr(r.matches[i].start_byte,
                            r.matches[i].end_byte - r.matches[i].start_byte));
      CHECK(utf8::length(lines[i].left) <= kDefaultContextWidth);
      CHECK(utf8::length(lines[i].right) <= kDefaultContextWidth);
    }
  }
}

TEST_CASE("sort_concordance: fixture lines by hand") {
  auto docs = testing::fixture_documents();
  auto r = run_pn(docs[0]);
  auto lines = build_concordance(r.matches, r.text, kDefaultContextWidth, "d01");
  CHECK(sort_concordance(lines, ConcordanceOrder::text) == lines);
  CHECK(centers(sort_concordance(lines, ConcordanceOrder::center)) ==
        std::vector<std::string>{"Ce débat", "L'avis", "La promenade", "Les nouvelles",
                                 "l'embarras", "son avis", "un entretien",
                                 "une nouvelle explication"});
}

TEST_CASE("sort_concordance: ties keep text order") {
  std::vector<ConcordanceLine> lines(3);
  lines[0].doc_id = "b"; lines[0].center = "avis"; lines[0].match.start_byte = 4;
  lines[1].doc_id = "a"; lines[1].center = "avis"; lines[1].match.start_byte = 9;
  lines[2].doc_id = "a"; lines[2].center = "avis"; lines[2].match.start_byte = 2;
  auto sorted = sort_concordance(lines, ConcordanceOrder::center);
  CHECK(sorted[0].match.start_byte == 2);
  CHECK(sorted[1].match.start_byte == 9);
  CHECK(sorted[2].doc_id == "b");

  std::vector<ConcordanceLine> left(2);
  left[0].left = "ab";
  left[1].left = "ba";
  CHECK(sort_concordance(left, ConcordanceOrder::left_reversed)[0].left == "ba");
}

TEST_CASE("sort idempotence and stability on random lines") {
  testing::Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    auto lines = testing::random_lines(rng);
    for (auto order : {ConcordanceOrder::text, ConcordanceOrder::center,
                       ConcordanceOrder::left_reversed}) {
      auto once = sort_concordance(lines, order);
      REQUIRE(sort_concordance(once, order) == once);
      REQUIRE(once.size() == lines.size());
    }
  }
}

TEST_CASE("TSV round-trip and display escaping") {
  ConcordanceLine l;
  l.doc_id = "d9";
  l.match.start_byte = 3;
  l.match.end_byte = 7;
  l.left = "a\tb";
  l.center = "avis";
  l.right = "c\nd";
  std::vector<ConcordanceLine> lines = {l};
  std::ostringstream out;
  write_concordance_tsv(out, lines);
  CHECK(out.str() == "d9\t3\t7\ta b\tavis\tc d\n");
  std::istringstream in(out.str());
  auto back = read_concordance_tsv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].left == "a b");
  CHECK(back[0].match.end_byte == 7);
  std::istringstream bad("d1\t3\n");
  CHECK_THROWS_AS(read_concordance_tsv(bad), Error);
}

TEST_CASE("order parsing") {
  CHECK(parse_concordance_order("left-reversed") == ConcordanceOrder::left_reversed);
  CHECK_THROWS_AS(parse_concordance_order("random"), ConfigError);
}
