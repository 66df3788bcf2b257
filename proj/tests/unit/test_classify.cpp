#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "lexgram/classify.hpp"
#include "test_support.hpp"

using namespace lexgram;

namespace {

Match span(std::size_t s, std::size_t e) {
  Match m;
  m.start_token = s;
  m.end_token = e;
  return m;
}

std::vector<Match> random_matches(testing::Rng& rng, std::size_t max_count) {
  std::vector<Match> out(rng() % (max_count + 1));
  for (auto& m : out) {
    m.start_token = rng() % 20;
    m.end_token = m.start_token + 1 + rng() % 6;
  }
  return out;
}

bool contained_somewhere(const Match& p, const std::vector<Match>& svc) {
  return std::any_of(svc.begin(), svc.end(), [&](const Match& s) {
    return s.start_token <= p.start_token && p.end_token <= s.end_token;
  });
}

GrammarPair grammars_for(const std::string& suffix) {
  return {flatten(testing::fixture_grammar("PN" + suffix)),
          flatten(testing::fixture_grammar("SVC" + suffix))};
}

std::vector<SubcatSetup> fixture_setups() {
  std::vector<SubcatSetup> out;
  for (auto s : {Subcategory::NCA, Subcategory::NCF, Subcategory::CV}) {
    out.push_back({s, grammars_for("_" + std::string(to_string(s)))});
  }
  return out;
}

}  // namespace

TEST_CASE("classify_pn: containment") {
  std::vector<Match> pn = {span(1, 3), span(5, 6), span(8, 10)};
  std::vector<Match> svc = {span(0, 3), span(8, 10)};
  auto c = classify_pn(pn, svc);
  CHECK(c.pn_total == 3);
  CHECK(c.svc_total == 2);
  CHECK(c.pn_with_sv == 2);
  CHECK(c.pn_without_sv == 1);
  CHECK(classify_pn(pn, {}).pn_with_sv == 0);
  // contained in two SVC spans, still counted once
  std::vector<Match> twice = {span(0, 4), span(1, 5)};
  CHECK(classify_pn(std::vector<Match>{span(2, 3)}, twice).pn_with_sv == 1);
  // partial overlap is not containment
  CHECK(classify_pn(std::vector<Match>{span(2, 6)}, twice).pn_with_sv == 0);
}

TEST_CASE("proportion arithmetic") {
  ClassifiedCounts c{95430, 0, 3349, 95430 - 3349};
  CHECK(c.proportion() == doctest::Approx(0.0351).epsilon(1e-3));
  CHECK(format_percent(c.proportion()) == "4%");
  CHECK(ClassifiedCounts{}.proportion() == 0.0);
}

TEST_CASE("support_flags equals brute force; partition and monotonicity") {
  testing::Rng rng(4242);
  for (int i = 0; i < 2000; ++i) {
    auto pn = random_matches(rng, 8);
    auto svc = random_matches(rng, 5);
    auto flags = support_flags(pn, svc);
    for (std::size_t k = 0; k < pn.size(); ++k) {
      REQUIRE(flags[k] == contained_somewhere(pn[k], svc));
    }
    auto c = classify_pn(pn, svc);
    REQUIRE(c.pn_with_sv + c.pn_without_sv == c.pn_total);
    REQUIRE(c.proportion() >= 0.0);
    REQUIRE(c.proportion() <= 1.0);
    auto more = svc;
    const std::size_t s = rng() % 20;
    more.push_back(span(s, s + 1 + rng() % 8));
    REQUIRE(classify_pn(pn, more).pn_with_sv >= c.pn_with_sv);
  }
}

TEST_CASE("fixture corpus counts") {
  auto index = build_index(testing::fixture_lexicon());
  auto docs = testing::fixture_documents();
  auto c = classify_corpus(docs, index, grammars_for(""), RunOptions{});
  CHECK(c == ClassifiedCounts{12, 3, 3, 9});
  CHECK(c.proportion() == doctest::Approx(0.25));
}

TEST_CASE("by_subcategory on the fixture") {
  auto lexicon = testing::fixture_lexicon();
  auto docs = testing::fixture_documents();
  auto rows = by_subcategory(docs, lexicon, grammars_for(""), fixture_setups(), RunOptions{},
                             std::nullopt);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].subcat == "NCA");
  CHECK(rows[0].pn == 5);
  CHECK(rows[0].svc == 1);
  CHECK(rows[1].pn == 3);
  CHECK(rows[1].svc == 0);
  CHECK(rows[2].pn == 4);
  CHECK(rows[2].svc == 2);
  CHECK(rows[3].subcat == "all");
  CHECK(rows[3].pn == 12);
  CHECK(rows[3].pn_pct == 1.0);
  CHECK(rows[3].svc_pct == 1.0);
  CHECK_FALSE(rows[0].corrected_ratio);

  // "la pêche" is counted in both the NCF and the CV rows.
  std::size_t sum = 0;
  for (std::size_t i = 0; i < 3; ++i) sum += rows[i].pn;
  CHECK(sum >= rows[3].pn);
}

TEST_CASE("disjoint sub-lexicons add up to the all row") {
  auto lexicon = testing::fixture_lexicon();
  std::erase_if(lexicon, [](const LexEntry& e) {
    return (e.lemma == "pêche" && e.sem_features.count("CV")) || e.lemma == "embarras";
  });
  auto rows = by_subcategory(testing::fixture_documents(), lexicon, grammars_for(""),
                             fixture_setups(), RunOptions{}, std::nullopt);
  CHECK(rows[0].pn + rows[1].pn + rows[2].pn == rows[3].pn);
}

TEST_CASE("subcat_rows from the reference counts") {
  std::vector<std::string> names = {"NCA", "NCF", "CV"};
  std::vector<ClassifiedCounts> counts = {
      {56457, 0, 1600, 56457 - 1600}, {42420, 0, 868, 42420 - 868}, {30231, 0, 1334, 30231 - 1334}};
  ClassifiedCounts all{95430, 0, 3349, 95430 - 3349};
  CorrectionParams params{0.68, 0.78, 0.74, 0.38};
  auto rows = subcat_rows(names, counts, all, params);
  REQUIRE(rows.size() == 4);
  CHECK(format_percent(rows[0].pn_pct) == "59%");
  CHECK(format_percent(rows[0].svc_pct) == "48%");
  CHECK(format_percent(rows[0].ratio_svc_pn) == "3%");
  REQUIRE(rows[2].corrected_ratio);
  // 1334 * .74 / .38 = 2597.8; 30231 * .68 / .78 = 26355.0
  CHECK(*rows[2].corrected_ratio == doctest::Approx(2597.79 / 26354.85).epsilon(1e-4));
  CHECK(format_percent(*rows[2].corrected_ratio) == "10%");
}

TEST_CASE("report writers") {
  std::ostringstream counts;
  write_counts_tsv(counts, ClassifiedCounts{12, 3, 3, 9});
  CHECK(counts.str() ==
        "pn_total\t12\nsvc_total\t3\npn_with_sv\t3\npn_without_sv\t9\n"
        "proportion\t0.2500 (25%)\n");

  std::vector<SubcatRow> rows(1);
  rows[0].subcat = "all";
  rows[0].pn = 4;
  rows[0].pn_pct = 1;
  rows[0].svc = 1;
  rows[0].svc_pct = 1;
  rows[0].ratio_svc_pn = 0.25;
  std::ostringstream table;
  write_subcat_tsv(table, rows);
  CHECK(table.str() ==
        "\tall\nPNs\t4\nPN %\t1.0000 (100%)\nSVCs\t1\nSVC %\t1.0000 (100%)\n"
        "SVC/PN\t0.2500 (25%)\ncorrected\t-\n");
}
