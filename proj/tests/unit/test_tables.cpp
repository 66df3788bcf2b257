#include "doctest.h"

#include <map>
#include <sstream>

#include "lexgram/tables.hpp"

using namespace lexgram;

namespace {

// Whole percent of a/b, half-up, in integer arithmetic.
long long pct(long long a, long long b) { return (200 * a + b) / (2 * b); }

std::map<std::string, TableCheck> by_cell(const std::vector<TableCheck>& checks) {
  std::map<std::string, TableCheck> out;
  for (const auto& c : checks) out[c.table + "/" + c.cell] = c;
  return out;
}

long long printed_value(const TableCheck& c) { return std::stoll(c.printed); }

}  // namespace

TEST_CASE("every cell passes, exactly two are flagged") {
  for (auto rounding : {Rounding::half_up, Rounding::half_even}) {
    auto checks = verify_reference_tables(rounding);
    CHECK(checks.size() == 32);
    std::vector<std::string> flagged;
    for (const auto& c : checks) {
      CHECK_MESSAGE(c.pass, c.table << " " << c.cell);
      if (c.flagged) flagged.push_back(c.table + "/" + c.cell);
    }
    CHECK(flagged == std::vector<std::string>{"recall/SVC average", "subcat/NCF corrected"});
  }
}

TEST_CASE("printed figures of the reference tables") {
  auto cells = by_cell(verify_reference_tables());
  const std::map<std::string, long long> printed = {
      {"recall/PN E1", 87},           {"recall/SVC E1", 58},
      {"recall/PN E2", 68},           {"recall/SVC E2", 20},
      {"recall/PN average", 78},      {"recall/SVC average", 38},
      {"precision/PN E1", 68},        {"precision/SVC E1", 84},
      {"precision/PN E2", 68},        {"precision/SVC E2", 64},
      {"precision/PN average", 68},   {"precision/SVC average", 74},
      {"correction/experimental proportion", 4},
      {"correction/corrected PN", 83195}, {"correction/corrected SVC", 6522},
      {"correction/corrected proportion", 8},
      {"subcat/NCA PN %", 59},        {"subcat/NCF PN %", 44},
      {"subcat/CV PN %", 32},         {"subcat/all PN %", 100},
      {"subcat/NCA SVC %", 48},       {"subcat/NCF SVC %", 26},
      {"subcat/CV SVC %", 40},        {"subcat/all SVC %", 100},
      {"subcat/NCA SVC/PN", 3},       {"subcat/NCF SVC/PN", 2},
      {"subcat/CV SVC/PN", 4},        {"subcat/all SVC/PN", 4},
      {"subcat/NCA corrected", 6},    {"subcat/NCF corrected", 4},
      {"subcat/CV corrected", 10},    {"subcat/all corrected", 8},
  };
  CHECK(cells.size() == printed.size());
  for (const auto& [key, value] : printed) {
    REQUIRE_MESSAGE(cells.count(key) == 1, key);
    CHECK_MESSAGE(printed_value(cells.at(key)) == value, key);
  }
}

TEST_CASE("recomputation agrees with integer arithmetic on the raw counts") {
  ReferenceCounts pc;
  CHECK(pct(pc.e1_matched[0], pc.e1_gold[0]) == 87);
  CHECK(pct(pc.e2_matched[0], pc.e2_gold[0]) == 68);
  CHECK(pct(pc.e1_matched[1], pc.e1_gold[1]) == 58);
  CHECK(pct(pc.e2_matched[1], pc.e2_gold[1]) == 20);
  CHECK(pct(pc.e1_confirmed[0], pc.system_lines[0]) == 68);
  CHECK(pct(pc.e1_confirmed[1], pc.system_lines[1]) == 84);
  CHECK(pct(pc.e2_confirmed[1], pc.system_lines[1]) == 64);
  CHECK(pct(pc.pn_with_sv, pc.pn_total) == 4);
  CHECK(pct(pc.subcat_pn[0], pc.pn_total) == 59);
  CHECK(pct(pc.subcat_svc[2], pc.pn_with_sv) == 40);

  // SVC recall average: (28/48 + 17/85) / 2 = 1598/4080 -> 39, printed 38.
  CHECK(pct(28 * 85 + 17 * 48, 2 * 48 * 85) == 39);
  auto cells = by_cell(verify_reference_tables());
  CHECK(cells.at("recall/SVC average").computed == "0.3917 (39%)");

  // Corrected counts with printed parameters: n * p / r, rounded half-up.
  CHECK((95430LL * 68 * 2 + 78) / (78 * 2) == 83195);
  CHECK((3349LL * 74 * 2 + 38) / (38 * 2) == 6522);
  // NCF corrected: (868 * 74 / 38) / (42420 * 68 / 78) = 0.0457 -> 5, printed 4.
  const double ncf = (868.0 * 74 / 38) / (42420.0 * 68 / 78);
  CHECK(ncf == doctest::Approx(0.0457).epsilon(1e-3));
  CHECK(cells.at("subcat/NCF corrected").computed == "0.0457 (5%)");
}

TEST_CASE("printed correction parameters") {
  auto p = printed_correction_params();
  CHECK(p.pn_precision == 0.68);
  CHECK(p.pn_recall == 0.78);
  CHECK(p.svc_precision == 0.74);
  CHECK(p.svc_recall == 0.38);
}

TEST_CASE("report lines") {
  auto checks = verify_reference_tables();
  std::ostringstream out;
  write_table_checks(out, checks);
  const auto text = out.str();
  CHECK(text.rfind("PASS\trecall\tPN E1\tprinted 87%\tcomputed 0.8731 (87%)\n", 0) == 0);
  CHECK(text.find("FLAG\trecall\tSVC average\t") != std::string::npos);
  CHECK(text.find("32 cells, 0 failed, 2 flagged\n") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
}
