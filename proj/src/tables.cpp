#include "lexgram/tables.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace lexgram {

namespace {

class Checker {
 public:
  explicit Checker(Rounding rounding) : rounding_(rounding) {}

  void percent(const std::string& table, const std::string& cell, double ratio,
               long long printed, bool may_differ = false) {
    const long long value = round_percent(ratio, rounding_);
    add(table, cell, std::to_string(printed) + "%", format_ratio(ratio, rounding_),
        value, printed, may_differ);
  }

  void count(const std::string& table, const std::string& cell, double value,
             long long printed) {
    const long long rounded = round_count(value, rounding_);
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f (%lld)", value, rounded);
    add(table, cell, std::to_string(printed), buffer, rounded, printed, false);
  }

  std::vector<TableCheck> take() { return std::move(checks_); }

 private:
  void add(const std::string& table, const std::string& cell, std::string printed,
           std::string computed, long long value, long long expected, bool may_differ) {
    TableCheck c;
    c.table = table;
    c.cell = cell;
    c.printed = std::move(printed);
    c.computed = std::move(computed);
    const long long diff = std::llabs(value - expected);
    c.flagged = may_differ && diff == 1;
    c.pass = diff == 0 || c.flagged;
    checks_.push_back(std::move(c));
  }

  Rounding rounding_;
  std::vector<TableCheck> checks_;
};

}  // namespace

CorrectionParams printed_correction_params() {
  CorrectionParams p;
  p.pn_precision = 0.68;
  p.pn_recall = 0.78;
  p.svc_precision = 0.74;
  p.svc_recall = 0.38;
  return p;
}

std::vector<TableCheck> verify_reference_tables(Rounding rounding) {
  const ReferenceCounts t;
  Checker check(rounding);
  const char* label[2] = {"PN", "SVC"};
  const long long recall_e1[2] = {87, 58};
  const long long recall_e2[2] = {68, 20};
  const long long recall_avg[2] = {78, 38};
  const long long precision_e1[2] = {68, 84};
  const long long precision_e2[2] = {68, 64};
  const long long precision_avg[2] = {68, 74};

  for (int k = 0; k < 2; ++k) {
    const double r1 = recall(t.e1_matched[k], t.e1_gold[k]);
    const double r2 = recall(t.e2_matched[k], t.e2_gold[k]);
    check.percent("recall", std::string(label[k]) + " E1", r1, recall_e1[k]);
    check.percent("recall", std::string(label[k]) + " E2", r2, recall_e2[k]);
    check.percent("recall", std::string(label[k]) + " average", average(r1, r2),
                  recall_avg[k], k == 1);
  }
  for (int k = 0; k < 2; ++k) {
    const double p1 = precision(t.e1_confirmed[k], t.system_lines[k]);
    const double p2 = precision(t.e2_confirmed[k], t.system_lines[k]);
    check.percent("precision", std::string(label[k]) + " E1", p1, precision_e1[k]);
    check.percent("precision", std::string(label[k]) + " E2", p2, precision_e2[k]);
    check.percent("precision", std::string(label[k]) + " average", average(p1, p2),
                  precision_avg[k]);
  }

  const CorrectionParams params = printed_correction_params();
  const auto table = correct_counts(static_cast<double>(t.pn_total),
                                    static_cast<double>(t.pn_with_sv), params.pn_precision,
                                    params.pn_recall, params.svc_precision,
                                    params.svc_recall);
  check.percent("correction", "experimental proportion", table.experimental.proportion, 4);
  check.count("correction", "corrected PN", table.corrected.pn, 83195);
  check.count("correction", "corrected SVC", table.corrected.svc, 6522);
  check.percent("correction", "corrected proportion", table.corrected.proportion, 8);

  const std::vector<std::string> names = {"NCA", "NCF", "CV"};
  std::vector<ClassifiedCounts> counts;
  for (int i = 0; i < 3; ++i) {
    ClassifiedCounts c;
    c.pn_total = t.subcat_pn[i];
    c.pn_with_sv = t.subcat_svc[i];
    c.pn_without_sv = c.pn_total - c.pn_with_sv;
    counts.push_back(c);
  }
  ClassifiedCounts all;
  all.pn_total = t.pn_total;
  all.pn_with_sv = t.pn_with_sv;
  all.pn_without_sv = all.pn_total - all.pn_with_sv;
  const auto rows = subcat_rows(names, counts, all, params);

  const long long pn_pct[4] = {59, 44, 32, 100};
  const long long svc_pct[4] = {48, 26, 40, 100};
  const long long ratio[4] = {3, 2, 4, 4};
  const long long corrected[4] = {6, 4, 10, 8};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    check.percent("subcat", row.subcat + " PN %", row.pn_pct, pn_pct[i]);
    check.percent("subcat", row.subcat + " SVC %", row.svc_pct, svc_pct[i]);
    check.percent("subcat", row.subcat + " SVC/PN", row.ratio_svc_pn, ratio[i]);
    check.percent("subcat", row.subcat + " corrected", *row.corrected_ratio, corrected[i],
                  row.subcat == "NCF");
  }
  return check.take();
}

void write_table_checks(std::ostream& out, std::span<const TableCheck> checks) {
  std::size_t failed = 0;
  std::size_t flagged = 0;
  for (const auto& c : checks) {
    const char* status = !c.pass ? "FAIL" : c.flagged ? "FLAG" : "PASS";
    out << status << '\t' << c.table << '\t' << c.cell << "\tprinted " << c.printed
        << "\tcomputed " << c.computed << '\n';
    if (!c.pass) ++failed;
    if (c.flagged) ++flagged;
  }
  out << checks.size() << " cells, " << failed << " failed, " << flagged << " flagged\n";
  if (flagged) {
    out << "note: flagged cells are printed one unit below the value recomputed from "
           "the printed counts; the recomputed value is reported\n";
  }
}

}  // namespace lexgram
