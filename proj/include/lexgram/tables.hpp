#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lexgram/classify.hpp"
#include "lexgram/eval.hpp"

namespace lexgram {

// Reference recall, precision, correction and sub-category tables, kept as
// raw counts plus the printed figures.
struct ReferenceCounts {
  // Recall: gold totals and matched counts per annotator, PN then SVC.
  std::size_t e1_gold[2] = {646, 48};
  std::size_t e1_matched[2] = {564, 28};
  std::size_t e2_gold[2] = {820, 85};
  std::size_t e2_matched[2] = {561, 17};
  // Precision: concordance lines and confirmed lines per annotator.
  std::size_t system_lines[2] = {831, 895};
  std::size_t e1_confirmed[2] = {564, 751};
  std::size_t e2_confirmed[2] = {561, 576};
  // Occurrence counts of the whole corpus.
  std::size_t pn_total = 95430;
  std::size_t pn_with_sv = 3349;
  // Sub-category rows NCA, NCF, CV.
  std::size_t subcat_pn[3] = {56457, 42420, 30231};
  std::size_t subcat_svc[3] = {1600, 868, 1334};
};

struct TableCheck {
  std::string table;     // recall, precision, correction, subcat
  std::string cell;
  std::string printed;   // figure as printed
  std::string computed;  // recomputed from counts
  bool pass = false;
  bool flagged = false;  // printed figure differs by one unit from the recomputation
};

// Recomputes every derived cell. Percentages compare after rounding to whole
// percent; a one-unit difference passes only for the cells where the printed
// table is internally inconsistent, and those are flagged.
std::vector<TableCheck> verify_reference_tables(Rounding rounding = Rounding::half_up);

// The correction parameters as the printed averages (two decimals).
CorrectionParams printed_correction_params();

void write_table_checks(std::ostream& out, std::span<const TableCheck> checks);

}  // namespace lexgram
