#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexgram/eval.hpp"
#include "lexgram/lexicon.hpp"
#include "lexgram/rtn.hpp"

namespace lexgram {

struct ClassifiedCounts {
  std::size_t pn_total = 0;
  std::size_t svc_total = 0;
  std::size_t pn_with_sv = 0;
  std::size_t pn_without_sv = 0;

  double proportion() const;
  ClassifiedCounts& operator+=(const ClassifiedCounts& other);
  bool operator==(const ClassifiedCounts&) const = default;
};

// flags[i] is true iff pn[i]'s token span lies inside some SVC span. Both
// lists must come from the same tagged text.
std::vector<bool> support_flags(std::span<const Match> pn, std::span<const Match> svc);

ClassifiedCounts classify_pn(std::span<const Match> pn, std::span<const Match> svc);

struct Document {
  std::string id;
  std::string text;
};

struct GrammarPair {
  Graph pn;   // flattened
  Graph svc;  // flattened
};

struct SubcatSetup {
  Subcategory subcat;
  GrammarPair grammars;
};

struct CorrectionParams {
  double pn_precision = 0;
  double pn_recall = 0;
  double svc_precision = 0;
  double svc_recall = 0;
};

struct SubcatRow {
  std::string subcat;  // NCA, NCF, CV or "all"
  std::size_t pn = 0;
  double pn_pct = 0;
  std::size_t svc = 0;  // PN occurrences of this run inside an SVC span
  double svc_pct = 0;
  double ratio_svc_pn = 0;
  std::optional<double> corrected_ratio;
};

struct RunOptions {
  MatchPolicy policy = MatchPolicy::longest;
  CasePolicy case_policy = CasePolicy::sentence_initial_fold;
};

// Tags every document and counts PN and SVC occurrences.
ClassifiedCounts classify_corpus(std::span<const Document> corpus, const LexIndex& index,
                                 const GrammarPair& grammars, const RunOptions& options);

// One row per setup, in the given order, then "all" computed from the
// unfiltered lexicon and all_grammars.
std::vector<SubcatRow> by_subcategory(std::span<const Document> corpus,
                                      std::span<const LexEntry> lexicon,
                                      const GrammarPair& all_grammars,
                                      std::span<const SubcatSetup> subcats,
                                      const RunOptions& options,
                                      const std::optional<CorrectionParams>& correction);

// Table rows from counts, shared by the corpus run and the embedded tables.
std::vector<SubcatRow> subcat_rows(std::span<const std::string> names,
                                   std::span<const ClassifiedCounts> counts,
                                   const ClassifiedCounts& all,
                                   const std::optional<CorrectionParams>& correction);

void write_counts_tsv(std::ostream& out, const ClassifiedCounts& counts,
                      Rounding rounding = Rounding::half_up);

// Mirrors the sub-category table: one column per row of rows.
void write_subcat_tsv(std::ostream& out, std::span<const SubcatRow> rows,
                      Rounding rounding = Rounding::half_up);

}  // namespace lexgram
