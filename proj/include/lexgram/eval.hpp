#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexgram/concord.hpp"
#include "lexgram/lexicon.hpp"

namespace lexgram {

enum class SpanLabel { PN, SVC };

std::string_view to_string(SpanLabel label);
SpanLabel parse_span_label(std::string_view text);

struct GoldSpan {
  std::string doc_id;
  std::size_t start_byte = 0;
  std::size_t end_byte = 0;
  SpanLabel label = SpanLabel::PN;
  std::string annotator;
  std::string head_form;

  bool operator==(const GoldSpan&) const = default;
};

// Gold TSV: doc_id, start_byte, end_byte, label, annotator, head_form.
// Blank and "#" lines are skipped.
std::vector<GoldSpan> read_gold(std::istream& in, const std::string& source_name = {});
std::vector<GoldSpan> read_gold_file(const std::string& path);

std::vector<GoldSpan> select_gold(std::span<const GoldSpan> gold,
                                  std::string_view annotator, SpanLabel label);

// Annotators in first-appearance order.
std::vector<std::string> annotators_of(std::span<const GoldSpan> gold);

struct ByteSpan {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
};

enum class AlignCriterion { overlap, exact };

AlignCriterion parse_align_criterion(std::string_view text);
std::string_view to_string(AlignCriterion criterion);

// One-to-one alignment. Within each document, spans of both sides are
// visited by increasing end offset and each unused span takes the unused
// partner with the smallest end. For overlap this yields a maximum matching,
// so the count does not depend on which side is called the system.
std::size_t align_spans(std::span<const ByteSpan> a, std::span<const ByteSpan> b,
                        AlignCriterion criterion);

std::size_t align(std::span<const ConcordanceLine> system,
                  std::span<const GoldSpan> gold,
                  AlignCriterion criterion = AlignCriterion::overlap);

double recall(std::size_t matched, std::size_t gold_total);
double precision(std::size_t matched, std::size_t system_total);
double average(double a, double b);

// n * p / r, unrounded.
double bias_correct(double n, double p, double r);

double corrected_proportion(double n_pn, double p_pn, double r_pn,
                            double n_svc, double p_svc, double r_svc);

// Recall over the gold spans whose head form has a PN analysis.
double in_lexicon_recall(std::span<const ConcordanceLine> system,
                         std::span<const GoldSpan> gold, const LexIndex& index,
                         AlignCriterion criterion = AlignCriterion::overlap);

struct Metrics {
  double n = 0;
  double n_prime = 0;
  double p = 0;
  double r = 0;
  std::size_t matched = 0;
  std::size_t gold_total = 0;
  std::size_t system_total = 0;
};

enum class Rounding { half_up, half_even };

Rounding parse_rounding(std::string_view text);
std::string_view to_string(Rounding rounding);

long long round_count(double value, Rounding rounding = Rounding::half_up);
long long round_percent(double ratio, Rounding rounding = Rounding::half_up);
// "87%"
std::string format_percent(double ratio, Rounding rounding = Rounding::half_up);
// "0.8731 (87%)"
std::string format_ratio(double ratio, Rounding rounding = Rounding::half_up);

struct AnnotatorScore {
  std::string annotator;
  std::size_t gold_total = 0;
  std::size_t recall_matched = 0;
  std::size_t system_total = 0;
  std::size_t precision_matched = 0;
  double recall = 0;
  double precision = 0;
  std::optional<double> in_lexicon_recall;
};

struct LabelScores {
  SpanLabel label = SpanLabel::PN;
  std::vector<AnnotatorScore> annotators;
  double recall = 0;     // mean over annotators
  double precision = 0;  // mean over annotators
};

// Documents used for each measure; empty means every document.
struct EvalDocs {
  std::vector<std::string> recall_docs;
  std::vector<std::string> precision_docs;
};

LabelScores evaluate_label(std::span<const ConcordanceLine> system,
                           std::span<const GoldSpan> gold, SpanLabel label,
                           std::span<const std::string> annotators,
                           const EvalDocs& docs, AlignCriterion criterion,
                           const LexIndex* index = nullptr);

struct CorrectionRow {
  double pn = 0;
  double svc = 0;
  double proportion = 0;
};

struct CorrectionTable {
  CorrectionRow experimental;
  CorrectionRow corrected;
};

CorrectionTable correct_counts(double n_pn, double n_svc, double p_pn, double r_pn,
                               double p_svc, double r_svc);

// Rows mirror the recall, precision and correction tables: a leading table
// column, then the PN and SVC columns and, for corrections, the proportion.
void write_metrics_tsv(std::ostream& out, const LabelScores& pn, const LabelScores& svc,
                       const CorrectionTable& corrections, Rounding rounding);

}  // namespace lexgram
