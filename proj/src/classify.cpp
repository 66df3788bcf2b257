#include "lexgram/classify.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "lexgram/textproc.hpp"

namespace lexgram {

double ClassifiedCounts::proportion() const {
  if (pn_total == 0) return 0.0;
  return static_cast<double>(pn_with_sv) / static_cast<double>(pn_total);
}

ClassifiedCounts& ClassifiedCounts::operator+=(const ClassifiedCounts& other) {
  pn_total += other.pn_total;
  svc_total += other.svc_total;
  pn_with_sv += other.pn_with_sv;
  pn_without_sv += other.pn_without_sv;
  return *this;
}

std::vector<bool> support_flags(std::span<const Match> pn, std::span<const Match> svc) {
  std::vector<std::size_t> order(svc.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return svc[a].start_token < svc[b].start_token;
  });
  std::vector<std::size_t> starts;
  std::vector<std::size_t> max_end;
  starts.reserve(svc.size());
  max_end.reserve(svc.size());
  for (std::size_t i : order) {
    starts.push_back(svc[i].start_token);
    const std::size_t prev = max_end.empty() ? 0 : max_end.back();
    max_end.push_back(std::max(prev, svc[i].end_token));
  }

  std::vector<bool> flags(pn.size(), false);
  for (std::size_t i = 0; i < pn.size(); ++i) {
    const auto it = std::upper_bound(starts.begin(), starts.end(), pn[i].start_token);
    if (it == starts.begin()) continue;
    const auto k = static_cast<std::size_t>(it - starts.begin()) - 1;
    flags[i] = max_end[k] >= pn[i].end_token;
  }
  return flags;
}

ClassifiedCounts classify_pn(std::span<const Match> pn, std::span<const Match> svc) {
  ClassifiedCounts counts;
  counts.pn_total = pn.size();
  counts.svc_total = svc.size();
  const auto flags = support_flags(pn, svc);
  counts.pn_with_sv = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
  counts.pn_without_sv = counts.pn_total - counts.pn_with_sv;
  return counts;
}

ClassifiedCounts classify_corpus(std::span<const Document> corpus, const LexIndex& index,
                                 const GrammarPair& grammars, const RunOptions& options) {
  ClassifiedCounts total;
  for (const auto& doc : corpus) {
    const TaggedText tagged = tag_text(doc.text, index, options.case_policy);
    const auto pn = locate(grammars.pn, tagged, options.policy);
    const auto svc = locate(grammars.svc, tagged, options.policy);
    total += classify_pn(pn, svc);
  }
  return total;
}

std::vector<SubcatRow> subcat_rows(std::span<const std::string> names,
                                   std::span<const ClassifiedCounts> counts,
                                   const ClassifiedCounts& all,
                                   const std::optional<CorrectionParams>& correction) {
  auto make = [&](const std::string& name, const ClassifiedCounts& c) {
    SubcatRow row;
    row.subcat = name;
    row.pn = c.pn_total;
    row.svc = c.pn_with_sv;
    row.pn_pct = all.pn_total ? static_cast<double>(row.pn) / static_cast<double>(all.pn_total)
                              : 0.0;
    row.svc_pct = all.pn_with_sv
                      ? static_cast<double>(row.svc) / static_cast<double>(all.pn_with_sv)
                      : 0.0;
    row.ratio_svc_pn = c.proportion();
    if (correction) {
      row.corrected_ratio = corrected_proportion(
          static_cast<double>(row.pn), correction->pn_precision, correction->pn_recall,
          static_cast<double>(row.svc), correction->svc_precision, correction->svc_recall);
    }
    return row;
  };
  std::vector<SubcatRow> rows;
  for (std::size_t i = 0; i < names.size() && i < counts.size(); ++i) {
    rows.push_back(make(names[i], counts[i]));
  }
  rows.push_back(make("all", all));
  return rows;
}

std::vector<SubcatRow> by_subcategory(std::span<const Document> corpus,
                                      std::span<const LexEntry> lexicon,
                                      const GrammarPair& all_grammars,
                                      std::span<const SubcatSetup> subcats,
                                      const RunOptions& options,
                                      const std::optional<CorrectionParams>& correction) {
  std::vector<std::string> names;
  std::vector<ClassifiedCounts> counts;
  for (const auto& setup : subcats) {
    const auto filtered = filter_subcategory(lexicon, setup.subcat);
    const LexIndex index = build_index(filtered);
    names.emplace_back(to_string(setup.subcat));
    counts.push_back(classify_corpus(corpus, index, setup.grammars, options));
  }
  const LexIndex full = build_index(lexicon);
  const ClassifiedCounts all = classify_corpus(corpus, full, all_grammars, options);
  return subcat_rows(names, counts, all, correction);
}

void write_counts_tsv(std::ostream& out, const ClassifiedCounts& c, Rounding rounding) {
  out << "pn_total\t" << c.pn_total << '\n';
  out << "svc_total\t" << c.svc_total << '\n';
  out << "pn_with_sv\t" << c.pn_with_sv << '\n';
  out << "pn_without_sv\t" << c.pn_without_sv << '\n';
  out << "proportion\t" << format_ratio(c.proportion(), rounding) << '\n';
}

void write_subcat_tsv(std::ostream& out, std::span<const SubcatRow> rows, Rounding rounding) {
  auto line = [&](const char* head, auto cell) {
    out << head;
    for (const auto& row : rows) out << '\t' << cell(row);
    out << '\n';
  };
  line("", [](const SubcatRow& r) { return r.subcat; });
  line("PNs", [](const SubcatRow& r) { return std::to_string(r.pn); });
  line("PN %", [&](const SubcatRow& r) { return format_ratio(r.pn_pct, rounding); });
  line("SVCs", [](const SubcatRow& r) { return std::to_string(r.svc); });
  line("SVC %", [&](const SubcatRow& r) { return format_ratio(r.svc_pct, rounding); });
  line("SVC/PN", [&](const SubcatRow& r) { return format_ratio(r.ratio_svc_pn, rounding); });
  line("corrected", [&](const SubcatRow& r) {
    return r.corrected_ratio ? format_ratio(*r.corrected_ratio, rounding) : std::string("-");
  });
}

}  // namespace lexgram
