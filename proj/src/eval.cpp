#include "lexgram/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "lexgram/error.hpp"

namespace lexgram {

namespace {

constexpr double kTieEpsilon = 1e-9;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

std::size_t parse_size(std::string_view field, const std::string& where) {
  if (field.empty() || !std::all_of(field.begin(), field.end(),
                                    [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(where + ": invalid offset '" + std::string(field) + "'");
  }
  return std::stoull(std::string(field));
}

struct Item {
  std::size_t start;
  std::size_t end;
  int side;
  std::size_t index;
};

std::size_t align_one_doc(const std::vector<ByteSpan>& a, const std::vector<ByteSpan>& b,
                          AlignCriterion criterion) {
  const std::vector<ByteSpan>* sides[2] = {&a, &b};
  std::vector<Item> items;
  items.reserve(a.size() + b.size());
  // Unused spans of each side keyed by (end, start, index).
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> free[2];
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < sides[s]->size(); ++i) {
      const ByteSpan& sp = (*sides[s])[i];
      items.push_back({sp.start, sp.end, s, i});
      free[s].emplace(sp.end, sp.start, i);
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    return std::tie(x.end, x.start, x.side, x.index) <
           std::tie(y.end, y.start, y.side, y.index);
  });

  std::size_t matched = 0;
  for (const Item& x : items) {
    auto& own = free[x.side];
    const auto self = own.find({x.end, x.start, x.index});
    if (self == own.end()) continue;
    auto& other = free[1 - x.side];
    auto partner = other.end();
    if (criterion == AlignCriterion::exact) {
      auto it = other.lower_bound({x.end, x.start, 0});
      if (it != other.end() && std::get<0>(*it) == x.end && std::get<1>(*it) == x.start) {
        partner = it;
      }
    } else {
      for (auto it = other.upper_bound({x.start, SIZE_MAX, SIZE_MAX}); it != other.end();
           ++it) {
        if (std::get<1>(*it) < x.end && std::get<0>(*it) > x.start) {
          partner = it;
          break;
        }
      }
    }
    if (partner == other.end()) continue;
    own.erase(self);
    other.erase(partner);
    ++matched;
  }
  return matched;
}

std::vector<GoldSpan> restrict_docs(std::span<const GoldSpan> gold,
                                    std::span<const std::string> docs) {
  if (docs.empty()) return {gold.begin(), gold.end()};
  const std::set<std::string> keep(docs.begin(), docs.end());
  std::vector<GoldSpan> out;
  for (const auto& g : gold) {
    if (keep.count(g.doc_id)) out.push_back(g);
  }
  return out;
}

std::vector<ConcordanceLine> restrict_docs(std::span<const ConcordanceLine> lines,
                                           std::span<const std::string> docs) {
  if (docs.empty()) return {lines.begin(), lines.end()};
  const std::set<std::string> keep(docs.begin(), docs.end());
  std::vector<ConcordanceLine> out;
  for (const auto& l : lines) {
    if (keep.count(l.doc_id)) out.push_back(l);
  }
  return out;
}

std::string four_decimals(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

}  // namespace

std::string_view to_string(SpanLabel label) {
  return label == SpanLabel::PN ? "PN" : "SVC";
}

SpanLabel parse_span_label(std::string_view text) {
  if (text == "PN") return SpanLabel::PN;
  if (text == "SVC") return SpanLabel::SVC;
  throw Error("unknown span label '" + std::string(text) + "'");
}

std::vector<GoldSpan> read_gold(std::istream& in, const std::string& source_name) {
  std::vector<GoldSpan> gold;
  std::string raw;
  std::size_t line_no = 0;
  const std::string source = source_name.empty() ? "<gold>" : source_name;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto fields = split_tabs(raw);
    if (fields.size() != 6) throw Error(where + ": expected 6 tab-separated fields");
    GoldSpan g;
    g.doc_id = std::string(fields[0]);
    g.start_byte = parse_size(fields[1], where);
    g.end_byte = parse_size(fields[2], where);
    if (g.start_byte >= g.end_byte) throw Error(where + ": empty or reversed span");
    try {
      g.label = parse_span_label(fields[3]);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    g.annotator = std::string(fields[4]);
    g.head_form = std::string(fields[5]);
    if (g.annotator.empty()) throw Error(where + ": missing annotator");
    gold.push_back(std::move(g));
  }
  return gold;
}

std::vector<GoldSpan> read_gold_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open gold file " + path);
  return read_gold(in, path);
}

std::vector<GoldSpan> select_gold(std::span<const GoldSpan> gold,
                                  std::string_view annotator, SpanLabel label) {
  std::vector<GoldSpan> out;
  for (const auto& g : gold) {
    if (g.annotator == annotator && g.label == label) out.push_back(g);
  }
  return out;
}

std::vector<std::string> annotators_of(std::span<const GoldSpan> gold) {
  std::vector<std::string> out;
  for (const auto& g : gold) {
    if (std::find(out.begin(), out.end(), g.annotator) == out.end()) {
      out.push_back(g.annotator);
    }
  }
  return out;
}

AlignCriterion parse_align_criterion(std::string_view text) {
  if (text == "overlap") return AlignCriterion::overlap;
  if (text == "exact") return AlignCriterion::exact;
  throw ConfigError("unknown alignment criterion '" + std::string(text) + "'");
}

std::string_view to_string(AlignCriterion criterion) {
  return criterion == AlignCriterion::overlap ? "overlap" : "exact";
}

std::size_t align_spans(std::span<const ByteSpan> a, std::span<const ByteSpan> b,
                        AlignCriterion criterion) {
  std::map<std::string, std::pair<std::vector<ByteSpan>, std::vector<ByteSpan>>> docs;
  for (const auto& s : a) docs[s.doc_id].first.push_back(s);
  for (const auto& s : b) docs[s.doc_id].second.push_back(s);
  std::size_t matched = 0;
  for (const auto& [doc, sides] : docs) {
    matched += align_one_doc(sides.first, sides.second, criterion);
  }
  return matched;
}

std::size_t align(std::span<const ConcordanceLine> system, std::span<const GoldSpan> gold,
                  AlignCriterion criterion) {
  std::vector<ByteSpan> a;
  a.reserve(system.size());
  for (const auto& l : system) a.push_back({l.doc_id, l.match.start_byte, l.match.end_byte});
  std::vector<ByteSpan> b;
  b.reserve(gold.size());
  for (const auto& g : gold) b.push_back({g.doc_id, g.start_byte, g.end_byte});
  return align_spans(a, b, criterion);
}

double recall(std::size_t matched, std::size_t gold_total) {
  if (gold_total == 0) throw EmptyGold();
  return static_cast<double>(matched) / static_cast<double>(gold_total);
}

double precision(std::size_t matched, std::size_t system_total) {
  if (system_total == 0) throw EmptySystem();
  return static_cast<double>(matched) / static_cast<double>(system_total);
}

double average(double a, double b) { return (a + b) / 2.0; }

double bias_correct(double n, double p, double r) {
  if (!(r > 0)) throw ZeroRecall();
  return n * p / r;
}

double corrected_proportion(double n_pn, double p_pn, double r_pn, double n_svc,
                            double p_svc, double r_svc) {
  const double pn = bias_correct(n_pn, p_pn, r_pn);
  const double svc = bias_correct(n_svc, p_svc, r_svc);
  if (pn == 0) return 0;
  return svc / pn;
}

double in_lexicon_recall(std::span<const ConcordanceLine> system,
                         std::span<const GoldSpan> gold, const LexIndex& index,
                         AlignCriterion criterion) {
  std::vector<GoldSpan> kept;
  for (const auto& g : gold) {
    const auto analyses = lookup(index, g.head_form, CasePolicy::sentence_initial_fold);
    const bool described = std::any_of(analyses.begin(), analyses.end(), [](const auto& a) {
      return a.has_feature(kPredicativeNoun);
    });
    if (described) kept.push_back(g);
  }
  return recall(align(system, kept, criterion), kept.size());
}

Rounding parse_rounding(std::string_view text) {
  if (text == "half-up") return Rounding::half_up;
  if (text == "half-even") return Rounding::half_even;
  throw ConfigError("unknown rounding mode '" + std::string(text) + "'");
}

std::string_view to_string(Rounding rounding) {
  return rounding == Rounding::half_up ? "half-up" : "half-even";
}

long long round_count(double value, Rounding rounding) {
  const double floor = std::floor(value);
  const double fraction = value - floor;
  if (std::fabs(fraction - 0.5) < kTieEpsilon) {
    if (rounding == Rounding::half_up) return static_cast<long long>(floor) + 1;
    const auto low = static_cast<long long>(floor);
    return low % 2 == 0 ? low : low + 1;
  }
  return static_cast<long long>(std::floor(value + 0.5));
}

long long round_percent(double ratio, Rounding rounding) {
  return round_count(ratio * 100.0, rounding);
}

std::string format_percent(double ratio, Rounding rounding) {
  return std::to_string(round_percent(ratio, rounding)) + "%";
}

std::string format_ratio(double ratio, Rounding rounding) {
  return four_decimals(ratio) + " (" + format_percent(ratio, rounding) + ")";
}

LabelScores evaluate_label(std::span<const ConcordanceLine> system,
                           std::span<const GoldSpan> gold, SpanLabel label,
                           std::span<const std::string> annotators, const EvalDocs& docs,
                           AlignCriterion criterion, const LexIndex* index) {
  if (annotators.empty()) throw Error("evaluation needs at least one annotator");
  LabelScores scores;
  scores.label = label;
  const auto recall_lines = restrict_docs(system, docs.recall_docs);
  const auto precision_lines = restrict_docs(system, docs.precision_docs);
  for (const auto& annotator : annotators) {
    const auto mine = select_gold(gold, annotator, label);
    const auto recall_gold = restrict_docs(mine, docs.recall_docs);
    const auto precision_gold = restrict_docs(mine, docs.precision_docs);
    AnnotatorScore s;
    s.annotator = annotator;
    s.gold_total = recall_gold.size();
    s.recall_matched = align(recall_lines, recall_gold, criterion);
    s.system_total = precision_lines.size();
    s.precision_matched = align(precision_lines, precision_gold, criterion);
    s.recall = recall(s.recall_matched, s.gold_total);
    s.precision = precision(s.precision_matched, s.system_total);
    if (index) s.in_lexicon_recall = in_lexicon_recall(recall_lines, recall_gold, *index,
                                                       criterion);
    scores.annotators.push_back(std::move(s));
  }
  double r = 0;
  double p = 0;
  for (const auto& s : scores.annotators) {
    r += s.recall;
    p += s.precision;
  }
  scores.recall = r / static_cast<double>(scores.annotators.size());
  scores.precision = p / static_cast<double>(scores.annotators.size());
  return scores;
}

CorrectionTable correct_counts(double n_pn, double n_svc, double p_pn, double r_pn,
                               double p_svc, double r_svc) {
  CorrectionTable t;
  t.experimental = {n_pn, n_svc, n_pn > 0 ? n_svc / n_pn : 0.0};
  t.corrected.pn = bias_correct(n_pn, p_pn, r_pn);
  t.corrected.svc = bias_correct(n_svc, p_svc, r_svc);
  t.corrected.proportion = t.corrected.pn > 0 ? t.corrected.svc / t.corrected.pn : 0.0;
  return t;
}

void write_metrics_tsv(std::ostream& out, const LabelScores& pn, const LabelScores& svc,
                       const CorrectionTable& corrections, Rounding rounding) {
  auto find = [](const LabelScores& scores, const std::string& annotator)
      -> const AnnotatorScore* {
    for (const auto& s : scores.annotators) {
      if (s.annotator == annotator) return &s;
    }
    return nullptr;
  };
  auto count_cell = [](const AnnotatorScore* s, std::size_t AnnotatorScore::*field) {
    return s ? std::to_string(s->*field) : std::string("-");
  };
  auto ratio_cell = [&](const AnnotatorScore* s, double AnnotatorScore::*field) {
    return s ? format_ratio(s->*field, rounding) : std::string("-");
  };

  std::vector<std::string> names;
  for (const auto& s : pn.annotators) names.push_back(s.annotator);
  for (const auto& s : svc.annotators) {
    if (std::find(names.begin(), names.end(), s.annotator) == names.end()) {
      names.push_back(s.annotator);
    }
  }

  out << "table\trow\tPN\tSVC\tproportion\n";
  for (const auto& name : names) {
    const auto* a = find(pn, name);
    const auto* b = find(svc, name);
    out << "recall\t" << name << '\t' << count_cell(a, &AnnotatorScore::gold_total) << '\t'
        << count_cell(b, &AnnotatorScore::gold_total) << "\t-\n";
    out << "recall\t" << name << " & system\t"
        << count_cell(a, &AnnotatorScore::recall_matched) << '\t'
        << count_cell(b, &AnnotatorScore::recall_matched) << "\t-\n";
    out << "recall\trecall " << name << '\t' << ratio_cell(a, &AnnotatorScore::recall)
        << '\t' << ratio_cell(b, &AnnotatorScore::recall) << "\t-\n";
    const bool has_lexicon =
        (a && a->in_lexicon_recall) || (b && b->in_lexicon_recall);
    if (has_lexicon) {
      auto lex_cell = [&](const AnnotatorScore* s) {
        return s && s->in_lexicon_recall ? format_ratio(*s->in_lexicon_recall, rounding)
                                         : std::string("-");
      };
      out << "recall\tin-lexicon recall " << name << '\t' << lex_cell(a) << '\t'
          << lex_cell(b) << "\t-\n";
    }
  }
  out << "recall\taverage\t" << format_ratio(pn.recall, rounding) << '\t'
      << format_ratio(svc.recall, rounding) << "\t-\n";

  const auto* first_pn = pn.annotators.empty() ? nullptr : &pn.annotators.front();
  const auto* first_svc = svc.annotators.empty() ? nullptr : &svc.annotators.front();
  out << "precision\tsystem\t" << count_cell(first_pn, &AnnotatorScore::system_total)
      << '\t' << count_cell(first_svc, &AnnotatorScore::system_total) << "\t-\n";
  for (const auto& name : names) {
    const auto* a = find(pn, name);
    const auto* b = find(svc, name);
    out << "precision\t" << name << " & system\t"
        << count_cell(a, &AnnotatorScore::precision_matched) << '\t'
        << count_cell(b, &AnnotatorScore::precision_matched) << "\t-\n";
    out << "precision\tprecision " << name << '\t'
        << ratio_cell(a, &AnnotatorScore::precision) << '\t'
        << ratio_cell(b, &AnnotatorScore::precision) << "\t-\n";
  }
  out << "precision\taverage\t" << format_ratio(pn.precision, rounding) << '\t'
      << format_ratio(svc.precision, rounding) << "\t-\n";

  out << "correction\texperimental\t" << round_count(corrections.experimental.pn, rounding)
      << '\t' << round_count(corrections.experimental.svc, rounding) << '\t'
      << format_ratio(corrections.experimental.proportion, rounding) << '\n';
  out << "correction\tcorrected\t" << round_count(corrections.corrected.pn, rounding)
      << '\t' << round_count(corrections.corrected.svc, rounding) << '\t'
      << format_ratio(corrections.corrected.proportion, rounding) << '\n';
}

}  // namespace lexgram
