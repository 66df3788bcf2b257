#include "lexgram/pipeline.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "lexgram/inflect.hpp"
#include "lexgram/rtn.hpp"
#include "lexgram/textproc.hpp"

namespace lexgram {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <typename F>
auto in_stage(const char* stage, int code, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, code, e.what());
  }
}

class ConfigReader {
 public:
  ConfigReader(std::string_view text, fs::path base) : base_(std::move(base)) {
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++line_no;
      const std::string line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
      }
      if (!values_.emplace(key, value).second) {
        throw ConfigError("config line " + std::to_string(line_no) + ": repeated key '" +
                          key + "'");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string value = it->second;
    values_.erase(it);
    return value;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value || value->empty()) throw ConfigError("config: missing key '" + key + "'");
    return *value;
  }

  fs::path existing(const std::string& key, const std::string& value) const {
    fs::path p = fs::path(value).is_absolute() ? fs::path(value) : base_ / value;
    if (!fs::exists(p)) {
      throw ConfigError("config: " + key + " path does not exist: " + p.string());
    }
    return p.lexically_normal();
  }

  std::vector<fs::path> existing_list(const std::string& key, const std::string& value) const {
    std::vector<fs::path> out;
    for (const auto& w : words(value)) out.push_back(existing(key, w));
    if (out.empty()) throw ConfigError("config: empty path list for '" + key + "'");
    return out;
  }

  fs::path resolve(const std::string& value) const {
    return fs::path(value).is_absolute() ? fs::path(value) : (base_ / value).lexically_normal();
  }

  void finish() const {
    if (!values_.empty()) {
      throw ConfigError("config: unknown key '" + values_.begin()->first + "'");
    }
  }

 private:
  fs::path base_;
  std::map<std::string, std::string> values_;
};

template <typename F>
auto parse_option(const std::string& key, const std::string& value, F&& parse)
    -> decltype(parse(value)) {
  try {
    return parse(value);
  } catch (const Error& e) {
    throw ConfigError("config: " + key + ": " + e.what());
  }
}

double parse_probability(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !(v >= 0.0 && v <= 1.0)) {
    throw ConfigError("config: " + key + " must be a number in [0, 1]");
  }
  return v;
}

std::string classification_tsv(const std::vector<ConcordanceLine>& lines,
                               const std::vector<bool>& with_sv) {
  std::ostringstream out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string center = lines[i].center;
    std::replace_if(center.begin(), center.end(),
                    [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
    out << lines[i].doc_id << '\t' << lines[i].match.start_byte << '\t'
        << lines[i].match.end_byte << '\t' << (with_sv[i] ? "with-sv" : "without-sv")
        << '\t' << center << '\n';
  }
  return out.str();
}

std::string table3_tsv(const CorrectionTable& t, Rounding rounding) {
  std::ostringstream out;
  out << "\tPN\tSVC\tproportion\n";
  out << "experimental\t" << round_count(t.experimental.pn, rounding) << '\t'
      << round_count(t.experimental.svc, rounding) << '\t'
      << format_ratio(t.experimental.proportion, rounding) << '\n';
  out << "corrected\t" << round_count(t.corrected.pn, rounding) << '\t'
      << round_count(t.corrected.svc, rounding) << '\t'
      << format_ratio(t.corrected.proportion, rounding) << '\n';
  return out.str();
}

struct CorpusRun {
  std::vector<ConcordanceLine> pn_lines;
  std::vector<ConcordanceLine> svc_lines;
  std::vector<bool> with_sv;  // parallel to pn_lines
  ClassifiedCounts counts;
};

CorpusRun run_corpus(const std::vector<Document>& docs, const LexIndex& index,
                     const Graph& pn, const Graph& svc, const RunConfig& config) {
  CorpusRun run;
  for (const auto& doc : docs) {
    const TaggedText tagged = tag_text(doc.text, index, config.case_policy);
    const auto pn_matches = locate(pn, tagged, config.policy);
    const auto svc_matches = locate(svc, tagged, config.policy);
    const auto flags = support_flags(pn_matches, svc_matches);
    run.counts += classify_pn(pn_matches, svc_matches);
    auto pn_lines = build_concordance(pn_matches, tagged, config.context_width, doc.id);
    auto svc_lines = build_concordance(svc_matches, tagged, config.context_width, doc.id);
    std::move(pn_lines.begin(), pn_lines.end(), std::back_inserter(run.pn_lines));
    std::move(svc_lines.begin(), svc_lines.end(), std::back_inserter(run.svc_lines));
    run.with_sv.insert(run.with_sv.end(), flags.begin(), flags.end());
  }
  return run;
}

}  // namespace

StageError::StageError(std::string stage, int exit_code, const std::string& message)
    : Error(stage + ": " + message), stage_(std::move(stage)), exit_code_(exit_code) {}

std::vector<fs::path> expand_glob(const fs::path& pattern) {
  const std::string name = pattern.filename().string();
  if (name.find_first_of("*?[") == std::string::npos) {
    if (!fs::exists(pattern)) return {};
    return {pattern};
  }
  const fs::path dir = pattern.has_parent_path() ? pattern.parent_path() : fs::path(".");
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (fnmatch(name.c_str(), entry.path().filename().c_str(), 0) == 0) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunConfig parse_config(std::string_view text, const fs::path& base_dir) {
  ConfigReader reader(text, base_dir);
  RunConfig config;

  config.lexicon = reader.existing_list("lexicon", reader.require("lexicon"));
  if (auto v = reader.take("paradigms")) config.paradigms = reader.existing("paradigms", *v);
  if (auto v = reader.take("lemmas")) config.lemmas = reader.existing("lemmas", *v);
  if (config.paradigms.has_value() != config.lemmas.has_value()) {
    throw ConfigError("config: paradigms and lemmas must be given together");
  }

  config.pn.files = reader.existing_list("pn_grammar", reader.require("pn_grammar"));
  if (auto v = reader.take("pn_main")) config.pn.main = *v;
  config.svc.files = reader.existing_list("svc_grammar", reader.require("svc_grammar"));
  if (auto v = reader.take("svc_main")) config.svc.main = *v;

  if (auto v = reader.take("subcats")) {
    std::set<Subcategory> seen;
    for (const auto& name : words(*v)) {
      SubcatConfig sc;
      sc.subcat = parse_option("subcats", name, parse_subcategory);
      if (!seen.insert(sc.subcat).second) {
        throw ConfigError("config: subcats lists " + name + " twice");
      }
      sc.pn.files = config.pn.files;
      sc.svc.files = config.svc.files;
      if (auto g = reader.take("pn_grammar." + name)) {
        sc.pn.files = reader.existing_list("pn_grammar." + name, *g);
      }
      if (auto g = reader.take("svc_grammar." + name)) {
        sc.svc.files = reader.existing_list("svc_grammar." + name, *g);
      }
      sc.pn.main = reader.take("pn_main." + name).value_or(config.pn.main + "_" + name);
      sc.svc.main = reader.take("svc_main." + name).value_or(config.svc.main + "_" + name);
      config.subcats.push_back(std::move(sc));
    }
  }

  const std::string corpus = reader.require("corpus");
  for (const auto& pattern : words(corpus)) {
    auto found = expand_glob(reader.resolve(pattern));
    if (found.empty()) throw ConfigError("config: corpus pattern matches nothing: " + pattern);
    config.corpus.insert(config.corpus.end(), found.begin(), found.end());
  }
  std::sort(config.corpus.begin(), config.corpus.end());
  config.corpus.erase(std::unique(config.corpus.begin(), config.corpus.end()),
                      config.corpus.end());
  {
    std::set<std::string> ids;
    for (const auto& p : config.corpus) {
      if (!ids.insert(p.stem().string()).second) {
        throw ConfigError("config: two corpus files share the document id " +
                          p.stem().string());
      }
    }
  }

  if (auto v = reader.take("gold")) config.gold = reader.existing("gold", *v);
  if (auto v = reader.take("annotators")) config.annotators = words(*v);
  if (auto v = reader.take("pn_recall_docs")) config.pn_docs.recall_docs = words(*v);
  if (auto v = reader.take("pn_precision_docs")) config.pn_docs.precision_docs = words(*v);
  if (auto v = reader.take("svc_recall_docs")) config.svc_docs.recall_docs = words(*v);
  if (auto v = reader.take("svc_precision_docs")) config.svc_docs.precision_docs = words(*v);

  config.output_dir = reader.resolve(reader.require("output_dir"));

  if (auto v = reader.take("policy")) config.policy = parse_option("policy", *v, parse_match_policy);
  if (auto v = reader.take("context_width")) {
    const bool digits = !v->empty() && std::all_of(v->begin(), v->end(), [](char c) {
      return c >= '0' && c <= '9';
    });
    if (!digits) throw ConfigError("config: context_width must be a non-negative integer");
    config.context_width = std::stoull(*v);
  }
  if (auto v = reader.take("case_policy")) {
    config.case_policy = parse_option("case_policy", *v, parse_case_policy);
  }
  if (auto v = reader.take("alignment")) {
    config.alignment = parse_option("alignment", *v, parse_align_criterion);
  }
  if (auto v = reader.take("rounding")) config.rounding = parse_option("rounding", *v, parse_rounding);
  if (auto v = reader.take("order")) {
    config.order = parse_option("order", *v, parse_concordance_order);
  }

  const char* keys[4] = {"pn_precision", "pn_recall", "svc_precision", "svc_recall"};
  std::optional<std::string> values[4];
  int given = 0;
  for (int i = 0; i < 4; ++i) {
    values[i] = reader.take(keys[i]);
    if (values[i]) ++given;
  }
  if (given != 0 && given != 4) {
    throw ConfigError("config: pn_precision, pn_recall, svc_precision and svc_recall "
                      "must be given together");
  }
  if (given == 4) {
    CorrectionParams p;
    p.pn_precision = parse_probability(keys[0], *values[0]);
    p.pn_recall = parse_probability(keys[1], *values[1]);
    p.svc_precision = parse_probability(keys[2], *values[2]);
    p.svc_recall = parse_probability(keys[3], *values[3]);
    config.correction = p;
  }

  reader.finish();
  return config;
}

RunConfig read_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return parse_config(buf.str(), base);
}

std::vector<LexEntry> load_lexicon(std::span<const fs::path> files,
                                   const std::optional<fs::path>& paradigms,
                                   const std::optional<fs::path>& lemmas) {
  std::vector<LexEntry> entries;
  for (const auto& file : files) {
    auto more = read_lexicon_file(file.string());
    std::move(more.begin(), more.end(), std::back_inserter(entries));
  }
  if (paradigms && lemmas) {
    const auto table = read_paradigm_file(paradigms->string());
    const auto lemma_entries = read_lemma_file(lemmas->string());
    auto generated = expand_lexicon(lemma_entries, table);
    std::move(generated.begin(), generated.end(), std::back_inserter(entries));
  }
  return entries;
}

Graph load_flat_grammar(const GrammarSpec& spec) {
  const Grammar grammar = load_grammar(spec.files, spec.main);
  const RecursionCheck check = check_recursion(grammar);
  if (!check.ok) throw Error(check.message);
  return flatten(grammar);
}

std::vector<Document> read_documents(std::span<const fs::path> files) {
  std::vector<Document> docs;
  for (const auto& file : files) docs.push_back({file.stem().string(), slurp(file)});
  return docs;
}

RunResult run_pipeline(const RunConfig& config) {
  RunResult result;

  const auto entries = in_stage("lexicon", kExitLexicon, [&] {
    return load_lexicon(config.lexicon, config.paradigms, config.lemmas);
  });
  const LexIndex index = build_index(entries);

  struct Grammars {
    Graph pn;
    Graph svc;
    std::vector<GrammarPair> subcats;
  };
  const Grammars grammars = in_stage("grammar", kExitGrammar, [&] {
    Grammars g;
    g.pn = load_flat_grammar(config.pn);
    g.svc = load_flat_grammar(config.svc);
    for (const auto& sc : config.subcats) {
      g.subcats.push_back({load_flat_grammar(sc.pn), load_flat_grammar(sc.svc)});
    }
    return g;
  });

  const auto docs = in_stage("corpus", kExitCorpus, [&] { return read_documents(config.corpus); });

  CorpusRun run = in_stage("corpus", kExitCorpus,
                           [&] { return run_corpus(docs, index, grammars.pn, grammars.svc, config); });
  result.counts = run.counts;

  std::vector<std::string> subcat_names;
  std::vector<ClassifiedCounts> subcat_counts;
  in_stage("corpus", kExitCorpus, [&] {
    for (std::size_t i = 0; i < config.subcats.size(); ++i) {
      const auto filtered = filter_subcategory(entries, config.subcats[i].subcat);
      const LexIndex sub_index = build_index(filtered);
      RunOptions options{config.policy, config.case_policy};
      subcat_names.emplace_back(to_string(config.subcats[i].subcat));
      subcat_counts.push_back(classify_corpus(docs, sub_index, grammars.subcats[i], options));
    }
  });

  in_stage("eval", kExitEval, [&] {
    if (config.gold) {
      const auto gold = read_gold_file(config.gold->string());
      const auto annotators =
          config.annotators.empty() ? annotators_of(gold) : config.annotators;
      result.pn_scores = evaluate_label(run.pn_lines, gold, SpanLabel::PN, annotators,
                                        config.pn_docs, config.alignment, &index);
      result.svc_scores = evaluate_label(run.svc_lines, gold, SpanLabel::SVC, annotators,
                                         config.svc_docs, config.alignment, nullptr);
    }
    std::optional<CorrectionParams> params = config.correction;
    if (!params && result.pn_scores && result.svc_scores) {
      params = CorrectionParams{result.pn_scores->precision, result.pn_scores->recall,
                                result.svc_scores->precision, result.svc_scores->recall};
    }
    if (params) {
      result.corrections = correct_counts(
          static_cast<double>(run.counts.pn_total), static_cast<double>(run.counts.pn_with_sv),
          params->pn_precision, params->pn_recall, params->svc_precision, params->svc_recall);
    }
    if (!config.subcats.empty()) {
      result.subcat_rows = subcat_rows(subcat_names, subcat_counts, run.counts, params);
    }
  });

  const auto classification = classification_tsv(run.pn_lines, run.with_sv);
  auto concordance = [&](std::vector<ConcordanceLine> lines) {
    std::ostringstream out;
    const auto sorted = sort_concordance(std::move(lines), config.order);
    write_concordance_tsv(out, sorted);
    return out.str();
  };
  result.files["pn_concordance.tsv"] = concordance(run.pn_lines);
  result.files["svc_concordance.tsv"] = concordance(run.svc_lines);
  result.files["classification.tsv"] = classification;
  {
    std::ostringstream out;
    write_counts_tsv(out, run.counts, config.rounding);
    result.files["counts.tsv"] = out.str();
  }
  if (result.corrections) {
    result.files["table3.tsv"] = table3_tsv(*result.corrections, config.rounding);
  }
  if (!result.subcat_rows.empty()) {
    std::ostringstream out;
    write_subcat_tsv(out, result.subcat_rows, config.rounding);
    result.files["table4.tsv"] = out.str();
  }
  if (result.pn_scores && result.svc_scores && result.corrections) {
    std::ostringstream out;
    write_metrics_tsv(out, *result.pn_scores, *result.svc_scores, *result.corrections,
                      config.rounding);
    result.files["metrics.tsv"] = out.str();
  }
  return result;
}

void write_outputs(const RunConfig& config, const RunResult& result) {
  fs::create_directories(config.output_dir);
  for (const auto& [name, contents] : result.files) {
    std::ofstream out(config.output_dir / name, std::ios::binary);
    if (!out) throw Error("cannot write " + (config.output_dir / name).string());
    out << contents;
  }
}

int exit_code_for(const std::exception& error) {
  if (const auto* s = dynamic_cast<const StageError*>(&error)) return s->exit_code();
  if (dynamic_cast<const ConfigError*>(&error)) return kExitConfig;
  if (dynamic_cast<const MalformedEntry*>(&error) ||
      dynamic_cast<const MalformedParadigm*>(&error) ||
      dynamic_cast<const UnknownParadigm*>(&error) ||
      dynamic_cast<const LemmaTooShort*>(&error)) {
    return kExitLexicon;
  }
  if (dynamic_cast<const MalformedGraph*>(&error) ||
      dynamic_cast<const UnresolvedCall*>(&error)) {
    return kExitGrammar;
  }
  if (dynamic_cast<const InvalidEncoding*>(&error) ||
      dynamic_cast<const EmptyInput*>(&error)) {
    return kExitCorpus;
  }
  if (dynamic_cast<const EmptyGold*>(&error) || dynamic_cast<const EmptySystem*>(&error) ||
      dynamic_cast<const ZeroRecall*>(&error)) {
    return kExitEval;
  }
  return 1;
}

}  // namespace lexgram
