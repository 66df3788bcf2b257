#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lexgram/classify.hpp"
#include "lexgram/concord.hpp"
#include "lexgram/eval.hpp"
#include "lexgram/inflect.hpp"
#include "lexgram/pipeline.hpp"
#include "lexgram/rtn.hpp"
#include "lexgram/tables.hpp"
#include "lexgram/textproc.hpp"

namespace lexgram::cli {

namespace {

struct LexiconArgs {
  std::vector<std::string> files;
  std::string paradigms;
  std::string lemmas;

  void attach(CLI::App* cmd) {
    cmd->add_option("--lexicon", files, "DELAF lexicon files")->check(CLI::ExistingFile);
    cmd->add_option("--paradigms", paradigms, "paradigm file")->check(CLI::ExistingFile);
    cmd->add_option("--lemmas", lemmas, "lemma file")->check(CLI::ExistingFile);
  }

  std::vector<LexEntry> load() const {
    if (files.empty() && paradigms.empty()) {
      throw ConfigError("give --lexicon or --paradigms with --lemmas");
    }
    if (paradigms.empty() != lemmas.empty()) {
      throw ConfigError("--paradigms and --lemmas go together");
    }
    std::vector<fs::path> paths(files.begin(), files.end());
    std::optional<fs::path> p;
    std::optional<fs::path> l;
    if (!paradigms.empty()) {
      p = paradigms;
      l = lemmas;
    }
    return load_lexicon(paths, p, l);
  }
};

struct Options {
  LexiconArgs lexicon;
  std::vector<std::string> texts;
  std::vector<std::string> grammar;
  std::string main = "PN";
  std::string svc_main = "SVC";
  std::vector<std::string> svc_grammar;
  std::string policy = "longest";
  std::string case_policy = "sentence-initial-fold";
  std::string subcat;
  std::size_t width = kDefaultContextWidth;
  std::string order = "text";
  std::string output;
  std::vector<std::string> lookups;
  std::string system;
  std::string gold;
  std::string label = "PN";
  std::vector<std::string> annotators;
  std::string alignment = "overlap";
  std::string rounding = "half-up";
  std::string config;
  double pn_count = 0;
  double svc_count = 0;
  double pn_p = 0, pn_r = 0, svc_p = 0, svc_r = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Document> documents(const std::vector<std::string>& texts) {
  std::vector<fs::path> paths(texts.begin(), texts.end());
  return read_documents(paths);
}

Graph grammar_of(const std::vector<std::string>& files, const std::string& main) {
  GrammarSpec spec;
  spec.files.assign(files.begin(), files.end());
  spec.main = main;
  return load_flat_grammar(spec);
}

std::vector<LexEntry> lexicon_for(const Options& o) {
  auto entries = o.lexicon.load();
  if (!o.subcat.empty()) entries = filter_subcategory(entries, parse_subcategory(o.subcat));
  return entries;
}

std::string clean(std::string text) {
  std::replace_if(text.begin(), text.end(),
                  [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return text;
}

int cmd_inflect(const Options& o, std::ostream& out) {
  const auto table = read_paradigm_file(o.lexicon.paradigms);
  const auto lemmas = read_lemma_file(o.lexicon.lemmas);
  const auto entries = expand_lexicon(lemmas, table);
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output, std::ios::binary);
    if (!file) throw Error("cannot write " + o.output);
    sink = &file;
  }
  for (const auto& e : entries) *sink << serialize_entry(e) << '\n';
  return kExitOk;
}

int cmd_index(const Options& o, std::ostream& out) {
  const auto entries = lexicon_for(o);
  const LexIndex index = build_index(entries);
  out << "entries\t" << index.entry_count() << '\n';
  out << "forms\t" << index.form_count() << '\n';
  out << "analyses\t" << index.analysis_count() << '\n';
  out << "nodes\t" << index.node_count() << '\n';
  const CasePolicy policy = parse_case_policy(o.case_policy);
  for (const auto& form : o.lookups) {
    const auto found = lookup(index, form, policy);
    if (found.empty()) out << form << "\t-\n";
    for (const auto& a : found) out << form << '\t' << format_analysis(form, a) << '\n';
  }
  return kExitOk;
}

int cmd_tag(const Options& o, std::ostream& out) {
  const LexIndex index = build_index(lexicon_for(o));
  const CasePolicy policy = parse_case_policy(o.case_policy);
  for (const auto& doc : documents(o.texts)) {
    if (o.texts.size() > 1) out << "# " << doc.id << '\n';
    write_tagged_tsv(out, tag_text(doc.text, index, policy));
  }
  return kExitOk;
}

std::vector<ConcordanceLine> concordance_of(const Options& o) {
  const LexIndex index = build_index(lexicon_for(o));
  const Graph graph = grammar_of(o.grammar, o.main);
  const MatchPolicy policy = parse_match_policy(o.policy);
  const CasePolicy case_policy = parse_case_policy(o.case_policy);
  std::vector<ConcordanceLine> lines;
  for (const auto& doc : documents(o.texts)) {
    const TaggedText tagged = tag_text(doc.text, index, case_policy);
    const auto matches = locate(graph, tagged, policy);
    auto more = build_concordance(matches, tagged, o.width, doc.id);
    std::move(more.begin(), more.end(), std::back_inserter(lines));
  }
  return lines;
}

int cmd_locate(const Options& o, std::ostream& out) {
  for (const auto& l : concordance_of(o)) {
    out << l.doc_id << '\t' << l.match.start_byte << '\t' << l.match.end_byte << '\t'
        << l.match.start_token << '\t' << l.match.end_token << '\t' << clean(l.center) << '\n';
  }
  return kExitOk;
}

int cmd_concord(const Options& o, std::ostream& out) {
  const auto lines = sort_concordance(concordance_of(o), parse_concordance_order(o.order));
  write_concordance_tsv(out, lines);
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const LexIndex index = build_index(lexicon_for(o));
  GrammarPair pair{grammar_of(o.grammar, o.main), grammar_of(o.svc_grammar, o.svc_main)};
  RunOptions options{parse_match_policy(o.policy), parse_case_policy(o.case_policy)};
  const auto counts = classify_corpus(documents(o.texts), index, pair, options);
  write_counts_tsv(out, counts, parse_rounding(o.rounding));
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  std::ifstream in(o.system, std::ios::binary);
  if (!in) throw Error("cannot read " + o.system);
  const auto lines = read_concordance_tsv(in);
  const auto gold = read_gold_file(o.gold);
  const SpanLabel label = parse_span_label(o.label);
  const auto annotators = o.annotators.empty() ? annotators_of(gold) : o.annotators;
  std::optional<LexIndex> index;
  if (!o.lexicon.files.empty() || !o.lexicon.paradigms.empty()) {
    index = build_index(o.lexicon.load());
  }
  const Rounding rounding = parse_rounding(o.rounding);
  const auto scores = evaluate_label(lines, gold, label, annotators, EvalDocs{},
                                     parse_align_criterion(o.alignment),
                                     index ? &*index : nullptr);
  out << "annotator\tgold\tsystem\trecall_matched\tprecision_matched\trecall\tprecision"
         "\tin_lexicon_recall\n";
  for (const auto& s : scores.annotators) {
    out << s.annotator << '\t' << s.gold_total << '\t' << s.system_total << '\t'
        << s.recall_matched << '\t' << s.precision_matched << '\t'
        << format_ratio(s.recall, rounding) << '\t' << format_ratio(s.precision, rounding)
        << '\t'
        << (s.in_lexicon_recall ? format_ratio(*s.in_lexicon_recall, rounding) : "-")
        << '\n';
  }
  out << "average\t-\t-\t-\t-\t" << format_ratio(scores.recall, rounding) << '\t'
      << format_ratio(scores.precision, rounding) << "\t-\n";
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const Rounding rounding = parse_rounding(o.rounding);
  const auto t = correct_counts(o.pn_count, o.svc_count, o.pn_p, o.pn_r, o.svc_p, o.svc_r);
  out << "\tPN\tSVC\tproportion\n";
  out << "experimental\t" << round_count(t.experimental.pn, rounding) << '\t'
      << round_count(t.experimental.svc, rounding) << '\t'
      << format_ratio(t.experimental.proportion, rounding) << '\n';
  out << "corrected\t" << round_count(t.corrected.pn, rounding) << '\t'
      << round_count(t.corrected.svc, rounding) << '\t'
      << format_ratio(t.corrected.proportion, rounding) << '\n';
  return kExitOk;
}

int cmd_verify_tables(const Options& o, std::ostream& out) {
  const auto checks = verify_reference_tables(parse_rounding(o.rounding));
  write_table_checks(out, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return ok ? kExitOk : 1;
}

int cmd_run(const Options& o, std::ostream& out) {
  RunConfig config;
  try {
    config = read_config(o.config);
  } catch (const Error& e) {
    throw StageError("config", kExitConfig, e.what());
  }
  const RunResult result = run_pipeline(config);
  write_outputs(config, result);
  out << "pn_total\t" << result.counts.pn_total << '\n';
  out << "svc_total\t" << result.counts.svc_total << '\n';
  out << "pn_with_sv\t" << result.counts.pn_with_sv << '\n';
  out << "pn_without_sv\t" << result.counts.pn_without_sv << '\n';
  for (const auto& [name, contents] : result.files) {
    out << "wrote\t" << (config.output_dir / name).string() << '\n';
  }
  return kExitOk;
}

void add_grammar_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--grammar", o.grammar, "graph files")->required()->check(CLI::ExistingFile);
  cmd->add_option("--main", o.main, "main graph name");
  cmd->add_option("--policy", o.policy, "longest, shortest or all");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lexicon-grammar pattern engine for predicative nouns"};
  app.require_subcommand(1);
  Options o;

  auto* inflect = app.add_subcommand("inflect", "expand lemmas through paradigms");
  inflect->add_option("--paradigms", o.lexicon.paradigms)->required()->check(CLI::ExistingFile);
  inflect->add_option("--lemmas", o.lexicon.lemmas)->required()->check(CLI::ExistingFile);
  inflect->add_option("-o,--output", o.output, "output lexicon file");

  auto* index = app.add_subcommand("index", "build the form index and look up forms");
  o.lexicon.attach(index);
  index->add_option("--lookup", o.lookups, "forms to look up");
  index->add_option("--case-policy", o.case_policy);
  index->add_option("--subcat", o.subcat, "keep only PN entries of a sub-category");

  auto* tag = app.add_subcommand("tag", "tokenize and tag texts");
  o.lexicon.attach(tag);
  tag->add_option("texts", o.texts)->required()->check(CLI::ExistingFile);
  tag->add_option("--case-policy", o.case_policy);

  auto* locate_cmd = app.add_subcommand("locate", "list grammar matches");
  o.lexicon.attach(locate_cmd);
  add_grammar_options(locate_cmd, o);
  locate_cmd->add_option("texts", o.texts)->required()->check(CLI::ExistingFile);
  locate_cmd->add_option("--case-policy", o.case_policy);
  locate_cmd->add_option("--subcat", o.subcat);

  auto* concord = app.add_subcommand("concord", "build a sorted concordance");
  o.lexicon.attach(concord);
  add_grammar_options(concord, o);
  concord->add_option("texts", o.texts)->required()->check(CLI::ExistingFile);
  concord->add_option("--case-policy", o.case_policy);
  concord->add_option("--subcat", o.subcat);
  concord->add_option("--width", o.width, "context width in characters");
  concord->add_option("--order", o.order, "text, center or left-reversed");

  auto* classify = app.add_subcommand("classify", "count PN occurrences with and without SV");
  o.lexicon.attach(classify);
  classify->add_option("--pn-grammar", o.grammar)->required()->check(CLI::ExistingFile);
  classify->add_option("--pn-main", o.main);
  classify->add_option("--svc-grammar", o.svc_grammar)->required()->check(CLI::ExistingFile);
  classify->add_option("--svc-main", o.svc_main);
  classify->add_option("--policy", o.policy);
  classify->add_option("--case-policy", o.case_policy);
  classify->add_option("--subcat", o.subcat);
  classify->add_option("--rounding", o.rounding);
  classify->add_option("texts", o.texts)->required()->check(CLI::ExistingFile);

  auto* eval = app.add_subcommand("eval", "score a concordance against gold spans");
  o.lexicon.attach(eval);
  eval->add_option("--system", o.system, "concordance TSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--gold", o.gold, "gold TSV")->required()->check(CLI::ExistingFile);
  eval->add_option("--label", o.label, "PN or SVC");
  eval->add_option("--annotator", o.annotators);
  eval->add_option("--alignment", o.alignment, "overlap or exact");
  eval->add_option("--rounding", o.rounding);

  auto* report = app.add_subcommand("report", "bias-corrected counts and proportion");
  report->add_option("--pn", o.pn_count)->required();
  report->add_option("--svc", o.svc_count)->required();
  report->add_option("--pn-precision", o.pn_p)->required();
  report->add_option("--pn-recall", o.pn_r)->required();
  report->add_option("--svc-precision", o.svc_p)->required();
  report->add_option("--svc-recall", o.svc_r)->required();
  report->add_option("--rounding", o.rounding);

  auto* verify = app.add_subcommand("verify-tables", "recompute the reference tables");
  verify->add_option("--rounding", o.rounding);

  auto* run_cmd = app.add_subcommand("run", "run the whole pipeline from a config file");
  run_cmd->add_option("--config", o.config)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*inflect) return cmd_inflect(o, out);
    if (*index) return cmd_index(o, out);
    if (*tag) return cmd_tag(o, out);
    if (*locate_cmd) return cmd_locate(o, out);
    if (*concord) return cmd_concord(o, out);
    if (*classify) return cmd_classify(o, out);
    if (*eval) return cmd_eval(o, out);
    if (*report) return cmd_report(o, out);
    if (*verify) return cmd_verify_tables(o, out);
    if (*run_cmd) return cmd_run(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 1;
}

}  // namespace lexgram::cli
