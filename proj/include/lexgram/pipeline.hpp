#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexgram/classify.hpp"
#include "lexgram/concord.hpp"
#include "lexgram/error.hpp"
#include "lexgram/eval.hpp"

namespace lexgram {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitLexicon = 3,
  kExitGrammar = 4,
  kExitCorpus = 5,
  kExitEval = 6,
};

// A failure tagged with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, int exit_code, const std::string& message);
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct GrammarSpec {
  std::vector<fs::path> files;
  std::string main;
};

struct SubcatConfig {
  Subcategory subcat = Subcategory::NCA;
  GrammarSpec pn;
  GrammarSpec svc;
};

struct RunConfig {
  std::vector<fs::path> lexicon;
  std::optional<fs::path> paradigms;
  std::optional<fs::path> lemmas;
  GrammarSpec pn{{}, "PN"};
  GrammarSpec svc{{}, "SVC"};
  std::vector<SubcatConfig> subcats;
  std::vector<fs::path> corpus;  // glob already expanded, sorted
  std::optional<fs::path> gold;
  std::vector<std::string> annotators;  // empty: every annotator in the gold file
  EvalDocs pn_docs;
  EvalDocs svc_docs;
  fs::path output_dir;
  MatchPolicy policy = MatchPolicy::longest;
  std::size_t context_width = kDefaultContextWidth;
  CasePolicy case_policy = CasePolicy::sentence_initial_fold;
  AlignCriterion alignment = AlignCriterion::overlap;
  Rounding rounding = Rounding::half_up;
  ConcordanceOrder order = ConcordanceOrder::text;
  std::optional<CorrectionParams> correction;
};

// key = value lines, "#" comments. Relative paths resolve against base_dir.
// Throws ConfigError for unknown or repeated keys, bad values and missing
// paths.
RunConfig parse_config(std::string_view text, const fs::path& base_dir);
RunConfig read_config(const fs::path& path);

// Expands "*" and "?" in the last path component; sorted.
std::vector<fs::path> expand_glob(const fs::path& pattern);

struct RunResult {
  ClassifiedCounts counts;
  std::vector<SubcatRow> subcat_rows;
  std::optional<LabelScores> pn_scores;
  std::optional<LabelScores> svc_scores;
  std::optional<CorrectionTable> corrections;
  std::map<std::string, std::string> files;  // output file name -> contents
};

// Runs every stage in memory. Throws StageError.
RunResult run_pipeline(const RunConfig& config);

// Writes result.files into config.output_dir.
void write_outputs(const RunConfig& config, const RunResult& result);

// Loads lexicon files plus entries expanded from paradigms and lemmas.
std::vector<LexEntry> load_lexicon(std::span<const fs::path> files,
                                   const std::optional<fs::path>& paradigms,
                                   const std::optional<fs::path>& lemmas);

Graph load_flat_grammar(const GrammarSpec& spec);

std::vector<Document> read_documents(std::span<const fs::path> files);

// Maps library exception types to exit codes; 1 for anything else.
int exit_code_for(const std::exception& error);

}  // namespace lexgram
