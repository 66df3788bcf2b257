// Test-only helpers: fixture paths, independent reference implementations
// and random input generators.
#pragma once

#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexgram/classify.hpp"
#include "lexgram/concord.hpp"
#include "lexgram/eval.hpp"
#include "lexgram/inflect.hpp"
#include "lexgram/lexicon.hpp"
#include "lexgram/rtn.hpp"
#include "lexgram/textproc.hpp"

namespace lexgram::testing {

std::filesystem::path source_dir();
std::filesystem::path fixture_path(std::string_view relative);
std::string read_text(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Bundled fixture

std::vector<LexEntry> fixture_lexicon();
std::vector<Document> fixture_documents();

// Grammar built from the bundled graph files with the given main graph.
Grammar fixture_grammar(const std::string& main);

// Every grammar used by the flattening oracle: bundled ones plus the test
// grammars under tests/data/grammars.
struct NamedGrammar {
  std::string label;
  Grammar grammar;
};
std::vector<NamedGrammar> oracle_grammars();

struct LedgerEntry {
  std::string kind;
  std::string key;
  std::string value;
};
std::vector<LedgerEntry> fixture_ledger();

// ---------------------------------------------------------------------------
// Reference implementations

// Direct recursive interpretation of an RTN: calls are executed, not
// inlined. Reports the same policy semantics as locate.
std::vector<Match> interpret(const Grammar& grammar, const TaggedText& text,
                             MatchPolicy policy);

// Linear scan over the entries; sorted and unique like the index.
std::vector<Analysis> scan_lookup(std::span<const LexEntry> entries, std::string_view form);

// Maximum bipartite matching (augmenting paths) between overlapping or
// identical spans of the same document.
std::size_t max_alignment(std::span<const ByteSpan> a, std::span<const ByteSpan> b,
                          AlignCriterion criterion);

// ---------------------------------------------------------------------------
// Random inputs

using Rng = std::mt19937_64;

// Small tagged text over a tiny vocabulary with ambiguous analyses.
TaggedText random_tagged_text(Rng& rng, std::size_t max_tokens = 12);

// Random recursion-free grammar over the vocabulary of random_tagged_text.
// Regenerates until check_recursion accepts.
Grammar random_grammar(Rng& rng);

std::vector<ConcordanceLine> random_lines(Rng& rng, std::size_t max_lines = 8);
std::vector<ByteSpan> random_spans(Rng& rng, std::size_t max_spans = 8);

}  // namespace lexgram::testing
