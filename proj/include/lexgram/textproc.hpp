#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexgram/lexicon.hpp"

namespace lexgram {

enum class TokenKind { word, punct, number };

struct Token {
  std::string surface;
  std::size_t start = 0;  // byte offsets, half-open
  std::size_t end = 0;
  TokenKind kind = TokenKind::word;
  bool sentence_initial = false;  // first word token of its sentence
  std::size_t sentence = 0;       // sentence ordinal within the text
};

struct TaggedToken {
  Token token;
  std::vector<Analysis> analyses;  // never empty
};

struct TaggedText {
  std::string source;
  std::vector<TaggedToken> tokens;
  std::vector<std::size_t> sentence_starts;  // token indices, increasing

  std::size_t sentence_count() const { return sentence_starts.size(); }
  // Half-open token range of sentence k.
  std::pair<std::size_t, std::size_t> sentence_range(std::size_t k) const;
};

inline constexpr std::string_view kUnknownCategory = "UNKNOWN";
inline constexpr std::string_view kPunctCategory = "PONCT";
inline constexpr std::string_view kNumberCategory = "NB";

// Words are maximal letter runs with internal hyphens and apostrophes; a
// 1-2 letter run followed by an apostrophe is split off as an elided word
// ("l'", "qu'"). A sentence ends after '.', '!' or '?' followed by
// whitespace and an uppercase letter. Throws InvalidEncoding.
std::vector<Token> tokenize(std::string_view text);

// Attaches every lexicon analysis to each word token; sentence-initial words
// use the given case policy, other words exact lookup. Punctuation gets a
// PONCT analysis, numbers an NB analysis, uncovered words UNKNOWN.
// tag() runs the per-token work with OpenMP; tag_serial() is the reference.
TaggedText tag(std::string source, std::vector<Token> tokens,
               const LexIndex& index,
               CasePolicy initial_policy = CasePolicy::sentence_initial_fold);
TaggedText tag_serial(std::string source, std::vector<Token> tokens,
                      const LexIndex& index,
                      CasePolicy initial_policy =
                          CasePolicy::sentence_initial_fold);

// tokenize + tag.
TaggedText tag_text(std::string source, const LexIndex& index,
                    CasePolicy initial_policy = CasePolicy::sentence_initial_fold);

// Analyses assigned to a single token; shared by both tag variants.
std::vector<Analysis> analyses_for(const Token& token, const LexIndex& index,
                                   CasePolicy initial_policy);

bool is_unknown(const Analysis& analysis);

// Fraction of word tokens with at least one lexicon analysis. Throws
// EmptyInput when the text has no word tokens.
double tagging_coverage(const TaggedText& tagged);

// Debug dump: start, end, surface, ';'-joined analyses in lexicon syntax.
void write_tagged_tsv(std::ostream& out, const TaggedText& tagged);

std::string format_analysis(std::string_view form, const Analysis& analysis);

}  // namespace lexgram
