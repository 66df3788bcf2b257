#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexgram/lexicon.hpp"

namespace lexgram {

// Inflection operator: delete the last character of the working form, or
// append a literal.
struct InflectionOp {
  enum class Kind { delete_last, append };
  Kind kind;
  std::string text;

  bool operator==(const InflectionOp&) const = default;
};

struct InflectionRule {
  std::vector<InflectionOp> ops;
  std::string infl_code;

  bool operator==(const InflectionRule&) const = default;
};

struct Paradigm {
  std::string name;
  std::vector<InflectionRule> rules;
};

using ParadigmTable = std::map<std::string, Paradigm>;

struct LemmaEntry {
  std::string lemma;
  std::string category;
  std::set<std::string> sem_features;
  std::string paradigm_name;
};

struct InflectedForm {
  std::string form;
  std::string infl_code;

  auto operator<=>(const InflectedForm&) const = default;
};

// Parses one "paradigm NAME: rule ; rule ..." section. first_line is used
// for error positions.
Paradigm parse_paradigm(std::string_view section, std::size_t first_line = 1);

// Parses a whole paradigm file (several sections, "#" comment lines).
ParadigmTable parse_paradigms(std::string_view text);
ParadigmTable read_paradigm_file(const std::string& path);

std::vector<InflectedForm> generate(std::string_view lemma,
                                    const Paradigm& paradigm);

// Lemma file line: lemma "." category ("+" feature)* "/" paradigm
LemmaEntry parse_lemma_entry(std::string_view line);
std::vector<LemmaEntry> read_lemma_entries(std::istream& in);
std::vector<LemmaEntry> read_lemma_file(const std::string& path);

// Output order: input lemma order, then rule order.
std::vector<LexEntry> expand_lexicon(std::span<const LemmaEntry> lemmas,
                                     const ParadigmTable& paradigms);

}  // namespace lexgram
