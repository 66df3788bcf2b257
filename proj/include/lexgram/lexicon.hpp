#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexgram {

// One line of a DELAF-style inflected-form lexicon:
//
//   form "," lemma "." category ("+" feature)* (":" infl_code)*
//
// Feature and code sets are kept sorted, which is also the serialization
// order.
struct LexEntry {
  std::string form;
  std::string lemma;
  std::string category;
  std::set<std::string> sem_features;
  std::set<std::string> infl_codes;

  auto operator<=>(const LexEntry&) const = default;
};

// One grammatical reading of a surface form. pn_link lists the support-verb
// lemmas declared with "SV=lemma" features on a PN entry.
struct Analysis {
  std::string lemma;
  std::string category;
  std::set<std::string> sem_features;
  std::string infl_code;
  std::set<std::string> pn_link;

  bool has_feature(std::string_view feature) const;

  auto operator<=>(const Analysis&) const = default;
};

inline constexpr std::string_view kPredicativeNoun = "PN";
inline constexpr std::string_view kSupportLinkPrefix = "SV=";

enum class CasePolicy { exact, sentence_initial_fold };

enum class Subcategory { NCA, NCF, CV };

std::string_view to_string(Subcategory subcat);
Subcategory parse_subcategory(std::string_view text);
CasePolicy parse_case_policy(std::string_view text);

LexEntry parse_entry(std::string_view line);
std::string serialize_entry(const LexEntry& entry);

// Escapes the DELAF separators inside a form or lemma.
std::string escape_field(std::string_view text);

// One Analysis per inflection code; an entry without codes yields a single
// analysis with an empty code.
std::vector<Analysis> analyses_of(const LexEntry& entry);

// Reads a lexicon stream, skipping blank and "#" lines. MalformedEntry
// carries the line number and source name.
std::vector<LexEntry> read_lexicon(std::istream& in,
                                   const std::string& source_name = {});
std::vector<LexEntry> read_lexicon_file(const std::string& path);

// Immutable form -> analyses map, stored as a byte trie in flat arrays.
// Analyses for a form are sorted and unique.
class LexIndex {
 public:
  LexIndex() = default;

  std::span<const Analysis> find(std::string_view form) const;

  std::size_t entry_count() const { return entry_count_; }
  std::size_t form_count() const { return form_count_; }
  std::size_t analysis_count() const { return analyses_.size(); }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  friend LexIndex build_index(std::span<const LexEntry> entries);

  struct Node {
    std::uint32_t first_edge = 0;
    std::uint32_t edge_count = 0;
    std::uint32_t first_analysis = 0;
    std::uint32_t analysis_count = 0;
  };
  struct Edge {
    unsigned char byte;
    std::uint32_t target;
  };

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Analysis> analyses_;
  std::size_t entry_count_ = 0;
  std::size_t form_count_ = 0;
};

LexIndex build_index(std::span<const LexEntry> entries);

// Under sentence_initial_fold an empty exact result for an uppercase-initial
// form is retried with the first character lowercased.
std::span<const Analysis> lookup(const LexIndex& index, std::string_view form,
                                 CasePolicy policy = CasePolicy::exact);

// Keeps PN entries tagged with subcat, plus every non-PN entry.
std::vector<LexEntry> filter_subcategory(std::span<const LexEntry> entries,
                                         Subcategory subcat);

}  // namespace lexgram
