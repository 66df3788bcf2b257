#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexgram/rtn.hpp"

namespace lexgram {

struct ConcordanceLine {
  Match match;
  std::string left;    // at most width characters before the match
  std::string center;  // exact source slice of the match
  std::string right;   // at most width characters after the match
  std::string doc_id;

  bool operator==(const ConcordanceLine&) const = default;
};

inline constexpr std::size_t kDefaultContextWidth = 40;

std::vector<ConcordanceLine> build_concordance(std::span<const Match> matches,
                                               const TaggedText& text,
                                               std::size_t width,
                                               std::string_view doc_id);

enum class ConcordanceOrder { text, center, left_reversed };

ConcordanceOrder parse_concordance_order(std::string_view text);

// Stable. text: (doc_id, start_byte); center: center text, then text order;
// left_reversed: left context read backwards.
std::vector<ConcordanceLine> sort_concordance(std::vector<ConcordanceLine> lines,
                                              ConcordanceOrder order);

// TSV: doc_id, start_byte, end_byte, left, center, right. Tabs and newlines
// inside the text fields become single spaces.
void write_concordance_tsv(std::ostream& out, std::span<const ConcordanceLine> lines);

// Reads the TSV back. Only byte offsets and text fields are restored; token
// indices are left at zero.
std::vector<ConcordanceLine> read_concordance_tsv(std::istream& in);

}  // namespace lexgram
