#include "lexgram/concord.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <tuple>

#include "lexgram/error.hpp"
#include "lexgram/utf8.hpp"

namespace lexgram {

namespace {

std::string display(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

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

std::size_t parse_offset(std::string_view field, std::size_t line_no) {
  if (field.empty() || !std::all_of(field.begin(), field.end(),
                                    [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error("concordance line " + std::to_string(line_no) +
                ": invalid byte offset '" + std::string(field) + "'");
  }
  return std::stoull(std::string(field));
}

}  // namespace

std::vector<ConcordanceLine> build_concordance(std::span<const Match> matches,
                                               const TaggedText& text,
                                               std::size_t width,
                                               std::string_view doc_id) {
  const std::string_view source = text.source;
  std::vector<ConcordanceLine> lines;
  lines.reserve(matches.size());
  for (const auto& m : matches) {
    ConcordanceLine line;
    line.match = m;
    line.doc_id = std::string(doc_id);
    line.center = std::string(source.substr(m.start_byte, m.end_byte - m.start_byte));
    line.left = std::string(utf8::last_chars(source.substr(0, m.start_byte), width));
    line.right = std::string(utf8::first_chars(source.substr(m.end_byte), width));
    lines.push_back(std::move(line));
  }
  return lines;
}

ConcordanceOrder parse_concordance_order(std::string_view text) {
  if (text == "text") return ConcordanceOrder::text;
  if (text == "center") return ConcordanceOrder::center;
  if (text == "left-reversed") return ConcordanceOrder::left_reversed;
  throw ConfigError("unknown concordance order '" + std::string(text) + "'");
}

std::vector<ConcordanceLine> sort_concordance(std::vector<ConcordanceLine> lines,
                                              ConcordanceOrder order) {
  auto text_key = [](const ConcordanceLine& l) {
    return std::tie(l.doc_id, l.match.start_byte);
  };
  switch (order) {
    case ConcordanceOrder::text:
      std::stable_sort(lines.begin(), lines.end(),
                       [&](const auto& a, const auto& b) { return text_key(a) < text_key(b); });
      break;
    case ConcordanceOrder::center:
      std::stable_sort(lines.begin(), lines.end(), [&](const auto& a, const auto& b) {
        if (a.center != b.center) return a.center < b.center;
        return text_key(a) < text_key(b);
      });
      break;
    case ConcordanceOrder::left_reversed: {
      std::vector<std::pair<std::string, ConcordanceLine>> keyed;
      keyed.reserve(lines.size());
      for (auto& l : lines) {
        std::string key = utf8::reversed(l.left);
        keyed.emplace_back(std::move(key), std::move(l));
      }
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 0; i < keyed.size(); ++i) lines[i] = std::move(keyed[i].second);
      break;
    }
  }
  return lines;
}

void write_concordance_tsv(std::ostream& out, std::span<const ConcordanceLine> lines) {
  for (const auto& l : lines) {
    out << l.doc_id << '\t' << l.match.start_byte << '\t' << l.match.end_byte << '\t'
        << display(l.left) << '\t' << display(l.center) << '\t' << display(l.right)
        << '\n';
  }
}

std::vector<ConcordanceLine> read_concordance_tsv(std::istream& in) {
  std::vector<ConcordanceLine> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (raw.empty()) continue;
    const auto fields = split_tabs(raw);
    if (fields.size() != 6) {
      throw Error("concordance line " + std::to_string(line_no) + ": expected 6 fields");
    }
    ConcordanceLine l;
    l.doc_id = std::string(fields[0]);
    l.match.start_byte = parse_offset(fields[1], line_no);
    l.match.end_byte = parse_offset(fields[2], line_no);
    l.left = std::string(fields[3]);
    l.center = std::string(fields[4]);
    l.right = std::string(fields[5]);
    lines.push_back(std::move(l));
  }
  return lines;
}

}  // namespace lexgram
