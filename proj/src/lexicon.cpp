#include "lexgram/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <utility>

#include "lexgram/error.hpp"
#include "lexgram/utf8.hpp"

namespace lexgram {

namespace {

constexpr std::string_view kSeparators = ",.+:";

bool is_separator(char c) { return kSeparators.find(c) != std::string_view::npos; }

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool is_tag_char(char c) { return is_ascii_alnum(c) || c == '=' || c == '-'; }

// Reads an escaped field starting at pos up to the unescaped terminator.
// Returns the unescaped text; pos is left on the terminator (or at end).
std::string read_field(std::string_view line, std::size_t& pos, char terminator,
                       bool& found) {
  std::string out;
  found = false;
  while (pos < line.size()) {
    const char c = line[pos];
    if (c == '\\') {
      if (pos + 1 >= line.size()) {
        throw MalformedEntry("illegal escape at end of line", pos + 1);
      }
      const char next = line[pos + 1];
      if (!is_separator(next) && next != '\\') {
        throw MalformedEntry(std::string("illegal escape '\\") + next + "'",
                             pos + 1);
      }
      out.push_back(next);
      pos += 2;
      continue;
    }
    if (c == terminator) {
      found = true;
      return out;
    }
    if (is_separator(c)) {
      throw MalformedEntry(std::string("unescaped '") + c + "'", pos + 1);
    }
    out.push_back(c);
    ++pos;
  }
  return out;
}

std::string read_tag(std::string_view line, std::size_t& pos,
                     std::string_view what) {
  const std::size_t begin = pos;
  while (pos < line.size() && line[pos] != '+' && line[pos] != ':') {
    if (!is_tag_char(line[pos])) {
      throw MalformedEntry("invalid character in " + std::string(what),
                           pos + 1);
    }
    ++pos;
  }
  if (pos == begin) {
    throw MalformedEntry("empty " + std::string(what), begin + 1);
  }
  return std::string(line.substr(begin, pos - begin));
}

}  // namespace

bool Analysis::has_feature(std::string_view feature) const {
  return sem_features.find(std::string(feature)) != sem_features.end();
}

std::string_view to_string(Subcategory subcat) {
  switch (subcat) {
    case Subcategory::NCA:
      return "NCA";
    case Subcategory::NCF:
      return "NCF";
    case Subcategory::CV:
      return "CV";
  }
  return "?";
}

Subcategory parse_subcategory(std::string_view text) {
  if (text == "NCA") return Subcategory::NCA;
  if (text == "NCF") return Subcategory::NCF;
  if (text == "CV") return Subcategory::CV;
  throw ConfigError("unknown subcategory '" + std::string(text) + "'");
}

CasePolicy parse_case_policy(std::string_view text) {
  if (text == "exact") return CasePolicy::exact;
  if (text == "sentence-initial-fold") return CasePolicy::sentence_initial_fold;
  throw ConfigError("unknown case policy '" + std::string(text) + "'");
}

LexEntry parse_entry(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  LexEntry entry;
  std::size_t pos = 0;
  bool found = false;

  entry.form = read_field(line, pos, ',', found);
  if (!found) throw MalformedEntry("missing comma", line.size() + 1);
  if (entry.form.empty()) throw MalformedEntry("empty form", 1);
  const std::size_t comma = pos++;

  entry.lemma = read_field(line, pos, '.', found);
  if (!found) throw MalformedEntry("missing dot", line.size() + 1);
  if (entry.lemma.empty()) throw MalformedEntry("empty lemma", comma + 2);
  ++pos;

  const std::size_t category_begin = pos;
  while (pos < line.size() && line[pos] != '+' && line[pos] != ':') {
    if (!is_ascii_alnum(line[pos])) {
      throw MalformedEntry("invalid character in category", pos + 1);
    }
    ++pos;
  }
  if (pos == category_begin) {
    throw MalformedEntry("empty category", category_begin + 1);
  }
  entry.category = std::string(line.substr(category_begin, pos - category_begin));

  while (pos < line.size() && line[pos] == '+') {
    ++pos;
    entry.sem_features.insert(read_tag(line, pos, "feature"));
  }
  while (pos < line.size()) {
    // Only ':' can follow here; a '+' after the codes is rejected by read_tag.
    ++pos;
    std::string code = read_tag(line, pos, "inflection code");
    if (pos < line.size() && line[pos] == '+') {
      throw MalformedEntry("feature after inflection code", pos + 1);
    }
    entry.infl_codes.insert(std::move(code));
  }

  const bool is_pn = entry.sem_features.count(std::string(kPredicativeNoun)) > 0;
  for (const auto& feature : entry.sem_features) {
    if (!feature.starts_with(kSupportLinkPrefix)) continue;
    if (feature.size() == kSupportLinkPrefix.size()) {
      throw MalformedEntry("empty support-verb link", category_begin + 1);
    }
    if (!is_pn) {
      throw MalformedEntry("support-verb link on non-PN entry",
                           category_begin + 1);
    }
  }
  return entry;
}

std::string escape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (is_separator(c) || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string serialize_entry(const LexEntry& entry) {
  std::string out = escape_field(entry.form);
  out.push_back(',');
  out += escape_field(entry.lemma);
  out.push_back('.');
  out += entry.category;
  for (const auto& f : entry.sem_features) {
    out.push_back('+');
    out += f;
  }
  for (const auto& c : entry.infl_codes) {
    out.push_back(':');
    out += c;
  }
  return out;
}

std::vector<Analysis> analyses_of(const LexEntry& entry) {
  Analysis base;
  base.lemma = entry.lemma;
  base.category = entry.category;
  base.sem_features = entry.sem_features;
  for (const auto& f : entry.sem_features) {
    if (f.starts_with(kSupportLinkPrefix)) {
      base.pn_link.insert(f.substr(kSupportLinkPrefix.size()));
    }
  }
  std::vector<Analysis> out;
  if (entry.infl_codes.empty()) {
    out.push_back(std::move(base));
    return out;
  }
  out.reserve(entry.infl_codes.size());
  for (const auto& code : entry.infl_codes) {
    Analysis a = base;
    a.infl_code = code;
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<LexEntry> read_lexicon(std::istream& in,
                                   const std::string& source_name) {
  std::vector<LexEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (auto bad = utf8::first_invalid(line)) {
      throw MalformedEntry("invalid UTF-8", *bad + 1, line_no, source_name);
    }
    try {
      entries.push_back(parse_entry(line));
    } catch (const MalformedEntry& e) {
      throw MalformedEntry(e.reason(), e.column(), line_no, source_name);
    }
  }
  return entries;
}

std::vector<LexEntry> read_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file '" + path + "'");
  return read_lexicon(in, path);
}

LexIndex build_index(std::span<const LexEntry> entries) {
  std::vector<std::pair<std::string, Analysis>> pairs;
  for (const auto& entry : entries) {
    for (auto& a : analyses_of(entry)) pairs.emplace_back(entry.form, std::move(a));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  LexIndex index;
  index.entry_count_ = entries.size();

  // Distinct forms with their analysis ranges, in sorted order.
  struct FormRange {
    std::string_view form;
    std::uint32_t first;
    std::uint32_t count;
  };
  std::vector<FormRange> forms;
  index.analyses_.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (forms.empty() || forms.back().form != pairs[i].first) {
      forms.push_back({pairs[i].first, static_cast<std::uint32_t>(i), 0});
    }
    ++forms.back().count;
    index.analyses_.push_back(pairs[i].second);
  }
  index.form_count_ = forms.size();

  // Builds the node for sorted forms [begin, end) sharing a prefix of length
  // depth; edges of a node are contiguous and sorted by byte.
  auto build = [&](auto&& self, std::size_t begin, std::size_t end,
                   std::size_t depth) -> std::uint32_t {
    const auto id = static_cast<std::uint32_t>(index.nodes_.size());
    index.nodes_.emplace_back();
    if (begin < end && forms[begin].form.size() == depth) {
      index.nodes_[id].first_analysis = forms[begin].first;
      index.nodes_[id].analysis_count = forms[begin].count;
      ++begin;
    }
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = begin; i < end;) {
      std::size_t j = i + 1;
      while (j < end && forms[j].form[depth] == forms[i].form[depth]) ++j;
      groups.emplace_back(i, j);
      i = j;
    }
    const auto first_edge = static_cast<std::uint32_t>(index.edges_.size());
    index.nodes_[id].first_edge = first_edge;
    index.nodes_[id].edge_count = static_cast<std::uint32_t>(groups.size());
    for (const auto& [b, e] : groups) {
      index.edges_.push_back(
          {static_cast<unsigned char>(forms[b].form[depth]), 0});
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto child = self(self, groups[g].first, groups[g].second, depth + 1);
      index.edges_[first_edge + g].target = child;
    }
    return id;
  };
  build(build, 0, forms.size(), 0);
  return index;
}

std::span<const Analysis> LexIndex::find(std::string_view form) const {
  if (nodes_.empty()) return {};
  std::uint32_t node = 0;
  for (char ch : form) {
    const auto byte = static_cast<unsigned char>(ch);
    const Node& n = nodes_[node];
    const auto first = edges_.begin() + n.first_edge;
    const auto last = first + n.edge_count;
    auto it = std::lower_bound(first, last, byte, [](const Edge& e, unsigned char b) {
      return e.byte < b;
    });
    if (it == last || it->byte != byte) return {};
    node = it->target;
  }
  const Node& n = nodes_[node];
  return {analyses_.data() + n.first_analysis, n.analysis_count};
}

std::span<const Analysis> lookup(const LexIndex& index, std::string_view form,
                                 CasePolicy policy) {
  auto found = index.find(form);
  if (!found.empty() || policy == CasePolicy::exact) return found;
  if (!utf8::starts_upper(form)) return found;
  return index.find(utf8::lower_first(form));
}

std::vector<LexEntry> filter_subcategory(std::span<const LexEntry> entries,
                                         Subcategory subcat) {
  const std::string pn(kPredicativeNoun);
  const std::string tag(to_string(subcat));
  std::vector<LexEntry> out;
  for (const auto& e : entries) {
    if (e.sem_features.count(pn) == 0 || e.sem_features.count(tag) > 0) {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace lexgram
