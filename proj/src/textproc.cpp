#include "lexgram/textproc.hpp"

#include <ostream>
#include <utility>

#include "lexgram/error.hpp"
#include "lexgram/utf8.hpp"

namespace lexgram {

namespace {

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

bool is_terminal(std::string_view surface) {
  return surface == "." || surface == "!" || surface == "?";
}

bool letter_at(std::string_view text, std::size_t pos) {
  auto d = utf8::decode(text, pos);
  return d && utf8::is_letter(d->code_point);
}

bool digit_at(std::string_view text, std::size_t pos) {
  auto d = utf8::decode(text, pos);
  return d && utf8::is_digit(d->code_point);
}

// End of the word starting at pos, and whether it is an elided prefix.
std::size_t scan_word(std::string_view text, std::size_t pos) {
  std::size_t p = pos;
  std::size_t letters = 0;
  bool hyphenated = false;
  for (;;) {
    while (p < text.size()) {
      auto d = utf8::decode(text, p);
      if (!utf8::is_letter(d->code_point)) break;
      p += d->length;
      ++letters;
    }
    if (p >= text.size()) return p;
    auto next = utf8::decode(text, p);
    if (next->code_point == U'-' && letter_at(text, p + 1)) {
      hyphenated = true;
      p += 1;
      continue;
    }
    if (is_apostrophe(next->code_point)) {
      const std::size_t after = p + next->length;
      if (!hyphenated && letters <= 2) return after;
      if (letter_at(text, after)) {
        p = after;
        continue;
      }
    }
    return p;
  }
}

std::size_t scan_number(std::string_view text, std::size_t pos) {
  std::size_t p = pos;
  for (;;) {
    while (p < text.size() && digit_at(text, p)) ++p;
    if (p + 1 < text.size() && (text[p] == '.' || text[p] == ',') &&
        digit_at(text, p + 1)) {
      ++p;
      continue;
    }
    return p;
  }
}

Analysis punct_analysis(const std::string& surface) {
  Analysis a;
  a.lemma = surface;
  a.category = std::string(kPunctCategory);
  if (surface == "(" || surface == "[" || surface == "{" || surface == "«") {
    a.sem_features.insert("OPEN");
  } else if (surface == ")" || surface == "]" || surface == "}" ||
             surface == "»") {
    a.sem_features.insert("CLOSE");
  }
  return a;
}

TaggedText assemble(std::string source, std::vector<Token>& tokens) {
  TaggedText tagged;
  tagged.source = std::move(source);
  tagged.tokens.resize(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == 0 || tokens[i].sentence != tokens[i - 1].sentence) {
      tagged.sentence_starts.push_back(i);
    }
  }
  return tagged;
}

}  // namespace

std::pair<std::size_t, std::size_t> TaggedText::sentence_range(
    std::size_t k) const {
  const std::size_t begin = sentence_starts[k];
  const std::size_t end =
      k + 1 < sentence_starts.size() ? sentence_starts[k + 1] : tokens.size();
  return {begin, end};
}

std::vector<Token> tokenize(std::string_view text) {
  if (auto bad = utf8::first_invalid(text)) throw InvalidEncoding(*bad);

  enum class Boundary { none, after_terminal, after_terminal_space };
  std::vector<Token> tokens;
  Boundary boundary = Boundary::none;
  std::size_t sentence = 0;
  bool need_initial = true;
  std::size_t pos = 0;

  while (pos < text.size()) {
    const auto d = *utf8::decode(text, pos);
    if (utf8::is_space(d.code_point)) {
      if (boundary == Boundary::after_terminal) {
        boundary = Boundary::after_terminal_space;
      }
      pos += d.length;
      continue;
    }
    if (boundary == Boundary::after_terminal_space &&
        utf8::is_upper(d.code_point)) {
      ++sentence;
      need_initial = true;
    }
    boundary = Boundary::none;

    Token token;
    token.start = pos;
    token.sentence = sentence;
    if (utf8::is_letter(d.code_point)) {
      token.kind = TokenKind::word;
      token.end = scan_word(text, pos);
      token.sentence_initial = need_initial;
      need_initial = false;
    } else if (utf8::is_digit(d.code_point)) {
      token.kind = TokenKind::number;
      token.end = scan_number(text, pos);
    } else {
      token.kind = TokenKind::punct;
      token.end = pos + d.length;
    }
    token.surface = std::string(text.substr(token.start, token.end - token.start));
    if (token.kind == TokenKind::punct && is_terminal(token.surface)) {
      boundary = Boundary::after_terminal;
    }
    pos = token.end;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

bool is_unknown(const Analysis& analysis) {
  return analysis.category == kUnknownCategory;
}

std::vector<Analysis> analyses_for(const Token& token, const LexIndex& index,
                                   CasePolicy initial_policy) {
  if (token.kind == TokenKind::punct) return {punct_analysis(token.surface)};
  if (token.kind == TokenKind::number) {
    Analysis a;
    a.lemma = token.surface;
    a.category = std::string(kNumberCategory);
    return {a};
  }
  const CasePolicy policy =
      token.sentence_initial ? initial_policy : CasePolicy::exact;
  auto found = lookup(index, token.surface, policy);
  if (found.empty()) {
    Analysis a;
    a.lemma = token.surface;
    a.category = std::string(kUnknownCategory);
    return {a};
  }
  return {found.begin(), found.end()};
}

TaggedText tag_serial(std::string source, std::vector<Token> tokens,
                      const LexIndex& index, CasePolicy initial_policy) {
  TaggedText tagged = assemble(std::move(source), tokens);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tagged.tokens[i].analyses = analyses_for(tokens[i], index, initial_policy);
    tagged.tokens[i].token = std::move(tokens[i]);
  }
  return tagged;
}

TaggedText tag(std::string source, std::vector<Token> tokens,
               const LexIndex& index, CasePolicy initial_policy) {
  TaggedText tagged = assemble(std::move(source), tokens);
  const auto n = static_cast<long>(tokens.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    tagged.tokens[i].analyses = analyses_for(tokens[i], index, initial_policy);
    tagged.tokens[i].token = std::move(tokens[i]);
  }
  return tagged;
}

TaggedText tag_text(std::string source, const LexIndex& index,
                    CasePolicy initial_policy) {
  auto tokens = tokenize(source);
  return tag(std::move(source), std::move(tokens), index, initial_policy);
}

double tagging_coverage(const TaggedText& tagged) {
  std::size_t words = 0;
  std::size_t known = 0;
  for (const auto& t : tagged.tokens) {
    if (t.token.kind != TokenKind::word) continue;
    ++words;
    for (const auto& a : t.analyses) {
      if (!is_unknown(a)) {
        ++known;
        break;
      }
    }
  }
  if (words == 0) throw EmptyInput("tagging coverage of a text without words");
  return static_cast<double>(known) / static_cast<double>(words);
}

std::string format_analysis(std::string_view form, const Analysis& analysis) {
  LexEntry entry;
  entry.form = std::string(form);
  entry.lemma = analysis.lemma;
  entry.category = analysis.category;
  entry.sem_features = analysis.sem_features;
  if (!analysis.infl_code.empty()) entry.infl_codes.insert(analysis.infl_code);
  return serialize_entry(entry);
}

void write_tagged_tsv(std::ostream& out, const TaggedText& tagged) {
  for (const auto& t : tagged.tokens) {
    out << t.token.start << '\t' << t.token.end << '\t' << t.token.surface
        << '\t';
    for (std::size_t i = 0; i < t.analyses.size(); ++i) {
      if (i) out << ';';
      out << format_analysis(t.token.surface, t.analyses[i]);
    }
    out << '\n';
  }
}

}  // namespace lexgram
