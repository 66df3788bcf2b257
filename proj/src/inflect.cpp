#include "lexgram/inflect.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "lexgram/error.hpp"
#include "lexgram/utf8.hpp"

namespace lexgram {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '_';
}

bool is_code_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

std::size_t line_at(std::string_view text, std::size_t offset,
                    std::size_t first_line) {
  return first_line + static_cast<std::size_t>(
                          std::count(text.begin(), text.begin() + offset, '\n'));
}

void add_token(std::string_view token, InflectionRule& rule, std::size_t line) {
  if (token == "<e>") return;
  if (token.front() == '<') {
    throw MalformedParadigm("unknown operator '" + std::string(token) + "'",
                            line);
  }
  if (token.find_first_not_of('L') == std::string_view::npos) {
    for (std::size_t i = 0; i < token.size(); ++i) {
      rule.ops.push_back({InflectionOp::Kind::delete_last, {}});
    }
    return;
  }
  rule.ops.push_back({InflectionOp::Kind::append, std::string(token)});
}

}  // namespace

Paradigm parse_paradigm(std::string_view section, std::size_t first_line) {
  const std::string_view keyword = "paradigm";
  const std::size_t head = section.find_first_not_of(" \t\r\n");
  if (head == std::string_view::npos ||
      section.substr(head, keyword.size()) != keyword) {
    throw MalformedParadigm("expected 'paradigm NAME:' header", first_line);
  }
  const std::size_t colon = section.find(':', head);
  const std::size_t header_line = line_at(section, head, first_line);
  if (colon == std::string_view::npos) {
    throw MalformedParadigm("missing ':' after paradigm name", header_line);
  }
  Paradigm paradigm;
  paradigm.name =
      std::string(trim(section.substr(head + keyword.size(),
                                      colon - head - keyword.size())));
  if (paradigm.name.empty() ||
      !std::all_of(paradigm.name.begin(), paradigm.name.end(), is_name_char)) {
    throw MalformedParadigm("invalid paradigm name '" + paradigm.name + "'",
                            header_line);
  }

  std::set<std::string> codes;
  std::size_t pos = colon + 1;
  while (pos <= section.size()) {
    std::size_t end = section.find(';', pos);
    if (end == std::string_view::npos) end = section.size();
    const std::string_view raw = section.substr(pos, end - pos);
    const std::string_view text = trim(raw);
    const std::size_t line =
        line_at(section, pos + (text.empty() ? 0 : raw.find(text.front())),
                first_line);
    pos = end + 1;
    if (text.empty()) {
      if (end == section.size()) break;
      throw MalformedParadigm("empty rule", line);
    }
    const std::size_t code_sep = text.rfind(':');
    if (code_sep == std::string_view::npos) {
      throw MalformedParadigm("rule without ':' inflection code", line);
    }
    InflectionRule rule;
    rule.infl_code = std::string(trim(text.substr(code_sep + 1)));
    if (rule.infl_code.empty() ||
        !std::all_of(rule.infl_code.begin(), rule.infl_code.end(),
                     is_code_char)) {
      throw MalformedParadigm("invalid inflection code '" + rule.infl_code + "'",
                              line);
    }
    const std::string_view ops = trim(text.substr(0, code_sep));
    if (ops.empty()) throw MalformedParadigm("rule without operators", line);
    std::size_t t = 0;
    while (t < ops.size()) {
      const std::size_t b = ops.find_first_not_of(" \t\r\n", t);
      if (b == std::string_view::npos) break;
      std::size_t e = ops.find_first_of(" \t\r\n", b);
      if (e == std::string_view::npos) e = ops.size();
      const std::string_view token = ops.substr(b, e - b);
      if (token.find(':') != std::string_view::npos) {
        throw MalformedParadigm("unknown operator '" + std::string(token) + "'",
                                line);
      }
      add_token(token, rule, line);
      t = e;
    }
    if (!codes.insert(rule.infl_code).second) {
      throw MalformedParadigm("duplicate inflection code '" + rule.infl_code +
                                  "' in paradigm " + paradigm.name,
                              line);
    }
    paradigm.rules.push_back(std::move(rule));
    if (end == section.size()) break;
  }
  if (paradigm.rules.empty()) {
    throw MalformedParadigm("paradigm " + paradigm.name + " has no rules",
                            header_line);
  }
  return paradigm;
}

ParadigmTable parse_paradigms(std::string_view text) {
  ParadigmTable table;
  std::string section;
  std::size_t section_line = 0;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (section_line == 0) return;
    Paradigm p = parse_paradigm(section, section_line);
    if (table.count(p.name)) {
      throw MalformedParadigm("duplicate paradigm " + p.name, section_line);
    }
    const std::string name = p.name;
    table.emplace(name, std::move(p));
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.starts_with("paradigm") &&
        (stripped.size() == 8 || stripped[8] == ' ' || stripped[8] == '\t' ||
         stripped[8] == ':')) {
      flush();
      section.clear();
      section_line = line_no;
    }
    if (stripped.empty() || stripped.front() == '#') {
      // Keep line numbering intact inside a section.
      if (section_line != 0) section.push_back('\n');
    } else if (section_line == 0) {
      throw MalformedParadigm("rule outside of a paradigm section", line_no);
    } else {
      section.append(line);
      section.push_back('\n');
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  flush();
  return table;
}

ParadigmTable read_paradigm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open paradigm file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_paradigms(buf.str());
}

std::vector<InflectedForm> generate(std::string_view lemma,
                                    const Paradigm& paradigm) {
  std::vector<InflectedForm> out;
  out.reserve(paradigm.rules.size());
  for (const auto& rule : paradigm.rules) {
    std::string form(lemma);
    for (const auto& op : rule.ops) {
      if (op.kind == InflectionOp::Kind::append) {
        form += op.text;
        continue;
      }
      if (form.empty()) throw LemmaTooShort(std::string(lemma), rule.infl_code);
      form.resize(form.size() - utf8::last_scalar_size(form));
    }
    if (form.empty()) throw LemmaTooShort(std::string(lemma), rule.infl_code);
    out.push_back({std::move(form), rule.infl_code});
  }
  return out;
}

LemmaEntry parse_lemma_entry(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const std::size_t slash = line.rfind('/');
  if (slash == std::string_view::npos) {
    throw MalformedEntry("missing '/' before paradigm name", line.size() + 1);
  }
  const std::string_view name = line.substr(slash + 1);
  if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char)) {
    throw MalformedEntry("invalid paradigm name", slash + 2);
  }
  // The head reuses the lexicon grammar with a placeholder form.
  const std::string prefix = "_,";
  LexEntry head;
  try {
    head = parse_entry(prefix + std::string(line.substr(0, slash)));
  } catch (const MalformedEntry& e) {
    throw MalformedEntry(e.reason(), e.column() > prefix.size()
                                         ? e.column() - prefix.size()
                                         : 1);
  }
  if (!head.infl_codes.empty()) {
    throw MalformedEntry("inflection codes not allowed on a lemma entry", 1);
  }
  return LemmaEntry{head.lemma, head.category, head.sem_features,
                    std::string(name)};
}

std::vector<LemmaEntry> read_lemma_entries(std::istream& in) {
  std::vector<LemmaEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back(parse_lemma_entry(line));
    } catch (const MalformedEntry& e) {
      throw MalformedEntry(e.reason(), e.column(), line_no);
    }
  }
  return out;
}

std::vector<LemmaEntry> read_lemma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lemma file '" + path + "'");
  try {
    return read_lemma_entries(in);
  } catch (const MalformedEntry& e) {
    throw MalformedEntry(e.reason(), e.column(), e.line(), path);
  }
}

std::vector<LexEntry> expand_lexicon(std::span<const LemmaEntry> lemmas,
                                     const ParadigmTable& paradigms) {
  std::vector<LexEntry> out;
  for (const auto& lemma : lemmas) {
    auto it = paradigms.find(lemma.paradigm_name);
    if (it == paradigms.end()) {
      throw UnknownParadigm(lemma.paradigm_name, lemma.lemma);
    }
    for (auto& inflected : generate(lemma.lemma, it->second)) {
      LexEntry entry;
      entry.form = std::move(inflected.form);
      entry.lemma = lemma.lemma;
      entry.category = lemma.category;
      entry.sem_features = lemma.sem_features;
      entry.infl_codes.insert(std::move(inflected.infl_code));
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace lexgram
