// Graph files, grammar binding, recursion checks and flattening.

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "lexgram/error.hpp"
#include "lexgram/rtn.hpp"

namespace lexgram {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

std::string escape_chars(std::string_view text, std::string_view specials) {
  std::string out;
  for (char c : text) {
    if (c == '\\' || specials.find(c) != std::string_view::npos) {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  return out;
}

Mask parse_mask(std::string_view spec) {
  Mask mask;
  // Lemma: everything before the first unescaped '.'.
  std::string lemma;
  std::size_t pos = 0;
  bool has_lemma = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (spec[i] == '\\' && i + 1 < spec.size()) {
      lemma.push_back(spec[++i]);
      continue;
    }
    if (spec[i] == '.') {
      has_lemma = true;
      pos = i + 1;
      break;
    }
    lemma.push_back(spec[i]);
  }
  if (has_lemma) {
    if (lemma.empty()) throw Error("empty lemma in mask <" + std::string(spec) + ">");
    mask.lemma = std::move(lemma);
  }

  const std::size_t cat_begin = pos;
  while (pos < spec.size() && is_alnum(spec[pos])) ++pos;
  if (pos > cat_begin) mask.category = std::string(spec.substr(cat_begin, pos - cat_begin));

  auto read_until = [&](std::string_view stops) {
    const std::size_t b = pos;
    while (pos < spec.size() && stops.find(spec[pos]) == std::string_view::npos) {
      ++pos;
    }
    return std::string(spec.substr(b, pos - b));
  };

  while (pos < spec.size() && (spec[pos] == '+' || spec[pos] == '-')) {
    const char sigil = spec[pos++];
    std::string feature = read_until("+-:!");
    if (feature.empty()) throw Error("empty feature in mask <" + std::string(spec) + ">");
    (sigil == '+' ? mask.required : mask.forbidden).insert(std::move(feature));
  }
  if (pos < spec.size() && spec[pos] == ':') {
    ++pos;
    mask.infl_constraint = read_until("!");
    if (mask.infl_constraint.empty() ||
        !std::all_of(mask.infl_constraint.begin(), mask.infl_constraint.end(),
                     is_alnum)) {
      throw Error("invalid attribute constraint in mask <" + std::string(spec) + ">");
    }
  }
  if (pos < spec.size() && spec[pos] == '!') {
    ++pos;
    std::string group(spec.substr(pos));
    if (group.empty()) throw Error("empty agreement group in mask <" + std::string(spec) + ">");
    mask.agree_group = std::move(group);
    pos = spec.size();
  }
  if (pos != spec.size()) {
    throw Error("unexpected '" + std::string(1, spec[pos]) + "' in mask <" +
                std::string(spec) + ">");
  }
  if (!mask.lemma && !mask.category && mask.required.empty()) {
    throw Error("mask <" + std::string(spec) +
                "> needs a lemma, a category or a required feature");
  }
  return mask;
}

struct PendingGraph {
  Graph graph;
  std::size_t line = 0;
  bool has_init = false;
};

void validate(const PendingGraph& pending, const std::string& source) {
  const Graph& g = pending.graph;
  auto fail = [&](const std::string& reason) {
    throw MalformedGraph(source, pending.line, "graph " + g.name + ": " + reason);
  };
  if (!pending.has_init) fail("missing init");
  if (g.finals.empty()) fail("no final state");

  std::vector<std::vector<StateId>> out(g.state_count);
  std::vector<std::vector<StateId>> eps(g.state_count);
  for (const auto& t : g.transitions) {
    out[t.from].push_back(t.to);
    if (std::holds_alternative<Epsilon>(t.label)) eps[t.from].push_back(t.to);
  }

  std::vector<bool> seen(g.state_count, false);
  std::vector<StateId> stack{g.initial};
  seen[g.initial] = true;
  bool final_reached = false;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    if (g.finals.count(s)) final_reached = true;
    for (StateId t : out[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  if (!final_reached) fail("no final state reachable from the initial state");

  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> color(g.state_count, 0);
  std::function<void(StateId)> visit = [&](StateId s) {
    color[s] = 1;
    for (StateId t : eps[s]) {
      if (color[t] == 1) fail("epsilon cycle through state " + std::to_string(t));
      if (color[t] == 0) visit(t);
    }
    color[s] = 2;
  };
  for (StateId s = 0; s < g.state_count; ++s) {
    if (color[s] == 0) visit(s);
  }
}

}  // namespace

Label parse_label(std::string_view raw) {
  const std::string_view text = trim(raw);
  if (text.empty()) throw Error("empty label");
  if (text == "<E>") return Epsilon{};
  if (text.front() == '"') {
    Literal lit;
    std::size_t i = 1;
    bool closed = false;
    for (; i < text.size(); ++i) {
      if (text[i] == '\\' && i + 1 < text.size()) {
        lit.text.push_back(text[++i]);
      } else if (text[i] == '"') {
        closed = true;
        break;
      } else {
        lit.text.push_back(text[i]);
      }
    }
    if (!closed) throw Error("unterminated literal " + std::string(text));
    const std::string_view suffix = text.substr(i + 1);
    if (suffix == "i") {
      lit.fold_case = true;
    } else if (!suffix.empty()) {
      throw Error("unexpected text after literal " + std::string(text));
    }
    if (lit.text.empty()) throw Error("empty literal");
    return lit;
  }
  if (text.front() == ':') {
    const std::string_view name = text.substr(1);
    if (name.empty() || name.find_first_of(" \t") != std::string_view::npos) {
      throw Error("invalid call label " + std::string(text));
    }
    return Call{std::string(name)};
  }
  if (text.front() == '<' && text.back() == '>' && text.size() > 2) {
    return parse_mask(text.substr(1, text.size() - 2));
  }
  throw Error("unrecognized label " + std::string(text));
}

std::string format_label(const Label& label) {
  struct Formatter {
    std::string operator()(const Epsilon&) const { return "<E>"; }
    std::string operator()(const Literal& l) const {
      return "\"" + escape_chars(l.text, "\"") + "\"" + (l.fold_case ? "i" : "");
    }
    std::string operator()(const Call& c) const { return ":" + c.graph; }
    std::string operator()(const Mask& m) const {
      std::string out = "<";
      if (m.lemma) out += escape_chars(*m.lemma, ".") + ".";
      if (m.category) out += *m.category;
      for (const auto& f : m.required) out += "+" + f;
      for (const auto& f : m.forbidden) out += "-" + f;
      if (!m.infl_constraint.empty()) out += ":" + m.infl_constraint;
      if (m.agree_group) out += "!" + *m.agree_group;
      return out + ">";
    }
  };
  return std::visit(Formatter{}, label);
}

std::size_t Graph::call_count() const {
  return static_cast<std::size_t>(
      std::count_if(transitions.begin(), transitions.end(), [](const Transition& t) {
        return std::holds_alternative<Call>(t.label);
      }));
}

std::vector<Graph> parse_graphs(std::string_view text,
                                const std::string& source_name) {
  std::vector<PendingGraph> pending;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  auto parse_state = [&](std::string_view token) -> StateId {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) {
          return c >= '0' && c <= '9';
        })) {
      throw MalformedGraph(source_name, line_no,
                           "invalid state '" + std::string(token) + "'");
    }
    const StateId s = std::stoul(std::string(token));
    auto& g = pending.back().graph;
    g.state_count = std::max(g.state_count, s + 1);
    return s;
  };
  // Splits off the next whitespace-delimited word of rest.
  auto next_word = [](std::string_view& rest) {
    rest = trim(rest);
    const std::size_t e = rest.find_first_of(" \t");
    std::string_view word = rest.substr(0, e);
    rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
    return word;
  };

  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (!line.empty() && line.front() != '#') {
      std::string_view rest = line;
      const std::string_view directive = next_word(rest);
      if (directive == "graph") {
        const std::string_view name = next_word(rest);
        if (name.empty() || !trim(rest).empty()) {
          throw MalformedGraph(source_name, line_no, "expected 'graph NAME'");
        }
        pending.push_back({});
        pending.back().graph.name = std::string(name);
        pending.back().line = line_no;
      } else if (pending.empty()) {
        throw MalformedGraph(source_name, line_no,
                             "'" + std::string(directive) + "' before any 'graph'");
      } else if (directive == "init") {
        auto& p = pending.back();
        if (p.has_init) throw MalformedGraph(source_name, line_no, "duplicate init");
        p.graph.initial = parse_state(next_word(rest));
        p.has_init = true;
        if (!trim(rest).empty()) {
          throw MalformedGraph(source_name, line_no, "expected 'init S'");
        }
      } else if (directive == "final") {
        if (trim(rest).empty()) {
          throw MalformedGraph(source_name, line_no, "expected 'final S'");
        }
        while (!trim(rest).empty()) {
          pending.back().graph.finals.insert(parse_state(next_word(rest)));
        }
      } else if (directive == "trans") {
        const StateId from = parse_state(next_word(rest));
        const StateId to = parse_state(next_word(rest));
        Label label;
        try {
          label = parse_label(rest);
        } catch (const MalformedGraph&) {
          throw;
        } catch (const Error& e) {
          throw MalformedGraph(source_name, line_no, e.what());
        }
        pending.back().graph.transitions.push_back({from, std::move(label), to});
      } else {
        throw MalformedGraph(source_name, line_no,
                             "unknown directive '" + std::string(directive) + "'");
      }
    }
    if (end == text.size()) break;
  }

  std::vector<Graph> graphs;
  for (auto& p : pending) {
    validate(p, source_name);
    graphs.push_back(std::move(p.graph));
  }
  return graphs;
}

Grammar make_grammar(std::vector<Graph> graphs, const std::string& main) {
  Grammar grammar;
  grammar.main = main;
  for (auto& g : graphs) {
    const std::string name = g.name;
    if (!grammar.graphs.emplace(name, std::move(g)).second) {
      throw MalformedGraph(name, 0, "duplicate graph name");
    }
  }
  if (!grammar.graphs.count(main)) throw UnresolvedCall("<main>", main);
  for (const auto& [name, g] : grammar.graphs) {
    for (const auto& t : g.transitions) {
      if (const auto* call = std::get_if<Call>(&t.label)) {
        if (!grammar.graphs.count(call->graph)) throw UnresolvedCall(name, call->graph);
      }
    }
  }
  return grammar;
}

Grammar load_grammar(std::span<const std::filesystem::path> files,
                     const std::string& main) {
  std::vector<Graph> graphs;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw MalformedGraph(file.string(), 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    for (auto& g : parse_graphs(buf.str(), file.string())) graphs.push_back(std::move(g));
  }
  return make_grammar(std::move(graphs), main);
}

RecursionCheck check_recursion(const Grammar& grammar) {
  RecursionCheck result;
  std::map<std::string, int> color;  // 1 = on stack, 2 = done
  std::vector<std::string> path;
  std::vector<std::string> post_order;

  std::function<bool(const std::string&)> visit = [&](const std::string& name) {
    color[name] = 1;
    path.push_back(name);
    for (const auto& t : grammar.graphs.at(name).transitions) {
      const auto* call = std::get_if<Call>(&t.label);
      if (!call) continue;
      const int c = color[call->graph];
      if (c == 1) {
        auto it = std::find(path.begin(), path.end(), call->graph);
        result.cycle.assign(it, path.end());
        result.cycle.push_back(call->graph);
        return false;
      }
      if (c == 0 && !visit(call->graph)) return false;
    }
    path.pop_back();
    color[name] = 2;
    post_order.push_back(name);
    return true;
  };

  for (const auto& [name, g] : grammar.graphs) {
    if (color[name] == 0 && !visit(name)) {
      result.ok = false;
      std::string joined;
      for (const auto& n : result.cycle) joined += (joined.empty() ? "" : " -> ") + n;
      result.message = "recursive call cycle: " + joined;
      return result;
    }
  }

  // Callees come first in post order, so nullability is known when needed.
  std::map<std::string, bool> nullable;
  auto silent = [&](const Label& label) {
    if (std::holds_alternative<Epsilon>(label)) return true;
    const auto* call = std::get_if<Call>(&label);
    return call && nullable[call->graph];
  };
  for (const auto& name : post_order) {
    const Graph& g = grammar.graphs.at(name);
    std::vector<bool> seen(g.state_count, false);
    std::vector<StateId> stack{g.initial};
    seen[g.initial] = true;
    bool accepts_empty = false;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      if (g.finals.count(s)) accepts_empty = true;
      for (const auto& t : g.transitions) {
        if (t.from == s && silent(t.label) && !seen[t.to]) {
          seen[t.to] = true;
          stack.push_back(t.to);
        }
      }
    }
    nullable[name] = accepts_empty;

    std::vector<int> state_color(g.state_count, 0);
    std::function<bool(StateId)> loops = [&](StateId s) {
      state_color[s] = 1;
      for (const auto& t : g.transitions) {
        if (t.from != s || !silent(t.label)) continue;
        if (state_color[t.to] == 1) return true;
        if (state_color[t.to] == 0 && loops(t.to)) return true;
      }
      state_color[s] = 2;
      return false;
    };
    for (StateId s = 0; s < g.state_count; ++s) {
      if (state_color[s] == 0 && loops(s)) {
        result.ok = false;
        result.cycle = {name, name};
        result.message = "graph " + name +
                         " loops without consuming input through a call to a "
                         "graph accepting the empty sequence";
        return result;
      }
    }
  }
  return result;
}

Graph flatten(const Grammar& grammar) {
  const RecursionCheck check = check_recursion(grammar);
  if (!check.ok) throw Error("cannot flatten: " + check.message);

  std::map<std::string, Graph> memo;
  std::function<const Graph&(const std::string&)> flat_of =
      [&](const std::string& name) -> const Graph& {
    if (auto it = memo.find(name); it != memo.end()) return it->second;
    const Graph& g = grammar.graphs.at(name);
    Graph out;
    out.name = g.name;
    out.state_count = g.state_count;
    out.initial = g.initial;
    out.finals = g.finals;
    for (const auto& t : g.transitions) {
      const auto* call = std::get_if<Call>(&t.label);
      if (!call) {
        out.transitions.push_back(t);
        continue;
      }
      const Graph& sub = flat_of(call->graph);
      const std::size_t offset = out.state_count;
      out.state_count += sub.state_count;
      out.transitions.push_back({t.from, Epsilon{}, sub.initial + offset});
      for (const auto& st : sub.transitions) {
        out.transitions.push_back({st.from + offset, st.label, st.to + offset});
      }
      for (StateId f : sub.finals) {
        out.transitions.push_back({f + offset, Epsilon{}, t.to});
      }
    }
    return memo.emplace(name, std::move(out)).first->second;
  };
  return flat_of(grammar.main);
}

}  // namespace lexgram
