// Label matching and the flat-graph locate kernels.

#include <algorithm>
#include <set>

#include "lexgram/error.hpp"
#include "lexgram/rtn.hpp"
#include "lexgram/utf8.hpp"

namespace lexgram {

namespace {

struct Edge {
  const Label* label;
  StateId to;
};

// Adjacency of a call-free graph, split into silent and consuming moves.
struct CompiledGraph {
  std::vector<std::vector<StateId>> epsilon;
  std::vector<std::vector<Edge>> consuming;
  std::vector<bool> final;
  StateId initial = 0;

  explicit CompiledGraph(const Graph& g)
      : epsilon(g.state_count), consuming(g.state_count), final(g.state_count, false) {
    initial = g.initial;
    for (StateId f : g.finals) final[f] = true;
    for (const auto& t : g.transitions) {
      if (std::holds_alternative<Epsilon>(t.label)) {
        epsilon[t.from].push_back(t.to);
      } else if (std::holds_alternative<Call>(t.label)) {
        throw Error("locate needs a flattened graph; found call to " +
                    std::get<Call>(t.label).graph);
      } else {
        consuming[t.from].push_back({&t.label, t.to});
      }
    }
  }
};

using Config = std::pair<StateId, Bindings>;

void close_over_epsilon(const CompiledGraph& g, std::set<Config>& configs) {
  std::vector<Config> work(configs.begin(), configs.end());
  while (!work.empty()) {
    Config c = std::move(work.back());
    work.pop_back();
    for (StateId to : g.epsilon[c.first]) {
      Config next{to, c.second};
      if (configs.insert(next).second) work.push_back(std::move(next));
    }
  }
}

void locate_in_sentence(const CompiledGraph& g, const TaggedText& text,
                        std::size_t begin, std::size_t end, MatchPolicy policy,
                        const std::string& name, std::vector<Match>& out) {
  for (std::size_t start = begin; start < end; ++start) {
    std::set<Config> current{{g.initial, Bindings{}}};
    close_over_epsilon(g, current);
    SpanEnds ends;
    for (std::size_t pos = start; pos < end && !current.empty(); ++pos) {
      std::set<Config> next;
      const TaggedToken& token = text.tokens[pos];
      for (const auto& [state, bindings] : current) {
        for (const Edge& e : g.consuming[state]) {
          for (auto& b : match_label_all(*e.label, token, bindings)) {
            next.emplace(e.to, std::move(b));
          }
        }
      }
      close_over_epsilon(g, next);
      current = std::move(next);
      for (const auto& [state, bindings] : current) {
        if (!g.final[state]) continue;
        auto [it, inserted] = ends.try_emplace(pos + 1, bindings);
        if (!inserted && bindings < it->second) it->second = bindings;
      }
    }
    emit_matches(text, start, ends, policy, name, out);
  }
}

}  // namespace

Agreement agreement_of(std::string_view infl_code) {
  Agreement a;
  for (char c : infl_code) {
    if (!a.gender && (c == 'm' || c == 'f')) a.gender = c;
    if (!a.number && (c == 's' || c == 'p')) a.number = c;
  }
  return a;
}

bool unify(Agreement& bound, const Agreement& a) {
  if (a.gender && bound.gender && a.gender != bound.gender) return false;
  if (a.number && bound.number && a.number != bound.number) return false;
  if (a.gender) bound.gender = a.gender;
  if (a.number) bound.number = a.number;
  return true;
}

bool mask_accepts(const Mask& mask, const Analysis& analysis) {
  if (mask.lemma && *mask.lemma != analysis.lemma) return false;
  if (mask.category && *mask.category != analysis.category) return false;
  for (const auto& f : mask.required) {
    if (!analysis.sem_features.count(f)) return false;
  }
  for (const auto& f : mask.forbidden) {
    if (analysis.sem_features.count(f)) return false;
  }
  for (char c : mask.infl_constraint) {
    if (analysis.infl_code.find(c) == std::string::npos) return false;
  }
  return true;
}

std::vector<Bindings> match_label_all(const Label& label, const TaggedToken& token,
                                      const Bindings& bindings) {
  if (const auto* lit = std::get_if<Literal>(&label)) {
    const bool equal = lit->fold_case
                           ? utf8::to_lower(token.token.surface) == utf8::to_lower(lit->text)
                           : token.token.surface == lit->text;
    if (equal) return {bindings};
    return {};
  }
  const auto* mask = std::get_if<Mask>(&label);
  if (!mask) throw Error("match_label called with a non-consuming label");

  std::set<Bindings> results;
  for (const auto& analysis : token.analyses) {
    if (!mask_accepts(*mask, analysis)) continue;
    if (!mask->agree_group) return {bindings};
    Bindings updated = bindings;
    if (unify(updated[*mask->agree_group], agreement_of(analysis.infl_code))) {
      results.insert(std::move(updated));
    }
  }
  return {results.begin(), results.end()};
}

std::optional<Bindings> match_label(const Label& label, const TaggedToken& token,
                                    const Bindings& bindings) {
  if (const auto* mask = std::get_if<Mask>(&label); mask && mask->agree_group) {
    for (const auto& analysis : token.analyses) {
      if (!mask_accepts(*mask, analysis)) continue;
      Bindings updated = bindings;
      if (unify(updated[*mask->agree_group], agreement_of(analysis.infl_code))) {
        return updated;
      }
    }
    return std::nullopt;
  }
  auto all = match_label_all(label, token, bindings);
  if (all.empty()) return std::nullopt;
  return all.front();
}

MatchPolicy parse_match_policy(std::string_view text) {
  if (text == "longest") return MatchPolicy::longest;
  if (text == "all") return MatchPolicy::all;
  if (text == "shortest") return MatchPolicy::shortest;
  throw ConfigError("unknown match policy '" + std::string(text) + "'");
}

std::string_view to_string(MatchPolicy policy) {
  switch (policy) {
    case MatchPolicy::longest:
      return "longest";
    case MatchPolicy::all:
      return "all";
    case MatchPolicy::shortest:
      return "shortest";
  }
  return "?";
}

void emit_matches(const TaggedText& text, std::size_t start, const SpanEnds& ends,
                  MatchPolicy policy, const std::string& grammar_name,
                  std::vector<Match>& out) {
  if (ends.empty()) return;
  auto make = [&](const std::pair<const std::size_t, Bindings>& end) {
    Match m;
    m.start_token = start;
    m.end_token = end.first;
    m.start_byte = text.tokens[start].token.start;
    m.end_byte = text.tokens[end.first - 1].token.end;
    m.grammar = grammar_name;
    m.bindings = end.second;
    out.push_back(std::move(m));
  };
  switch (policy) {
    case MatchPolicy::longest:
      make(*ends.rbegin());
      break;
    case MatchPolicy::shortest:
      make(*ends.begin());
      break;
    case MatchPolicy::all:
      for (const auto& e : ends) make(e);
      break;
  }
}

std::vector<Match> locate_serial(const Graph& flat, const TaggedText& text,
                                 MatchPolicy policy) {
  const CompiledGraph g(flat);
  std::vector<Match> out;
  for (std::size_t k = 0; k < text.sentence_count(); ++k) {
    const auto [begin, end] = text.sentence_range(k);
    locate_in_sentence(g, text, begin, end, policy, flat.name, out);
  }
  return out;
}

std::vector<Match> locate(const Graph& flat, const TaggedText& text,
                          MatchPolicy policy) {
  const CompiledGraph g(flat);
  const auto sentences = static_cast<long>(text.sentence_count());
  std::vector<std::vector<Match>> per_sentence(text.sentence_count());
#pragma omp parallel for schedule(dynamic, 4)
  for (long k = 0; k < sentences; ++k) {
    const auto [begin, end] = text.sentence_range(static_cast<std::size_t>(k));
    locate_in_sentence(g, text, begin, end, policy, flat.name, per_sentence[k]);
  }
  std::vector<Match> out;
  for (auto& matches : per_sentence) {
    std::move(matches.begin(), matches.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace lexgram
