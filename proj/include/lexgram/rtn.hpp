#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lexgram/textproc.hpp"

namespace lexgram {

// ---------------------------------------------------------------------------
// Labels

struct Literal {
  std::string text;
  bool fold_case = false;

  auto operator<=>(const Literal&) const = default;
};

// Constraint on a token's analyses. A single analysis must satisfy every
// field. infl_constraint lists attribute characters that must all occur in
// the analysis code; agree_group names a gender/number unification group.
struct Mask {
  std::optional<std::string> lemma;
  std::optional<std::string> category;
  std::set<std::string> required;
  std::set<std::string> forbidden;
  std::string infl_constraint;
  std::optional<std::string> agree_group;

  auto operator<=>(const Mask&) const = default;
};

struct Call {
  std::string graph;

  auto operator<=>(const Call&) const = default;
};

struct Epsilon {
  auto operator<=>(const Epsilon&) const = default;
};

using Label = std::variant<Epsilon, Literal, Mask, Call>;

// Label syntax of graph files:
//   "text"   literal        "text"i   case-folded literal
//   <spec>   lexical mask   :Name     subgraph call      <E>  epsilon
// Mask spec: [lemma "."] [category] ("+" feat)* ("-" feat)* [":" attrs]
//            ["!" group]
Label parse_label(std::string_view text);
std::string format_label(const Label& label);

// ---------------------------------------------------------------------------
// Graphs and grammars

using StateId = std::size_t;

struct Transition {
  StateId from;
  Label label;
  StateId to;
};

struct Graph {
  std::string name;
  std::size_t state_count = 0;
  StateId initial = 0;
  std::set<StateId> finals;
  std::vector<Transition> transitions;

  std::size_t call_count() const;
};

struct Grammar {
  std::map<std::string, Graph> graphs;
  std::string main;
};

// Parses graph definitions from text. One file may hold several graphs:
//   graph NAME / init S / final S [S ...] / trans FROM TO LABEL
// "#" starts a comment line. Each graph is validated on its own: states in
// range, a final reachable from the initial state, no epsilon cycle.
std::vector<Graph> parse_graphs(std::string_view text,
                                const std::string& source_name = "<text>");

// Loads graphs from files and binds them into a grammar. Throws
// MalformedGraph and UnresolvedCall; recursion is checked separately.
Grammar load_grammar(std::span<const std::filesystem::path> files,
                     const std::string& main);
Grammar make_grammar(std::vector<Graph> graphs, const std::string& main);

struct RecursionCheck {
  bool ok = true;
  // Call path closing the cycle, e.g. {A, B, A}.
  std::vector<std::string> cycle;
  std::string message;
};

// ok iff the call graph is acyclic and no graph can loop on epsilon moves
// through calls to graphs that accept the empty sequence.
RecursionCheck check_recursion(const Grammar& grammar);

// Inlines every call so the result has no Call labels. Each call site gets a
// fresh copy of the callee joined by epsilon transitions. Throws Error when
// check_recursion fails.
Graph flatten(const Grammar& grammar);

// ---------------------------------------------------------------------------
// Matching

struct Agreement {
  char gender = 0;  // 'm' / 'f', 0 when unbound
  char number = 0;  // 's' / 'p', 0 when unbound

  auto operator<=>(const Agreement&) const = default;
};

using Bindings = std::map<std::string, Agreement>;

// Gender and number read from an inflection code; absent attributes are 0.
Agreement agreement_of(std::string_view infl_code);

// Unifies a into bound; false on a gender or number clash.
bool unify(Agreement& bound, const Agreement& a);

bool mask_accepts(const Mask& mask, const Analysis& analysis);

// All distinct binding sets reachable by consuming the token with label,
// sorted. Empty means failure. label must not be Call or Epsilon.
std::vector<Bindings> match_label_all(const Label& label,
                                      const TaggedToken& token,
                                      const Bindings& bindings);

// First success in analysis order, or nullopt.
std::optional<Bindings> match_label(const Label& label,
                                    const TaggedToken& token,
                                    const Bindings& bindings);

struct Match {
  std::size_t start_token = 0;  // half-open token range
  std::size_t end_token = 0;
  std::size_t start_byte = 0;
  std::size_t end_byte = 0;
  std::string grammar;
  Bindings bindings;  // smallest binding set among accepting paths

  bool operator==(const Match&) const = default;
};

enum class MatchPolicy { longest, all, shortest };

MatchPolicy parse_match_policy(std::string_view text);
std::string_view to_string(MatchPolicy policy);

// Accepting spans of one start token, end -> smallest bindings.
using SpanEnds = std::map<std::size_t, Bindings>;

// Applies the policy to the accepting ends of each start and builds matches.
// Shared by every matcher so that all of them report identically.
void emit_matches(const TaggedText& text, std::size_t start, const SpanEnds& ends,
                  MatchPolicy policy, const std::string& grammar_name,
                  std::vector<Match>& out);

// Runs a call-free graph from every start token; matches stay within one
// sentence and are sorted by (start, end). locate() works on sentences in
// parallel with OpenMP; locate_serial() is the single-threaded reference.
std::vector<Match> locate(const Graph& flat, const TaggedText& text,
                          MatchPolicy policy = MatchPolicy::longest);
std::vector<Match> locate_serial(const Graph& flat, const TaggedText& text,
                                 MatchPolicy policy = MatchPolicy::longest);

}  // namespace lexgram
