// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lexgram/classify.hpp"
#include "lexgram/concord.hpp"
#include "lexgram/eval.hpp"
#include "lexgram/inflect.hpp"
#include "lexgram/pipeline.hpp"
#include "lexgram/tables.hpp"
#include "test_support.hpp"

using namespace lexgram;
namespace lt = lexgram::testing;

namespace {

// Runtime limits in seconds.
constexpr double kTablesLimit = 1.0;
constexpr double kFlattenLimit = 5.0;
constexpr double kLexiconLimit = 1.0;
constexpr double kInvariantLimit = 30.0;

constexpr std::size_t kMinOracleGrammars = 10;
constexpr int kInvariantCases = 1000;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

bool report(int number, const std::string& name, double limit,
            const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit > 0 && seconds >= limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.3f s over the %.1f s limit", seconds, limit);
    o.fail(buf);
  }
  char time[32];
  std::snprintf(time, sizeof time, "%.3fs", seconds);
  std::cout << (o.ok ? "PASS" : "FAIL") << "  " << number << ". " << name << "  [" << time
            << "]";
  if (!o.detail.empty()) std::cout << "  " << o.detail;
  std::cout << '\n';
  return o.ok;
}

Outcome table_arithmetic() {
  Outcome o;
  const auto checks = verify_reference_tables(Rounding::half_up);
  const std::set<std::string> allowed = {"recall/SVC average", "subcat/NCF corrected"};
  std::size_t flagged = 0;
  for (const auto& c : checks) {
    const std::string key = c.table + "/" + c.cell;
    if (!c.pass) o.fail("cell " + key + " printed " + c.printed + ", computed " + c.computed);
    if (c.flagged) {
      ++flagged;
      if (!allowed.count(key)) o.fail("unexpected flag on " + key);
    }
  }
  if (flagged != allowed.size()) o.fail("expected both inconsistent cells to be flagged");
  if (o.ok) o.detail = std::to_string(checks.size()) + " cells, 2 flagged";
  return o;
}

Outcome flattening_oracle() {
  Outcome o;
  const auto index = build_index(lt::fixture_lexicon());
  std::vector<TaggedText> texts;
  for (const auto& d : lt::fixture_documents()) texts.push_back(tag_text(d.text, index));
  const auto grammars = lt::oracle_grammars();
  if (grammars.size() < kMinOracleGrammars) o.fail("too few grammars");
  std::size_t spans = 0, mismatches = 0;
  for (const auto& ng : grammars) {
    const Graph flat = flatten(ng.grammar);
    for (auto policy : {MatchPolicy::longest, MatchPolicy::all, MatchPolicy::shortest}) {
      for (const auto& t : texts) {
        const auto got = locate(flat, t, policy);
        const auto want = lt::interpret(ng.grammar, t, policy);
        spans += want.size();
        if (got != want) {
          ++mismatches;
          o.fail("grammar " + ng.label + " policy " + std::string(to_string(policy)));
        }
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(grammars.size()) + " grammars, " + std::to_string(spans) +
               " spans, 0 mismatches";
  }
  return o;
}

Outcome lexicon_oracle() {
  Outcome o;
  const auto entries = lt::fixture_lexicon();
  const auto index = build_index(entries);
  std::set<std::string> vocabulary;
  for (const auto& d : lt::fixture_documents()) {
    for (const auto& tok : tokenize(d.text)) vocabulary.insert(tok.surface);
  }
  for (const auto& form : vocabulary) {
    const auto got = lookup(index, form);
    if (std::vector<Analysis>(got.begin(), got.end()) != lt::scan_lookup(entries, form)) {
      o.fail("lookup differs from scan for '" + form + "'");
    }
  }

  const auto dir = lt::source_dir() / "data/fixture";
  const auto table = read_paradigm_file((dir / "paradigms.txt").string());
  const auto lemmas = read_lemma_file((dir / "lemmas.txt").string());
  const auto generated = expand_lexicon(lemmas, table);
  const auto gen_index = build_index(generated);
  std::size_t hits = 0;
  for (const auto& e : generated) {
    const auto found = gen_index.find(e.form);
    const bool hit = std::any_of(found.begin(), found.end(), [&](const Analysis& a) {
      return a.lemma == e.lemma && a.infl_code == *e.infl_codes.begin();
    });
    if (hit && !e.form.empty()) ++hits;
  }
  if (hits != generated.size()) o.fail("inflection round-trip misses a generated form");
  if (o.ok) {
    o.detail = std::to_string(vocabulary.size()) + " forms, " + std::to_string(hits) + "/" +
               std::to_string(generated.size()) + " generated forms round-trip";
  }
  return o;
}

Outcome bias_reproduction() {
  Outcome o;
  const auto index = build_index(lt::fixture_lexicon());
  const Graph svc = flatten(lt::fixture_grammar("SVC"));
  const Graph pn = flatten(lt::fixture_grammar("PN"));

  const auto data = tag_text("Les nouvelles données du journal sont arrivées.", index);
  bool svc_hit = false;
  for (const auto& m : locate(svc, data)) {
    if (data.source.substr(m.start_byte, m.end_byte - m.start_byte) == "Les nouvelles données")
      svc_hit = true;
  }
  if (!svc_hit) o.fail("SVC grammar does not match 'les nouvelles données'");

  const auto clash = tag_text("Le journal critique ce débats.", index);
  for (const auto& m : locate(pn, clash, MatchPolicy::all)) {
    if (clash.source.substr(m.start_byte, m.end_byte - m.start_byte).find("débats") !=
        std::string::npos) {
      o.fail("PN grammar accepts 'ce débats'");
    }
  }
  const auto agree = tag_text("Le journal critique ce débat.", index);
  if (locate(pn, agree).size() != 1) o.fail("PN grammar rejects 'ce débat'");
  if (o.ok) o.detail = "false positive reproduced, number clash rejected";
  return o;
}

Outcome fixture_ledger() {
  Outcome o;
  const auto config = read_config(lt::source_dir() / "data/fixture/fixture.conf");
  const auto result = run_pipeline(config);

  std::map<std::string, std::size_t> got = {
      {"pn_total", result.counts.pn_total},
      {"svc_total", result.counts.svc_total},
      {"pn_with_sv", result.counts.pn_with_sv},
      {"pn_without_sv", result.counts.pn_without_sv},
  };
  for (const auto& row : result.subcat_rows) {
    got[row.subcat + ".pn"] = row.pn;
    got[row.subcat + ".svc"] = row.svc;
  }

  const auto spans_of = [&](const std::string& file) {
    std::set<std::string> out;
    std::istringstream in(result.files.at(file));
    for (const auto& l : read_concordance_tsv(in)) {
      out.insert(l.doc_id + ":" + std::to_string(l.match.start_byte) + ":" +
                 std::to_string(l.match.end_byte));
    }
    return out;
  };
  const std::set<std::string> pn_spans = spans_of("pn_concordance.tsv");
  const std::set<std::string> svc_spans = spans_of("svc_concordance.tsv");

  std::set<std::string> want_pn, want_svc;
  std::size_t counts = 0;
  for (const auto& e : lt::fixture_ledger()) {
    if (e.kind == "count" || e.kind == "subcat") {
      ++counts;
      const auto it = got.find(e.key);
      if (it == got.end() || std::to_string(it->second) != e.value) {
        o.fail(e.key + " expected " + e.value + ", got " +
               (it == got.end() ? std::string("nothing") : std::to_string(it->second)));
      }
    } else if (e.kind == "PN") {
      want_pn.insert(e.key);
    } else if (e.kind == "SVC") {
      want_svc.insert(e.key);
    }
  }
  if (pn_spans != want_pn) o.fail("PN spans differ from the ledger");
  if (svc_spans != want_svc) o.fail("SVC spans differ from the ledger");
  if (o.ok) {
    o.detail = std::to_string(counts) + " counts, " +
               std::to_string(want_pn.size() + want_svc.size()) + " spans match";
  }
  return o;
}

Outcome invariants() {
  Outcome o;
  lt::Rng rng(0x5eed);
  int partition = 0, antichain = 0, bijection = 0, idempotent = 0, monotone = 0, identity = 0;

  for (int i = 0; i < kInvariantCases; ++i) {
    const Grammar g = lt::random_grammar(rng);
    const Graph flat = flatten(g);
    const TaggedText text = lt::random_tagged_text(rng);
    const auto longest = locate(flat, text, MatchPolicy::longest);
    const auto all = locate(flat, text, MatchPolicy::all);

    const auto c = classify_pn(longest, all);
    if (c.pn_with_sv + c.pn_without_sv == c.pn_total) ++partition;

    bool starts_unique = true;
    for (std::size_t k = 1; k < longest.size(); ++k) {
      if (longest[k].start_token == longest[k - 1].start_token) starts_unique = false;
    }
    if (starts_unique) ++antichain;

    const auto lines = build_concordance(all, text, rng() % 12, "r");
    bool same = lines.size() == all.size();
    for (std::size_t k = 0; same && k < lines.size(); ++k) {
      same = lines[k].match == all[k] &&
             lines[k].center == text.source.substr(all[k].start_byte,
                                                   all[k].end_byte - all[k].start_byte);
    }
    if (same) ++bijection;
  }

  for (int i = 0; i < kInvariantCases; ++i) {
    const auto lines = lt::random_lines(rng);
    bool stable = true;
    for (auto order :
         {ConcordanceOrder::text, ConcordanceOrder::center, ConcordanceOrder::left_reversed}) {
      const auto once = sort_concordance(lines, order);
      stable = stable && sort_concordance(once, order) == once;
    }
    if (stable) ++idempotent;
  }

  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::uniform_real_distribution<double> count(1.0, 1e5);
  for (int i = 0; i < kInvariantCases; ++i) {
    const double n = count(rng), p = unit(rng), r = unit(rng), d = unit(rng) * 0.5;
    if (bias_correct(n, p + d, r) > bias_correct(n, p, r) &&
        bias_correct(n, p, r + d) < bias_correct(n, p, r)) {
      ++monotone;
    }
    if (std::abs(bias_correct(n, p, p) - n) <= 1e-9 * n) ++identity;
  }

  const std::pair<const char*, int> counts[] = {
      {"partition", partition}, {"antichain", antichain}, {"bijection", bijection},
      {"sort idempotence", idempotent}, {"monotonicity", monotone}, {"p=r identity", identity}};
  for (const auto& [name, n] : counts) {
    if (n != kInvariantCases) {
      o.fail(std::string(name) + " held in " + std::to_string(n) + "/" +
             std::to_string(kInvariantCases));
    }
  }
  if (o.ok) o.detail = "6 properties x " + std::to_string(kInvariantCases) + " cases";
  return o;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "table arithmetic", kTablesLimit, table_arithmetic);
  ok &= report(2, "flattening oracle", kFlattenLimit, flattening_oracle);
  ok &= report(3, "lexicon oracle", kLexiconLimit, lexicon_oracle);
  ok &= report(4, "bias reproduction", 0, bias_reproduction);
  ok &= report(5, "fixture ledger", 0, fixture_ledger);
  ok &= report(6, "invariant suite", kInvariantLimit, invariants);
  return ok ? 0 : 1;
}
