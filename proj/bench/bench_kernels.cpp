// Parallel locate/tag against their serial references on a corpus made by
// repeating the fixture documents.
#include <benchmark/benchmark.h>

#include <map>

#include "lexgram/rtn.hpp"
#include "lexgram/textproc.hpp"
#include "test_support.hpp"

namespace lt = lexgram::testing;

namespace {

struct Setup {
  lexgram::LexIndex index;
  lexgram::Graph pn;
  lexgram::Graph svc;
  std::string source;
  std::vector<lexgram::Token> tokens;
  lexgram::TaggedText tagged;
};

const Setup& setup(std::size_t copies) {
  static std::map<std::size_t, Setup> cache;
  auto it = cache.find(copies);
  if (it != cache.end()) return it->second;
  Setup s;
  s.index = lexgram::build_index(lt::fixture_lexicon());
  s.pn = lexgram::flatten(lt::fixture_grammar("PN"));
  s.svc = lexgram::flatten(lt::fixture_grammar("SVC"));
  std::string one;
  for (const auto& d : lt::fixture_documents()) one += d.text;
  for (std::size_t i = 0; i < copies; ++i) s.source += one;
  s.tokens = lexgram::tokenize(s.source);
  s.tagged = lexgram::tag(s.source, s.tokens, s.index);
  return cache.emplace(copies, std::move(s)).first->second;
}

void BM_tag(benchmark::State& state) {
  const auto& s = setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lexgram::tag(s.source, s.tokens, s.index));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.tokens.size()));
}

void BM_tag_serial(benchmark::State& state) {
  const auto& s = setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexgram::tag_serial(s.source, s.tokens, s.index));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.tokens.size()));
}

void BM_locate(benchmark::State& state) {
  const auto& s = setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexgram::locate(s.svc, s.tagged));
    benchmark::DoNotOptimize(lexgram::locate(s.pn, s.tagged));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.tokens.size()));
}

void BM_locate_serial(benchmark::State& state) {
  const auto& s = setup(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexgram::locate_serial(s.svc, s.tagged));
    benchmark::DoNotOptimize(lexgram::locate_serial(s.pn, s.tagged));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.tokens.size()));
}

}  // namespace

BENCHMARK(BM_tag)->Arg(1)->Arg(50)->Arg(500);
BENCHMARK(BM_tag_serial)->Arg(1)->Arg(50)->Arg(500);
BENCHMARK(BM_locate)->Arg(1)->Arg(50)->Arg(500);
BENCHMARK(BM_locate_serial)->Arg(1)->Arg(50)->Arg(500);

BENCHMARK_MAIN();
