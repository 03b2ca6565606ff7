#include <benchmark/benchmark.h>

#include <sstream>

#include "ordolex/conllu.hpp"
#include "ordolex/dep_tree.hpp"
#include "ordolex/rng.hpp"
#include "ordolex/variants.hpp"

using namespace ordolex;

namespace {

ClauseLayout bench_layout(int n, Rng& rng) {
  ClauseLayout layout;
  layout.sent_id = "bench";
  int cursor = 1;
  for (int i = 0; i < n; ++i) {
    Constituent c;
    const int len = 1 + static_cast<int>(rng.below(8));
    c.begin = cursor;
    c.end = cursor + len - 1;
    c.length = len;
    c.right_offset = static_cast<int>(rng.below(len));
    c.head_position = c.end - c.right_offset;
    cursor = c.end + 1;
    layout.preverbal.push_back(c);
  }
  layout.verb_position = cursor;
  layout.n_words = cursor;
  return layout;
}

std::string bench_conllu(int sentences) {
  std::ostringstream out;
  for (int s = 0; s < sentences; ++s) {
    out << "# sent_id = bench-" << s << "\n";
    const int n = 12;
    for (int p = 1; p < n; ++p) {
      out << p << "\tw" << p << "\tw" << p << "\tNOUN\t_\t_\t" << (p % 3 == 1 ? n : p - 1)
          << "\tdep\t_\t_\n";
    }
    out << n << "\tverb\tverb\tVERB\t_\t_\t0\troot\t_\t_\n\n";
  }
  return out.str();
}

void BM_RootArcTotal(benchmark::State& state) {
  Rng rng(1);
  const ClauseLayout layout = bench_layout(static_cast<int>(state.range(0)), rng);
  Rng order_rng(2);
  const Permutation order = order_rng.random_permutation(layout.n_constituents());
  for (auto _ : state) {
    benchmark::DoNotOptimize(root_arc_total(layout, order));
  }
}
BENCHMARK(BM_RootArcTotal)->Arg(4)->Arg(8)->Arg(16);

void BM_EnumerateOrSample(benchmark::State& state) {
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(enumerate_or_sample(static_cast<int>(state.range(0)), 120, rng));
  }
}
BENCHMARK(BM_EnumerateOrSample)->Arg(5)->Arg(6)->Arg(9);

void BM_LeastEffortTransform(benchmark::State& state) {
  Rng rng(3);
  const ClauseLayout layout = bench_layout(8, rng);
  Rng base_rng(4);
  const Permutation base = base_rng.random_permutation(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(least_effort_transform(base, layout));
  }
}
BENCHMARK(BM_LeastEffortTransform);

void BM_ParseConllu(benchmark::State& state) {
  const std::string text = bench_conllu(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(parse_conllu(in, "bench"));
  }
}
BENCHMARK(BM_ParseConllu)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
