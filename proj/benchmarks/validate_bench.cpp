#include <benchmark/benchmark.h>

#include "arguendo/rst.hpp"

namespace rst = arguendo::rst;

namespace {

const rst::Catalog& catalog() {
  static const rst::Catalog instance = rst::builtin_catalog();
  return instance;
}

std::vector<rst::Analysis> enumerated(std::size_t n) {
  auto result =
      rst::enumerate_analyses(n, catalog(), {"ELABORATION", "SEQUENCE"});
  return std::move(result).value();
}

}  // namespace

static void BM_EnumerateAnalyses(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result =
        rst::enumerate_analyses(n, catalog(), {"ELABORATION", "SEQUENCE"});
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_EnumerateAnalyses)->Arg(3)->Arg(4)->Arg(5);

static void BM_ValidateEnumerated(benchmark::State& state) {
  const auto analyses = enumerated(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto report = validate(analyses[i % analyses.size()], catalog());
    benchmark::DoNotOptimize(report);
    ++i;
  }
}
BENCHMARK(BM_ValidateEnumerated)->Arg(4)->Arg(5);

static void BM_LeavesInOrder(benchmark::State& state) {
  const auto analyses = enumerated(5);
  std::size_t i = 0;
  for (auto _ : state) {
    auto leaves = rst::leaves_in_order(analyses[i % analyses.size()], catalog());
    benchmark::DoNotOptimize(leaves);
    ++i;
  }
}
BENCHMARK(BM_LeavesInOrder);
