#include <benchmark/benchmark.h>

#include <sstream>

#include "arguendo/contract.hpp"
#include "arguendo/document.hpp"

namespace contract = arguendo::contract;
namespace doc = arguendo::doc;

namespace {

// A mid-sized synthetic agreement: n units, one contract graph with a node
// and an arc per unit.
std::string synthetic_agreement(int n) {
  std::ostringstream out;
  out << "#units\n";
  for (int i = 1; i <= n; ++i) {
    out << i << " | provision text number " << i << '\n';
  }
  out << "#contract big\n";
  out << "tree part/section/all = 1.." << n << "\n";
  for (int i = 1; i <= n; ++i) {
    out << "node n" << i << " kind=" << (i % 2 == 0 ? "prescription" : "term")
        << " spans=" << i << ".." << i << " label=\"provision " << i << "\"\n";
  }
  for (int i = 2; i <= n; ++i) {
    out << "arc " << (i % 3 == 0 ? "what_if" : "who") << " from=n" << i - 1
        << " to=n" << i << '\n';
  }
  return out.str();
}

}  // namespace

static void BM_ParseAgreement(benchmark::State& state) {
  const std::string text = synthetic_agreement(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto parsed = doc::parse(text);
    benchmark::DoNotOptimize(parsed);
  }
  state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(text.size()));
}
BENCHMARK(BM_ParseAgreement)->Arg(50)->Arg(200);

static void BM_SerializeAgreement(benchmark::State& state) {
  auto parsed = doc::parse(synthetic_agreement(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    const std::string text = doc::serialize(parsed.document);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_SerializeAgreement)->Arg(50)->Arg(200);

static void BM_UnfoldAgreement(benchmark::State& state) {
  auto parsed = doc::parse(synthetic_agreement(static_cast<int>(state.range(0))));
  const auto* section =
      std::get_if<doc::ContractSection>(&parsed.document.sections[0]);
  auto graph = doc::to_contract(parsed.document, *section);
  for (auto _ : state) {
    auto tree = unfold(graph.value(), "n1", 1024);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_UnfoldAgreement)->Arg(50)->Arg(200);
