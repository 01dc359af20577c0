#include <benchmark/benchmark.h>

#include "arguendo/planner.hpp"

namespace arg = arguendo::arg;
namespace planner = arguendo::planner;
namespace rst = arguendo::rst;

namespace {

// Chain of k implications the planner has to walk backwards.
planner::PlanningProblem chain_problem(int k) {
  planner::PlanningProblem problem;
  arg::ArgumentStructure& ctx = problem.context;
  std::string prev = "A0";
  (void)ctx.add_atom(prev, prev);
  auto believe = [&](const std::string& id) {
    problem.hearer = problem.hearer.believing(ctx, id).value();
  };
  believe(prev);
  for (int i = 1; i <= k; ++i) {
    const std::string id = "A" + std::to_string(i);
    (void)ctx.add_atom(id, id);
    const std::string rule = "i" + std::to_string(i);
    (void)ctx.add_implication(rule, prev, id);
    believe(rule);
    prev = id;
  }
  return problem;
}

}  // namespace

static void BM_PlanChain(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const planner::PlanningProblem problem = chain_problem(k);
  const std::string goal = "A" + std::to_string(k);
  for (auto _ : state) {
    auto plan = planner::plan(problem, goal, planner::default_forms(), k + 1);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_PlanChain)->Arg(3)->Arg(6)->Arg(9);

static void BM_RefineChain(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const planner::PlanningProblem problem = chain_problem(k);
  const std::string goal = "A" + std::to_string(k);
  auto plan = planner::plan(problem, goal, planner::default_forms(), k + 1);
  const rst::Catalog catalog = rst::builtin_catalog();
  const planner::RefinementMap map = planner::default_refinement_map();
  for (auto _ : state) {
    auto forest = refine(plan.value().structure, catalog, map);
    benchmark::DoNotOptimize(forest);
  }
}
BENCHMARK(BM_RefineChain)->Arg(3)->Arg(6);

static void BM_EnumerateRefinements(benchmark::State& state) {
  const planner::PlanningProblem problem = chain_problem(3);
  auto plan = planner::plan(problem, "A3", planner::default_forms(), 5);
  const rst::Catalog catalog = rst::builtin_catalog();
  const planner::RefinementMap map = planner::default_refinement_map();
  for (auto _ : state) {
    auto forests =
        enumerate_refinements(plan.value().structure, catalog, map, 1000);
    benchmark::DoNotOptimize(forests);
  }
}
BENCHMARK(BM_EnumerateRefinements);
