#include "arguendo/planner.hpp"

#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

namespace arg = arguendo::arg;
namespace planner = arguendo::planner;
namespace rst = arguendo::rst;
using arguendo::Errc;

namespace {

// Hearer already believes A and A->B; the speaker wants B believed.
planner::PlanningProblem mp_problem() {
  planner::PlanningProblem problem;
  EXPECT_TRUE(problem.context.add_atom("A", "A").ok());
  EXPECT_TRUE(problem.context.add_atom("B", "B").ok());
  EXPECT_TRUE(problem.context.add_implication("AimpB", "A", "B").ok());
  for (const char* id : {"A", "AimpB"}) {
    auto next = problem.hearer.believing(problem.context, id);
    EXPECT_TRUE(next.ok());
    problem.hearer = std::move(next).value();
  }
  return problem;
}

// The arbitration-style scenario: believes {P->Q, ~Q, ~P->R}, goal R.
planner::PlanningProblem scenario_problem() {
  planner::PlanningProblem problem;
  arg::ArgumentStructure& ctx = problem.context;
  EXPECT_TRUE(ctx.add_atom("P", "P").ok());
  EXPECT_TRUE(ctx.add_atom("Q", "Q").ok());
  EXPECT_TRUE(ctx.add_atom("R", "R").ok());
  EXPECT_TRUE(ctx.add_negation("nQ", "Q").ok());
  EXPECT_TRUE(ctx.add_negation("nP", "P").ok());
  EXPECT_TRUE(ctx.add_implication("PimpQ", "P", "Q").ok());
  EXPECT_TRUE(ctx.add_implication("nPimpR", "nP", "R").ok());
  for (const char* id : {"PimpQ", "nQ", "nPimpR"}) {
    auto next = problem.hearer.believing(ctx, id);
    EXPECT_TRUE(next.ok());
    problem.hearer = std::move(next).value();
  }
  return problem;
}

}  // namespace

TEST(ApplyOperator, AddsTheConclusion) {
  const planner::PlanningProblem problem = mp_problem();
  const arg::SupportLink link{"l", "MP", {"A", "AimpB"}, "B",
                              arg::SupportMode::kLinked};
  auto next = apply_operator(problem.context, problem.hearer, {link});
  ASSERT_TRUE(next.ok());
  EXPECT_TRUE(next.value().believes("B"));
  EXPECT_TRUE(next.value().believes("A"));  // monotone
}

TEST(ApplyOperator, RequirementsMustBeBelieved) {
  planner::PlanningProblem problem = mp_problem();
  planner::BeliefState partial;
  auto believed = partial.believing(problem.context, "A");
  ASSERT_TRUE(believed.ok());
  const arg::SupportLink link{"l", "MP", {"A", "AimpB"}, "B",
                              arg::SupportMode::kLinked};
  auto next = apply_operator(problem.context, believed.value(), {link});
  ASSERT_FALSE(next.ok());
  EXPECT_EQ(next.code(), Errc::kRequirementsUnmet);
}

TEST(ApplyOperator, BelievedNegationBlocksTheConclusion) {
  planner::PlanningProblem problem = mp_problem();
  ASSERT_TRUE(problem.context.add_negation("nB", "B").ok());
  auto state = problem.hearer.believing(problem.context, "nB");
  ASSERT_TRUE(state.ok());
  const arg::SupportLink link{"l", "MP", {"A", "AimpB"}, "B",
                              arg::SupportMode::kLinked};
  auto next = apply_operator(problem.context, state.value(), {link});
  ASSERT_FALSE(next.ok());
  EXPECT_EQ(next.code(), Errc::kContradiction);
}

TEST(BeliefState, NeverBelievesBothSides) {
  planner::PlanningProblem problem = scenario_problem();
  auto state = problem.hearer.believing(problem.context, "Q");
  ASSERT_FALSE(state.ok());  // nQ is already believed
  EXPECT_EQ(state.code(), Errc::kContradiction);
}

TEST(Plan, ScenarioRunsModusTollensThenModusPonens) {
  const planner::PlanningProblem problem = scenario_problem();
  auto plan = planner::plan(problem, "R");
  ASSERT_TRUE(plan.ok());
  ASSERT_EQ(plan.value().steps.size(), 2u);
  EXPECT_EQ(plan.value().steps[0].link.form, "MT");
  EXPECT_EQ(plan.value().steps[0].link.conclusion, "nP");
  EXPECT_EQ(plan.value().steps[1].link.form, "MP");
  EXPECT_EQ(plan.value().steps[1].link.conclusion, "R");

  auto replayed = simulate(problem, plan.value());
  ASSERT_TRUE(replayed.ok());
  EXPECT_TRUE(replayed.value().believes("R"));
  EXPECT_TRUE(check_single_structure(plan.value().structure));
}

TEST(Plan, BelievedGoalNeedsNoSteps) {
  planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "A");
  ASSERT_TRUE(plan.ok());
  EXPECT_TRUE(plan.value().steps.empty());
}

TEST(Plan, ExhaustedSearchIsNoPlan) {
  planner::PlanningProblem problem;
  ASSERT_TRUE(problem.context.add_atom("X", "X").ok());
  auto plan = planner::plan(problem, "X");
  ASSERT_FALSE(plan.ok());
  EXPECT_EQ(plan.code(), Errc::kNoPlan);
}

TEST(Plan, DepthBoundIsReported) {
  planner::PlanningProblem problem;
  arg::ArgumentStructure& ctx = problem.context;
  std::vector<std::string> chain = {"A0"};
  ASSERT_TRUE(ctx.add_atom("A0", "A0").ok());
  for (int i = 1; i <= 4; ++i) {
    const std::string id = "A" + std::to_string(i);
    ASSERT_TRUE(ctx.add_atom(id, id).ok());
    ASSERT_TRUE(ctx.add_implication("i" + std::to_string(i), chain.back(), id)
                    .ok());
    chain.push_back(id);
  }
  auto state = problem.hearer.believing(ctx, "A0");
  ASSERT_TRUE(state.ok());
  problem.hearer = std::move(state).value();
  for (int i = 1; i <= 4; ++i) {
    auto next = problem.hearer.believing(ctx, "i" + std::to_string(i));
    ASSERT_TRUE(next.ok());
    problem.hearer = std::move(next).value();
  }
  auto shallow = planner::plan(problem, "A4", planner::default_forms(), 2);
  ASSERT_FALSE(shallow.ok());
  EXPECT_EQ(shallow.code(), Errc::kDepthExceeded);
  auto deep = planner::plan(problem, "A4", planner::default_forms(), 10);
  EXPECT_TRUE(deep.ok());
}

TEST(Plan, AssertsPremisesFromTheSpeakersKb) {
  planner::PlanningProblem problem;
  ASSERT_TRUE(problem.context.add_atom("A", "A").ok());
  ASSERT_TRUE(problem.context.add_atom("B", "B").ok());
  ASSERT_TRUE(problem.context.add_implication("AimpB", "A", "B").ok());
  problem.speaker_kb = {"A", "AimpB"};
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  ASSERT_EQ(plan.value().steps.size(), 1u);
  EXPECT_EQ(plan.value().steps[0].asserted,
            (std::vector<std::string>{"A", "AimpB"}));
  auto replayed = simulate(problem, plan.value());
  ASSERT_TRUE(replayed.ok());
  EXPECT_TRUE(replayed.value().believes("B"));
}

TEST(Plan, DisbelievedPremisesAreNotAssertable) {
  planner::PlanningProblem problem;
  ASSERT_TRUE(problem.context.add_atom("A", "A").ok());
  ASSERT_TRUE(problem.context.add_atom("B", "B").ok());
  ASSERT_TRUE(problem.context.add_implication("AimpB", "A", "B").ok());
  problem.speaker_kb = {"A", "AimpB"};
  auto state = problem.hearer.disbelieving(problem.context, "A");
  ASSERT_TRUE(state.ok());
  problem.hearer = std::move(state).value();
  auto plan = planner::plan(problem, "B");
  ASSERT_FALSE(plan.ok());
  EXPECT_EQ(plan.code(), Errc::kNoPlan);
}

TEST(Plan, ContradictoryConclusionPrunesTheCandidate) {
  planner::PlanningProblem problem = mp_problem();
  ASSERT_TRUE(problem.context.add_negation("nB", "B").ok());
  auto state = problem.hearer.believing(problem.context, "nB");
  ASSERT_TRUE(state.ok());
  problem.hearer = std::move(state).value();
  auto plan = planner::plan(problem, "B");
  ASSERT_FALSE(plan.ok());
  EXPECT_EQ(plan.code(), Errc::kNoPlan);
}

TEST(Plan, InductiveGeneralisationCandidates) {
  planner::PlanningProblem problem;
  arg::ArgumentStructure& ctx = problem.context;
  for (const char* id : {"swan1", "swan2", "swans"}) {
    ASSERT_TRUE(ctx.add_atom(id, id).ok());
  }
  problem.instance_classes["swans"] = {"swan1", "swan2"};
  for (const char* id : {"swan1", "swan2"}) {
    auto next = problem.hearer.believing(ctx, id);
    ASSERT_TRUE(next.ok());
    problem.hearer = std::move(next).value();
  }
  auto plan = planner::plan(problem, "swans");
  ASSERT_TRUE(plan.ok());
  ASSERT_EQ(plan.value().steps.size(), 1u);
  EXPECT_EQ(plan.value().steps[0].link.form, "IG");
}

TEST(Plan, DeterministicAcrossRuns) {
  const planner::PlanningProblem problem = scenario_problem();
  auto first = planner::plan(problem, "R");
  auto second = planner::plan(problem, "R");
  ASSERT_TRUE(first.ok());
  ASSERT_TRUE(second.ok());
  ASSERT_EQ(first.value().steps.size(), second.value().steps.size());
  for (std::size_t i = 0; i < first.value().steps.size(); ++i) {
    EXPECT_EQ(first.value().steps[i].link, second.value().steps[i].link);
  }
}

TEST(Refine, MpBecomesEvidenceOverAJointSatellite) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  auto forest = refine(plan.value().structure, rst::builtin_catalog(),
                       planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  ASSERT_EQ(forest.value().trees.size(), 1u);
  const rst::Analysis& tree = forest.value().trees[0].analysis;
  EXPECT_TRUE(validate(tree, rst::builtin_catalog()).accepted());

  std::vector<std::string> unit_ids;
  for (const auto& unit : tree.units()) unit_ids.push_back(unit.id);
  EXPECT_EQ(unit_ids, (std::vector<std::string>{"A", "AimpB", "B"}));

  ASSERT_EQ(tree.composites().size(), 2u);
  EXPECT_EQ(rst::normalize_relation_name(tree.composites()[0].relation),
            "JOINT");
  EXPECT_EQ(rst::normalize_relation_name(tree.composites()[1].relation),
            "EVIDENCE");
}

TEST(Refine, ScenarioTreeValidatesAndCountsLinks) {
  const planner::PlanningProblem problem = scenario_problem();
  auto plan = planner::plan(problem, "R");
  ASSERT_TRUE(plan.ok());
  auto forest = refine(plan.value().structure, rst::builtin_catalog(),
                       planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  const rst::Analysis& tree = forest.value().trees[0].analysis;
  EXPECT_TRUE(validate(tree, rst::builtin_catalog()).accepted());

  const auto argumentative =
      rst::argumentative_relations(rst::builtin_catalog());
  const std::set<std::string> allowed(argumentative.begin(),
                                      argumentative.end());
  std::size_t mono_instances = 0;
  for (const auto& comp : tree.composites()) {
    const std::string name = rst::normalize_relation_name(comp.relation);
    if (name == "JOINT") continue;
    ++mono_instances;
    EXPECT_TRUE(allowed.contains(name)) << name;
  }
  EXPECT_EQ(mono_instances, plan.value().structure.links().size());
}

TEST(Refine, SingleClaimBecomesASingleUnitTree) {
  arg::ArgumentStructure claim;
  ASSERT_TRUE(claim.add_atom("claim", "claim", "the deal stands").ok());
  auto forest = refine(claim, rst::builtin_catalog(),
                       planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  const rst::Analysis& tree = forest.value().trees[0].analysis;
  EXPECT_EQ(tree.units().size(), 1u);
  EXPECT_TRUE(tree.composites().empty());
  EXPECT_EQ(tree.units()[0].text, "the deal stands");
}

TEST(Refine, RejectsNonSingleStructures) {
  arg::ArgumentStructure inventory;
  ASSERT_TRUE(inventory.add_atom("A", "A").ok());
  ASSERT_TRUE(inventory.add_atom("B", "B").ok());
  auto forest = refine(inventory, rst::builtin_catalog(),
                       planner::default_refinement_map());
  ASSERT_FALSE(forest.ok());
  EXPECT_EQ(forest.code(), Errc::kInvalidStructure);
}

TEST(Refine, UnmappedFormIsAnError) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  planner::RefinementMap map;
  map.targets["MT"] = {"EVIDENCE"};  // MP missing
  auto forest = refine(plan.value().structure, rst::builtin_catalog(), map);
  ASSERT_FALSE(forest.ok());
  EXPECT_EQ(forest.code(), Errc::kUnmappedForm);
}

TEST(Refine, NonArgumentativeTargetIsAnError) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  planner::RefinementMap map;
  map.targets["MP"] = {"ELABORATION"};
  auto forest = refine(plan.value().structure, rst::builtin_catalog(), map);
  ASSERT_FALSE(forest.ok());
  EXPECT_EQ(forest.code(), Errc::kNonArgumentativeTarget);
}

TEST(RefineDocument, SectionsBecomeSeparateTrees) {
  arg::ArgumentStructure claim;
  ASSERT_TRUE(claim.add_atom("claim", "claim").ok());
  auto document = arg::assemble_document(
      {{arg::SectionKind::kIntroduction, std::string("opening remarks")},
       {arg::SectionKind::kArgumentative, claim},
       {arg::SectionKind::kConclusion, std::string("closing remarks")}});
  ASSERT_TRUE(document.ok());
  auto forest = refine_document(document.value(), rst::builtin_catalog(),
                                planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  ASSERT_EQ(forest.value().trees.size(), 3u);
  for (const auto& tree : forest.value().trees) {
    EXPECT_TRUE(validate(tree.analysis, rst::builtin_catalog()).accepted());
  }
  EXPECT_EQ(forest.value().trees[0].section, arg::SectionKind::kIntroduction);
  EXPECT_EQ(forest.value().trees[2].section, arg::SectionKind::kConclusion);
}

TEST(EnumerateRefinements, OneLinkYieldsSixForests) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  auto forests = enumerate_refinements(plan.value().structure,
                                       rst::builtin_catalog(),
                                       planner::default_refinement_map(), 10);
  ASSERT_TRUE(forests.ok());
  EXPECT_EQ(forests.value().size(), 6u);
  std::set<std::string> distinct;
  for (const auto& forest : forests.value()) {
    EXPECT_TRUE(validate(forest.trees[0].analysis, rst::builtin_catalog())
                    .accepted());
    distinct.insert(rst::structure_signature(forest.trees[0].analysis));
  }
  EXPECT_EQ(distinct.size(), 6u);
}

TEST(EnumerateRefinements, TwoLinksYieldThirtySix) {
  const planner::PlanningProblem problem = scenario_problem();
  auto plan = planner::plan(problem, "R");
  ASSERT_TRUE(plan.ok());
  auto forests = enumerate_refinements(plan.value().structure,
                                       rst::builtin_catalog(),
                                       planner::default_refinement_map(), 100);
  ASSERT_TRUE(forests.ok());
  EXPECT_EQ(forests.value().size(), 36u);
}

TEST(EnumerateRefinements, RestrictedMapYieldsOne) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  planner::RefinementMap map;
  map.targets["MP"] = {"EVIDENCE"};
  auto forests = enumerate_refinements(plan.value().structure,
                                       rst::builtin_catalog(), map, 10);
  ASSERT_TRUE(forests.ok());
  EXPECT_EQ(forests.value().size(), 1u);
}

TEST(EnumerateRefinements, BoundIsEnforced) {
  const planner::PlanningProblem problem = mp_problem();
  auto plan = planner::plan(problem, "B");
  ASSERT_TRUE(plan.ok());
  auto forests = enumerate_refinements(plan.value().structure,
                                       rst::builtin_catalog(),
                                       planner::default_refinement_map(), 5);
  ASSERT_FALSE(forests.ok());
  EXPECT_EQ(forests.code(), Errc::kBoundExceeded);
}

TEST(RecoverStructure, ReadsTheSupportSkeletonBack) {
  const planner::PlanningProblem problem = scenario_problem();
  auto plan = planner::plan(problem, "R");
  ASSERT_TRUE(plan.ok());
  auto forest = refine(plan.value().structure, rst::builtin_catalog(),
                       planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  auto skeleton = planner::recover_structure(forest.value().trees[0].analysis,
                                    rst::builtin_catalog());
  ASSERT_TRUE(skeleton.ok());
  EXPECT_EQ(skeleton.value().signature(),
            planner::SupportSkeleton::of(plan.value().structure).signature());
}
