#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arguendo/argument.hpp"
#include "arguendo/catalog.hpp"
#include "arguendo/result.hpp"
#include "arguendo/rst.hpp"

namespace arguendo::planner {

enum class Belief { kUnknown, kBelieved, kDisbelieved };

// Hearer model: proposition id -> belief (absent means unknown). Belief is a
// tri-state; an operator's effect moves its conclusion from unknown to
// believed and never retracts anything.
class BeliefState {
 public:
  BeliefState() = default;

  [[nodiscard]] Belief at(std::string_view id) const;
  [[nodiscard]] bool believes(std::string_view id) const {
    return at(id) == Belief::kBelieved;
  }
  [[nodiscard]] bool disbelieves(std::string_view id) const {
    return at(id) == Belief::kDisbelieved;
  }

  // Persistent updates; the context supplies negations so that a proposition
  // and its negation are never both believed (Errc::kContradiction).
  Result<BeliefState> believing(const arg::ArgumentStructure& context,
                                const std::string& id) const;
  Result<BeliefState> disbelieving(const arg::ArgumentStructure& context,
                                   const std::string& id) const;

  [[nodiscard]] const std::map<std::string, Belief>& entries() const {
    return beliefs_;
  }

 private:
  std::map<std::string, Belief> beliefs_;
};

// An instantiated argument-form step: requirements are the link's premises,
// the effect is belief in its conclusion.
struct Operator {
  arg::SupportLink link;
};

// Applies one step. Errors: kRequirementsUnmet when a premise is not
// believed, kContradiction when the conclusion's negation is believed.
Result<BeliefState> apply_operator(const arg::ArgumentStructure& context,
                                   const BeliefState& state,
                                   const Operator& op);

struct PlanStep {
  arg::SupportLink link;
  // Premises the speaker asserts from their own knowledge base immediately
  // before this step (hearer did not already believe them).
  std::vector<std::string> asserted;
};

struct Plan {
  std::vector<PlanStep> steps;
  arg::ArgumentStructure structure;  // induced argument structure
  std::string goal;
};

struct PlanningProblem {
  arg::ArgumentStructure context;  // proposition universe
  BeliefState hearer;
  std::set<std::string> speaker_kb;  // assertable proposition ids
  // Instance tagging for inductive generalisation: class atom id -> instance
  // atom ids.
  std::map<std::string, std::vector<std::string>> instance_classes;
};

inline constexpr int kDefaultDepthLimit = 10;

inline const std::vector<std::string>& default_forms() {
  static const std::vector<std::string> forms = {"MP", "MT", "IG"};
  return forms;
}

// Deterministic backward chaining from the goal: forms tried in the given
// order, candidate premises in lexicographic id order; a premise is taken
// from the hearer's beliefs, asserted from the speaker's kb (unless the
// hearer disbelieves it), or established by a sub-plan. Errors: kNoPlan when
// the search space is exhausted, kDepthExceeded when only the depth bound
// cut the search short, kDanglingReference for an unknown goal,
// kContradiction for an inconsistent initial state.
Result<Plan> plan(const PlanningProblem& problem, const std::string& goal_id,
                  const std::vector<std::string>& forms = default_forms(),
                  int depth_limit = kDefaultDepthLimit);

// Replays a plan from the problem's initial state: asserts each step's
// asserted premises, then applies the operator. Returns the final state or
// the first error.
Result<BeliefState> simulate(const PlanningProblem& problem, const Plan& plan);

// Argument form -> ordered list of admissible RST relation names.
struct RefinementMap {
  std::map<std::string, std::vector<std::string>> targets;
};

// Every builtin form maps to the six argumentative relations, preference
// order Evidence, Justify, Motivation, Volitional Cause, Non-Volitional
// Cause, Solutionhood.
RefinementMap default_refinement_map();

// A forest of per-section RST trees; sections are never joined by a
// relation.
struct RstForest {
  struct Tree {
    arg::SectionKind section;
    rst::Analysis analysis;
  };
  std::vector<Tree> trees;
};

// Refines an argument structure into one RST tree: each support link becomes
// one mononuclear relation instance (first choice in the map), linked
// premises grouped under a JOINT composite, convergent links nested around
// the shared conclusion. Every proposition realizes as one text unit whose
// id is the proposition id and whose text is the surface text or the id
// itself. Linearization is satellite before nucleus, depth first. Errors:
// kInvalidStructure (fails check_single_structure), kUnmappedForm,
// kNonArgumentativeTarget, kDanglingReference (map names an unknown
// relation).
Result<RstForest> refine(const arg::ArgumentStructure& structure,
                         const rst::Catalog& catalog, const RefinementMap& map,
                         arg::SectionKind section = arg::SectionKind::kArgumentative);

// Refines a whole envelope: one tree per section; plain-text sections
// realize as single-unit analyses.
Result<RstForest> refine_document(const arg::ArgumentDocument& document,
                                  const rst::Catalog& catalog,
                                  const RefinementMap& map);

// All distinct forests obtainable by varying each link's relation within the
// map. Errors: kBoundExceeded when the choice product exceeds `bound`, plus
// refine's errors.
Result<std::vector<RstForest>> enumerate_refinements(
    const arg::ArgumentStructure& structure, const rst::Catalog& catalog,
    const RefinementMap& map, std::size_t bound,
    arg::SectionKind section = arg::SectionKind::kArgumentative);

// The support skeleton read back from a refined tree: which propositions
// support which conclusion, with form and mode labels erased.
struct SupportSkeleton {
  std::set<std::string> propositions;
  // One entry per recovered link: sorted premises and their conclusion.
  std::vector<std::pair<std::vector<std::string>, std::string>> links;

  [[nodiscard]] std::string signature() const;
  static SupportSkeleton of(const arg::ArgumentStructure& structure);
};

// Inverse link-per-relation reading of a refined analysis: every mononuclear
// relation instance contributes one link whose conclusion is the head unit
// of its nucleus and whose premises are the heads of the satellite's JOINT
// members (or the satellite itself). Errors: kInvalidAnalysis when the tree
// does not have the refined shape.
Result<SupportSkeleton> recover_structure(const rst::Analysis& analysis,
                                          const rst::Catalog& catalog);

}  // namespace arguendo::planner
