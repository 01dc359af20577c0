#include "arguendo/planner.hpp"

#include <algorithm>
#include <cassert>

namespace arguendo::planner {

Belief BeliefState::at(std::string_view id) const {
  auto it = beliefs_.find(std::string(id));
  return it == beliefs_.end() ? Belief::kUnknown : it->second;
}

Result<BeliefState> BeliefState::believing(const arg::ArgumentStructure& context,
                                           const std::string& id) const {
  const std::string canonical = context.resolve(id);
  if (canonical.empty()) {
    return make_error(Errc::kDanglingReference,
                      "unknown proposition '" + id + "'");
  }
  if (disbelieves(canonical)) {
    return make_error(Errc::kContradiction,
                      "hearer disbelieves '" + canonical + "'");
  }
  if (const auto neg = context.negation_of(canonical);
      neg.has_value() && believes(*neg)) {
    return make_error(Errc::kContradiction,
                      "hearer already believes the negation '" + *neg + "'");
  }
  BeliefState next = *this;
  next.beliefs_[canonical] = Belief::kBelieved;
  return next;
}

Result<BeliefState> BeliefState::disbelieving(
    const arg::ArgumentStructure& context, const std::string& id) const {
  const std::string canonical = context.resolve(id);
  if (canonical.empty()) {
    return make_error(Errc::kDanglingReference,
                      "unknown proposition '" + id + "'");
  }
  if (believes(canonical)) {
    return make_error(Errc::kContradiction,
                      "hearer already believes '" + canonical + "'");
  }
  BeliefState next = *this;
  next.beliefs_[canonical] = Belief::kDisbelieved;
  return next;
}

Result<BeliefState> apply_operator(const arg::ArgumentStructure& context,
                                   const BeliefState& state,
                                   const Operator& op) {
  for (const auto& premise : op.link.premises) {
    if (!state.believes(context.resolve(premise))) {
      return make_error(Errc::kRequirementsUnmet,
                        "premise '" + premise + "' is not believed");
    }
  }
  return state.believing(context, op.link.conclusion);
}

namespace {

// One candidate instantiation: the link plus which premises would have to be
// asserted rather than derived.
struct Candidate {
  arg::SupportLink link;
};

// Deterministic candidate enumeration. Premises must resolve to declared
// propositions; the planner never invents content the problem does not
// contain.
std::vector<Candidate> candidates_for(const PlanningProblem& problem,
                                      const arg::FormRegistry& registry,
                                      const std::string& form,
                                      const std::string& goal) {
  std::vector<Candidate> out;
  const arg::ArgumentStructure& ctx = problem.context;
  const arg::Proposition* goal_prop = ctx.find(goal);
  if (goal_prop == nullptr) return out;

  auto instantiate = [&](const arg::Bindings& bindings) {
    auto inst = arg::instantiate_form(ctx, registry, form, bindings);
    if (inst.ok() && inst.value().generated.empty()) {
      out.push_back({inst.value().link});
    }
  };

  if (form == "MP") {
    // Implications with the goal as consequent, in lexicographic id order.
    std::vector<const arg::Proposition*> impls;
    for (const auto& p : ctx.propositions()) {
      if (p.content.kind == arg::PropKind::kImplies &&
          p.content.b == goal_prop->id) {
        impls.push_back(&p);
      }
    }
    std::sort(impls.begin(), impls.end(),
              [](const arg::Proposition* a, const arg::Proposition* b) {
                return a->id < b->id;
              });
    for (const auto* impl : impls) {
      instantiate({{{"p", impl->content.a}, {"q", goal_prop->id}}, {}, ""});
    }
  } else if (form == "MT") {
    // MT concludes ~p; the goal matches when p is the goal's negation.
    std::string p0;
    if (goal_prop->content.kind == arg::PropKind::kNot) {
      p0 = goal_prop->content.a;
    } else if (const auto* neg = ctx.find_content(
                   arg::PropContent::negation(goal_prop->id))) {
      p0 = neg->id;
    }
    if (p0.empty()) return out;
    std::vector<const arg::Proposition*> impls;
    for (const auto& p : ctx.propositions()) {
      if (p.content.kind == arg::PropKind::kImplies && p.content.a == p0 &&
          ctx.negation_of(p.content.b).has_value()) {
        impls.push_back(&p);
      }
    }
    std::sort(impls.begin(), impls.end(),
              [](const arg::Proposition* a, const arg::Proposition* b) {
                return a->id < b->id;
              });
    for (const auto* impl : impls) {
      instantiate({{{"p", p0}, {"q", impl->content.b}}, {}, ""});
    }
  } else if (form == "IG") {
    auto it = problem.instance_classes.find(goal_prop->id);
    if (it == problem.instance_classes.end()) return out;
    std::vector<std::string> instances;
    for (const auto& raw : it->second) {
      const std::string id = ctx.resolve(raw);
      if (id.empty()) return out;
      instances.push_back(id);
    }
    std::sort(instances.begin(), instances.end());
    instances.erase(std::unique(instances.begin(), instances.end()),
                    instances.end());
    if (instances.size() < 2) return out;
    instantiate({{}, instances, goal_prop->id});
  }
  return out;
}

struct Search {
  const PlanningProblem& problem;
  const arg::FormRegistry& registry;
  const std::vector<std::string>& forms;
  bool depth_hit = false;

  bool achieve(const std::string& goal, BeliefState& state,
               std::vector<PlanStep>& steps, int depth,
               std::set<std::string>& path) {
    if (state.believes(goal)) return true;
    if (depth <= 0) {
      depth_hit = true;
      return false;
    }
    if (path.contains(goal)) return false;
    path.insert(goal);

    for (const auto& form : forms) {
      for (const Candidate& candidate :
           candidates_for(problem, registry, form, goal)) {
        BeliefState saved_state = state;
        const std::size_t saved_steps = steps.size();
        std::vector<std::string> asserted;
        bool viable = true;
        for (const auto& premise : candidate.link.premises) {
          if (state.believes(premise)) continue;
          if (problem.speaker_kb.contains(premise) &&
              !state.disbelieves(premise)) {
            auto next = state.believing(problem.context, premise);
            if (!next.ok()) {
              viable = false;
              break;
            }
            state = std::move(next).value();
            asserted.push_back(premise);
            continue;
          }
          if (!achieve(premise, state, steps, depth - 1, path)) {
            viable = false;
            break;
          }
        }
        if (viable) {
          auto applied = apply_operator(problem.context, state,
                                        Operator{candidate.link});
          if (applied.ok()) {
            state = std::move(applied).value();
            steps.push_back({candidate.link, std::move(asserted)});
            path.erase(goal);
            return true;
          }
        }
        state = std::move(saved_state);
        steps.resize(saved_steps);
      }
    }
    path.erase(goal);
    return false;
  }
};

// Builds the induced argument structure: the closure of the plan's premises
// and conclusions over content operands, with links in step order.
Result<arg::ArgumentStructure> induced_structure(
    const arg::ArgumentStructure& context, const std::vector<PlanStep>& steps,
    const std::string& goal) {
  std::set<std::string> wanted;
  std::vector<std::string> worklist{goal};
  for (const auto& step : steps) {
    worklist.push_back(step.link.conclusion);
    worklist.insert(worklist.end(), step.link.premises.begin(),
                    step.link.premises.end());
  }
  while (!worklist.empty()) {
    const std::string id = worklist.back();
    worklist.pop_back();
    if (!wanted.insert(id).second) continue;
    const arg::Proposition* p = context.find(id);
    if (p == nullptr) {
      return make_error(Errc::kDanglingReference,
                        "plan references unknown proposition '" + id + "'");
    }
    if (p->content.kind == arg::PropKind::kNot) {
      worklist.push_back(p->content.a);
    } else if (p->content.kind == arg::PropKind::kImplies) {
      worklist.push_back(p->content.a);
      worklist.push_back(p->content.b);
    }
  }

  arg::ArgumentStructure structure;
  for (const auto& p : context.propositions()) {
    if (!wanted.contains(p.id)) continue;
    Result<std::string> added = [&]() -> Result<std::string> {
      switch (p.content.kind) {
        case arg::PropKind::kAtom:
          return structure.add_atom(p.id, p.content.a, p.surface_text);
        case arg::PropKind::kNot:
          return structure.add_negation(p.id, p.content.a, p.surface_text);
        case arg::PropKind::kImplies:
          return structure.add_implication(p.id, p.content.a, p.content.b,
                                           p.surface_text);
      }
      return make_error(Errc::kInvalidStructure, "malformed proposition");
    }();
    if (!added.ok()) return added.error();
  }
  for (const auto& step : steps) {
    if (auto added = structure.add_link(step.link); !added.ok()) {
      return added.error();
    }
  }
  return structure;
}

}  // namespace

Result<Plan> plan(const PlanningProblem& problem, const std::string& goal_id,
                  const std::vector<std::string>& forms, int depth_limit) {
  if (depth_limit < 1) {
    return make_error(Errc::kDepthExceeded, "depth limit must be at least 1");
  }
  const std::string goal = problem.context.resolve(goal_id);
  if (goal.empty()) {
    return make_error(Errc::kDanglingReference,
                      "unknown goal proposition '" + goal_id + "'");
  }
  // Reject an inconsistent hearer model up front.
  for (const auto& [id, belief] : problem.hearer.entries()) {
    if (belief != Belief::kBelieved) continue;
    if (const auto neg = problem.context.negation_of(id);
        neg.has_value() && problem.hearer.believes(*neg)) {
      return make_error(Errc::kContradiction,
                        "hearer believes both '" + id + "' and '" + *neg + "'");
    }
  }

  const arg::FormRegistry registry = arg::FormRegistry::builtin();
  Search search{problem, registry, forms};
  BeliefState state = problem.hearer;
  std::vector<PlanStep> steps;
  std::set<std::string> path;
  if (!search.achieve(goal, state, steps, depth_limit, path)) {
    if (search.depth_hit) {
      return make_error(Errc::kDepthExceeded,
                        "no plan within depth " + std::to_string(depth_limit));
    }
    return make_error(Errc::kNoPlan,
                      "no argument plan establishes '" + goal + "'");
  }

  auto structure = induced_structure(problem.context, steps, goal);
  if (!structure.ok()) return structure.error();
  Plan result;
  result.steps = std::move(steps);
  result.structure = std::move(structure).value();
  result.goal = goal;
  return result;
}

Result<BeliefState> simulate(const PlanningProblem& problem, const Plan& plan) {
  BeliefState state = problem.hearer;
  for (const auto& step : plan.steps) {
    for (const auto& premise : step.asserted) {
      if (!problem.speaker_kb.contains(premise)) {
        return make_error(Errc::kRequirementsUnmet,
                          "asserted premise '" + premise +
                              "' is not in the speaker's knowledge base");
      }
      auto next = state.believing(problem.context, premise);
      if (!next.ok()) return next.error();
      state = std::move(next).value();
    }
    auto next = apply_operator(problem.context, state, Operator{step.link});
    if (!next.ok()) return next.error();
    state = std::move(next).value();
  }
  return state;
}

RefinementMap default_refinement_map() {
  RefinementMap map;
  const std::vector<std::string> targets = {
      "EVIDENCE",         "JUSTIFY",
      "MOTIVATION",       "VOLITIONAL-CAUSE",
      "NON-VOLITIONAL-CAUSE", "SOLUTIONHOOD"};
  map.targets["MP"] = targets;
  map.targets["MT"] = targets;
  map.targets["IG"] = targets;
  return map;
}

namespace {

// Emits units and composites for one structure; linear unit order is the
// emission order.
class TreeBuilder {
 public:
  TreeBuilder(const arg::ArgumentStructure& structure,
              const std::map<std::string, std::string>& relation_by_link)
      : structure_(structure), relation_by_link_(relation_by_link) {
    for (const auto& link : structure.links()) {
      incoming_[link.conclusion].push_back(&link);
    }
  }

  Result<rst::Analysis> build(const std::string& root) {
    auto ref = realize(root);
    if (!ref.ok()) return ref.error();
    return rst::Analysis::create(std::move(units_), std::move(composites_));
  }

 private:
  Result<rst::NodeRef> realize(const std::string& prop_id) {
    std::vector<const arg::SupportLink*> links;
    if (auto it = incoming_.find(prop_id); it != incoming_.end()) {
      links = it->second;
    }
    // Satellite material first, outermost link leftmost, so that the final
    // unit sequence reads satellite-before-nucleus depth first.
    std::vector<rst::NodeRef> materials(links.size());
    for (std::size_t i = links.size(); i > 0; --i) {
      auto material = realize_premises(*links[i - 1]);
      if (!material.ok()) return material.error();
      materials[i - 1] = material.value();
    }
    rst::NodeRef acc = emit_unit(prop_id);
    for (std::size_t i = 0; i < links.size(); ++i) {
      auto relation = relation_by_link_.find(links[i]->id);
      assert(relation != relation_by_link_.end());
      rst::Composite comp;
      comp.relation = relation->second;
      comp.nuclei.push_back(acc);
      comp.satellites.push_back(materials[i]);
      composites_.push_back(std::move(comp));
      acc = rst::NodeRef::composite(composites_.size() - 1);
    }
    return acc;
  }

  Result<rst::NodeRef> realize_premises(const arg::SupportLink& link) {
    std::vector<rst::NodeRef> members;
    for (const auto& premise : link.premises) {
      auto ref = realize(premise);
      if (!ref.ok()) return ref.error();
      members.push_back(ref.value());
    }
    if (members.size() == 1) return members.front();
    rst::Composite joint;
    joint.relation = "JOINT";
    joint.nuclei = std::move(members);
    composites_.push_back(std::move(joint));
    return rst::NodeRef::composite(composites_.size() - 1);
  }

  rst::NodeRef emit_unit(const std::string& prop_id) {
    const arg::Proposition* prop = structure_.find(prop_id);
    assert(prop != nullptr);
    std::string id = prop_id;
    const int occurrence = ++occurrences_[prop_id];
    if (occurrence > 1) id += "#" + std::to_string(occurrence);
    units_.push_back(
        {std::move(id), prop->surface_text.value_or(prop->id)});
    return rst::NodeRef::unit(units_.size() - 1);
  }

  const arg::ArgumentStructure& structure_;
  const std::map<std::string, std::string>& relation_by_link_;
  std::map<std::string, std::vector<const arg::SupportLink*>> incoming_;
  std::map<std::string, int> occurrences_;
  std::vector<rst::TextUnit> units_;
  std::vector<rst::Composite> composites_;
};

// Per-form target lists, checked against the catalog.
Result<std::map<std::string, std::vector<std::string>>> checked_targets(
    const arg::ArgumentStructure& structure, const rst::Catalog& catalog,
    const RefinementMap& map) {
  std::map<std::string, std::vector<std::string>> by_form;
  for (const auto& link : structure.links()) {
    if (by_form.contains(link.form)) continue;
    auto it = map.targets.find(link.form);
    if (it == map.targets.end() || it->second.empty()) {
      return make_error(Errc::kUnmappedForm,
                        "no refinement targets for form '" + link.form + "'");
    }
    std::vector<std::string> names;
    for (const auto& raw : it->second) {
      const rst::RelationDefinition* def = catalog.find(raw);
      if (def == nullptr) {
        return make_error(Errc::kDanglingReference,
                          "refinement target '" + raw +
                              "' is not in the catalog");
      }
      if (!def->argumentative) {
        return make_error(Errc::kNonArgumentativeTarget,
                          "refinement target '" + def->name +
                              "' is not flagged argumentative");
      }
      names.push_back(def->name);
    }
    by_form[link.form] = std::move(names);
  }
  return by_form;
}

Result<rst::Analysis> build_tree(
    const arg::ArgumentStructure& structure, const rst::Catalog& catalog,
    const std::map<std::string, std::string>& relation_by_link) {
  arg::StructureDiagnostics diag;
  if (!check_single_structure(structure, &diag)) {
    return make_error(Errc::kInvalidStructure,
                      "refinement requires a single argument structure: " +
                          (diag.detail.empty() ? "multiple roots" : diag.detail));
  }
  auto root = structure.root();
  if (!root.ok()) return root.error();
  TreeBuilder builder(structure, relation_by_link);
  auto analysis = builder.build(root.value());
  if (!analysis.ok()) return analysis.error();
  const rst::ValidationReport report = validate(analysis.value(), catalog);
  if (!report.accepted()) {
    return make_error(Errc::kInvalidAnalysis,
                      "refined tree failed validation (" +
                          std::string(rst::to_string(
                              report.violations.front().constraint)) +
                          ")");
  }
  return analysis;
}

}  // namespace

Result<RstForest> refine(const arg::ArgumentStructure& structure,
                         const rst::Catalog& catalog, const RefinementMap& map,
                         arg::SectionKind section) {
  auto targets = checked_targets(structure, catalog, map);
  if (!targets.ok()) return targets.error();
  std::map<std::string, std::string> relation_by_link;
  for (const auto& link : structure.links()) {
    relation_by_link[link.id] = targets.value().at(link.form).front();
  }
  auto analysis = build_tree(structure, catalog, relation_by_link);
  if (!analysis.ok()) return analysis.error();
  RstForest forest;
  forest.trees.push_back({section, std::move(analysis).value()});
  return forest;
}

Result<RstForest> refine_document(const arg::ArgumentDocument& document,
                                  const rst::Catalog& catalog,
                                  const RefinementMap& map) {
  RstForest forest;
  for (const auto& section : document.sections()) {
    if (const auto* text = std::get_if<std::string>(&section.content)) {
      auto analysis = rst::Analysis::create(
          {{to_string(section.kind), *text}}, {});
      if (!analysis.ok()) return analysis.error();
      forest.trees.push_back({section.kind, std::move(analysis).value()});
      continue;
    }
    const auto& structure = std::get<arg::ArgumentStructure>(section.content);
    auto refined = refine(structure, catalog, map, section.kind);
    if (!refined.ok()) return refined.error();
    forest.trees.push_back(std::move(refined.value().trees.front()));
  }
  return forest;
}

Result<std::vector<RstForest>> enumerate_refinements(
    const arg::ArgumentStructure& structure, const rst::Catalog& catalog,
    const RefinementMap& map, std::size_t bound, arg::SectionKind section) {
  if (bound < 1) {
    return make_error(Errc::kBoundExceeded, "bound must be at least 1");
  }
  auto targets = checked_targets(structure, catalog, map);
  if (!targets.ok()) return targets.error();

  const auto& links = structure.links();
  std::size_t total = 1;
  for (const auto& link : links) {
    const std::size_t choices = targets.value().at(link.form).size();
    if (total > bound / choices) {
      return make_error(Errc::kBoundExceeded,
                        "refinement enumeration exceeds bound " +
                            std::to_string(bound));
    }
    total *= choices;
  }

  std::vector<RstForest> forests;
  std::vector<std::size_t> odo(links.size(), 0);
  while (true) {
    std::map<std::string, std::string> relation_by_link;
    for (std::size_t i = 0; i < links.size(); ++i) {
      relation_by_link[links[i].id] =
          targets.value().at(links[i].form)[odo[i]];
    }
    auto analysis = build_tree(structure, catalog, relation_by_link);
    if (!analysis.ok()) return analysis.error();
    RstForest forest;
    forest.trees.push_back({section, std::move(analysis).value()});
    forests.push_back(std::move(forest));

    if (links.empty()) break;
    std::size_t i = links.size();
    bool rolled_over = true;
    while (i > 0) {
      --i;
      if (++odo[i] < targets.value().at(links[i].form).size()) {
        rolled_over = false;
        break;
      }
      odo[i] = 0;
    }
    if (rolled_over) break;
  }
  return forests;
}

std::string SupportSkeleton::signature() const {
  std::string sig;
  for (const auto& p : propositions) {
    if (!sig.empty()) sig += ",";
    sig += p;
  }
  sig += "|";
  std::vector<std::string> lines;
  for (const auto& [premises, conclusion] : links) {
    std::string line;
    for (const auto& premise : premises) {
      if (!line.empty()) line += ",";
      line += premise;
    }
    lines.push_back(line + "=>" + conclusion);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) sig += line + ";";
  return sig;
}

SupportSkeleton SupportSkeleton::of(const arg::ArgumentStructure& structure) {
  SupportSkeleton skeleton;
  for (const auto& id : structure.participants()) {
    skeleton.propositions.insert(id);
  }
  for (const auto& link : structure.links()) {
    std::vector<std::string> premises = link.premises;
    std::sort(premises.begin(), premises.end());
    skeleton.links.emplace_back(std::move(premises), link.conclusion);
  }
  std::sort(skeleton.links.begin(), skeleton.links.end());
  return skeleton;
}

namespace {

struct RecoverState {
  const rst::Analysis& analysis;
  const rst::Catalog& catalog;
  SupportSkeleton skeleton;
  bool bad = false;
  std::string detail;
};

// Head proposition of a subtree and the member list it contributes when it
// appears as satellite material.
std::string recover_node(RecoverState& state, const rst::NodeRef& ref,
                         std::vector<std::string>* members);

std::string recover_head(RecoverState& state, const rst::NodeRef& ref) {
  return recover_node(state, ref, nullptr);
}

std::string recover_node(RecoverState& state, const rst::NodeRef& ref,
                         std::vector<std::string>* members) {
  if (state.bad) return "";
  if (ref.kind == rst::NodeRef::Kind::kUnit) {
    const std::string id = state.analysis.units()[ref.index].id;
    state.skeleton.propositions.insert(id);
    if (members != nullptr) members->push_back(id);
    return id;
  }
  const rst::Composite& comp = state.analysis.composites()[ref.index];
  const std::string relation = rst::normalize_relation_name(comp.relation);
  if (relation == "JOINT") {
    if (members == nullptr) {
      state.bad = true;
      state.detail = "JOINT grouping outside satellite material";
      return "";
    }
    for (const auto& nucleus : comp.nuclei) {
      recover_node(state, nucleus, members);
    }
    return "";
  }
  const rst::RelationDefinition* def = state.catalog.find(relation);
  if (def == nullptr || def->nuclearity != rst::Nuclearity::kMono ||
      comp.nuclei.size() != 1 || comp.satellites.size() != 1) {
    state.bad = true;
    state.detail = "tree is not in refined shape at relation '" + relation + "'";
    return "";
  }
  const std::string conclusion = recover_head(state, comp.nuclei.front());
  std::vector<std::string> premises;
  recover_node(state, comp.satellites.front(), &premises);
  if (state.bad) return "";
  std::sort(premises.begin(), premises.end());
  state.skeleton.links.emplace_back(std::move(premises), conclusion);
  if (members != nullptr) members->push_back(conclusion);
  return conclusion;
}

}  // namespace

Result<SupportSkeleton> recover_structure(const rst::Analysis& analysis,
                                          const rst::Catalog& catalog) {
  const rst::ValidationReport report = validate(analysis, catalog);
  if (!report.accepted()) {
    return make_error(Errc::kInvalidAnalysis,
                      "cannot recover from a rejected analysis");
  }
  rst::NodeRef root = rst::NodeRef::unit(0);
  for (std::size_t k = 0; k < analysis.composites().size(); ++k) {
    if (analysis.covered_units(rst::NodeRef::composite(k)).size() ==
        analysis.units().size()) {
      root = rst::NodeRef::composite(k);
    }
  }
  RecoverState state{analysis, catalog, {}, false, ""};
  recover_head(state, root);
  if (state.bad) {
    return make_error(Errc::kInvalidAnalysis, state.detail);
  }
  std::sort(state.skeleton.links.begin(), state.skeleton.links.end());
  return state.skeleton;
}

}  // namespace arguendo::planner
