#include "arguendo/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace arguendo {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::kNonAdjacent: return "NonAdjacent";
    case Errc::kOverlap: return "Overlap";
    case Errc::kInvalidAnalysis: return "InvalidAnalysis";
    case Errc::kBoundExceeded: return "BoundExceeded";
    case Errc::kMissingField: return "MissingField";
    case Errc::kDuplicateName: return "DuplicateName";
    case Errc::kSchemaMismatch: return "SchemaMismatch";
    case Errc::kCycleDetected: return "CycleDetected";
    case Errc::kDisconnectedFragment: return "DisconnectedFragment";
    case Errc::kMultipleRoots: return "MultipleRoots";
    case Errc::kInvalidStructure: return "InvalidStructure";
    case Errc::kMissingArgumentativeSection:
      return "MissingArgumentativeSection";
    case Errc::kSectionOrderViolation: return "SectionOrderViolation";
    case Errc::kDuplicateSection: return "DuplicateSection";
    case Errc::kRequirementsUnmet: return "RequirementsUnmet";
    case Errc::kContradiction: return "Contradiction";
    case Errc::kNoPlan: return "NoPlan";
    case Errc::kDepthExceeded: return "DepthExceeded";
    case Errc::kUnmappedForm: return "UnmappedForm";
    case Errc::kNonArgumentativeTarget: return "NonArgumentativeTarget";
    case Errc::kDanglingReference: return "DanglingReference";
    case Errc::kSpanOutOfRange: return "SpanOutOfRange";
    case Errc::kSelfLoop: return "SelfLoop";
    case Errc::kUnknownNode: return "UnknownNode";
    case Errc::kUnsupportedFormat: return "UnsupportedFormat";
  }
  return "UnknownError";
}

}  // namespace arguendo

namespace arguendo::rst {

const char* to_string(Nuclearity n) {
  return n == Nuclearity::kMono ? "mono" : "multi";
}

const char* to_string(EffectLocus l) {
  switch (l) {
    case EffectLocus::kNucleus: return "N";
    case EffectLocus::kSatellite: return "S";
    case EffectLocus::kBoth: return "NS";
  }
  return "N";
}

std::string normalize_relation_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '_') {
      out.push_back('-');
    } else {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

const RelationDefinition* Catalog::find(std::string_view name) const {
  const std::string key = normalize_relation_name(name);
  for (const auto& def : relations_) {
    if (def.name == key) return &def;
  }
  return nullptr;
}

namespace {

constexpr const char* kPlaceholderText = "per Mann & Thompson (1987)";

RelationDefinition placeholder(std::string name, Nuclearity nuclearity,
                               bool argumentative) {
  RelationDefinition def;
  def.name = std::move(name);
  def.constraints_on_nucleus = kPlaceholderText;
  def.constraints_on_satellite = kPlaceholderText;
  def.constraints_on_combination = kPlaceholderText;
  def.effect = kPlaceholderText;
  def.locus =
      nuclearity == Nuclearity::kMulti ? EffectLocus::kBoth : EffectLocus::kNucleus;
  def.nuclearity = nuclearity;
  def.argumentative = argumentative;
  return def;
}

}  // namespace

Catalog builtin_catalog() {
  Catalog catalog;
  auto& rel = catalog.relations_;
  rel.reserve(24);

  rel.push_back(placeholder("CIRCUMSTANCE", Nuclearity::kMono, false));
  rel.push_back(placeholder("SOLUTIONHOOD", Nuclearity::kMono, true));

  {
    RelationDefinition elaboration;
    elaboration.name = "ELABORATION";
    elaboration.constraints_on_nucleus = "none";
    elaboration.constraints_on_satellite = "none";
    elaboration.constraints_on_combination =
        "S presents additional detail about the situation or some element of "
        "subject matter which is presented in N or inferentially accessible "
        "in N in one or more of the ways listed below. In the list if N "
        "presents the first member of any pair, then S includes the second: "
        "1. set: member 2. abstract: instance 3. whole: part 4. process: "
        "step 5. object: attribute 6. generalization: specific";
    elaboration.effect =
        "Reader recognizes the situation presented in S as providing "
        "additional detail for N. Reader identifies the element of subject "
        "matter for which detail is provided.";
    elaboration.locus = EffectLocus::kBoth;
    elaboration.nuclearity = Nuclearity::kMono;
    elaboration.argumentative = false;
    elaboration.allowed_annotations = {
        "set:member",        "abstract:instance", "whole:part",
        "process:step",      "object:attribute",  "generalization:specific"};
    rel.push_back(std::move(elaboration));
  }

  rel.push_back(placeholder("BACKGROUND", Nuclearity::kMono, false));
  rel.push_back(placeholder("ENABLEMENT", Nuclearity::kMono, false));
  rel.push_back(placeholder("MOTIVATION", Nuclearity::kMono, true));
  rel.push_back(placeholder("EVIDENCE", Nuclearity::kMono, true));

  {
    RelationDefinition justify;
    justify.name = "JUSTIFY";
    justify.constraints_on_nucleus = "none";
    justify.constraints_on_satellite = "none";
    justify.constraints_on_combination =
        "Reader's comprehending S increases Reader's readiness to accept "
        "Writer's right to present N.";
    justify.effect =
        "Reader's readiness to accept Writer's right to present N is "
        "increased.";
    justify.locus = EffectLocus::kNucleus;
    justify.nuclearity = Nuclearity::kMono;
    justify.argumentative = true;
    rel.push_back(std::move(justify));
  }

  rel.push_back(placeholder("VOLITIONAL-CAUSE", Nuclearity::kMono, true));
  rel.push_back(placeholder("NON-VOLITIONAL-CAUSE", Nuclearity::kMono, true));
  rel.push_back(placeholder("VOLITIONAL-RESULT", Nuclearity::kMono, false));
  rel.push_back(placeholder("NON-VOLITIONAL-RESULT", Nuclearity::kMono, false));
  rel.push_back(placeholder("PURPOSE", Nuclearity::kMono, false));
  rel.push_back(placeholder("ANTITHESIS", Nuclearity::kMono, false));
  rel.push_back(placeholder("CONCESSION", Nuclearity::kMono, false));
  rel.push_back(placeholder("CONDITION", Nuclearity::kMono, false));
  rel.push_back(placeholder("OTHERWISE", Nuclearity::kMono, false));
  rel.push_back(placeholder("INTERPRETATION", Nuclearity::kMono, false));
  rel.push_back(placeholder("EVALUATION", Nuclearity::kMono, false));
  rel.push_back(placeholder("RESTATEMENT", Nuclearity::kMono, false));
  rel.push_back(placeholder("SUMMARY", Nuclearity::kMono, false));
  rel.push_back(placeholder("SEQUENCE", Nuclearity::kMulti, false));
  rel.push_back(placeholder("CONTRAST", Nuclearity::kMulti, false));

  {
    // Vacuous grouping relation: no constraints, no effect. The only relation
    // for which empty definitional fields are admitted.
    RelationDefinition joint;
    joint.name = "JOINT";
    joint.locus = EffectLocus::kBoth;
    joint.nuclearity = Nuclearity::kMulti;
    joint.argumentative = false;
    rel.push_back(std::move(joint));
  }

  return catalog;
}

Result<Catalog> register_relation(const Catalog& catalog,
                                  RelationDefinition def) {
  def.name = normalize_relation_name(def.name);
  if (def.name.empty()) {
    return make_error(Errc::kMissingField, "relation name is empty");
  }
  const char* missing = nullptr;
  if (def.constraints_on_nucleus.empty()) missing = "constraints on N";
  else if (def.constraints_on_satellite.empty()) missing = "constraints on S";
  else if (def.constraints_on_combination.empty()) missing = "constraints on N+S";
  else if (def.effect.empty()) missing = "effect";
  if (missing != nullptr) {
    return make_error(Errc::kMissingField,
                      "relation " + def.name + " lacks field: " + missing);
  }
  if (catalog.contains(def.name)) {
    return make_error(Errc::kDuplicateName,
                      "relation " + def.name + " is already defined");
  }
  Catalog extended = catalog;
  extended.relations_.push_back(std::move(def));
  return extended;
}

std::vector<std::string> argumentative_relations(const Catalog& catalog) {
  std::vector<std::string> names;
  for (const auto& def : catalog.relations()) {
    if (def.argumentative) names.push_back(def.name);
  }
  return names;
}

}  // namespace arguendo::rst
