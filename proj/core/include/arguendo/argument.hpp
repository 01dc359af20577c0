#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arguendo/result.hpp"

namespace arguendo::arg {

// Propositional content: exactly the connectives modus ponens and modus
// tollens require. Operands reference other propositions by id.
enum class PropKind { kAtom, kNot, kImplies };

struct PropContent {
  PropKind kind = PropKind::kAtom;
  std::string a;  // atom name, or operand id
  std::string b;  // consequent id (kImplies only)

  static PropContent atom(std::string name) {
    return {PropKind::kAtom, std::move(name), ""};
  }
  static PropContent negation(std::string inner) {
    return {PropKind::kNot, std::move(inner), ""};
  }
  static PropContent implication(std::string antecedent, std::string consequent) {
    return {PropKind::kImplies, std::move(antecedent), std::move(consequent)};
  }

  friend bool operator==(const PropContent&, const PropContent&) = default;
  friend auto operator<=>(const PropContent&, const PropContent&) = default;
};

struct Proposition {
  std::string id;
  PropContent content;
  std::optional<std::string> surface_text;

  friend bool operator==(const Proposition&, const Proposition&) = default;
};

enum class SupportMode { kLinked, kConvergent };

const char* to_string(SupportMode m);

// Reified support: premises jointly (linked) or independently (convergent,
// one line per link) supporting a conclusion.
struct SupportLink {
  std::string id;
  std::string form;
  std::vector<std::string> premises;
  std::string conclusion;
  SupportMode mode = SupportMode::kLinked;

  friend bool operator==(const SupportLink&, const SupportLink&) = default;
};

// Schema pattern over bound variables; compounds are one level deep, which
// covers the builtin forms and leaves room for registered extensions.
struct SchemaTerm {
  PropKind kind = PropKind::kAtom;  // kAtom means a bare variable here
  std::string var_a;
  std::string var_b;

  static SchemaTerm variable(std::string v) {
    return {PropKind::kAtom, std::move(v), ""};
  }
  static SchemaTerm negation(std::string v) {
    return {PropKind::kNot, std::move(v), ""};
  }
  static SchemaTerm implication(std::string va, std::string vb) {
    return {PropKind::kImplies, std::move(va), std::move(vb)};
  }
};

struct FormSchema {
  std::string name;
  std::vector<SchemaTerm> premises;
  SchemaTerm conclusion;
  SupportMode mode = SupportMode::kLinked;
  // Inductive generalisation: k >= 2 instance atoms concluding a class atom.
  bool variadic_instances = false;
};

// Known argument forms. The builtin registry carries MP, MT and IG;
// extensions register additional schemas under fresh names.
class FormRegistry {
 public:
  static FormRegistry builtin();

  [[nodiscard]] const FormSchema* find(std::string_view name) const;

  Result<FormRegistry> with(FormSchema schema) const;

 private:
  std::vector<FormSchema> schemas_;
};

// Proposition store plus support links. Contents are interned: adding a
// proposition whose content already exists aliases the new id to the
// existing one, and Not(Not(p)) collapses to p at construction. Structural
// soundness (acyclic, connected, single root) is judged by
// check_single_structure; bulk construction does not enforce it.
class ArgumentStructure {
 public:
  ArgumentStructure() = default;

  // Each add_* returns the canonical id of the proposition (which differs
  // from the requested id when the content was already present or a double
  // negation collapsed). Errors: kDuplicateName when the id is taken by a
  // different content; kDanglingReference for unknown operand ids.
  Result<std::string> add_atom(std::string id, std::string name,
                               std::optional<std::string> text = std::nullopt);
  Result<std::string> add_negation(std::string id, const std::string& inner_id,
                                   std::optional<std::string> text = std::nullopt);
  Result<std::string> add_implication(std::string id,
                                      const std::string& antecedent_id,
                                      const std::string& consequent_id,
                                      std::optional<std::string> text = std::nullopt);
  // Resolves premise/conclusion ids through aliases. Errors:
  // kDanglingReference, kDuplicateName (link id reuse).
  Result<std::string> add_link(SupportLink link);

  [[nodiscard]] const std::vector<Proposition>& propositions() const {
    return props_;
  }
  [[nodiscard]] const std::vector<SupportLink>& links() const { return links_; }

  // Canonical id behind an alias, or the id itself; empty when unknown.
  [[nodiscard]] std::string resolve(std::string_view id) const;
  [[nodiscard]] const Proposition* find(std::string_view id) const;
  [[nodiscard]] const Proposition* find_content(const PropContent& c) const;

  // Id of the negation of `id` if it is representable in the store: the
  // inner proposition when `id` is a negation, else a stored Not(id).
  [[nodiscard]] std::optional<std::string> negation_of(std::string_view id) const;

  // Propositions serving as premise or conclusion of some link, in
  // declaration order; the whole store when there are no links. Operand ids
  // appearing only inside compound contents do not participate.
  [[nodiscard]] std::vector<std::string> participants() const;

  // The unique proposition supported by links but supporting none; errors
  // with kMultipleRoots / kInvalidStructure when no unique root exists.
  [[nodiscard]] Result<std::string> root() const;

  friend bool operator==(const ArgumentStructure&, const ArgumentStructure&);

 private:
  std::vector<Proposition> props_;
  std::vector<SupportLink> links_;
  std::map<std::string, std::string> alias_;           // id -> canonical id
  std::map<PropContent, std::string> by_content_;
};

struct StructureDiagnostics {
  bool acyclic = true;
  bool connected = true;
  std::vector<std::string> roots;
  std::string detail;
};

// True iff the support graph is acyclic, weakly connected and has exactly
// one root conclusion. A single proposition with no links qualifies.
bool check_single_structure(const ArgumentStructure& structure,
                            StructureDiagnostics* diagnostics = nullptr);

// Variable bindings for instantiate_form. `vars` maps schema variables to
// existing proposition ids; `instances` / `generalization` drive the
// variadic IG schema.
struct Bindings {
  std::map<std::string, std::string> vars;
  std::vector<std::string> instances;
  std::string generalization;
};

struct FormInstance {
  SupportLink link;
  std::vector<Proposition> generated;  // synthesized compound premises
};

// Instantiates a form against a context structure. Compound premises and
// conclusions (implications, negations) are synthesized with content-derived
// ids unless the context already holds equal content. Errors:
// kSchemaMismatch (missing bindings, IG with fewer than two instances or
// non-atomic operands), kUnmappedForm (unknown form name),
// kDanglingReference (binding to an unknown id).
Result<FormInstance> instantiate_form(const ArgumentStructure& context,
                                      const FormRegistry& registry,
                                      std::string_view form,
                                      const Bindings& bindings);

// Persistent checked insertion: merges the instance's generated propositions
// and link, then re-checks the single-structure invariants. Errors:
// kCycleDetected, kDisconnectedFragment, kMultipleRoots, kDuplicateName.
Result<ArgumentStructure> add_support(const ArgumentStructure& structure,
                                      const FormInstance& instance);

// Checks that a link's premises and conclusion still fit its form's schema
// (premise order free). A linked premise removed from an MP or MT instance
// makes this fail. Errors: kUnmappedForm, kSchemaMismatch.
Status check_link_form(const ArgumentStructure& structure,
                       const FormRegistry& registry, const SupportLink& link);

// Canonical description of which propositions support which: one line per
// link "p1,p2=>c" with premises sorted, lines sorted. Form and mode labels
// are not part of the skeleton.
std::string support_signature(const ArgumentStructure& structure);

// Blair's section vocabulary for enveloping document structure, in canonical
// order.
enum class SectionKind {
  kIntroduction,
  kProposition,
  kDivision,
  kNarration,
  kArgumentative,
  kPathetic,
  kConclusion,
};

const char* to_string(SectionKind kind);

struct DocumentSection {
  SectionKind kind;
  std::variant<std::string, ArgumentStructure> content;
};

class ArgumentDocument {
 public:
  [[nodiscard]] const std::vector<DocumentSection>& sections() const {
    return sections_;
  }
  [[nodiscard]] const DocumentSection* section(SectionKind kind) const;

 private:
  friend Result<ArgumentDocument> assemble_document(
      std::vector<DocumentSection> sections);
  std::vector<DocumentSection> sections_;
};

// Orders and checks the envelope: canonical section sequence, no repeats,
// argumentative section mandatory, every structure section passing
// check_single_structure. Errors: kDuplicateSection, kSectionOrderViolation,
// kMissingArgumentativeSection, kInvalidStructure.
Result<ArgumentDocument> assemble_document(
    std::vector<DocumentSection> sections);

}  // namespace arguendo::arg
