#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arguendo/argument.hpp"
#include "arguendo/catalog.hpp"
#include "arguendo/contract.hpp"
#include "arguendo/planner.hpp"
#include "arguendo/result.hpp"
#include "arguendo/rst.hpp"

namespace arguendo::doc {

// Line-oriented document format, one record per line:
//
//   #units              <id> | <text>
//   #catalog            relation <NAME> nuclearity=<mono|multi>
//                         argumentative=<true|false> n="..." s="..."
//                         ns="..." effect="..." locus=<N|S|NS>
//                       map <FORM> <REL>[,<REL>...]
//   #rst <name>         unit <id>
//                       rel <REL> nucleus=<ref,...> [satellite=<ref,...>]
//                         [tag=<annotation>]         (ref: unit id or @k)
//   #argument <name>    prop <id> = atom <name> | not <id> | implies <id> <id>
//                         [text="..."]
//                       link <id> form=<MP|MT|IG> premises=<id,...>
//                         conclusion=<id> mode=<linked|convergent>
//   #plan <name>        goal <prop-id> / believe <prop-id> / kb <prop-id>
//                         (ids bind to the nearest preceding #argument)
//   #contract <name>    tree <part>/<section>/<provision> = <id..id>
//                       node <id> kind=<...> [spans=<id..id,...>] label="..."
//                       arc <who|when|how|what|what_if|xref> from=<id> to=<id>
//
// Comment lines start with ';'. Quoted strings admit \" and \\ escapes.
// Unit ids are opaque single tokens ordered by file position; dotted
// decimals are the convention, not a requirement.

struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  int line = 0;
  int column = 0;
  std::string code;
  std::string message;
};

struct UnitDecl {
  std::string id;
  std::string text;
  int line = 0;

  friend bool operator==(const UnitDecl& a, const UnitDecl& b) {
    return a.id == b.id && a.text == b.text;
  }
};

struct RstLeafDecl {
  std::string unit_id;
  int line = 0;

  friend bool operator==(const RstLeafDecl& a, const RstLeafDecl& b) {
    return a.unit_id == b.unit_id;
  }
};

struct RstRelDecl {
  std::string relation;
  std::vector<std::string> nuclei;      // unit ids or "@k" references
  std::vector<std::string> satellites;  // may be empty (multi-nuclear)
  std::optional<std::string> tag;
  int line = 0;

  friend bool operator==(const RstRelDecl& a, const RstRelDecl& b) {
    return a.relation == b.relation && a.nuclei == b.nuclei &&
           a.satellites == b.satellites && a.tag == b.tag;
  }
};

struct RstSection {
  std::string name;
  std::vector<RstLeafDecl> leaves;
  std::vector<RstRelDecl> rels;
  int line = 0;

  friend bool operator==(const RstSection& a, const RstSection& b) {
    return a.name == b.name && a.leaves == b.leaves && a.rels == b.rels;
  }
};

struct CatalogRelDecl {
  rst::RelationDefinition definition;
  int line = 0;

  friend bool operator==(const CatalogRelDecl& a, const CatalogRelDecl& b) {
    return a.definition == b.definition;
  }
};

struct CatalogMapDecl {
  std::string form;
  std::vector<std::string> relations;
  int line = 0;

  friend bool operator==(const CatalogMapDecl& a, const CatalogMapDecl& b) {
    return a.form == b.form && a.relations == b.relations;
  }
};

struct CatalogSection {
  std::vector<CatalogRelDecl> relations;
  std::vector<CatalogMapDecl> maps;
  int line = 0;

  friend bool operator==(const CatalogSection& a, const CatalogSection& b) {
    return a.relations == b.relations && a.maps == b.maps;
  }
};

struct PropDecl {
  std::string id;
  arg::PropKind kind = arg::PropKind::kAtom;
  std::string a;  // atom name or operand id
  std::string b;  // second operand id (implies)
  std::optional<std::string> text;
  int line = 0;

  friend bool operator==(const PropDecl& x, const PropDecl& y) {
    return x.id == y.id && x.kind == y.kind && x.a == y.a && x.b == y.b &&
           x.text == y.text;
  }
};

struct LinkDecl {
  std::string id;
  std::string form;
  std::vector<std::string> premises;
  std::string conclusion;
  std::string mode;
  int line = 0;

  friend bool operator==(const LinkDecl& a, const LinkDecl& b) {
    return a.id == b.id && a.form == b.form && a.premises == b.premises &&
           a.conclusion == b.conclusion && a.mode == b.mode;
  }
};

struct ArgumentSection {
  std::string name;
  std::vector<PropDecl> props;
  std::vector<LinkDecl> links;
  int line = 0;

  friend bool operator==(const ArgumentSection& a, const ArgumentSection& b) {
    return a.name == b.name && a.props == b.props && a.links == b.links;
  }
};

struct PlanSection {
  std::string name;
  std::string goal;
  std::vector<std::string> believes;
  std::vector<std::string> kb;
  int line = 0;

  friend bool operator==(const PlanSection& a, const PlanSection& b) {
    return a.name == b.name && a.goal == b.goal && a.believes == b.believes &&
           a.kb == b.kb;
  }
};

struct TreeDecl {
  std::string part;
  std::string section;
  std::string provision;
  std::string lo;  // unit ids
  std::string hi;
  int line = 0;

  friend bool operator==(const TreeDecl& a, const TreeDecl& b) {
    return a.part == b.part && a.section == b.section &&
           a.provision == b.provision && a.lo == b.lo && a.hi == b.hi;
  }
};

struct NodeDecl {
  std::string id;
  std::string kind;
  std::vector<std::pair<std::string, std::string>> spans;  // unit id ranges
  std::string label;
  int line = 0;

  friend bool operator==(const NodeDecl& a, const NodeDecl& b) {
    return a.id == b.id && a.kind == b.kind && a.spans == b.spans &&
           a.label == b.label;
  }
};

struct ArcDecl {
  std::string question;  // question name or "xref"
  std::string from;
  std::string to;
  int line = 0;

  friend bool operator==(const ArcDecl& a, const ArcDecl& b) {
    return a.question == b.question && a.from == b.from && a.to == b.to;
  }
};

struct ContractSection {
  std::string name;
  std::vector<TreeDecl> trees;
  std::vector<NodeDecl> nodes;
  std::vector<ArcDecl> arcs;
  int line = 0;

  friend bool operator==(const ContractSection& a, const ContractSection& b) {
    return a.name == b.name && a.trees == b.trees && a.nodes == b.nodes &&
           a.arcs == b.arcs;
  }
};

using Section = std::variant<RstSection, CatalogSection, ArgumentSection,
                             PlanSection, ContractSection>;

struct Document {
  std::vector<UnitDecl> units;
  std::vector<Section> sections;

  friend bool operator==(const Document&, const Document&) = default;
};

struct ParseResult {
  Document document;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Diagnostic::Severity::kError) return false;
    }
    return true;
  }
};

// Parses and validates: section placement, reference resolution, enum
// values, and construction of every section's module value. Failures are
// reported as positioned diagnostics, never thrown.
ParseResult parse(std::string_view text);

// Canonical text: fixed field order and spacing, comments dropped.
// parse(serialize(d)) reproduces d exactly, and serialize(parse(t)) == t for
// canonical t.
std::string serialize(const Document& document);

// --- converters from parsed sections into module values ---

Result<rst::Analysis> to_analysis(const Document& document,
                                  const RstSection& section);
// Base catalog extended with every relation declared in the document.
Result<rst::Catalog> to_catalog(const Document& document,
                                const rst::Catalog& base);
Result<arg::ArgumentStructure> to_structure(const ArgumentSection& section);
// The plan's proposition universe is the nearest preceding #argument
// section.
Result<planner::PlanningProblem> to_planning_problem(
    const Document& document, const PlanSection& section);
Result<contract::ContractGraph> to_contract(const Document& document,
                                            const ContractSection& section);
// Refinement map from the document's `map` lines; the default map when none
// are declared.
Result<planner::RefinementMap> to_refinement_map(const Document& document);

// Renders a refinement forest as a document: one #units block and one #rst
// section per tree (named after its envelope section).
Document from_forest(const planner::RstForest& forest);

// Standalone catalog-extension file: either a bare `#catalog` section or a
// full document containing one.
struct CatalogFileResult {
  CatalogSection section;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Diagnostic::Severity::kError) return false;
    }
    return true;
  }
};
CatalogFileResult parse_catalog_file(std::string_view text);

// Checklist file: lines of `<kind> <question>[,<question>...]`, ';'
// comments.
Result<contract::Checklist> parse_checklist(std::string_view text);

}  // namespace arguendo::doc
