#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arguendo/catalog.hpp"
#include "arguendo/result.hpp"

namespace arguendo::rst {

// One minimal text unit. Ids are opaque labels ("1.3" style by convention);
// document position, not the label, carries the ordering.
struct TextUnit {
  std::string id;
  std::string text;

  friend bool operator==(const TextUnit&, const TextUnit&) = default;
};

// Closed interval of unit indices (an uninterrupted linear stretch of text).
struct TextSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  [[nodiscard]] std::size_t size() const { return end - start + 1; }
  [[nodiscard]] bool contains(std::size_t index) const {
    return start <= index && index <= end;
  }

  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

// Contiguous union of a non-empty span list. Errors: kOverlap when two spans
// share a unit, kNonAdjacent when the union would leave a gap.
Result<TextSpan> span_union(std::span<const TextSpan> spans);

// Reference to a child node of a composite: either a unit (leaf) or an
// earlier composite in the same analysis.
struct NodeRef {
  enum class Kind { kUnit, kComposite };
  Kind kind = Kind::kUnit;
  std::size_t index = 0;

  static NodeRef unit(std::size_t i) { return {Kind::kUnit, i}; }
  static NodeRef composite(std::size_t i) { return {Kind::kComposite, i}; }

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

// One relation application over child nodes. Mononuclear relations take
// exactly one nucleus and one satellite; multi-nuclear relations take two or
// more nuclei and no satellite (checked by validate, not at construction).
struct Composite {
  std::string relation;
  std::vector<NodeRef> nuclei;
  std::vector<NodeRef> satellites;
  std::optional<std::string> tag;

  friend bool operator==(const Composite&, const Composite&) = default;
};

// An analysis: the unit sequence plus relation applications over it.
// Composites may only reference units and previously declared composites, so
// the node graph is acyclic by construction. Structural soundness (the four
// composition constraints) is judged by validate, not here.
class Analysis {
 public:
  // Rejects empty documents, duplicate unit ids, out-of-range references,
  // forward composite references, and composites without a nucleus.
  static Result<Analysis> create(std::vector<TextUnit> units,
                                 std::vector<Composite> composites);

  [[nodiscard]] const std::vector<TextUnit>& units() const { return units_; }
  [[nodiscard]] const std::vector<Composite>& composites() const {
    return composites_;
  }

  // Units covered by a node, as a sorted index list.
  [[nodiscard]] std::vector<std::size_t> covered_units(NodeRef ref) const;
  // Envelope interval of a node (min..max covered unit).
  [[nodiscard]] TextSpan hull(NodeRef ref) const;

  friend bool operator==(const Analysis&, const Analysis&) = default;

 private:
  Analysis() = default;

  std::vector<TextUnit> units_;
  std::vector<Composite> composites_;
};

// The composition constraints of the framework plus the two catalog-level
// checks the validator performs.
enum class Constraint {
  kCompleteness,
  kConnectedness,
  kUniqueness,
  kAdjacency,
  kRelationArity,
  kRelationUnknown,
};

const char* to_string(Constraint c);

struct Violation {
  Constraint constraint;
  std::string node;  // "@k" for composite k (1-based), or a unit id
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  [[nodiscard]] bool accepted() const { return violations.empty(); }
};

// Checks the analysis against the catalog. Constraint classes are evaluated
// in cause-first order (relation-unknown, relation-arity, uniqueness,
// connectedness, adjacency, completeness); the report carries every
// violation of the first class that fails, so each defect is attributed to
// its root cause rather than to its knock-on effects.
ValidationReport validate(const Analysis& analysis, const Catalog& catalog);

// Unit ids in left-to-right leaf order of the (accepted) analysis. Errors:
// kInvalidAnalysis when validate rejects the input.
Result<std::vector<std::string>> leaves_in_order(const Analysis& analysis,
                                                 const Catalog& catalog);

inline constexpr std::size_t kDefaultEnumerationBound = 5;

// Brute-force oracle: every structurally valid analysis over `unit_count`
// synthetic units ("1".."n"), drawing relation labels from `relations`.
// Enumeration is deterministic: interval partitions by part count then
// boundary, relation names in normalized lexicographic order, nucleus-first
// before nucleus-second for mononuclear labels. Errors: kBoundExceeded when
// unit_count exceeds max_units, kDanglingReference for an empty or unknown
// relation subset.
Result<std::vector<Analysis>> enumerate_analyses(
    std::size_t unit_count, const Catalog& catalog,
    const std::vector<std::string>& relations,
    std::size_t max_units = kDefaultEnumerationBound);

// Representation-independent signature of the analysis tree, usable for set
// comparisons regardless of composite declaration order.
std::string structure_signature(const Analysis& analysis);

}  // namespace arguendo::rst
