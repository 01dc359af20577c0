#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arguendo/result.hpp"
#include "arguendo/rst.hpp"

namespace arguendo::contract {

enum class NodeKind { kDefinition, kPrescription, kProcedure, kTerm, kIssue };

// The dialectical specification questions an implicit opponent may pose.
// Union of the two lists the framework names: who, when, how, what, what-if.
enum class Question { kWho, kWhen, kHow, kWhat, kWhatIf };

const char* to_string(NodeKind kind);
const char* to_string(Question question);
std::optional<NodeKind> parse_node_kind(std::string_view token);
std::optional<Question> parse_question(std::string_view token);

// A provision-level unit of contractual function. Spans index the
// agreement's units; issue nodes may be abstract (no spans).
struct ContractNode {
  std::string id;
  NodeKind kind = NodeKind::kPrescription;
  std::vector<rst::TextSpan> spans;
  std::string label;

  friend bool operator==(const ContractNode&, const ContractNode&) = default;
};

// Typed specification arc: `to` answers `question` about `from`.
struct SpecArc {
  std::string from;
  std::string to;
  Question question = Question::kWho;

  friend bool operator==(const SpecArc&, const SpecArc&) = default;
};

// Untyped cross-reference, distinct from functional specification.
struct CrossRef {
  std::string from;
  std::string to;

  friend bool operator==(const CrossRef&, const CrossRef&) = default;
};

// Leaf of the part/section/provision hierarchy with its unit range.
struct Provision {
  std::string part;
  std::string section;
  std::string id;
  rst::TextSpan range;

  friend bool operator==(const Provision&, const Provision&) = default;
};

// The syntactic organization of the agreement: parts contain sections,
// sections contain provisions, and children tile the parent's unit range.
class SyntacticTree {
 public:
  // Provisions must tile units 0..unit_count-1 contiguously, with the
  // provisions of a section adjacent and the sections of a part adjacent.
  static Result<SyntacticTree> create(std::size_t unit_count,
                                      std::vector<Provision> provisions);

  [[nodiscard]] std::size_t unit_count() const { return unit_count_; }
  [[nodiscard]] const std::vector<Provision>& provisions() const {
    return provisions_;
  }

  friend bool operator==(const SyntacticTree&, const SyntacticTree&) = default;

 private:
  std::size_t unit_count_ = 0;
  std::vector<Provision> provisions_;
};

// Incoming-arc role of a node: a question name or "reference".
struct Role {
  std::string role;
  std::string from;
};

// The semantic organization: nodes with typed specification arcs and
// untyped cross-references over a backing syntactic tree. Directed, sharing
// allowed, self-loops rejected; cycles are permitted.
class ContractGraph {
 public:
  // Validates spans against the tree range and arc endpoints against the
  // node set. Errors: kDuplicateName, kDanglingReference, kSpanOutOfRange,
  // kSelfLoop, kInvalidStructure (non-issue node without spans).
  static Result<ContractGraph> create(SyntacticTree tree,
                                      std::vector<ContractNode> nodes,
                                      std::vector<SpecArc> spec_arcs,
                                      std::vector<CrossRef> cross_refs);

  [[nodiscard]] const SyntacticTree& tree() const { return tree_; }
  [[nodiscard]] const std::vector<ContractNode>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<SpecArc>& spec_arcs() const {
    return spec_arcs_;
  }
  [[nodiscard]] const std::vector<CrossRef>& cross_refs() const {
    return cross_refs_;
  }
  [[nodiscard]] const ContractNode* find(std::string_view id) const;

  // Targets of `question`-arcs leaving the node, in arc-insertion order.
  // Errors: kUnknownNode.
  Result<std::vector<std::string>> query(Question question,
                                         const std::string& node_id) const;

  // One role per incoming spec or cross-reference arc; spec arcs first, each
  // list in insertion order. Errors: kUnknownNode.
  Result<std::vector<Role>> roles_of(const std::string& node_id) const;

 private:
  SyntacticTree tree_;
  std::vector<ContractNode> nodes_;
  std::vector<SpecArc> spec_arcs_;
  std::vector<CrossRef> cross_refs_;
};

inline constexpr std::size_t kDefaultUnfoldDepth = 32;

// Tree expansion of the graph. A node already expanded earlier in the
// traversal becomes a reference leaf rather than unrolling again, so shared
// nodes and cycles stay finite.
struct SpecTree {
  struct Edge;
  std::string node_id;
  bool reference = false;
  ContractNode data;  // populated for expanded nodes only
  std::vector<Edge> children;
};

struct SpecTree::Edge {
  bool is_spec = true;
  Question question = Question::kWho;  // meaningful when is_spec
  SpecTree child;
};

// Errors: kUnknownNode, kDepthExceeded (expansion deeper than depth_limit).
Result<SpecTree> unfold(const ContractGraph& graph, const std::string& root_id,
                        std::size_t depth_limit = kDefaultUnfoldDepth);

// Nodes and arcs read back from an unfolded tree; isomorphic to the
// root-reachable subgraph of the original.
struct FoldedGraph {
  std::vector<ContractNode> nodes;
  std::vector<SpecArc> spec_arcs;
  std::vector<CrossRef> cross_refs;
};

FoldedGraph fold(const SpecTree& tree);

// Required questions per node kind. what-if is never required; nodes of a
// checked kind without one are reported as advisory.
struct Checklist {
  std::map<NodeKind, std::set<Question>> required;
};

// prescription -> who, procedure -> how, issue -> what.
Checklist default_checklist();

struct OpenDemand {
  std::string node_id;
  Question question;

  friend bool operator==(const OpenDemand&, const OpenDemand&) = default;
};

struct SpecificationReport {
  std::vector<OpenDemand> open;
  std::vector<std::string> advisory;  // checked-kind nodes without what-if

  [[nodiscard]] bool fully_specified() const { return open.empty(); }
};

// Reports every required question with no outgoing arc, per node in
// insertion order.
SpecificationReport check_specifications(const ContractGraph& graph,
                                         const Checklist& checklist);

}  // namespace arguendo::contract
