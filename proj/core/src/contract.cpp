#include "arguendo/contract.hpp"

#include <algorithm>

namespace arguendo::contract {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kDefinition: return "definition";
    case NodeKind::kPrescription: return "prescription";
    case NodeKind::kProcedure: return "procedure";
    case NodeKind::kTerm: return "term";
    case NodeKind::kIssue: return "issue";
  }
  return "prescription";
}

const char* to_string(Question question) {
  switch (question) {
    case Question::kWho: return "who";
    case Question::kWhen: return "when";
    case Question::kHow: return "how";
    case Question::kWhat: return "what";
    case Question::kWhatIf: return "what_if";
  }
  return "who";
}

std::optional<NodeKind> parse_node_kind(std::string_view token) {
  if (token == "definition") return NodeKind::kDefinition;
  if (token == "prescription") return NodeKind::kPrescription;
  if (token == "procedure") return NodeKind::kProcedure;
  if (token == "term") return NodeKind::kTerm;
  if (token == "issue") return NodeKind::kIssue;
  return std::nullopt;
}

std::optional<Question> parse_question(std::string_view token) {
  if (token == "who") return Question::kWho;
  if (token == "when") return Question::kWhen;
  if (token == "how") return Question::kHow;
  if (token == "what") return Question::kWhat;
  if (token == "what_if") return Question::kWhatIf;
  return std::nullopt;
}

Result<SyntacticTree> SyntacticTree::create(std::size_t unit_count,
                                            std::vector<Provision> provisions) {
  if (unit_count == 0) {
    return make_error(Errc::kInvalidStructure, "agreement has no units");
  }
  if (provisions.empty()) {
    return make_error(Errc::kInvalidStructure, "tree has no provisions");
  }
  // Provisions tile the whole unit range in document order.
  std::size_t expected = 0;
  for (const auto& p : provisions) {
    if (p.range.start != expected) {
      return make_error(
          Errc::kSpanOutOfRange,
          "provision " + p.part + "/" + p.section + "/" + p.id +
              " does not start where the previous provision ended");
    }
    if (p.range.end < p.range.start || p.range.end >= unit_count) {
      return make_error(Errc::kSpanOutOfRange,
                        "provision " + p.part + "/" + p.section + "/" + p.id +
                            " has an out-of-range span");
    }
    expected = p.range.end + 1;
  }
  if (expected != unit_count) {
    return make_error(Errc::kSpanOutOfRange,
                      "provisions do not cover the final units");
  }
  // Sections stay adjacent within their part, parts stay adjacent, and no
  // path repeats.
  std::set<std::pair<std::string, std::string>> closed_sections;
  std::set<std::string> closed_parts;
  std::set<std::string> paths;
  for (std::size_t i = 0; i < provisions.size(); ++i) {
    const auto& p = provisions[i];
    const std::string path = p.part + "/" + p.section + "/" + p.id;
    if (!paths.insert(path).second) {
      return make_error(Errc::kDuplicateName,
                        "provision path " + path + " repeats");
    }
    const bool new_section =
        i == 0 || provisions[i - 1].section != p.section ||
        provisions[i - 1].part != p.part;
    const bool new_part = i == 0 || provisions[i - 1].part != p.part;
    if (new_section) {
      if (closed_sections.contains({p.part, p.section})) {
        return make_error(Errc::kInvalidStructure,
                          "section " + p.part + "/" + p.section +
                              " is not contiguous");
      }
      if (i > 0) {
        closed_sections.insert(
            {provisions[i - 1].part, provisions[i - 1].section});
      }
    }
    if (new_part) {
      if (closed_parts.contains(p.part)) {
        return make_error(Errc::kInvalidStructure,
                          "part " + p.part + " is not contiguous");
      }
      if (i > 0) closed_parts.insert(provisions[i - 1].part);
    }
  }
  SyntacticTree tree;
  tree.unit_count_ = unit_count;
  tree.provisions_ = std::move(provisions);
  return tree;
}

Result<ContractGraph> ContractGraph::create(SyntacticTree tree,
                                            std::vector<ContractNode> nodes,
                                            std::vector<SpecArc> spec_arcs,
                                            std::vector<CrossRef> cross_refs) {
  std::set<std::string> ids;
  for (const auto& node : nodes) {
    if (node.id.empty()) {
      return make_error(Errc::kDanglingReference, "node with empty id");
    }
    if (!ids.insert(node.id).second) {
      return make_error(Errc::kDuplicateName,
                        "node id '" + node.id + "' repeats");
    }
    if (node.spans.empty() && node.kind != NodeKind::kIssue) {
      return make_error(Errc::kInvalidStructure,
                        "node '" + node.id +
                            "' needs at least one span (only issues may be "
                            "abstract)");
    }
    for (const auto& span : node.spans) {
      if (span.end < span.start || span.end >= tree.unit_count()) {
        return make_error(Errc::kSpanOutOfRange,
                          "node '" + node.id +
                              "' spans units outside the agreement");
      }
    }
  }
  auto check_endpoints = [&](const std::string& from, const std::string& to)
      -> std::optional<Error> {
    if (!ids.contains(from)) {
      return make_error(Errc::kDanglingReference,
                        "arc references unknown node '" + from + "'");
    }
    if (!ids.contains(to)) {
      return make_error(Errc::kDanglingReference,
                        "arc references unknown node '" + to + "'");
    }
    if (from == to) {
      return make_error(Errc::kSelfLoop,
                        "node '" + from + "' may not specify itself");
    }
    return std::nullopt;
  };
  for (const auto& arc : spec_arcs) {
    if (auto error = check_endpoints(arc.from, arc.to)) return *error;
  }
  for (const auto& xref : cross_refs) {
    if (auto error = check_endpoints(xref.from, xref.to)) return *error;
  }
  ContractGraph graph;
  graph.tree_ = std::move(tree);
  graph.nodes_ = std::move(nodes);
  graph.spec_arcs_ = std::move(spec_arcs);
  graph.cross_refs_ = std::move(cross_refs);
  return graph;
}

const ContractNode* ContractGraph::find(std::string_view id) const {
  for (const auto& node : nodes_) {
    if (node.id == id) return &node;
  }
  return nullptr;
}

Result<std::vector<std::string>> ContractGraph::query(
    Question question, const std::string& node_id) const {
  if (find(node_id) == nullptr) {
    return make_error(Errc::kUnknownNode, "unknown node '" + node_id + "'");
  }
  std::vector<std::string> targets;
  for (const auto& arc : spec_arcs_) {
    if (arc.from == node_id && arc.question == question) {
      targets.push_back(arc.to);
    }
  }
  return targets;
}

Result<std::vector<Role>> ContractGraph::roles_of(
    const std::string& node_id) const {
  if (find(node_id) == nullptr) {
    return make_error(Errc::kUnknownNode, "unknown node '" + node_id + "'");
  }
  std::vector<Role> roles;
  for (const auto& arc : spec_arcs_) {
    if (arc.to == node_id) {
      roles.push_back({to_string(arc.question), arc.from});
    }
  }
  for (const auto& xref : cross_refs_) {
    if (xref.to == node_id) {
      roles.push_back({"reference", xref.from});
    }
  }
  return roles;
}

namespace {

struct Unfolder {
  const ContractGraph& graph;
  std::size_t depth_limit;
  std::set<std::string> expanded;
  std::optional<Error> error;

  SpecTree expand(const std::string& id, std::size_t depth) {
    SpecTree tree;
    tree.node_id = id;
    if (error.has_value()) return tree;
    if (depth > depth_limit) {
      error = make_error(Errc::kDepthExceeded,
                         "unfolding exceeds depth " +
                             std::to_string(depth_limit) + " at node '" + id +
                             "'");
      return tree;
    }
    tree.data = *graph.find(id);
    expanded.insert(id);
    auto attach = [&](bool is_spec, Question question, const std::string& to) {
      SpecTree::Edge edge;
      edge.is_spec = is_spec;
      edge.question = question;
      if (expanded.contains(to)) {
        edge.child.node_id = to;
        edge.child.reference = true;
      } else {
        edge.child = expand(to, depth + 1);
      }
      tree.children.push_back(std::move(edge));
    };
    for (const auto& arc : graph.spec_arcs()) {
      if (error.has_value()) break;
      if (arc.from == id) attach(true, arc.question, arc.to);
    }
    for (const auto& xref : graph.cross_refs()) {
      if (error.has_value()) break;
      if (xref.from == id) attach(false, Question::kWho, xref.to);
    }
    return tree;
  }
};

void fold_into(const SpecTree& tree, FoldedGraph& out,
               std::set<std::string>& seen) {
  if (!tree.reference && seen.insert(tree.node_id).second) {
    out.nodes.push_back(tree.data);
  }
  for (const auto& edge : tree.children) {
    if (edge.is_spec) {
      out.spec_arcs.push_back({tree.node_id, edge.child.node_id, edge.question});
    } else {
      out.cross_refs.push_back({tree.node_id, edge.child.node_id});
    }
    fold_into(edge.child, out, seen);
  }
}

}  // namespace

Result<SpecTree> unfold(const ContractGraph& graph, const std::string& root_id,
                        std::size_t depth_limit) {
  if (graph.find(root_id) == nullptr) {
    return make_error(Errc::kUnknownNode, "unknown node '" + root_id + "'");
  }
  if (depth_limit < 1) {
    return make_error(Errc::kDepthExceeded, "depth limit must be at least 1");
  }
  Unfolder unfolder{graph, depth_limit, {}, std::nullopt};
  SpecTree tree = unfolder.expand(root_id, 1);
  if (unfolder.error.has_value()) return *unfolder.error;
  return tree;
}

FoldedGraph fold(const SpecTree& tree) {
  FoldedGraph out;
  std::set<std::string> seen;
  fold_into(tree, out, seen);
  return out;
}

Checklist default_checklist() {
  Checklist checklist;
  checklist.required[NodeKind::kPrescription] = {Question::kWho};
  checklist.required[NodeKind::kProcedure] = {Question::kHow};
  checklist.required[NodeKind::kIssue] = {Question::kWhat};
  return checklist;
}

SpecificationReport check_specifications(const ContractGraph& graph,
                                         const Checklist& checklist) {
  SpecificationReport report;
  for (const auto& node : graph.nodes()) {
    auto it = checklist.required.find(node.kind);
    if (it == checklist.required.end()) continue;
    for (const Question question : it->second) {
      const bool answered = std::any_of(
          graph.spec_arcs().begin(), graph.spec_arcs().end(),
          [&](const SpecArc& arc) {
            return arc.from == node.id && arc.question == question;
          });
      if (!answered) report.open.push_back({node.id, question});
    }
    const bool has_contingency = std::any_of(
        graph.spec_arcs().begin(), graph.spec_arcs().end(),
        [&](const SpecArc& arc) {
          return arc.from == node.id && arc.question == Question::kWhatIf;
        });
    if (!has_contingency) report.advisory.push_back(node.id);
  }
  return report;
}

}  // namespace arguendo::contract
