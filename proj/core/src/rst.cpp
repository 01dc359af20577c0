#include "arguendo/rst.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace arguendo::rst {

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::kCompleteness: return "completeness";
    case Constraint::kConnectedness: return "connectedness";
    case Constraint::kUniqueness: return "uniqueness";
    case Constraint::kAdjacency: return "adjacency";
    case Constraint::kRelationArity: return "relation-arity";
    case Constraint::kRelationUnknown: return "relation-unknown";
  }
  return "unknown";
}

Result<TextSpan> span_union(std::span<const TextSpan> spans) {
  assert(!spans.empty() && "span_union requires a non-empty span list");
  std::vector<TextSpan> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(), [](const TextSpan& a, const TextSpan& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const TextSpan& prev = sorted[i - 1];
    const TextSpan& cur = sorted[i];
    if (cur.start <= prev.end) {
      return make_error(Errc::kOverlap,
                        "spans " + std::to_string(prev.start) + ".." +
                            std::to_string(prev.end) + " and " +
                            std::to_string(cur.start) + ".." +
                            std::to_string(cur.end) + " share a unit");
    }
    if (cur.start != prev.end + 1) {
      return make_error(Errc::kNonAdjacent,
                        "gap between unit " + std::to_string(prev.end) +
                            " and unit " + std::to_string(cur.start));
    }
  }
  return TextSpan{sorted.front().start, sorted.back().end};
}

Result<Analysis> Analysis::create(std::vector<TextUnit> units,
                                  std::vector<Composite> composites) {
  if (units.empty()) {
    return make_error(Errc::kInvalidAnalysis, "document has no units");
  }
  {
    std::set<std::string> ids;
    for (const auto& unit : units) {
      if (unit.id.empty()) {
        return make_error(Errc::kInvalidAnalysis, "unit with empty id");
      }
      if (!ids.insert(unit.id).second) {
        return make_error(Errc::kInvalidAnalysis,
                          "duplicate unit id '" + unit.id + "'");
      }
    }
  }
  for (std::size_t k = 0; k < composites.size(); ++k) {
    const Composite& comp = composites[k];
    if (comp.nuclei.empty()) {
      return make_error(Errc::kInvalidAnalysis,
                        "composite @" + std::to_string(k + 1) +
                            " has no nucleus");
    }
    auto check_ref = [&](const NodeRef& ref) -> bool {
      if (ref.kind == NodeRef::Kind::kUnit) return ref.index < units.size();
      return ref.index < k;  // composites may only reference prior composites
    };
    for (const auto& ref : comp.nuclei) {
      if (!check_ref(ref)) {
        return make_error(Errc::kInvalidAnalysis,
                          "composite @" + std::to_string(k + 1) +
                              " references an unknown or later node");
      }
    }
    for (const auto& ref : comp.satellites) {
      if (!check_ref(ref)) {
        return make_error(Errc::kInvalidAnalysis,
                          "composite @" + std::to_string(k + 1) +
                              " references an unknown or later node");
      }
    }
  }
  Analysis analysis;
  analysis.units_ = std::move(units);
  analysis.composites_ = std::move(composites);
  return analysis;
}

namespace {

// Covered unit sets for every composite, computable in declaration order
// because references only point backwards.
std::vector<std::vector<std::size_t>> covered_sets(const Analysis& a) {
  std::vector<std::vector<std::size_t>> covered(a.composites().size());
  for (std::size_t k = 0; k < a.composites().size(); ++k) {
    std::set<std::size_t> acc;
    auto add = [&](const NodeRef& ref) {
      if (ref.kind == NodeRef::Kind::kUnit) {
        acc.insert(ref.index);
      } else {
        acc.insert(covered[ref.index].begin(), covered[ref.index].end());
      }
    };
    for (const auto& ref : a.composites()[k].nuclei) add(ref);
    for (const auto& ref : a.composites()[k].satellites) add(ref);
    covered[k].assign(acc.begin(), acc.end());
  }
  return covered;
}

TextSpan hull_of(const std::vector<std::size_t>& covered) {
  return TextSpan{covered.front(), covered.back()};
}

std::vector<NodeRef> children_of(const Composite& comp) {
  std::vector<NodeRef> children = comp.nuclei;
  children.insert(children.end(), comp.satellites.begin(),
                  comp.satellites.end());
  return children;
}

}  // namespace

std::vector<std::size_t> Analysis::covered_units(NodeRef ref) const {
  if (ref.kind == NodeRef::Kind::kUnit) return {ref.index};
  return covered_sets(*this)[ref.index];
}

TextSpan Analysis::hull(NodeRef ref) const {
  const auto covered = covered_units(ref);
  return TextSpan{covered.front(), covered.back()};
}

ValidationReport validate(const Analysis& analysis, const Catalog& catalog) {
  ValidationReport report;
  const auto& comps = analysis.composites();
  const std::size_t n = analysis.units().size();

  // Unknown relation names make every later judgement meaningless.
  std::vector<const RelationDefinition*> defs(comps.size(), nullptr);
  for (std::size_t k = 0; k < comps.size(); ++k) {
    defs[k] = catalog.find(comps[k].relation);
    if (defs[k] == nullptr) {
      report.violations.push_back(
          {Constraint::kRelationUnknown, "@" + std::to_string(k + 1),
           "relation '" + comps[k].relation + "' is not in the catalog"});
    }
  }
  if (!report.violations.empty()) return report;

  // Nuclearity arity and annotation-tag membership.
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const Composite& comp = comps[k];
    const RelationDefinition& def = *defs[k];
    const std::string node = "@" + std::to_string(k + 1);
    if (def.nuclearity == Nuclearity::kMono) {
      if (comp.nuclei.size() != 1 || comp.satellites.size() != 1) {
        report.violations.push_back(
            {Constraint::kRelationArity, node,
             def.name + " is mononuclear and requires exactly one nucleus "
                        "and one satellite"});
      }
    } else {
      if (comp.nuclei.size() < 2 || !comp.satellites.empty()) {
        report.violations.push_back(
            {Constraint::kRelationArity, node,
             def.name + " is multi-nuclear and requires two or more nuclei "
                        "and no satellite"});
      }
    }
    if (comp.tag.has_value() && !def.allowed_annotations.empty()) {
      const auto& allowed = def.allowed_annotations;
      if (std::find(allowed.begin(), allowed.end(), *comp.tag) ==
          allowed.end()) {
        report.violations.push_back(
            {Constraint::kRelationArity, node,
             "annotation '" + *comp.tag + "' is not admitted for " + def.name});
      }
    }
  }
  if (!report.violations.empty()) return report;

  const auto covered = covered_sets(analysis);

  // Uniqueness: no two relation applications over the identical span set.
  {
    std::map<std::vector<std::size_t>, std::size_t> first_owner;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      auto [it, inserted] = first_owner.emplace(covered[k], k);
      if (!inserted) {
        const std::size_t j = it->second;
        const bool same_relation =
            catalog.find(comps[j].relation)->name == defs[k]->name;
        report.violations.push_back(
            {Constraint::kUniqueness, "@" + std::to_string(k + 1),
             same_relation
                 ? "duplicate " + defs[k]->name +
                       " application over the span set of @" +
                       std::to_string(j + 1)
                 : "covers the same span set as @" + std::to_string(j + 1)});
      }
    }
  }
  if (!report.violations.empty()) return report;

  // Connectedness: every node is a constituent of at most one structure.
  {
    std::vector<std::size_t> unit_parents(n, 0);
    std::vector<std::size_t> comp_parents(comps.size(), 0);
    for (const auto& comp : comps) {
      for (const auto& ref : children_of(comp)) {
        if (ref.kind == NodeRef::Kind::kUnit) {
          ++unit_parents[ref.index];
        } else {
          ++comp_parents[ref.index];
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (unit_parents[i] >= 2) {
        report.violations.push_back(
            {Constraint::kConnectedness, analysis.units()[i].id,
             "unit contributes to " + std::to_string(unit_parents[i]) +
                 " structures"});
      }
    }
    for (std::size_t k = 0; k < comps.size(); ++k) {
      if (comp_parents[k] >= 2) {
        report.violations.push_back(
            {Constraint::kConnectedness, "@" + std::to_string(k + 1),
             "structure is a constituent of " +
                 std::to_string(comp_parents[k]) + " structures"});
      }
    }
  }
  if (!report.violations.empty()) return report;

  // Adjacency: the children of each composite tile one contiguous span.
  for (std::size_t k = 0; k < comps.size(); ++k) {
    std::vector<TextSpan> child_hulls;
    for (const auto& ref : children_of(comps[k])) {
      child_hulls.push_back(ref.kind == NodeRef::Kind::kUnit
                                ? TextSpan{ref.index, ref.index}
                                : hull_of(covered[ref.index]));
    }
    std::sort(child_hulls.begin(), child_hulls.end(),
              [](const TextSpan& a, const TextSpan& b) {
                return a.start < b.start;
              });
    for (std::size_t i = 1; i < child_hulls.size(); ++i) {
      const TextSpan& prev = child_hulls[i - 1];
      const TextSpan& cur = child_hulls[i];
      const std::string node = "@" + std::to_string(k + 1);
      if (cur.start <= prev.end) {
        report.violations.push_back(
            {Constraint::kAdjacency, node, "child spans overlap"});
      } else if (cur.start != prev.end + 1) {
        report.violations.push_back(
            {Constraint::kAdjacency, node,
             "gap at unit " + analysis.units()[prev.end + 1].id +
                 " between child spans"});
      }
    }
  }
  if (!report.violations.empty()) return report;

  // Completeness: some structure spans the entire text.
  {
    bool full_cover = n == 1 && comps.empty();
    for (std::size_t k = 0; k < comps.size() && !full_cover; ++k) {
      full_cover = covered[k].size() == n;
    }
    if (!full_cover) {
      report.violations.push_back(
          {Constraint::kCompleteness, "",
           "no structure contains all " + std::to_string(n) +
               " text spans of the text"});
    }
  }
  return report;
}

namespace {

void collect_leaves(const Analysis& a,
                    const std::vector<std::vector<std::size_t>>& covered,
                    const NodeRef& ref, std::vector<std::string>& out) {
  if (ref.kind == NodeRef::Kind::kUnit) {
    out.push_back(a.units()[ref.index].id);
    return;
  }
  std::vector<NodeRef> children = children_of(a.composites()[ref.index]);
  std::sort(children.begin(), children.end(),
            [&](const NodeRef& x, const NodeRef& y) {
              const std::size_t sx = x.kind == NodeRef::Kind::kUnit
                                         ? x.index
                                         : covered[x.index].front();
              const std::size_t sy = y.kind == NodeRef::Kind::kUnit
                                         ? y.index
                                         : covered[y.index].front();
              return sx < sy;
            });
  for (const auto& child : children) collect_leaves(a, covered, child, out);
}

}  // namespace

Result<std::vector<std::string>> leaves_in_order(const Analysis& analysis,
                                                 const Catalog& catalog) {
  const ValidationReport report = validate(analysis, catalog);
  if (!report.accepted()) {
    return make_error(Errc::kInvalidAnalysis,
                      "analysis is rejected (" +
                          std::string(to_string(
                              report.violations.front().constraint)) +
                          "); leaf order is undefined");
  }
  const auto covered = covered_sets(analysis);
  NodeRef root = NodeRef::unit(0);
  for (std::size_t k = 0; k < analysis.composites().size(); ++k) {
    if (covered[k].size() == analysis.units().size()) {
      root = NodeRef::composite(k);
      break;
    }
  }
  std::vector<std::string> leaves;
  collect_leaves(analysis, covered, root, leaves);
  return leaves;
}

namespace {

// Subtree shape used during enumeration; children are kept in linear order
// with their nucleus flag.
struct EnumNode {
  bool leaf = true;
  std::size_t unit = 0;
  std::string relation;
  std::vector<std::pair<bool, EnumNode>> children;  // (is_nucleus, child)
};

// All compositions of `len` into `parts` positive summands, lexicographic.
void compositions(std::size_t len, std::size_t parts,
                  std::vector<std::size_t>& prefix,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    prefix.push_back(len);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (parts - 1) <= len; ++first) {
    prefix.push_back(first);
    compositions(len - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

void enumerate_span(std::size_t lo, std::size_t hi,
                    const std::vector<const RelationDefinition*>& defs,
                    std::vector<EnumNode>& out) {
  if (lo == hi) {
    EnumNode leaf;
    leaf.unit = lo;
    out.push_back(leaf);
    return;
  }
  const std::size_t len = hi - lo + 1;
  for (std::size_t parts = 2; parts <= len; ++parts) {
    std::vector<std::vector<std::size_t>> splits;
    std::vector<std::size_t> prefix;
    compositions(len, parts, prefix, splits);
    for (const auto& split : splits) {
      // Child options per part, left to right.
      std::vector<std::vector<EnumNode>> options(parts);
      std::size_t start = lo;
      for (std::size_t i = 0; i < parts; ++i) {
        enumerate_span(start, start + split[i] - 1, defs, options[i]);
        start += split[i];
      }
      auto for_each_combo = [&](auto&& emit) {
        std::vector<std::size_t> odo(parts, 0);
        while (true) {
          emit(odo);
          std::size_t i = parts;
          while (i > 0) {
            --i;
            if (++odo[i] < options[i].size()) break;
            odo[i] = 0;
            if (i == 0) return;
          }
        }
      };
      for (const RelationDefinition* def : defs) {
        if (def->nuclearity == Nuclearity::kMono) {
          if (parts != 2) continue;
          for (std::size_t nucleus_pos = 0; nucleus_pos < 2; ++nucleus_pos) {
            for_each_combo([&](const std::vector<std::size_t>& odo) {
              EnumNode node;
              node.leaf = false;
              node.relation = def->name;
              for (std::size_t i = 0; i < parts; ++i) {
                node.children.emplace_back(i == nucleus_pos,
                                           options[i][odo[i]]);
              }
              out.push_back(std::move(node));
            });
          }
        } else {
          for_each_combo([&](const std::vector<std::size_t>& odo) {
            EnumNode node;
            node.leaf = false;
            node.relation = def->name;
            for (std::size_t i = 0; i < parts; ++i) {
              node.children.emplace_back(true, options[i][odo[i]]);
            }
            out.push_back(std::move(node));
          });
        }
      }
    }
  }
}

// Post-order emission into the composite arena; returns the ref of the node.
NodeRef emit(const EnumNode& node, std::vector<Composite>& composites) {
  if (node.leaf) return NodeRef::unit(node.unit);
  Composite comp;
  comp.relation = node.relation;
  for (const auto& [is_nucleus, child] : node.children) {
    const NodeRef ref = emit(child, composites);
    (is_nucleus ? comp.nuclei : comp.satellites).push_back(ref);
  }
  composites.push_back(std::move(comp));
  return NodeRef::composite(composites.size() - 1);
}

}  // namespace

Result<std::vector<Analysis>> enumerate_analyses(
    std::size_t unit_count, const Catalog& catalog,
    const std::vector<std::string>& relations, std::size_t max_units) {
  if (unit_count == 0) {
    return make_error(Errc::kInvalidAnalysis, "unit count must be positive");
  }
  if (unit_count > max_units) {
    return make_error(Errc::kBoundExceeded,
                      "unit count " + std::to_string(unit_count) +
                          " exceeds the enumeration bound " +
                          std::to_string(max_units));
  }
  if (relations.empty()) {
    return make_error(Errc::kDanglingReference, "relation subset is empty");
  }
  std::set<std::string> names;
  for (const auto& name : relations) {
    names.insert(normalize_relation_name(name));
  }
  std::vector<const RelationDefinition*> defs;
  for (const auto& name : names) {
    const RelationDefinition* def = catalog.find(name);
    if (def == nullptr) {
      return make_error(Errc::kDanglingReference,
                        "relation '" + name + "' is not in the catalog");
    }
    defs.push_back(def);
  }

  std::vector<TextUnit> units;
  for (std::size_t i = 1; i <= unit_count; ++i) {
    units.push_back({std::to_string(i), ""});
  }

  std::vector<EnumNode> shapes;
  enumerate_span(0, unit_count - 1, defs, shapes);

  std::vector<Analysis> analyses;
  analyses.reserve(shapes.size());
  for (const EnumNode& shape : shapes) {
    std::vector<Composite> composites;
    emit(shape, composites);
    auto built = Analysis::create(units, std::move(composites));
    assert(built.ok());
    analyses.push_back(std::move(built).value());
  }
  return analyses;
}

namespace {

std::string signature_of(const Analysis& a,
                         const std::vector<std::vector<std::size_t>>& covered,
                         const NodeRef& ref) {
  if (ref.kind == NodeRef::Kind::kUnit) return a.units()[ref.index].id;
  const Composite& comp = a.composites()[ref.index];
  struct Child {
    std::size_t start;
    bool nucleus;
    std::string sig;
  };
  std::vector<Child> children;
  for (const auto& nucleus : comp.nuclei) {
    const std::size_t start = nucleus.kind == NodeRef::Kind::kUnit
                                  ? nucleus.index
                                  : covered[nucleus.index].front();
    children.push_back({start, true, signature_of(a, covered, nucleus)});
  }
  for (const auto& satellite : comp.satellites) {
    const std::size_t start = satellite.kind == NodeRef::Kind::kUnit
                                  ? satellite.index
                                  : covered[satellite.index].front();
    children.push_back({start, false, signature_of(a, covered, satellite)});
  }
  std::sort(children.begin(), children.end(),
            [](const Child& x, const Child& y) {
              return x.start < y.start || (x.start == y.start && x.sig < y.sig);
            });
  std::string sig = normalize_relation_name(comp.relation);
  if (comp.tag.has_value()) sig += "#" + *comp.tag;
  sig += "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0) sig += ",";
    sig += children[i].nucleus ? "N:" : "S:";
    sig += children[i].sig;
  }
  sig += ")";
  return sig;
}

}  // namespace

std::string structure_signature(const Analysis& analysis) {
  const auto covered = covered_sets(analysis);
  const auto& comps = analysis.composites();

  std::vector<bool> unit_referenced(analysis.units().size(), false);
  std::vector<bool> comp_referenced(comps.size(), false);
  for (const auto& comp : comps) {
    for (const auto& ref : children_of(comp)) {
      if (ref.kind == NodeRef::Kind::kUnit) {
        unit_referenced[ref.index] = true;
      } else {
        comp_referenced[ref.index] = true;
      }
    }
  }

  struct Top {
    std::size_t start;
    std::string sig;
  };
  std::vector<Top> tops;
  for (std::size_t i = 0; i < analysis.units().size(); ++i) {
    if (!unit_referenced[i]) {
      tops.push_back({i, signature_of(analysis, covered, NodeRef::unit(i))});
    }
  }
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (!comp_referenced[k]) {
      tops.push_back({covered[k].front(),
                      signature_of(analysis, covered, NodeRef::composite(k))});
    }
  }
  std::sort(tops.begin(), tops.end(), [](const Top& x, const Top& y) {
    return x.start < y.start || (x.start == y.start && x.sig < y.sig);
  });
  std::string sig;
  for (std::size_t i = 0; i < tops.size(); ++i) {
    if (i > 0) sig += "|";
    sig += tops[i].sig;
  }
  return sig;
}

}  // namespace arguendo::rst
