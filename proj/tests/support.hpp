#pragma once

// Shared helpers for the test suites: fixture loading, in-process CLI runs,
// and the independent generators the oracle-style tests are built on. The
// generators here deliberately do not reuse the library's enumeration code.

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "arguendo/cli.hpp"
#include "arguendo/contract.hpp"
#include "arguendo/document.hpp"
#include "arguendo/planner.hpp"
#include "arguendo/rst.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
  return std::string(ARGUENDO_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << "cannot open " << path;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline arguendo::doc::ParseResult parse_fixture(const std::string& name) {
  arguendo::doc::ParseResult parsed =
      arguendo::doc::parse(read_file(fixture_path(name)));
  for (const auto& d : parsed.diagnostics) {
    EXPECT_NE(d.severity, arguendo::doc::Diagnostic::Severity::kError)
        << name << ":" << d.line << " [" << d.code << "] " << d.message;
  }
  return parsed;
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = arguendo::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// ---------------------------------------------------------------------------
// Raw candidate universe for the validator/enumerator equivalence check:
// every interval-partition tree over n units, labeled with every relation
// and every nucleus/satellite役 pattern, including arity-violating ones.
// Candidates that cannot even be constructed (no nucleus at all) are
// dropped; they are representable neither in the DSL nor by the enumerator.
// ---------------------------------------------------------------------------

namespace rawgen {

struct Node {
  bool leaf = true;
  std::size_t unit = 0;
  std::string relation;
  std::vector<std::pair<bool, Node>> children;  // (is_nucleus, child)
};

inline void compositions(std::size_t len, std::size_t parts,
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

inline void all_trees(std::size_t lo, std::size_t hi,
                      const std::vector<std::string>& relations,
                      std::vector<Node>& out) {
  if (lo == hi) {
    Node leaf;
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
      std::vector<std::vector<Node>> options(parts);
      std::size_t start = lo;
      for (std::size_t i = 0; i < parts; ++i) {
        all_trees(start, start + split[i] - 1, relations, options[i]);
        start += split[i];
      }
      std::vector<std::size_t> odo(parts, 0);
      while (true) {
        for (const auto& relation : relations) {
          // Every nucleus/satellite pattern, valid or not.
          for (std::size_t mask = 0; mask < (1u << parts); ++mask) {
            Node node;
            node.leaf = false;
            node.relation = relation;
            for (std::size_t i = 0; i < parts; ++i) {
              node.children.emplace_back((mask >> i) & 1u, options[i][odo[i]]);
            }
            out.push_back(std::move(node));
          }
        }
        std::size_t i = parts;
        bool done = true;
        while (i > 0) {
          --i;
          if (++odo[i] < options[i].size()) {
            done = false;
            break;
          }
          odo[i] = 0;
        }
        if (done) break;
      }
    }
  }
}

inline arguendo::rst::NodeRef emit(
    const Node& node, std::vector<arguendo::rst::Composite>& composites) {
  if (node.leaf) return arguendo::rst::NodeRef::unit(node.unit);
  arguendo::rst::Composite comp;
  comp.relation = node.relation;
  for (const auto& [is_nucleus, child] : node.children) {
    const auto ref = emit(child, composites);
    (is_nucleus ? comp.nuclei : comp.satellites).push_back(ref);
  }
  composites.push_back(std::move(comp));
  return arguendo::rst::NodeRef::composite(composites.size() - 1);
}

}  // namespace rawgen

inline std::vector<arguendo::rst::Analysis> raw_candidates(
    std::size_t n, const std::vector<std::string>& relations) {
  std::vector<arguendo::rst::TextUnit> units;
  for (std::size_t i = 1; i <= n; ++i) {
    units.push_back({std::to_string(i), ""});
  }
  std::vector<rawgen::Node> trees;
  rawgen::all_trees(0, n - 1, relations, trees);
  std::vector<arguendo::rst::Analysis> candidates;
  for (const auto& tree : trees) {
    std::vector<arguendo::rst::Composite> composites;
    rawgen::emit(tree, composites);
    auto built = arguendo::rst::Analysis::create(units, std::move(composites));
    if (built.ok()) candidates.push_back(std::move(built).value());
  }
  return candidates;
}

// ---------------------------------------------------------------------------
// Random planning problems for the soundness sweep.
// ---------------------------------------------------------------------------

struct RandomProblem {
  arguendo::planner::PlanningProblem problem;
  std::string goal;
  int depth = 1;
};

inline RandomProblem random_planning_problem(std::mt19937& rng) {
  using arguendo::arg::ArgumentStructure;
  namespace planner = arguendo::planner;

  RandomProblem out;
  ArgumentStructure& ctx = out.problem.context;

  std::uniform_int_distribution<int> atom_count(2, 4);
  const int atoms = atom_count(rng);
  std::vector<std::string> ids;
  for (int i = 0; i < atoms; ++i) {
    std::string name(1, static_cast<char>('A' + i));
    ids.push_back(ctx.add_atom(name, name).value());
  }
  auto pick = [&](const std::vector<std::string>& from) -> std::string {
    std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
    return from[d(rng)];
  };
  std::uniform_int_distribution<int> coin(0, 99);

  // A few negations and implications over what exists so far (8 props max).
  const int compounds = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < compounds && ids.size() < 8; ++i) {
    if (coin(rng) < 35) {
      auto added = ctx.add_negation("n" + std::to_string(i), pick(ids));
      if (added.ok()) ids.push_back(added.value());
    } else {
      auto added = ctx.add_implication("i" + std::to_string(i), pick(ids),
                                       pick(ids));
      if (added.ok()) ids.push_back(added.value());
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  for (const auto& id : ids) {
    const int roll = coin(rng);
    if (roll < 40) {
      if (auto next = out.problem.hearer.believing(ctx, id); next.ok()) {
        out.problem.hearer = std::move(next).value();
      }
    } else if (roll < 55) {
      if (auto next = out.problem.hearer.disbelieving(ctx, id); next.ok()) {
        out.problem.hearer = std::move(next).value();
      }
    }
    if (coin(rng) < 30) out.problem.speaker_kb.insert(id);
  }
  // Occasionally tag atoms as instances of another atom for IG.
  if (coin(rng) < 30 && atoms >= 3) {
    out.problem.instance_classes[ids.front()] = {ids[1], ids[2]};
  }
  out.goal = pick(ids);
  out.depth = std::uniform_int_distribution<int>(1, 5)(rng);
  return out;
}

// ---------------------------------------------------------------------------
// Random contract graphs (cycles allowed) for the fold/unfold check.
// ---------------------------------------------------------------------------

struct RandomGraph {
  arguendo::contract::ContractGraph graph;
  std::string root;
};

inline RandomGraph random_contract_graph(std::mt19937& rng) {
  namespace contract = arguendo::contract;
  using arguendo::rst::TextSpan;

  std::uniform_int_distribution<std::size_t> node_count(1, 12);
  const std::size_t n = node_count(rng);
  const std::size_t units = 12;

  auto tree = contract::SyntacticTree::create(
      units, {{"part", "section", "all", TextSpan{0, units - 1}}});
  EXPECT_TRUE(tree.ok());

  const contract::NodeKind kinds[] = {
      contract::NodeKind::kDefinition, contract::NodeKind::kPrescription,
      contract::NodeKind::kProcedure, contract::NodeKind::kTerm,
      contract::NodeKind::kIssue};
  std::vector<contract::ContractNode> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    contract::ContractNode node;
    node.id = "n" + std::to_string(i + 1);
    node.kind = kinds[i % 5];
    node.spans = {TextSpan{i % units, i % units}};
    node.label = "node " + std::to_string(i + 1);
    nodes.push_back(std::move(node));
  }

  const contract::Question questions[] = {
      contract::Question::kWho, contract::Question::kWhen,
      contract::Question::kHow, contract::Question::kWhat,
      contract::Question::kWhatIf};
  std::vector<contract::SpecArc> spec_arcs;
  std::vector<contract::CrossRef> cross_refs;
  if (n >= 2) {
    std::uniform_int_distribution<std::size_t> arc_count(0, 2 * n);
    std::uniform_int_distribution<std::size_t> pick_node(0, n - 1);
    std::uniform_int_distribution<int> pick_kind(0, 5);
    const std::size_t arcs = arc_count(rng);
    for (std::size_t i = 0; i < arcs; ++i) {
      const std::size_t from = pick_node(rng);
      std::size_t to = pick_node(rng);
      if (from == to) to = (to + 1) % n;
      const int kind = pick_kind(rng);
      if (kind == 5) {
        cross_refs.push_back({nodes[from].id, nodes[to].id});
      } else {
        spec_arcs.push_back({nodes[from].id, nodes[to].id, questions[kind]});
      }
    }
  }
  std::uniform_int_distribution<std::size_t> pick_root(0, n - 1);
  const std::string root = nodes[pick_root(rng)].id;
  auto graph = contract::ContractGraph::create(
      std::move(tree).value(), std::move(nodes), std::move(spec_arcs),
      std::move(cross_refs));
  EXPECT_TRUE(graph.ok());
  return {std::move(graph).value(), root};
}

// ---------------------------------------------------------------------------
// Random valid documents for round-trip checks.
// ---------------------------------------------------------------------------

inline std::string random_token(std::mt19937& rng) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyz0123456789";
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
  std::string out;
  const int k = len(rng);
  for (int i = 0; i < k; ++i) out.push_back(alphabet[pick(rng)]);
  return out;
}

inline std::string random_text(std::mt19937& rng) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyz ABCDEFGH\"\\|.,:;<>()";
  std::uniform_int_distribution<int> len(0, 24);
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
  std::string out;
  const int k = len(rng);
  for (int i = 0; i < k; ++i) out.push_back(alphabet[pick(rng)]);
  if (!out.empty() && out.front() == ' ') out.front() = 'x';
  return out;
}

inline arguendo::doc::Document random_document(std::mt19937& rng) {
  namespace doc = arguendo::doc;
  std::uniform_int_distribution<int> coin(0, 99);

  doc::Document document;
  std::set<std::string> unit_ids;
  const int unit_count = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int i = 0; i < unit_count; ++i) {
    std::string id;
    do {
      id = std::to_string(i + 1);
      if (coin(rng) < 50) id += "." + random_token(rng);
    } while (!unit_ids.insert(id).second);
    document.units.push_back({id, random_text(rng), 0});
  }
  auto unit_id = [&](std::size_t index) { return document.units[index].id; };

  const int sections = std::uniform_int_distribution<int>(0, 4)(rng);
  bool used_catalog = false;
  int name_counter = 0;
  // Index of the latest argument section (the vector reallocates).
  std::optional<std::size_t> last_argument;

  for (int s = 0; s < sections; ++s) {
    const int kind = std::uniform_int_distribution<int>(0, 4)(rng);
    const std::string name = "s" + std::to_string(++name_counter);
    if (kind == 0) {
      // catalog (at most once)
      if (used_catalog) continue;
      used_catalog = true;
      doc::CatalogSection section;
      const int rels = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int r = 0; r < rels; ++r) {
        doc::CatalogRelDecl decl;
        decl.definition.name = "X" + std::to_string(r + 1);
        decl.definition.constraints_on_nucleus = random_text(rng) + "n";
        decl.definition.constraints_on_satellite = random_text(rng) + "s";
        decl.definition.constraints_on_combination = random_text(rng) + "c";
        decl.definition.effect = random_text(rng) + "e";
        decl.definition.nuclearity = coin(rng) < 50
                                         ? arguendo::rst::Nuclearity::kMono
                                         : arguendo::rst::Nuclearity::kMulti;
        decl.definition.argumentative = coin(rng) < 50;
        section.relations.push_back(std::move(decl));
      }
      if (coin(rng) < 50) {
        section.maps.push_back({"MP", {"EVIDENCE", "JUSTIFY"}, 0});
      }
      document.sections.emplace_back(std::move(section));
    } else if (kind == 1) {
      doc::RstSection section;
      section.name = name;
      if (coin(rng) < 40 || document.units.size() < 2) {
        section.leaves.push_back({unit_id(0), 0});
      } else {
        section.rels.push_back(
            {"ELABORATION", {unit_id(0)}, {unit_id(1)}, std::nullopt, 0});
        if (document.units.size() >= 3 && coin(rng) < 60) {
          section.rels.push_back(
              {"BACKGROUND", {"@1"}, {unit_id(2)},
               coin(rng) < 30 ? std::optional<std::string>("set:member")
                              : std::nullopt,
               0});
        }
      }
      document.sections.emplace_back(std::move(section));
    } else if (kind == 2) {
      doc::ArgumentSection section;
      section.name = name;
      const int atoms = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int a = 0; a < atoms; ++a) {
        doc::PropDecl prop;
        prop.id = std::string(1, static_cast<char>('A' + a)) + name;
        prop.kind = arguendo::arg::PropKind::kAtom;
        prop.a = prop.id;
        if (coin(rng) < 50) prop.text = random_text(rng);
        section.props.push_back(std::move(prop));
      }
      if (atoms >= 2 && coin(rng) < 70) {
        doc::PropDecl imp;
        imp.id = "imp" + name;
        imp.kind = arguendo::arg::PropKind::kImplies;
        imp.a = section.props[0].id;
        imp.b = section.props[1].id;
        section.props.push_back(std::move(imp));
        if (coin(rng) < 70) {
          section.links.push_back({"L1",
                                   "MP",
                                   {section.props[0].id, "imp" + name},
                                   section.props[1].id,
                                   "linked",
                                   0});
        }
      }
      document.sections.emplace_back(std::move(section));
      last_argument = document.sections.size() - 1;
    } else if (kind == 3) {
      if (!last_argument.has_value()) continue;
      const auto& argument =
          std::get<doc::ArgumentSection>(document.sections[*last_argument]);
      if (argument.props.empty()) continue;
      doc::PlanSection section;
      section.name = name;
      section.goal = argument.props.front().id;
      for (const auto& prop : argument.props) {
        // Atoms only, so randomly chosen beliefs stay consistent.
        if (prop.kind == arguendo::arg::PropKind::kAtom && coin(rng) < 50) {
          section.believes.push_back(prop.id);
        }
        if (coin(rng) < 30) section.kb.push_back(prop.id);
      }
      document.sections.emplace_back(std::move(section));
    } else {
      doc::ContractSection section;
      section.name = name;
      // Provisions tiling all units, grouped under one part.
      std::size_t start = 0;
      int p = 0;
      while (start < document.units.size()) {
        std::uniform_int_distribution<std::size_t> width(
            1, document.units.size() - start);
        const std::size_t w = width(rng);
        section.trees.push_back({"part", "sec", "p" + std::to_string(++p),
                                 unit_id(start), unit_id(start + w - 1), 0});
        start += w;
      }
      const int nodes = std::uniform_int_distribution<int>(1, 4)(rng);
      const char* kinds[] = {"definition", "prescription", "procedure", "term",
                             "issue"};
      for (int i = 0; i < nodes; ++i) {
        doc::NodeDecl node;
        node.id = "n" + std::to_string(i + 1) + name;
        node.kind = kinds[i % 5];
        if (node.kind != "issue" || coin(rng) < 50) {
          const std::size_t u =
              std::uniform_int_distribution<std::size_t>(
                  0, document.units.size() - 1)(rng);
          node.spans.emplace_back(unit_id(u), unit_id(u));
        }
        if (node.spans.empty() && node.kind != "issue") {
          node.spans.emplace_back(unit_id(0), unit_id(0));
        }
        node.label = random_text(rng);
        section.nodes.push_back(std::move(node));
      }
      if (nodes >= 2 && coin(rng) < 70) {
        section.arcs.push_back({"who", section.nodes[0].id,
                                section.nodes[1].id, 0});
        if (coin(rng) < 40) {
          section.arcs.push_back({"xref", section.nodes[1].id,
                                  section.nodes[0].id, 0});
        }
      }
      document.sections.emplace_back(std::move(section));
    }
  }
  return document;
}

}  // namespace testsupport
