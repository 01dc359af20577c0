#include "arguendo/document.hpp"

#include <gtest/gtest.h>

#include "arguendo/graph_export.hpp"
#include "support.hpp"

namespace doc = arguendo::doc;
namespace rst = arguendo::rst;
using arguendo::Errc;

namespace {

bool has_error(const doc::ParseResult& parsed, const std::string& code) {
  for (const auto& d : parsed.diagnostics) {
    if (d.severity == doc::Diagnostic::Severity::kError && d.code == code) {
      return true;
    }
  }
  return false;
}

std::size_t count_lines_with(const std::string& text, const std::string& what,
                             bool present) {
  std::size_t count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if ((line.find(what) != std::string::npos) == present) ++count;
  }
  return count;
}

}  // namespace

TEST(Parse, ContractFixtureHasTenUnitsAndOneGraph) {
  auto parsed = testsupport::parse_fixture("contract.ard");
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(parsed.document.units.size(), 10u);
  std::size_t contracts = 0;
  for (const auto& section : parsed.document.sections) {
    if (std::holds_alternative<doc::ContractSection>(section)) ++contracts;
  }
  EXPECT_EQ(contracts, 1u);
}

TEST(Parse, UnknownUnitIsDiagnosedAtItsLine) {
  const std::string text =
      "#units\n"
      "1 | first\n"
      "#rst broken\n"
      "rel ELABORATION nucleus=1 satellite=9.9\n";
  auto parsed = doc::parse(text);
  ASSERT_FALSE(parsed.ok());
  bool found = false;
  for (const auto& d : parsed.diagnostics) {
    if (d.code == "UnknownUnit") {
      found = true;
      EXPECT_EQ(d.line, 4);
      EXPECT_GT(d.column, 0);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Parse, EmptyInputLacksUnits) {
  auto parsed = doc::parse("");
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "MissingUnitsSection"));
}

TEST(Parse, UnitsMustComeFirst) {
  auto parsed = doc::parse("#rst a\nunit 1\n#units\n1 | x\n");
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "MissingUnitsSection"));
}

TEST(Parse, CommentsAndBlankLinesAreIgnored)
{
  const std::string text =
      "#units\n"
      "; a comment\n"
      "\n"
      "1 | first\n"
      "; another\n";
  auto parsed = doc::parse(text);
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(parsed.document.units.size(), 1u);
}

TEST(Parse, DuplicateUnitIdsAreRejected) {
  auto parsed = doc::parse("#units\n1 | a\n1 | b\n");
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "DuplicateId"));
}

TEST(Parse, InvalidEscapeIsDiagnosed) {
  const std::string text =
      "#units\n"
      "1 | x\n"
      "#contract c\n"
      "tree p/s/p1 = 1..1\n"
      "node a kind=term spans=1..1 label=\"bad \\n escape\"\n";
  auto parsed = doc::parse(text);
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "InvalidEscape"));
}

TEST(Parse, ForwardCompositeReferencesAreRejected) {
  const std::string text =
      "#units\n1 | a\n2 | b\n"
      "#rst broken\n"
      "rel ELABORATION nucleus=@2 satellite=1\n";
  auto parsed = doc::parse(text);
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "ForwardReference"));
}

TEST(Parse, BuiltinRelationNamesCannotBeRedefined) {
  const std::string text =
      "#units\n1 | a\n"
      "#catalog\n"
      "relation JUSTIFY nuclearity=mono argumentative=true n=\"x\" s=\"x\" "
      "ns=\"x\" effect=\"x\" locus=N\n";
  auto parsed = doc::parse(text);
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "DuplicateName"));
}

TEST(Parse, CatalogFieldsMustBeNonEmpty) {
  const std::string text =
      "#units\n1 | a\n"
      "#catalog\n"
      "relation NEW-ONE nuclearity=mono argumentative=false n=\"\" s=\"x\" "
      "ns=\"x\" effect=\"x\" locus=N\n";
  auto parsed = doc::parse(text);
  ASSERT_FALSE(parsed.ok());
  EXPECT_TRUE(has_error(parsed, "MissingField"));
}

TEST(Parse, PlanBindsToTheNearestPrecedingArgument) {
  const std::string text =
      "#units\n1 | a\n"
      "#argument first\n"
      "prop X = atom X\n"
      "#argument second\n"
      "prop Y = atom Y\n"
      "#plan p\n"
      "goal Y\n";
  auto parsed = doc::parse(text);
  ASSERT_TRUE(parsed.ok());
  // X lives in the first section, so it is not visible to the plan.
  const std::string bad =
      "#units\n1 | a\n"
      "#argument first\n"
      "prop X = atom X\n"
      "#argument second\n"
      "prop Y = atom Y\n"
      "#plan p\n"
      "goal X\n";
  auto rejected = doc::parse(bad);
  ASSERT_FALSE(rejected.ok());
  EXPECT_TRUE(has_error(rejected, "UnknownProposition"));
}

TEST(Parse, EveryDiagnosticCarriesAPosition) {
  const char* broken_inputs[] = {
      "",
      "#units\n|\n",
      "#units\n1 | a\n#rst\nunit 1\n",
      "#units\n1 | a\n#rst x\nrel\n",
      "#units\n1 | a\n#argument a\nprop P = unknown P\n",
      "#units\n1 | a\n#contract c\nnode a kind=nope label=\"l\"\n",
      "#units\n1 | a\n#plan p\ngoal X\n",
      "#units\n1 | a\njunk before | section\n#units\n",
  };
  for (const char* text : broken_inputs) {
    auto parsed = doc::parse(text);
    EXPECT_FALSE(parsed.ok()) << text;
    for (const auto& d : parsed.diagnostics) {
      EXPECT_GT(d.line, 0) << text;
      EXPECT_GT(d.column, 0) << text;
      EXPECT_FALSE(d.code.empty());
      EXPECT_FALSE(d.message.empty());
    }
  }
}

TEST(Serialize, SingleUnitDocumentIsTwoLines) {
  doc::Document document;
  document.units.push_back({"1", "a single segment of text", 0});
  EXPECT_EQ(doc::serialize(document), "#units\n1 | a single segment of text\n");
}

TEST(Serialize, RoundTripsTheMarxFixture) {
  const std::string text = testsupport::read_file(
      testsupport::fixture_path("marx.ard"));
  auto parsed = doc::parse(text);
  ASSERT_TRUE(parsed.ok());
  const std::string canonical = doc::serialize(parsed.document);
  EXPECT_EQ(canonical, text);  // the fixture is written in canonical form
  auto reparsed = doc::parse(canonical);
  ASSERT_TRUE(reparsed.ok());
  EXPECT_EQ(reparsed.document, parsed.document);
}

TEST(Serialize, RoundTripsTheContractFixture) {
  const std::string text = testsupport::read_file(
      testsupport::fixture_path("contract.ard"));
  auto parsed = doc::parse(text);
  ASSERT_TRUE(parsed.ok());
  const std::string canonical = doc::serialize(parsed.document);
  EXPECT_EQ(canonical, text);
  auto reparsed = doc::parse(canonical);
  ASSERT_TRUE(reparsed.ok());
  EXPECT_EQ(reparsed.document, parsed.document);
}

TEST(Serialize, RandomDocumentsRoundTrip) {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    const doc::Document document = testsupport::random_document(rng);
    const std::string text = doc::serialize(document);
    auto parsed = doc::parse(text);
    ASSERT_TRUE(parsed.ok()) << text;
    EXPECT_EQ(parsed.document, document) << text;
    EXPECT_EQ(doc::serialize(parsed.document), text);
  }
}

TEST(Converters, AnalysisUsesOnlyReferencedUnits) {
  auto parsed = testsupport::parse_fixture("contract.ard");
  ASSERT_TRUE(parsed.ok());
  const auto* section =
      std::get_if<doc::RstSection>(&parsed.document.sections[0]);
  ASSERT_NE(section, nullptr);
  auto analysis = doc::to_analysis(parsed.document, *section);
  ASSERT_TRUE(analysis.ok());
  EXPECT_EQ(analysis.value().units().size(), 4u);  // 1.1 .. 1.4 only
  EXPECT_TRUE(
      validate(analysis.value(), rst::builtin_catalog()).accepted());
}

TEST(Converters, RefinementMapDefaultsWhenUndeclared) {
  auto parsed = testsupport::parse_fixture("mp.ard");
  ASSERT_TRUE(parsed.ok());
  auto map = doc::to_refinement_map(parsed.document);
  ASSERT_TRUE(map.ok());
  EXPECT_EQ(map.value().targets.at("MP").front(), "EVIDENCE");
  EXPECT_EQ(map.value().targets.at("MP").size(), 6u);
}

TEST(CatalogFile, BareSectionParses) {
  const auto result = doc::parse_catalog_file(
      testsupport::read_file(testsupport::fixture_path("extensions.ard")));
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.section.relations.size(), 1u);
  EXPECT_EQ(result.section.maps.size(), 3u);
}

TEST(CatalogFile, FullDocumentAlsoWorks) {
  const std::string text =
      "#units\n1 | a\n"
      "#catalog\n"
      "relation NEW-ONE nuclearity=mono argumentative=false n=\"a\" s=\"b\" "
      "ns=\"c\" effect=\"d\" locus=NS\n";
  const auto result = doc::parse_catalog_file(text);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result.section.relations.size(), 1u);
  EXPECT_EQ(result.section.relations[0].definition.locus,
            rst::EffectLocus::kBoth);
}

TEST(CatalogFile, MissingSectionIsAnError) {
  const auto result = doc::parse_catalog_file("#units\n1 | a\n");
  EXPECT_FALSE(result.ok());
}

TEST(Checklist, ParsesKindsAndQuestions) {
  auto checklist = doc::parse_checklist(
      testsupport::read_file(
          testsupport::fixture_path("strict-checklist.txt")));
  ASSERT_TRUE(checklist.ok());
  const auto& required = checklist.value().required;
  ASSERT_TRUE(required.contains(arguendo::contract::NodeKind::kProcedure));
  EXPECT_TRUE(required.at(arguendo::contract::NodeKind::kProcedure)
                  .contains(arguendo::contract::Question::kWhatIf));
}

TEST(Checklist, RejectsUnknownKinds) {
  auto checklist = doc::parse_checklist("promise who\n");
  ASSERT_FALSE(checklist.ok());
  EXPECT_EQ(checklist.code(), Errc::kUnsupportedFormat);
}

TEST(ExportDot, TwoNodeOneArcContract) {
  auto tree = arguendo::contract::SyntacticTree::create(
      2, {{"p", "s", "all", {0, 1}}});
  ASSERT_TRUE(tree.ok());
  auto graph = arguendo::contract::ContractGraph::create(
      std::move(tree).value(),
      {{"a", arguendo::contract::NodeKind::kPrescription, {{0, 0}}, "a"},
       {"b", arguendo::contract::NodeKind::kTerm, {{1, 1}}, "b"}},
      {{"a", "b", arguendo::contract::Question::kWho}}, {});
  ASSERT_TRUE(graph.ok());
  const std::string dot =
      doc::export_graph(graph.value(), doc::ExportFormat::kDot);
  std::size_t node_statements = 0;
  std::size_t edge_statements = 0;
  std::istringstream in(dot);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("->") != std::string::npos) {
      ++edge_statements;
    } else if (line.find("[label=") != std::string::npos) {
      ++node_statements;
    }
  }
  EXPECT_EQ(node_statements, 2u);
  EXPECT_EQ(edge_statements, 1u);
}

TEST(ExportDot, ThreeUnitAnalysisHasFiveNodesFourEdges) {
  auto built = rst::Analysis::create(
      {{"1", ""}, {"2", ""}, {"3", ""}},
      {{"ELABORATION", {rst::NodeRef::unit(0)}, {rst::NodeRef::unit(1)}, {}},
       {"BACKGROUND",
        {rst::NodeRef::composite(0)},
        {rst::NodeRef::unit(2)},
        {}}});
  ASSERT_TRUE(built.ok());
  ASSERT_TRUE(validate(built.value(), rst::builtin_catalog()).accepted());
  const std::string dot =
      doc::export_graph(built.value(), doc::ExportFormat::kDot);
  std::size_t node_statements = 0;
  std::size_t edge_statements = 0;
  std::istringstream in(dot);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("->") != std::string::npos) {
      ++edge_statements;
    } else if (line.find("[label=") != std::string::npos) {
      ++node_statements;
    }
  }
  EXPECT_EQ(node_statements, 5u);
  EXPECT_EQ(edge_statements, 4u);
}

TEST(ExportDot, FixtureGraphCarriesQuestionLabels) {
  auto parsed = testsupport::parse_fixture("contract.ard");
  ASSERT_TRUE(parsed.ok());
  const doc::ContractSection* section = nullptr;
  for (const auto& s : parsed.document.sections) {
    if ((section = std::get_if<doc::ContractSection>(&s)) != nullptr) break;
  }
  auto graph = doc::to_contract(parsed.document, *section);
  ASSERT_TRUE(graph.ok());
  const std::string dot =
      doc::export_graph(graph.value(), doc::ExportFormat::kDot);
  EXPECT_NE(dot.find("label=\"who\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"how\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"what_if\""), std::string::npos);
  // Deterministic output.
  EXPECT_EQ(dot, doc::export_graph(graph.value(), doc::ExportFormat::kDot));
}

TEST(ExportDot, UnknownFormatNameIsRejected) {
  auto format = doc::parse_export_format("graphml");
  ASSERT_FALSE(format.ok());
  EXPECT_EQ(format.code(), Errc::kUnsupportedFormat);
}

TEST(FromForest, SerializedForestReparses) {
  auto parsed = testsupport::parse_fixture("mp.ard");
  ASSERT_TRUE(parsed.ok());
  const auto* argument =
      std::get_if<doc::ArgumentSection>(&parsed.document.sections[0]);
  ASSERT_NE(argument, nullptr);
  auto structure = doc::to_structure(*argument);
  ASSERT_TRUE(structure.ok());
  auto forest = refine(structure.value(), rst::builtin_catalog(),
                       arguendo::planner::default_refinement_map());
  ASSERT_TRUE(forest.ok());
  const doc::Document rendered = doc::from_forest(forest.value());
  const std::string text = doc::serialize(rendered);
  auto reparsed = doc::parse(text);
  ASSERT_TRUE(reparsed.ok()) << text;
  EXPECT_EQ(reparsed.document, rendered);
  EXPECT_EQ(count_lines_with(text, "#rst", true), 1u);
}
