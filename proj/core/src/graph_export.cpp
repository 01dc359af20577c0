#include "arguendo/graph_export.hpp"

#include <sstream>

namespace arguendo::doc {

Result<ExportFormat> parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::kDot;
  return make_error(Errc::kUnsupportedFormat,
                    "unsupported export format '" + std::string(name) + "'");
}

namespace {

std::string quoted(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string export_graph(const rst::Analysis& analysis, ExportFormat format) {
  (void)format;  // kDot is the only member
  std::ostringstream out;
  out << "digraph rst {\n";
  for (std::size_t i = 0; i < analysis.units().size(); ++i) {
    out << "  u" << i << " [label=" << quoted(analysis.units()[i].id)
        << "];\n";
  }
  for (std::size_t k = 0; k < analysis.composites().size(); ++k) {
    out << "  c" << k + 1 << " [label="
        << quoted(rst::normalize_relation_name(
               analysis.composites()[k].relation))
        << "];\n";
  }
  auto name_of = [](const rst::NodeRef& ref) {
    return (ref.kind == rst::NodeRef::Kind::kUnit ? "u" : "c") +
           std::to_string(ref.kind == rst::NodeRef::Kind::kUnit
                              ? ref.index
                              : ref.index + 1);
  };
  for (std::size_t k = 0; k < analysis.composites().size(); ++k) {
    const auto& comp = analysis.composites()[k];
    for (const auto& ref : comp.nuclei) {
      out << "  c" << k + 1 << " -> " << name_of(ref)
          << " [label=\"nucleus\"];\n";
    }
    for (const auto& ref : comp.satellites) {
      out << "  c" << k + 1 << " -> " << name_of(ref)
          << " [label=\"satellite\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_graph(const arg::ArgumentStructure& structure,
                         ExportFormat format) {
  (void)format;
  std::ostringstream out;
  out << "digraph argument {\n";
  for (const auto& p : structure.propositions()) {
    out << "  " << quoted(p.id) << " [label=" << quoted(p.id) << "];\n";
  }
  for (const auto& link : structure.links()) {
    for (const auto& premise : link.premises) {
      out << "  " << quoted(premise) << " -> " << quoted(link.conclusion)
          << " [label=" << quoted(link.form) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string export_graph(const contract::ContractGraph& graph,
                         ExportFormat format) {
  (void)format;
  std::ostringstream out;
  out << "digraph contract {\n";
  for (const auto& node : graph.nodes()) {
    out << "  " << quoted(node.id) << " [label=" << quoted(node.id) << "];\n";
  }
  for (const auto& arc : graph.spec_arcs()) {
    out << "  " << quoted(arc.from) << " -> " << quoted(arc.to)
        << " [label=\"" << contract::to_string(arc.question) << "\"];\n";
  }
  for (const auto& xref : graph.cross_refs()) {
    out << "  " << quoted(xref.from) << " -> " << quoted(xref.to)
        << " [label=\"reference\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace arguendo::doc
