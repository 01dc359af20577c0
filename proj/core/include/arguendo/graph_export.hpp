#pragma once

#include <string>
#include <string_view>

#include "arguendo/argument.hpp"
#include "arguendo/contract.hpp"
#include "arguendo/result.hpp"
#include "arguendo/rst.hpp"

namespace arguendo::doc {

enum class ExportFormat { kDot };

// "dot" is the only recognized format name. Errors: kUnsupportedFormat.
Result<ExportFormat> parse_export_format(std::string_view name);

// Plain-text directed-graph renderings (DOT-compatible). Output is
// deterministic: identical values produce identical text.
//
// RST analyses: one node per leaf (label = unit id) and per composite
// (label = relation name), edges parent -> child labeled nucleus/satellite.
std::string export_graph(const rst::Analysis& analysis, ExportFormat format);
// Argument structures: one node per proposition, edges premise ->
// conclusion labeled with the link's form.
std::string export_graph(const arg::ArgumentStructure& structure,
                         ExportFormat format);
// Contract graphs: one node per contract node, spec arcs labeled by their
// question, cross-references labeled "reference".
std::string export_graph(const contract::ContractGraph& graph,
                         ExportFormat format);

}  // namespace arguendo::doc
