#include "arguendo/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "arguendo/document.hpp"
#include "arguendo/graph_export.hpp"

namespace arguendo::cli {

namespace {

constexpr const char* kUsageText =
    "usage: arguendo <command> [options]\n"
    "  validate FILE\n"
    "  catalog list [--extensions FILE]\n"
    "  plan FILE --goal ID [--depth N]\n"
    "  refine FILE [--enumerate N] [--map FILE]\n"
    "  contract check FILE [--checklist FILE]\n"
    "  contract query FILE --question Q --node ID\n"
    "  export FILE --format dot\n";

std::optional<std::string> read_file(const std::string& path,
                                     std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return std::nullopt;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_diagnostics(const std::vector<doc::Diagnostic>& diagnostics,
                       std::ostream& err) {
  for (const auto& d : diagnostics) {
    err << d.line << ':' << d.column << ": "
        << (d.severity == doc::Diagnostic::Severity::kError ? "error"
                                                            : "warning")
        << " [" << d.code << "] " << d.message << '\n';
  }
}

// Splits trailing arguments into one positional FILE and --flag values.
struct Options {
  std::string file;
  std::map<std::string, std::string> flags;
};

std::optional<Options> scan_options(const std::vector<std::string>& args,
                                    std::size_t from,
                                    const std::set<std::string>& known,
                                    std::ostream& err) {
  Options options;
  for (std::size_t i = from; i < args.size(); ++i) {
    if (args[i].starts_with("--")) {
      if (!known.contains(args[i])) {
        err << "error: unknown option '" << args[i] << "'\n";
        return std::nullopt;
      }
      if (i + 1 >= args.size()) {
        err << "error: option '" << args[i] << "' needs a value\n";
        return std::nullopt;
      }
      if (options.flags.contains(args[i])) {
        err << "error: option '" << args[i] << "' repeats\n";
        return std::nullopt;
      }
      options.flags[args[i]] = args[i + 1];
      ++i;
    } else if (options.file.empty()) {
      options.file = args[i];
    } else {
      err << "error: unexpected argument '" << args[i] << "'\n";
      return std::nullopt;
    }
  }
  if (options.file.empty()) {
    err << "error: missing FILE argument\n";
    return std::nullopt;
  }
  return options;
}

std::optional<doc::ParseResult> load_document(const std::string& path,
                                              std::ostream& err) {
  auto text = read_file(path, err);
  if (!text.has_value()) return std::nullopt;
  doc::ParseResult parsed = doc::parse(*text);
  if (!parsed.ok()) {
    print_diagnostics(parsed.diagnostics, err);
    return std::nullopt;
  }
  return parsed;
}

std::optional<int> parse_int(const std::string& value) {
  if (value.empty()) return std::nullopt;
  int out = 0;
  for (char c : value) {
    if (c < '0' || c > '9') return std::nullopt;
    if (out > 100000000) return std::nullopt;
    out = out * 10 + (c - '0');
  }
  return out;
}

int cmd_validate(const Options& options, std::ostream& out, std::ostream& err) {
  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  auto catalog = doc::to_catalog(document, rst::builtin_catalog());
  if (!catalog.ok()) {
    err << "error: " << catalog.error().message << '\n';
    return kUsage;
  }

  bool rejected = false;
  for (const auto& section : document.sections) {
    if (const auto* rst_section = std::get_if<doc::RstSection>(&section)) {
      auto analysis = doc::to_analysis(document, *rst_section);
      if (!analysis.ok()) {
        err << "error: " << analysis.error().message << '\n';
        return kUsage;
      }
      const rst::ValidationReport report =
          validate(analysis.value(), catalog.value());
      if (report.accepted()) {
        out << "rst " << rst_section->name << ": accepted\n";
      } else {
        rejected = true;
        out << "rst " << rst_section->name << ": rejected\n";
        for (const auto& v : report.violations) {
          out << "  " << rst::to_string(v.constraint);
          if (!v.node.empty()) out << " at " << v.node;
          out << ": " << v.message << '\n';
        }
      }
    } else if (const auto* contract_section =
                   std::get_if<doc::ContractSection>(&section)) {
      auto graph = doc::to_contract(document, *contract_section);
      if (!graph.ok()) {
        err << "error: " << graph.error().message << '\n';
        return kUsage;
      }
      out << "contract " << contract_section->name << ": ok\n";
    }
  }
  out << "result: " << (rejected ? "rejected" : "accepted") << '\n';
  return rejected ? kCheckFailed : kOk;
}

int cmd_catalog_list(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
  std::map<std::string, std::string> flags;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--extensions" && i + 1 < args.size()) {
      flags["--extensions"] = args[i + 1];
      ++i;
    } else {
      err << "error: unexpected argument '" << args[i] << "'\n";
      return kUsage;
    }
  }
  rst::Catalog catalog = rst::builtin_catalog();
  if (auto it = flags.find("--extensions"); it != flags.end()) {
    auto text = read_file(it->second, err);
    if (!text.has_value()) return kUsage;
    const doc::CatalogFileResult extension = doc::parse_catalog_file(*text);
    if (!extension.ok()) {
      print_diagnostics(extension.diagnostics, err);
      return kUsage;
    }
    for (const auto& decl : extension.section.relations) {
      auto extended = register_relation(catalog, decl.definition);
      if (!extended.ok()) {
        err << "error: " << extended.error().message << '\n';
        return kUsage;
      }
      catalog = std::move(extended).value();
    }
  }
  for (const auto& def : catalog.relations()) {
    out << def.name << " nuclearity=" << rst::to_string(def.nuclearity)
        << " argumentative=" << (def.argumentative ? "true" : "false") << '\n';
  }
  return kOk;
}

int cmd_plan(const Options& options, std::ostream& out, std::ostream& err) {
  auto goal_it = options.flags.find("--goal");
  if (goal_it == options.flags.end()) {
    err << "error: plan requires --goal ID\n";
    return kUsage;
  }
  int depth = planner::kDefaultDepthLimit;
  if (auto it = options.flags.find("--depth"); it != options.flags.end()) {
    const auto value = parse_int(it->second);
    if (!value.has_value() || *value < 1) {
      err << "error: --depth needs a positive integer\n";
      return kUsage;
    }
    depth = *value;
  }

  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  std::optional<planner::PlanningProblem> problem;
  for (const auto& section : document.sections) {
    if (const auto* plan_section = std::get_if<doc::PlanSection>(&section)) {
      auto value = doc::to_planning_problem(document, *plan_section);
      if (!value.ok()) {
        err << "error: " << value.error().message << '\n';
        return kCheckFailed;
      }
      problem = std::move(value).value();
      break;
    }
  }
  if (!problem.has_value()) {
    // Fall back to a bare universe from the first argument section.
    for (const auto& section : document.sections) {
      if (const auto* argument = std::get_if<doc::ArgumentSection>(&section)) {
        auto context = doc::to_structure(*argument);
        if (!context.ok()) {
          err << "error: " << context.error().message << '\n';
          return kCheckFailed;
        }
        problem.emplace();
        problem->context = std::move(context).value();
        break;
      }
    }
  }
  if (!problem.has_value()) {
    err << "error: no #plan or #argument section to plan over\n";
    return kCheckFailed;
  }

  auto plan = planner::plan(*problem, goal_it->second,
                            planner::default_forms(), depth);
  if (!plan.ok()) {
    err << "error: [" << to_string(plan.error().code) << "] "
        << plan.error().message << '\n';
    return kCheckFailed;
  }
  out << "plan for " << plan.value().goal << ": " << plan.value().steps.size()
      << " step(s)\n";
  for (std::size_t i = 0; i < plan.value().steps.size(); ++i) {
    const auto& step = plan.value().steps[i];
    out << "  " << i + 1 << ". " << step.link.form << " premises=";
    for (std::size_t j = 0; j < step.link.premises.size(); ++j) {
      if (j > 0) out << ',';
      out << step.link.premises[j];
    }
    out << " conclusion=" << step.link.conclusion;
    if (!step.asserted.empty()) {
      out << " asserts=";
      for (std::size_t j = 0; j < step.asserted.size(); ++j) {
        if (j > 0) out << ',';
        out << step.asserted[j];
      }
    }
    out << '\n';
  }
  return kOk;
}

int cmd_refine(const Options& options, std::ostream& out, std::ostream& err) {
  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  const doc::ArgumentSection* argument = nullptr;
  for (const auto& section : document.sections) {
    if ((argument = std::get_if<doc::ArgumentSection>(&section)) != nullptr) {
      break;
    }
  }
  if (argument == nullptr) {
    err << "error: no #argument section to refine\n";
    return kCheckFailed;
  }
  auto structure = doc::to_structure(*argument);
  if (!structure.ok()) {
    err << "error: " << structure.error().message << '\n';
    return kCheckFailed;
  }

  auto catalog = doc::to_catalog(document, rst::builtin_catalog());
  if (!catalog.ok()) {
    err << "error: " << catalog.error().message << '\n';
    return kUsage;
  }
  auto map = doc::to_refinement_map(document);
  if (!map.ok()) {
    err << "error: " << map.error().message << '\n';
    return kUsage;
  }
  if (auto it = options.flags.find("--map"); it != options.flags.end()) {
    auto text = read_file(it->second, err);
    if (!text.has_value()) return kUsage;
    const doc::CatalogFileResult extension = doc::parse_catalog_file(*text);
    if (!extension.ok()) {
      print_diagnostics(extension.diagnostics, err);
      return kUsage;
    }
    for (const auto& decl : extension.section.relations) {
      auto extended = register_relation(catalog.value(), decl.definition);
      if (!extended.ok()) {
        err << "error: " << extended.error().message << '\n';
        return kUsage;
      }
      catalog.value() = std::move(extended).value();
    }
    if (extension.section.maps.empty()) {
      err << "error: map file declares no map lines\n";
      return kUsage;
    }
    planner::RefinementMap loaded;
    for (const auto& decl : extension.section.maps) {
      loaded.targets[decl.form] = decl.relations;
    }
    map.value() = std::move(loaded);
  }

  if (auto it = options.flags.find("--enumerate"); it != options.flags.end()) {
    const auto bound = parse_int(it->second);
    if (!bound.has_value() || *bound < 1) {
      err << "error: --enumerate needs a positive integer\n";
      return kUsage;
    }
    auto forests = planner::enumerate_refinements(
        structure.value(), catalog.value(), map.value(),
        static_cast<std::size_t>(*bound));
    if (!forests.ok()) {
      err << "error: [" << to_string(forests.error().code) << "] "
          << forests.error().message << '\n';
      return kCheckFailed;
    }
    out << "forests: " << forests.value().size() << '\n';
    for (std::size_t i = 0; i < forests.value().size(); ++i) {
      out << "forest " << i + 1 << " of " << forests.value().size() << ":\n";
      out << doc::serialize(doc::from_forest(forests.value()[i]));
    }
    return kOk;
  }

  auto forest = planner::refine(structure.value(), catalog.value(), map.value());
  if (!forest.ok()) {
    err << "error: [" << to_string(forest.error().code) << "] "
        << forest.error().message << '\n';
    return kCheckFailed;
  }
  out << doc::serialize(doc::from_forest(forest.value()));
  return kOk;
}

int cmd_contract_check(const Options& options, std::ostream& out,
                       std::ostream& err) {
  contract::Checklist checklist = contract::default_checklist();
  if (auto it = options.flags.find("--checklist"); it != options.flags.end()) {
    auto text = read_file(it->second, err);
    if (!text.has_value()) return kUsage;
    auto loaded = doc::parse_checklist(*text);
    if (!loaded.ok()) {
      err << "error: " << loaded.error().message << '\n';
      return kUsage;
    }
    checklist = std::move(loaded).value();
  }

  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  bool any = false;
  std::size_t open_total = 0;
  for (const auto& section : document.sections) {
    const auto* contract_section = std::get_if<doc::ContractSection>(&section);
    if (contract_section == nullptr) continue;
    any = true;
    auto graph = doc::to_contract(document, *contract_section);
    if (!graph.ok()) {
      err << "error: " << graph.error().message << '\n';
      return kUsage;
    }
    const contract::SpecificationReport report =
        check_specifications(graph.value(), checklist);
    open_total += report.open.size();
    out << "contract " << contract_section->name << ": " << report.open.size()
        << " open demand(s)\n";
    for (const auto& demand : report.open) {
      out << "  open: node=" << demand.node_id
          << " question=" << contract::to_string(demand.question) << '\n';
    }
    for (const auto& node : report.advisory) {
      out << "  advisory: node=" << node << " question=what_if\n";
    }
  }
  if (!any) {
    err << "error: no #contract section to check\n";
    return kCheckFailed;
  }
  if (open_total == 0) {
    out << "fully specified\n";
    return kOk;
  }
  return kCheckFailed;
}

int cmd_contract_query(const Options& options, std::ostream& out,
                       std::ostream& err) {
  auto question_it = options.flags.find("--question");
  auto node_it = options.flags.find("--node");
  if (question_it == options.flags.end() || node_it == options.flags.end()) {
    err << "error: contract query requires --question and --node\n";
    return kUsage;
  }
  const auto question = contract::parse_question(question_it->second);
  if (!question.has_value()) {
    err << "error: unknown question '" << question_it->second << "'\n";
    return kUsage;
  }

  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  for (const auto& section : document.sections) {
    const auto* contract_section = std::get_if<doc::ContractSection>(&section);
    if (contract_section == nullptr) continue;
    auto graph = doc::to_contract(document, *contract_section);
    if (!graph.ok()) {
      err << "error: " << graph.error().message << '\n';
      return kUsage;
    }
    auto targets = graph.value().query(*question, node_it->second);
    if (!targets.ok()) {
      err << "error: [" << to_string(targets.error().code) << "] "
          << targets.error().message << '\n';
      return kCheckFailed;
    }
    for (const auto& target : targets.value()) out << target << '\n';
    return kOk;
  }
  err << "error: no #contract section to query\n";
  return kCheckFailed;
}

int cmd_export(const Options& options, std::ostream& out, std::ostream& err) {
  auto format_it = options.flags.find("--format");
  if (format_it == options.flags.end()) {
    err << "error: export requires --format\n";
    return kUsage;
  }
  auto format = doc::parse_export_format(format_it->second);
  if (!format.ok()) {
    err << "error: " << format.error().message << '\n';
    return kUsage;
  }

  auto parsed = load_document(options.file, err);
  if (!parsed.has_value()) return kUsage;
  const doc::Document& document = parsed->document;

  for (const auto& section : document.sections) {
    if (const auto* rst_section = std::get_if<doc::RstSection>(&section)) {
      auto analysis = doc::to_analysis(document, *rst_section);
      if (!analysis.ok()) {
        err << "error: " << analysis.error().message << '\n';
        return kCheckFailed;
      }
      out << doc::export_graph(analysis.value(), format.value());
      return kOk;
    }
    if (const auto* argument = std::get_if<doc::ArgumentSection>(&section)) {
      auto structure = doc::to_structure(*argument);
      if (!structure.ok()) {
        err << "error: " << structure.error().message << '\n';
        return kCheckFailed;
      }
      out << doc::export_graph(structure.value(), format.value());
      return kOk;
    }
    if (const auto* contract_section =
            std::get_if<doc::ContractSection>(&section)) {
      auto graph = doc::to_contract(document, *contract_section);
      if (!graph.ok()) {
        err << "error: " << graph.error().message << '\n';
        return kCheckFailed;
      }
      out << doc::export_graph(graph.value(), format.value());
      return kOk;
    }
  }
  err << "error: nothing to export\n";
  return kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  if (args.empty()) {
    err << kUsageText;
    return kUsage;
  }
  const std::string& command = args[0];

  if (command == "validate") {
    auto options = scan_options(args, 1, {}, err);
    if (!options.has_value()) return kUsage;
    return cmd_validate(*options, out, err);
  }
  if (command == "catalog") {
    if (args.size() < 2 || args[1] != "list") {
      err << kUsageText;
      return kUsage;
    }
    return cmd_catalog_list(args, out, err);
  }
  if (command == "plan") {
    auto options = scan_options(args, 1, {"--goal", "--depth"}, err);
    if (!options.has_value()) return kUsage;
    return cmd_plan(*options, out, err);
  }
  if (command == "refine") {
    auto options = scan_options(args, 1, {"--enumerate", "--map"}, err);
    if (!options.has_value()) return kUsage;
    return cmd_refine(*options, out, err);
  }
  if (command == "contract") {
    if (args.size() < 2) {
      err << kUsageText;
      return kUsage;
    }
    if (args[1] == "check") {
      auto options = scan_options(args, 2, {"--checklist"}, err);
      if (!options.has_value()) return kUsage;
      return cmd_contract_check(*options, out, err);
    }
    if (args[1] == "query") {
      auto options = scan_options(args, 2, {"--question", "--node"}, err);
      if (!options.has_value()) return kUsage;
      return cmd_contract_query(*options, out, err);
    }
    err << kUsageText;
    return kUsage;
  }
  if (command == "export") {
    auto options = scan_options(args, 1, {"--format"}, err);
    if (!options.has_value()) return kUsage;
    return cmd_export(*options, out, err);
  }
  err << kUsageText;
  return kUsage;
}

}  // namespace arguendo::cli
