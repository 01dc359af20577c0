#include "arguendo/document.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace arguendo::doc {

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

// Whitespace-separated tokens; a token may embed one or more quoted
// segments, which keep their quotes for later unescaping.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    bool quoted = false;
    while (i < line.size() && (quoted || !is_space(line[i]))) {
      if (line[i] == '"') {
        quoted = !quoted;
      } else if (quoted && line[i] == '\\' && i + 1 < line.size()) {
        ++i;
      }
      ++i;
    }
    tokens.push_back(
        {line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

std::vector<std::string> split(const std::string& value, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : value) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size() + 2);
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run();

 private:
  enum class Where {
    kTop,
    kUnits,
    kCatalog,
    kRst,
    kArgument,
    kPlan,
    kContract
  };

  void error(int line, int column, std::string code, std::string message) {
    result_.diagnostics.push_back({Diagnostic::Severity::kError, line, column,
                                   std::move(code), std::move(message)});
  }

  // Unescapes a `"..."` value; diagnoses unquoted input and bad escapes.
  std::optional<std::string> unquote(const std::string& raw, int line,
                                     int column) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') {
      error(line, column, "MalformedValue", "expected a quoted string");
      return std::nullopt;
    }
    std::string out;
    const std::size_t end = raw.size() - 1;  // closing quote
    std::size_t i = 1;
    while (i < end) {
      if (raw[i] == '\\') {
        if (i + 1 >= end || (raw[i + 1] != '"' && raw[i + 1] != '\\')) {
          error(line, column, "InvalidEscape",
                "only \\\" and \\\\ escapes are recognized");
          return std::nullopt;
        }
        out.push_back(raw[i + 1]);
        i += 2;
      } else if (raw[i] == '"') {
        error(line, column, "MalformedValue", "stray quote inside value");
        return std::nullopt;
      } else {
        out.push_back(raw[i]);
        ++i;
      }
    }
    return out;
  }

  // key=value scanning over trailing tokens; returns false when a required
  // key is missing or an unknown key appears.
  struct KeyValues {
    std::map<std::string, std::pair<std::string, int>> values;
    bool take(const std::string& key, std::string* out) {
      auto it = values.find(key);
      if (it == values.end()) return false;
      *out = it->second.first;
      values.erase(it);
      return true;
    }
  };

  std::optional<KeyValues> keyvalues(const std::vector<Token>& tokens,
                                     std::size_t from, int line) {
    KeyValues kv;
    for (std::size_t i = from; i < tokens.size(); ++i) {
      const auto pos = tokens[i].text.find('=');
      if (pos == std::string::npos || pos == 0) {
        error(line, tokens[i].column, "MalformedValue",
              "expected key=value, got '" + tokens[i].text + "'");
        return std::nullopt;
      }
      const std::string key = tokens[i].text.substr(0, pos);
      if (kv.values.contains(key)) {
        error(line, tokens[i].column, "MalformedValue",
              "key '" + key + "' repeats");
        return std::nullopt;
      }
      kv.values[key] = {tokens[i].text.substr(pos + 1), tokens[i].column};
    }
    return kv;
  }

  void handle_header(const std::string& line, int line_no);
  void handle_units_line(const std::string& line, int line_no);
  void handle_catalog_line(const std::vector<Token>& tokens, int line_no);
  void handle_rst_line(const std::vector<Token>& tokens, int line_no);
  void handle_argument_line(const std::vector<Token>& tokens, int line_no);
  void handle_plan_line(const std::vector<Token>& tokens, int line_no);
  void handle_contract_line(const std::vector<Token>& tokens, int line_no);
  void finish();

  bool unit_exists(const std::string& id) const {
    return unit_index_.contains(id);
  }

  RstSection& rst() { return std::get<RstSection>(result_.document.sections.back()); }
  CatalogSection& cat() {
    return std::get<CatalogSection>(result_.document.sections.back());
  }
  ArgumentSection& argu() {
    return std::get<ArgumentSection>(result_.document.sections.back());
  }
  PlanSection& plan() {
    return std::get<PlanSection>(result_.document.sections.back());
  }
  ContractSection& contract() {
    return std::get<ContractSection>(result_.document.sections.back());
  }

  std::string_view text_;
  ParseResult result_;
  Where where_ = Where::kTop;
  bool saw_units_ = false;
  bool saw_catalog_ = false;
  std::map<std::string, std::size_t> unit_index_;
  std::set<std::string> section_names_;  // "<type>:<name>"
  // Per current section bookkeeping.
  std::set<std::string> current_props_;
  std::set<std::string> current_link_ids_;
  std::set<std::string> current_nodes_;
  bool plan_goal_seen_ = false;
  // Index into document.sections of the nearest preceding #argument.
  std::optional<std::size_t> last_argument_index_;
};

void Parser::handle_header(const std::string& line, int line_no) {
  const std::vector<Token> tokens = tokenize(line);
  const std::string& head = tokens[0].text;

  auto claim_name = [&](const std::string& type) -> std::optional<std::string> {
    if (tokens.size() != 2) {
      error(line_no, tokens[0].column, "MalformedSection",
            "#" + type + " needs exactly one name");
      return std::nullopt;
    }
    const std::string key = type + ":" + tokens[1].text;
    if (!section_names_.insert(key).second) {
      error(line_no, tokens[1].column, "DuplicateSection",
            "#" + type + " " + tokens[1].text + " repeats");
      return std::nullopt;
    }
    return tokens[1].text;
  };

  if (!saw_units_ && head != "#units") {
    error(line_no, tokens[0].column, "MissingUnitsSection",
          "#units must be the first section");
  }

  current_props_.clear();
  current_link_ids_.clear();
  current_nodes_.clear();
  plan_goal_seen_ = false;

  if (head == "#units") {
    if (saw_units_) {
      error(line_no, tokens[0].column, "DuplicateSection", "#units repeats");
      where_ = Where::kTop;
      return;
    }
    saw_units_ = true;
    where_ = Where::kUnits;
  } else if (head == "#catalog") {
    if (saw_catalog_) {
      error(line_no, tokens[0].column, "DuplicateSection", "#catalog repeats");
      where_ = Where::kTop;
      return;
    }
    saw_catalog_ = true;
    result_.document.sections.emplace_back(CatalogSection{{}, {}, line_no});
    where_ = Where::kCatalog;
  } else if (head == "#rst") {
    auto name = claim_name("rst");
    if (!name.has_value()) {
      where_ = Where::kTop;
      return;
    }
    result_.document.sections.emplace_back(RstSection{*name, {}, {}, line_no});
    where_ = Where::kRst;
  } else if (head == "#argument") {
    auto name = claim_name("argument");
    if (!name.has_value()) {
      where_ = Where::kTop;
      return;
    }
    result_.document.sections.emplace_back(
        ArgumentSection{*name, {}, {}, line_no});
    last_argument_index_ = result_.document.sections.size() - 1;
    where_ = Where::kArgument;
  } else if (head == "#plan") {
    auto name = claim_name("plan");
    if (!name.has_value()) {
      where_ = Where::kTop;
      return;
    }
    if (!last_argument_index_.has_value()) {
      error(line_no, tokens[0].column, "MissingArgumentSection",
            "#plan needs a preceding #argument section");
    }
    result_.document.sections.emplace_back(
        PlanSection{*name, "", {}, {}, line_no});
    where_ = Where::kPlan;
  } else if (head == "#contract") {
    auto name = claim_name("contract");
    if (!name.has_value()) {
      where_ = Where::kTop;
      return;
    }
    result_.document.sections.emplace_back(
        ContractSection{*name, {}, {}, {}, line_no});
    where_ = Where::kContract;
  } else {
    error(line_no, tokens[0].column, "UnknownSection",
          "unknown section header '" + head + "'");
    where_ = Where::kTop;
  }
}

void Parser::handle_units_line(const std::string& line, int line_no) {
  const std::size_t bar = line.find('|');
  if (bar == std::string::npos) {
    error(line_no, 1, "MalformedUnit", "expected '<id> | <text>'");
    return;
  }
  std::string id = line.substr(0, bar);
  while (!id.empty() && is_space(id.back())) id.pop_back();
  std::size_t lead = 0;
  while (lead < id.size() && is_space(id[lead])) ++lead;
  id = id.substr(lead);
  if (id.empty() || id.find(' ') != std::string::npos ||
      id.find('\t') != std::string::npos) {
    error(line_no, 1, "InvalidUnitId", "unit id must be one token");
    return;
  }
  if (id.find(',') != std::string::npos ||
      id.find("..") != std::string::npos ||
      (id.size() > 1 && id[0] == '@' &&
       std::all_of(id.begin() + 1, id.end(),
                   [](unsigned char c) { return std::isdigit(c); }))) {
    error(line_no, 1, "InvalidUnitId",
          "unit id '" + id + "' clashes with reference syntax");
    return;
  }
  if (unit_index_.contains(id)) {
    error(line_no, 1, "DuplicateId", "unit id '" + id + "' repeats");
    return;
  }
  std::string text = line.substr(bar + 1);
  if (!text.empty() && text.front() == ' ') text.erase(text.begin());
  unit_index_[id] = result_.document.units.size();
  result_.document.units.push_back({std::move(id), std::move(text), line_no});
}

void Parser::handle_catalog_line(const std::vector<Token>& tokens,
                                 int line_no) {
  const std::string& head = tokens[0].text;
  if (head == "relation") {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "relation line needs a name");
      return;
    }
    auto kv = keyvalues(tokens, 2, line_no);
    if (!kv.has_value()) return;
    CatalogRelDecl decl;
    decl.line = line_no;
    decl.definition.name = rst::normalize_relation_name(tokens[1].text);

    std::string value;
    if (!kv->take("nuclearity", &value) || (value != "mono" && value != "multi")) {
      error(line_no, tokens[0].column, "MalformedValue",
            "nuclearity must be mono or multi");
      return;
    }
    decl.definition.nuclearity =
        value == "mono" ? rst::Nuclearity::kMono : rst::Nuclearity::kMulti;
    if (!kv->take("argumentative", &value) ||
        (value != "true" && value != "false")) {
      error(line_no, tokens[0].column, "MalformedValue",
            "argumentative must be true or false");
      return;
    }
    decl.definition.argumentative = value == "true";
    for (const auto& [key, slot] :
         std::initializer_list<std::pair<const char*, std::string*>>{
             {"n", &decl.definition.constraints_on_nucleus},
             {"s", &decl.definition.constraints_on_satellite},
             {"ns", &decl.definition.constraints_on_combination},
             {"effect", &decl.definition.effect}}) {
      if (!kv->take(key, &value)) {
        error(line_no, tokens[0].column, "MissingField",
              std::string("relation line lacks ") + key + "=\"...\"");
        return;
      }
      auto unquoted = unquote(value, line_no, tokens[0].column);
      if (!unquoted.has_value()) return;
      if (unquoted->empty()) {
        error(line_no, tokens[0].column, "MissingField",
              std::string("field ") + key + " must not be empty");
        return;
      }
      *slot = *unquoted;
    }
    if (!kv->take("locus", &value) ||
        (value != "N" && value != "S" && value != "NS")) {
      error(line_no, tokens[0].column, "MalformedValue",
            "locus must be N, S or NS");
      return;
    }
    decl.definition.locus = value == "N"   ? rst::EffectLocus::kNucleus
                            : value == "S" ? rst::EffectLocus::kSatellite
                                           : rst::EffectLocus::kBoth;
    if (!kv->values.empty()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "unknown key '" + kv->values.begin()->first + "'");
      return;
    }
    if (rst::builtin_catalog().contains(decl.definition.name)) {
      error(line_no, tokens[1].column, "DuplicateName",
            "relation '" + decl.definition.name +
                "' would redefine a builtin relation");
      return;
    }
    for (const auto& other : cat().relations) {
      if (other.definition.name == decl.definition.name) {
        error(line_no, tokens[1].column, "DuplicateName",
              "relation '" + decl.definition.name + "' repeats");
        return;
      }
    }
    cat().relations.push_back(std::move(decl));
  } else if (head == "map") {
    if (tokens.size() != 3) {
      error(line_no, tokens[0].column, "MalformedValue",
            "expected 'map <FORM> <REL>[,<REL>...]'");
      return;
    }
    CatalogMapDecl decl;
    decl.line = line_no;
    decl.form = tokens[1].text;
    for (const auto& rel : split(tokens[2].text, ',')) {
      if (rel.empty()) {
        error(line_no, tokens[2].column, "MalformedValue",
              "empty relation name in map list");
        return;
      }
      decl.relations.push_back(rst::normalize_relation_name(rel));
    }
    cat().maps.push_back(std::move(decl));
  } else {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected 'relation' or 'map', got '" + head + "'");
  }
}

void Parser::handle_rst_line(const std::vector<Token>& tokens, int line_no) {
  const std::string& head = tokens[0].text;
  if (head == "unit") {
    if (tokens.size() != 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "expected 'unit <id>'");
      return;
    }
    if (!unit_exists(tokens[1].text)) {
      error(line_no, tokens[1].column, "UnknownUnit",
            "unit '" + tokens[1].text + "' is not declared in #units");
      return;
    }
    rst().leaves.push_back({tokens[1].text, line_no});
  } else if (head == "rel") {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "rel line needs a relation name");
      return;
    }
    auto kv = keyvalues(tokens, 2, line_no);
    if (!kv.has_value()) return;
    RstRelDecl decl;
    decl.line = line_no;
    decl.relation = tokens[1].text;

    auto parse_refs = [&](const std::string& value,
                          std::vector<std::string>* out) -> bool {
      for (const auto& ref : split(value, ',')) {
        if (ref.empty()) {
          error(line_no, tokens[0].column, "MalformedValue",
                "empty reference in list");
          return false;
        }
        if (ref[0] == '@') {
          std::size_t k = 0;
          for (std::size_t i = 1; i < ref.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(ref[i]))) {
              error(line_no, tokens[0].column, "MalformedValue",
                    "bad composite reference '" + ref + "'");
              return false;
            }
            k = k * 10 + static_cast<std::size_t>(ref[i] - '0');
          }
          if (k == 0 || k > rst().rels.size()) {
            error(line_no, tokens[0].column, "ForwardReference",
                  "composite reference '" + ref +
                      "' must name an earlier rel line");
            return false;
          }
        } else if (!unit_exists(ref)) {
          error(line_no, tokens[0].column, "UnknownUnit",
                "unit '" + ref + "' is not declared in #units");
          return false;
        }
        out->push_back(ref);
      }
      return true;
    };

    std::string value;
    if (!kv->take("nucleus", &value)) {
      error(line_no, tokens[0].column, "MalformedValue",
            "rel line needs nucleus=<ref,...>");
      return;
    }
    if (!parse_refs(value, &decl.nuclei)) return;
    if (kv->take("satellite", &value)) {
      if (!parse_refs(value, &decl.satellites)) return;
    }
    if (kv->take("tag", &value)) decl.tag = value;
    if (!kv->values.empty()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "unknown key '" + kv->values.begin()->first + "'");
      return;
    }
    rst().rels.push_back(std::move(decl));
  } else {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected 'unit' or 'rel', got '" + head + "'");
  }
}

void Parser::handle_argument_line(const std::vector<Token>& tokens,
                                  int line_no) {
  const std::string& head = tokens[0].text;
  if (head == "prop") {
    // prop <id> = atom <name> | not <id> | implies <id> <id> [text="..."]
    if (tokens.size() < 4 || tokens[2].text != "=") {
      error(line_no, tokens[0].column, "MalformedValue",
            "expected 'prop <id> = ...'");
      return;
    }
    PropDecl decl;
    decl.line = line_no;
    decl.id = tokens[1].text;
    if (current_props_.contains(decl.id)) {
      error(line_no, tokens[1].column, "DuplicateId",
            "proposition '" + decl.id + "' repeats");
      return;
    }
    const std::string& kind = tokens[3].text;
    std::size_t next = 4;
    auto operand = [&](std::string* out) -> bool {
      if (next >= tokens.size()) {
        error(line_no, tokens[0].column, "MalformedValue",
              "missing operand in prop line");
        return false;
      }
      *out = tokens[next++].text;
      return true;
    };
    if (kind == "atom") {
      decl.kind = arg::PropKind::kAtom;
      if (!operand(&decl.a)) return;
    } else if (kind == "not") {
      decl.kind = arg::PropKind::kNot;
      if (!operand(&decl.a)) return;
      if (!current_props_.contains(decl.a)) {
        error(line_no, tokens[0].column, "UnknownProposition",
              "operand '" + decl.a + "' is not declared above");
        return;
      }
    } else if (kind == "implies") {
      decl.kind = arg::PropKind::kImplies;
      if (!operand(&decl.a) || !operand(&decl.b)) return;
      for (const std::string* op : {&decl.a, &decl.b}) {
        if (!current_props_.contains(*op)) {
          error(line_no, tokens[0].column, "UnknownProposition",
                "operand '" + *op + "' is not declared above");
          return;
        }
      }
    } else {
      error(line_no, tokens[3].column, "MalformedValue",
            "proposition kind must be atom, not or implies");
      return;
    }
    if (next < tokens.size()) {
      auto kv = keyvalues(tokens, next, line_no);
      if (!kv.has_value()) return;
      std::string value;
      if (kv->take("text", &value)) {
        auto unquoted = unquote(value, line_no, tokens[0].column);
        if (!unquoted.has_value()) return;
        decl.text = *unquoted;
      }
      if (!kv->values.empty()) {
        error(line_no, tokens[0].column, "MalformedValue",
              "unknown key '" + kv->values.begin()->first + "'");
        return;
      }
    }
    current_props_.insert(decl.id);
    argu().props.push_back(std::move(decl));
  } else if (head == "link") {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "link line needs an id");
      return;
    }
    LinkDecl decl;
    decl.line = line_no;
    decl.id = tokens[1].text;
    if (!current_link_ids_.insert(decl.id).second) {
      error(line_no, tokens[1].column, "DuplicateId",
            "link '" + decl.id + "' repeats");
      return;
    }
    auto kv = keyvalues(tokens, 2, line_no);
    if (!kv.has_value()) return;
    std::string value;
    if (!kv->take("form", &value) ||
        (value != "MP" && value != "MT" && value != "IG")) {
      error(line_no, tokens[0].column, "MalformedValue",
            "form must be MP, MT or IG");
      return;
    }
    decl.form = value;
    if (!kv->take("premises", &value)) {
      error(line_no, tokens[0].column, "MalformedValue",
            "link line needs premises=<id,...>");
      return;
    }
    for (const auto& premise : split(value, ',')) {
      if (!current_props_.contains(premise)) {
        error(line_no, tokens[0].column, "UnknownProposition",
              "premise '" + premise + "' is not declared above");
        return;
      }
      decl.premises.push_back(premise);
    }
    if (!kv->take("conclusion", &value) || !current_props_.contains(value)) {
      error(line_no, tokens[0].column, "UnknownProposition",
            "link conclusion is missing or undeclared");
      return;
    }
    decl.conclusion = value;
    if (!kv->take("mode", &value) ||
        (value != "linked" && value != "convergent")) {
      error(line_no, tokens[0].column, "MalformedValue",
            "mode must be linked or convergent");
      return;
    }
    decl.mode = value;
    if (!kv->values.empty()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "unknown key '" + kv->values.begin()->first + "'");
      return;
    }
    argu().links.push_back(std::move(decl));
  } else {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected 'prop' or 'link', got '" + head + "'");
  }
}

void Parser::handle_plan_line(const std::vector<Token>& tokens, int line_no) {
  const std::string& head = tokens[0].text;
  if (tokens.size() != 2) {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected '" + head + " <prop-id>'");
    return;
  }
  const std::string& id = tokens[1].text;
  if (last_argument_index_.has_value()) {
    const auto& argument = std::get<ArgumentSection>(
        result_.document.sections[*last_argument_index_]);
    const bool known =
        std::any_of(argument.props.begin(), argument.props.end(),
                    [&](const PropDecl& p) { return p.id == id; });
    if (!known) {
      error(line_no, tokens[1].column, "UnknownProposition",
            "proposition '" + id + "' is not declared in the preceding "
            "#argument section");
      return;
    }
  }
  if (head == "goal") {
    if (plan_goal_seen_) {
      error(line_no, tokens[0].column, "DuplicateId",
            "plan already has a goal");
      return;
    }
    plan_goal_seen_ = true;
    plan().goal = id;
  } else if (head == "believe") {
    plan().believes.push_back(id);
  } else if (head == "kb") {
    plan().kb.push_back(id);
  } else {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected 'goal', 'believe' or 'kb', got '" + head + "'");
  }
}

void Parser::handle_contract_line(const std::vector<Token>& tokens,
                                  int line_no) {
  const std::string& head = tokens[0].text;
  auto parse_range = [&](const std::string& value, int column,
                         std::string* lo,
                         std::string* hi) -> bool {
    const auto pos = value.find("..");
    if (pos == std::string::npos || pos == 0 || pos + 2 >= value.size()) {
      error(line_no, column, "MalformedValue",
            "expected a '<id>..<id>' range, got '" + value + "'");
      return false;
    }
    *lo = value.substr(0, pos);
    *hi = value.substr(pos + 2);
    for (const std::string* id : {lo, hi}) {
      if (!unit_exists(*id)) {
        error(line_no, column, "UnknownUnit",
              "unit '" + *id + "' is not declared in #units");
        return false;
      }
    }
    if (unit_index_.at(*lo) > unit_index_.at(*hi)) {
      error(line_no, column, "MalformedValue",
            "range '" + value + "' runs backwards");
      return false;
    }
    return true;
  };

  if (head == "tree") {
    // tree <part>/<section>/<provision> = <lo..hi>
    if (tokens.size() != 4 || tokens[2].text != "=") {
      error(line_no, tokens[0].column, "MalformedValue",
            "expected 'tree <part>/<section>/<provision> = <id..id>'");
      return;
    }
    const auto path = split(tokens[1].text, '/');
    if (path.size() != 3 || path[0].empty() || path[1].empty() ||
        path[2].empty()) {
      error(line_no, tokens[1].column, "MalformedValue",
            "tree path must be <part>/<section>/<provision>");
      return;
    }
    TreeDecl decl;
    decl.line = line_no;
    decl.part = path[0];
    decl.section = path[1];
    decl.provision = path[2];
    if (!parse_range(tokens[3].text, tokens[3].column, &decl.lo, &decl.hi)) {
      return;
    }
    contract().trees.push_back(std::move(decl));
  } else if (head == "node") {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "node line needs an id");
      return;
    }
    NodeDecl decl;
    decl.line = line_no;
    decl.id = tokens[1].text;
    if (!current_nodes_.insert(decl.id).second) {
      error(line_no, tokens[1].column, "DuplicateId",
            "node '" + decl.id + "' repeats");
      return;
    }
    auto kv = keyvalues(tokens, 2, line_no);
    if (!kv.has_value()) return;
    std::string value;
    if (!kv->take("kind", &value) ||
        !contract::parse_node_kind(value).has_value()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "kind must be definition, prescription, procedure, term or issue");
      return;
    }
    decl.kind = value;
    if (kv->take("spans", &value)) {
      for (const auto& range : split(value, ',')) {
        std::string lo;
        std::string hi;
        if (!parse_range(range, tokens[0].column, &lo, &hi)) return;
        decl.spans.emplace_back(lo, hi);
      }
    }
    if (!kv->take("label", &value)) {
      error(line_no, tokens[0].column, "MalformedValue",
            "node line needs label=\"...\"");
      return;
    }
    auto unquoted = unquote(value, line_no, tokens[0].column);
    if (!unquoted.has_value()) return;
    decl.label = *unquoted;
    if (!kv->values.empty()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "unknown key '" + kv->values.begin()->first + "'");
      return;
    }
    if (decl.spans.empty() && decl.kind != "issue") {
      error(line_no, tokens[0].column, "MissingSpans",
            "only issue nodes may omit spans");
      return;
    }
    contract().nodes.push_back(std::move(decl));
  } else if (head == "arc") {
    if (tokens.size() < 2) {
      error(line_no, tokens[0].column, "MalformedValue",
            "arc line needs a question kind");
      return;
    }
    ArcDecl decl;
    decl.line = line_no;
    decl.question = tokens[1].text;
    if (decl.question != "xref" &&
        !contract::parse_question(decl.question).has_value()) {
      error(line_no, tokens[1].column, "MalformedValue",
            "arc kind must be who, when, how, what, what_if or xref");
      return;
    }
    auto kv = keyvalues(tokens, 2, line_no);
    if (!kv.has_value()) return;
    std::string value;
    for (auto [key, slot] :
         std::initializer_list<std::pair<const char*, std::string*>>{
             {"from", &decl.from}, {"to", &decl.to}}) {
      if (!kv->take(key, &value)) {
        error(line_no, tokens[0].column, "MalformedValue",
              std::string("arc line needs ") + key + "=<node-id>");
        return;
      }
      if (!current_nodes_.contains(value)) {
        error(line_no, tokens[0].column, "DanglingReference",
              "arc references unknown node '" + value + "'");
        return;
      }
      *slot = value;
    }
    if (decl.from == decl.to) {
      error(line_no, tokens[0].column, "SelfLoop",
            "node '" + decl.from + "' may not specify itself");
      return;
    }
    if (!kv->values.empty()) {
      error(line_no, tokens[0].column, "MalformedValue",
            "unknown key '" + kv->values.begin()->first + "'");
      return;
    }
    contract().arcs.push_back(std::move(decl));
  } else {
    error(line_no, tokens[0].column, "MalformedValue",
          "expected 'tree', 'node' or 'arc', got '" + head + "'");
  }
}

void Parser::finish() {
  if (!saw_units_ || result_.document.units.empty()) {
    result_.diagnostics.push_back({Diagnostic::Severity::kError, 1, 1,
                                   "MissingUnitsSection",
                                   "document declares no units"});
  }
  if (!result_.ok()) return;
  // Every section must construct its module value; residual construction
  // failures (e.g. tree tiling) are attributed to the section header.
  for (const auto& section : result_.document.sections) {
    if (const auto* rst_section = std::get_if<RstSection>(&section)) {
      if (auto value = to_analysis(result_.document, *rst_section);
          !value.ok()) {
        error(rst_section->line, 1, to_string(value.error().code),
              value.error().message);
      }
    } else if (const auto* argument = std::get_if<ArgumentSection>(&section)) {
      if (auto value = to_structure(*argument); !value.ok()) {
        error(argument->line, 1, to_string(value.error().code),
              value.error().message);
      }
    } else if (const auto* plan_section = std::get_if<PlanSection>(&section)) {
      if (auto value = to_planning_problem(result_.document, *plan_section);
          !value.ok()) {
        error(plan_section->line, 1, to_string(value.error().code),
              value.error().message);
      }
    } else if (const auto* contract_section =
                   std::get_if<ContractSection>(&section)) {
      if (auto value = to_contract(result_.document, *contract_section);
          !value.ok()) {
        error(contract_section->line, 1, to_string(value.error().code),
              value.error().message);
      }
    }
  }
  if (auto catalog = to_catalog(result_.document, rst::builtin_catalog());
      !catalog.ok()) {
    error(1, 1, to_string(catalog.error().code), catalog.error().message);
  }
}

ParseResult Parser::run() {
  int line_no = 0;
  std::size_t offset = 0;
  while (offset <= text_.size()) {
    const std::size_t newline = text_.find('\n', offset);
    std::string line(newline == std::string_view::npos
                         ? text_.substr(offset)
                         : text_.substr(offset, newline - offset));
    offset = newline == std::string_view::npos ? text_.size() + 1 : newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first >= line.size()) continue;       // blank
    if (line[first] == ';') continue;         // comment
    if (line[first] == '#') {
      handle_header(line.substr(first), line_no);
      continue;
    }
    switch (where_) {
      case Where::kTop:
        error(line_no, static_cast<int>(first) + 1, "MissingUnitsSection",
              "content before any section header");
        break;
      case Where::kUnits:
        handle_units_line(line, line_no);
        break;
      case Where::kCatalog:
        handle_catalog_line(tokenize(line), line_no);
        break;
      case Where::kRst:
        handle_rst_line(tokenize(line), line_no);
        break;
      case Where::kArgument:
        handle_argument_line(tokenize(line), line_no);
        break;
      case Where::kPlan:
        handle_plan_line(tokenize(line), line_no);
        break;
      case Where::kContract:
        handle_contract_line(tokenize(line), line_no);
        break;
    }
  }
  finish();
  return std::move(result_);
}

}  // namespace

ParseResult parse(std::string_view text) { return Parser(text).run(); }

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out.push_back(sep);
    out += part;
  }
  return out;
}

}  // namespace

std::string serialize(const Document& document) {
  std::ostringstream out;
  out << "#units\n";
  for (const auto& unit : document.units) {
    out << unit.id << " |";
    if (!unit.text.empty()) out << ' ' << unit.text;
    out << '\n';
  }
  for (const auto& section : document.sections) {
    if (const auto* cat = std::get_if<CatalogSection>(&section)) {
      out << "#catalog\n";
      for (const auto& rel : cat->relations) {
        const auto& d = rel.definition;
        out << "relation " << d.name << " nuclearity=" << to_string(d.nuclearity)
            << " argumentative=" << (d.argumentative ? "true" : "false")
            << " n=\"" << escape(d.constraints_on_nucleus) << "\" s=\""
            << escape(d.constraints_on_satellite) << "\" ns=\""
            << escape(d.constraints_on_combination) << "\" effect=\""
            << escape(d.effect) << "\" locus=" << to_string(d.locus) << '\n';
      }
      for (const auto& map : cat->maps) {
        out << "map " << map.form << ' ' << join(map.relations, ',') << '\n';
      }
    } else if (const auto* rst_section = std::get_if<RstSection>(&section)) {
      out << "#rst " << rst_section->name << '\n';
      for (const auto& leaf : rst_section->leaves) {
        out << "unit " << leaf.unit_id << '\n';
      }
      for (const auto& rel : rst_section->rels) {
        out << "rel " << rel.relation << " nucleus=" << join(rel.nuclei, ',');
        if (!rel.satellites.empty()) {
          out << " satellite=" << join(rel.satellites, ',');
        }
        if (rel.tag.has_value()) out << " tag=" << *rel.tag;
        out << '\n';
      }
    } else if (const auto* argument = std::get_if<ArgumentSection>(&section)) {
      out << "#argument " << argument->name << '\n';
      for (const auto& prop : argument->props) {
        out << "prop " << prop.id << " = ";
        switch (prop.kind) {
          case arg::PropKind::kAtom:
            out << "atom " << prop.a;
            break;
          case arg::PropKind::kNot:
            out << "not " << prop.a;
            break;
          case arg::PropKind::kImplies:
            out << "implies " << prop.a << ' ' << prop.b;
            break;
        }
        if (prop.text.has_value()) out << " text=\"" << escape(*prop.text) << '"';
        out << '\n';
      }
      for (const auto& link : argument->links) {
        out << "link " << link.id << " form=" << link.form
            << " premises=" << join(link.premises, ',')
            << " conclusion=" << link.conclusion << " mode=" << link.mode
            << '\n';
      }
    } else if (const auto* plan_section = std::get_if<PlanSection>(&section)) {
      out << "#plan " << plan_section->name << '\n';
      if (!plan_section->goal.empty()) {
        out << "goal " << plan_section->goal << '\n';
      }
      for (const auto& id : plan_section->believes) {
        out << "believe " << id << '\n';
      }
      for (const auto& id : plan_section->kb) out << "kb " << id << '\n';
    } else if (const auto* contract_section =
                   std::get_if<ContractSection>(&section)) {
      out << "#contract " << contract_section->name << '\n';
      for (const auto& tree : contract_section->trees) {
        out << "tree " << tree.part << '/' << tree.section << '/'
            << tree.provision << " = " << tree.lo << ".." << tree.hi << '\n';
      }
      for (const auto& node : contract_section->nodes) {
        out << "node " << node.id << " kind=" << node.kind;
        if (!node.spans.empty()) {
          out << " spans=";
          for (std::size_t i = 0; i < node.spans.size(); ++i) {
            if (i > 0) out << ',';
            out << node.spans[i].first << ".." << node.spans[i].second;
          }
        }
        out << " label=\"" << escape(node.label) << "\"\n";
      }
      for (const auto& arc : contract_section->arcs) {
        out << "arc " << arc.question << " from=" << arc.from
            << " to=" << arc.to << '\n';
      }
    }
  }
  return out.str();
}

Result<rst::Analysis> to_analysis(const Document& document,
                                  const RstSection& section) {
  std::map<std::string, std::size_t> doc_index;
  for (std::size_t i = 0; i < document.units.size(); ++i) {
    doc_index[document.units[i].id] = i;
  }
  // A reference is a composite "@k" (k decimal) or a unit id.
  auto composite_index = [](const std::string& ref) -> std::optional<std::size_t> {
    if (ref.size() < 2 || ref[0] != '@') return std::nullopt;
    std::size_t k = 0;
    for (std::size_t i = 1; i < ref.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(ref[i]))) {
        return std::nullopt;
      }
      k = k * 10 + static_cast<std::size_t>(ref[i] - '0');
    }
    return k;
  };
  // Units referenced by the section, in document order, densely reindexed.
  std::set<std::size_t> used;
  auto note = [&](const std::string& ref, bool allow_composite) -> Status {
    if (allow_composite && composite_index(ref).has_value()) return Status();
    auto it = doc_index.find(ref);
    if (it == doc_index.end()) {
      return make_error(Errc::kDanglingReference,
                        "unit '" + ref + "' is not declared in #units");
    }
    used.insert(it->second);
    return Status();
  };
  for (const auto& leaf : section.leaves) {
    if (auto s = note(leaf.unit_id, false); !s.ok()) return s.error();
  }
  for (const auto& rel : section.rels) {
    for (const auto& ref : rel.nuclei) {
      if (auto s = note(ref, true); !s.ok()) return s.error();
    }
    for (const auto& ref : rel.satellites) {
      if (auto s = note(ref, true); !s.ok()) return s.error();
    }
  }
  std::map<std::string, std::size_t> dense;
  std::vector<rst::TextUnit> units;
  for (std::size_t doc_i : used) {
    dense[document.units[doc_i].id] = units.size();
    units.push_back({document.units[doc_i].id, document.units[doc_i].text});
  }
  std::vector<rst::Composite> composites;
  for (std::size_t k = 0; k < section.rels.size(); ++k) {
    const auto& rel = section.rels[k];
    rst::Composite comp;
    comp.relation = rel.relation;
    comp.tag = rel.tag;
    auto resolve = [&](const std::string& ref) -> Result<rst::NodeRef> {
      if (const auto index = composite_index(ref)) {
        if (*index == 0 || *index > k) {
          return make_error(Errc::kDanglingReference,
                            "composite reference '" + ref +
                                "' must name an earlier rel line");
        }
        return rst::NodeRef::composite(*index - 1);
      }
      return rst::NodeRef::unit(dense.at(ref));
    };
    for (const auto& ref : rel.nuclei) {
      auto node = resolve(ref);
      if (!node.ok()) return node.error();
      comp.nuclei.push_back(node.value());
    }
    for (const auto& ref : rel.satellites) {
      auto node = resolve(ref);
      if (!node.ok()) return node.error();
      comp.satellites.push_back(node.value());
    }
    composites.push_back(std::move(comp));
  }
  return rst::Analysis::create(std::move(units), std::move(composites));
}

Result<rst::Catalog> to_catalog(const Document& document,
                                const rst::Catalog& base) {
  rst::Catalog catalog = base;
  for (const auto& section : document.sections) {
    const auto* cat = std::get_if<CatalogSection>(&section);
    if (cat == nullptr) continue;
    for (const auto& rel : cat->relations) {
      auto extended = register_relation(catalog, rel.definition);
      if (!extended.ok()) return extended.error();
      catalog = std::move(extended).value();
    }
  }
  return catalog;
}

Result<arg::ArgumentStructure> to_structure(const ArgumentSection& section) {
  arg::ArgumentStructure structure;
  for (const auto& prop : section.props) {
    Result<std::string> added = [&]() -> Result<std::string> {
      switch (prop.kind) {
        case arg::PropKind::kAtom:
          return structure.add_atom(prop.id, prop.a, prop.text);
        case arg::PropKind::kNot:
          return structure.add_negation(prop.id, prop.a, prop.text);
        case arg::PropKind::kImplies:
          return structure.add_implication(prop.id, prop.a, prop.b, prop.text);
      }
      return make_error(Errc::kInvalidStructure, "malformed proposition");
    }();
    if (!added.ok()) return added.error();
  }
  for (const auto& link : section.links) {
    arg::SupportLink value;
    value.id = link.id;
    value.form = link.form;
    value.premises = link.premises;
    value.conclusion = link.conclusion;
    value.mode = link.mode == "convergent" ? arg::SupportMode::kConvergent
                                           : arg::SupportMode::kLinked;
    if (auto added = structure.add_link(std::move(value)); !added.ok()) {
      return added.error();
    }
  }
  return structure;
}

Result<planner::PlanningProblem> to_planning_problem(
    const Document& document, const PlanSection& section) {
  // The universe is the nearest preceding #argument section.
  const ArgumentSection* argument = nullptr;
  for (const auto& candidate : document.sections) {
    if (const auto* a = std::get_if<ArgumentSection>(&candidate)) {
      argument = a;
    } else if (const auto* p = std::get_if<PlanSection>(&candidate)) {
      if (p == &section) break;
    }
  }
  if (argument == nullptr) {
    return make_error(Errc::kDanglingReference,
                      "#plan " + section.name +
                          " has no preceding #argument section");
  }
  auto context = to_structure(*argument);
  if (!context.ok()) return context.error();
  planner::PlanningProblem problem;
  problem.context = std::move(context).value();
  for (const auto& id : section.believes) {
    auto next = problem.hearer.believing(problem.context, id);
    if (!next.ok()) return next.error();
    problem.hearer = std::move(next).value();
  }
  for (const auto& id : section.kb) {
    const std::string canonical = problem.context.resolve(id);
    if (canonical.empty()) {
      return make_error(Errc::kDanglingReference,
                        "kb proposition '" + id + "' is unknown");
    }
    problem.speaker_kb.insert(canonical);
  }
  return problem;
}

Result<contract::ContractGraph> to_contract(const Document& document,
                                            const ContractSection& section) {
  std::map<std::string, std::size_t> doc_index;
  for (std::size_t i = 0; i < document.units.size(); ++i) {
    doc_index[document.units[i].id] = i;
  }
  auto range = [&](const std::string& lo,
                   const std::string& hi) -> Result<rst::TextSpan> {
    auto lo_it = doc_index.find(lo);
    auto hi_it = doc_index.find(hi);
    if (lo_it == doc_index.end() || hi_it == doc_index.end()) {
      return make_error(Errc::kDanglingReference,
                        "range endpoint is not a declared unit");
    }
    if (lo_it->second > hi_it->second) {
      return make_error(Errc::kSpanOutOfRange, "range runs backwards");
    }
    return rst::TextSpan{lo_it->second, hi_it->second};
  };

  std::vector<contract::Provision> provisions;
  for (const auto& tree : section.trees) {
    auto span = range(tree.lo, tree.hi);
    if (!span.ok()) return span.error();
    provisions.push_back(
        {tree.part, tree.section, tree.provision, span.value()});
  }
  auto tree = contract::SyntacticTree::create(document.units.size(),
                                              std::move(provisions));
  if (!tree.ok()) return tree.error();

  std::vector<contract::ContractNode> nodes;
  for (const auto& node : section.nodes) {
    contract::ContractNode value;
    value.id = node.id;
    value.kind = *contract::parse_node_kind(node.kind);
    value.label = node.label;
    for (const auto& [lo, hi] : node.spans) {
      auto span = range(lo, hi);
      if (!span.ok()) return span.error();
      value.spans.push_back(span.value());
    }
    nodes.push_back(std::move(value));
  }
  std::vector<contract::SpecArc> spec_arcs;
  std::vector<contract::CrossRef> cross_refs;
  for (const auto& arc : section.arcs) {
    if (arc.question == "xref") {
      cross_refs.push_back({arc.from, arc.to});
    } else {
      spec_arcs.push_back(
          {arc.from, arc.to, *contract::parse_question(arc.question)});
    }
  }
  return contract::ContractGraph::create(std::move(tree).value(),
                                         std::move(nodes),
                                         std::move(spec_arcs),
                                         std::move(cross_refs));
}

Result<planner::RefinementMap> to_refinement_map(const Document& document) {
  planner::RefinementMap map;
  bool declared = false;
  for (const auto& section : document.sections) {
    const auto* cat = std::get_if<CatalogSection>(&section);
    if (cat == nullptr) continue;
    for (const auto& decl : cat->maps) {
      declared = true;
      map.targets[decl.form] = decl.relations;
    }
  }
  if (!declared) return planner::default_refinement_map();
  return map;
}

Document from_forest(const planner::RstForest& forest) {
  Document document;
  std::set<std::string> taken;
  std::map<const rst::Analysis*, std::vector<std::string>> id_of;

  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    const rst::Analysis& analysis = forest.trees[t].analysis;
    auto& ids = id_of[&analysis];
    for (const auto& unit : analysis.units()) {
      std::string id = unit.id;
      if (taken.contains(id)) id = "t" + std::to_string(t + 1) + "." + id;
      while (taken.contains(id)) id += "'";
      taken.insert(id);
      ids.push_back(id);
      document.units.push_back({id, unit.text, 0});
    }
  }

  std::map<std::string, int> name_counts;
  for (const auto& tree : forest.trees) {
    const rst::Analysis& analysis = tree.analysis;
    const auto& ids = id_of[&analysis];
    std::string name = arg::to_string(tree.section);
    const int count = ++name_counts[name];
    if (count > 1) name += "-" + std::to_string(count);

    RstSection section;
    section.name = name;
    std::vector<bool> referenced(analysis.units().size(), false);
    for (const auto& comp : analysis.composites()) {
      for (const auto& ref : comp.nuclei) {
        if (ref.kind == rst::NodeRef::Kind::kUnit) referenced[ref.index] = true;
      }
      for (const auto& ref : comp.satellites) {
        if (ref.kind == rst::NodeRef::Kind::kUnit) referenced[ref.index] = true;
      }
    }
    for (std::size_t i = 0; i < analysis.units().size(); ++i) {
      if (!referenced[i]) section.leaves.push_back({ids[i], 0});
    }
    for (const auto& comp : analysis.composites()) {
      RstRelDecl decl;
      decl.relation = comp.relation;
      decl.tag = comp.tag;
      auto name_of = [&](const rst::NodeRef& ref) {
        return ref.kind == rst::NodeRef::Kind::kUnit
                   ? ids[ref.index]
                   : "@" + std::to_string(ref.index + 1);
      };
      for (const auto& ref : comp.nuclei) decl.nuclei.push_back(name_of(ref));
      for (const auto& ref : comp.satellites) {
        decl.satellites.push_back(name_of(ref));
      }
      section.rels.push_back(std::move(decl));
    }
    document.sections.emplace_back(std::move(section));
  }
  return document;
}

CatalogFileResult parse_catalog_file(std::string_view text) {
  CatalogFileResult result;
  // Accept either a full document or a bare #catalog section; prepend a
  // minimal #units stub when absent so both shapes share one parser.
  bool bare = false;
  {
    std::size_t offset = 0;
    while (offset <= text.size()) {
      const std::size_t newline = text.find('\n', offset);
      std::string_view line = newline == std::string_view::npos
                                  ? text.substr(offset)
                                  : text.substr(offset, newline - offset);
      offset = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
      std::size_t first = 0;
      while (first < line.size() && is_space(line[first])) ++first;
      if (first >= line.size() || line[first] == ';') continue;
      bare = line.substr(first).starts_with("#catalog");
      break;
    }
  }
  std::string padded;
  std::string_view body = text;
  if (bare) {
    padded = "#units\n0 | extension file\n";
    padded += std::string(text);
    body = padded;
  }
  ParseResult parsed = parse(body);
  for (auto& d : parsed.diagnostics) {
    if (bare) d.line -= 2;  // account for the prepended stub
    result.diagnostics.push_back(std::move(d));
  }
  for (const auto& section : parsed.document.sections) {
    if (const auto* cat = std::get_if<CatalogSection>(&section)) {
      result.section = *cat;
      return result;
    }
  }
  if (result.ok()) {
    result.diagnostics.push_back({Diagnostic::Severity::kError, 1, 1,
                                  "MissingCatalogSection",
                                  "file declares no #catalog section"});
  }
  return result;
}

Result<contract::Checklist> parse_checklist(std::string_view text) {
  contract::Checklist checklist;
  checklist.required.clear();
  int line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t newline = text.find('\n', offset);
    std::string line(newline == std::string_view::npos
                         ? text.substr(offset)
                         : text.substr(offset, newline - offset));
    offset = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first >= line.size() || line[first] == ';') continue;
    const std::vector<Token> tokens = tokenize(line);
    if (tokens.size() != 2) {
      return make_error(Errc::kUnsupportedFormat,
                        "line " + std::to_string(line_no) +
                            ": expected '<kind> <question>[,<question>...]'");
    }
    const auto kind = contract::parse_node_kind(tokens[0].text);
    if (!kind.has_value()) {
      return make_error(Errc::kUnsupportedFormat,
                        "line " + std::to_string(line_no) + ": unknown kind '" +
                            tokens[0].text + "'");
    }
    for (const auto& token : split(tokens[1].text, ',')) {
      const auto question = contract::parse_question(token);
      if (!question.has_value()) {
        return make_error(Errc::kUnsupportedFormat,
                          "line " + std::to_string(line_no) +
                              ": unknown question '" + token + "'");
      }
      checklist.required[*kind].insert(*question);
    }
  }
  return checklist;
}

}  // namespace arguendo::doc
