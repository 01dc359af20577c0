#include "arguendo/argument.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <queue>

namespace arguendo::arg {

const char* to_string(SupportMode m) {
  return m == SupportMode::kLinked ? "linked" : "convergent";
}

const char* to_string(SectionKind kind) {
  switch (kind) {
    case SectionKind::kIntroduction: return "introduction";
    case SectionKind::kProposition: return "proposition";
    case SectionKind::kDivision: return "division";
    case SectionKind::kNarration: return "narration";
    case SectionKind::kArgumentative: return "argumentative";
    case SectionKind::kPathetic: return "pathetic";
    case SectionKind::kConclusion: return "conclusion";
  }
  return "argumentative";
}

FormRegistry FormRegistry::builtin() {
  FormRegistry registry;
  {
    FormSchema mp;
    mp.name = "MP";
    mp.premises = {SchemaTerm::variable("p"), SchemaTerm::implication("p", "q")};
    mp.conclusion = SchemaTerm::variable("q");
    registry.schemas_.push_back(std::move(mp));
  }
  {
    FormSchema mt;
    mt.name = "MT";
    mt.premises = {SchemaTerm::implication("p", "q"), SchemaTerm::negation("q")};
    mt.conclusion = SchemaTerm::negation("p");
    registry.schemas_.push_back(std::move(mt));
  }
  {
    FormSchema ig;
    ig.name = "IG";
    ig.variadic_instances = true;
    registry.schemas_.push_back(std::move(ig));
  }
  return registry;
}

const FormSchema* FormRegistry::find(std::string_view name) const {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return static_cast<char>(std::toupper(c));
  });
  for (const auto& schema : schemas_) {
    if (schema.name == key) return &schema;
  }
  return nullptr;
}

Result<FormRegistry> FormRegistry::with(FormSchema schema) const {
  if (schema.name.empty()) {
    return make_error(Errc::kSchemaMismatch, "form name is empty");
  }
  if (find(schema.name) != nullptr) {
    return make_error(Errc::kDuplicateName,
                      "form " + schema.name + " is already registered");
  }
  FormRegistry extended = *this;
  extended.schemas_.push_back(std::move(schema));
  return extended;
}

namespace {

Result<std::string> intern(std::vector<Proposition>& props,
                           std::map<std::string, std::string>& alias,
                           std::map<PropContent, std::string>& by_content,
                           std::string id, PropContent content,
                           std::optional<std::string> text) {
  if (id.empty()) {
    return make_error(Errc::kDanglingReference, "proposition id is empty");
  }
  if (auto it = by_content.find(content); it != by_content.end()) {
    if (auto known = alias.find(id);
        known != alias.end() && known->second != it->second) {
      return make_error(Errc::kDuplicateName,
                        "id '" + id + "' already names a different proposition");
    }
    alias[id] = it->second;
    return it->second;
  }
  if (alias.contains(id)) {
    return make_error(Errc::kDuplicateName,
                      "id '" + id + "' already names a different proposition");
  }
  alias[id] = id;
  by_content[content] = id;
  props.push_back({id, std::move(content), std::move(text)});
  return id;
}

}  // namespace

Result<std::string> ArgumentStructure::add_atom(std::string id,
                                                std::string name,
                                                std::optional<std::string> text) {
  return intern(props_, alias_, by_content_, std::move(id),
                PropContent::atom(std::move(name)), std::move(text));
}

Result<std::string> ArgumentStructure::add_negation(
    std::string id, const std::string& inner_id,
    std::optional<std::string> text) {
  const std::string inner = resolve(inner_id);
  if (inner.empty()) {
    return make_error(Errc::kDanglingReference,
                      "unknown proposition '" + inner_id + "'");
  }
  const Proposition* p = find(inner);
  if (p->content.kind == PropKind::kNot) {
    // Double negation collapses to the inner proposition.
    const std::string target = p->content.a;
    if (auto known = alias_.find(id);
        known != alias_.end() && known->second != target) {
      return make_error(Errc::kDuplicateName,
                        "id '" + id + "' already names a different proposition");
    }
    alias_[id] = target;
    return target;
  }
  return intern(props_, alias_, by_content_, std::move(id),
                PropContent::negation(inner), std::move(text));
}

Result<std::string> ArgumentStructure::add_implication(
    std::string id, const std::string& antecedent_id,
    const std::string& consequent_id, std::optional<std::string> text) {
  const std::string a = resolve(antecedent_id);
  const std::string b = resolve(consequent_id);
  if (a.empty() || b.empty()) {
    return make_error(Errc::kDanglingReference,
                      "unknown proposition '" +
                          (a.empty() ? antecedent_id : consequent_id) + "'");
  }
  return intern(props_, alias_, by_content_, std::move(id),
                PropContent::implication(a, b), std::move(text));
}

Result<std::string> ArgumentStructure::add_link(SupportLink link) {
  for (const auto& existing : links_) {
    if (existing.id == link.id) {
      return make_error(Errc::kDuplicateName,
                        "link id '" + link.id + "' is already in use");
    }
  }
  for (auto& premise : link.premises) {
    const std::string canonical = resolve(premise);
    if (canonical.empty()) {
      return make_error(Errc::kDanglingReference,
                        "link premise '" + premise + "' is unknown");
    }
    premise = canonical;
  }
  const std::string conclusion = resolve(link.conclusion);
  if (conclusion.empty()) {
    return make_error(Errc::kDanglingReference,
                      "link conclusion '" + link.conclusion + "' is unknown");
  }
  link.conclusion = conclusion;
  if (link.premises.empty()) {
    return make_error(Errc::kSchemaMismatch,
                      "link '" + link.id + "' has no premises");
  }
  links_.push_back(std::move(link));
  return links_.back().id;
}

std::string ArgumentStructure::resolve(std::string_view id) const {
  auto it = alias_.find(std::string(id));
  return it == alias_.end() ? std::string() : it->second;
}

const Proposition* ArgumentStructure::find(std::string_view id) const {
  const std::string canonical = resolve(id);
  if (canonical.empty()) return nullptr;
  for (const auto& p : props_) {
    if (p.id == canonical) return &p;
  }
  return nullptr;
}

const Proposition* ArgumentStructure::find_content(const PropContent& c) const {
  auto it = by_content_.find(c);
  if (it == by_content_.end()) return nullptr;
  return find(it->second);
}

std::optional<std::string> ArgumentStructure::negation_of(
    std::string_view id) const {
  const Proposition* p = find(id);
  if (p == nullptr) return std::nullopt;
  if (p->content.kind == PropKind::kNot) return p->content.a;
  if (const Proposition* neg = find_content(PropContent::negation(p->id))) {
    return neg->id;
  }
  return std::nullopt;
}

std::vector<std::string> ArgumentStructure::participants() const {
  // Propositions that serve as premise or conclusion of some link. Operand
  // ids that appear only inside compound contents are vocabulary, not nodes
  // of the argument map. Without links, the whole store participates.
  if (links_.empty()) {
    std::vector<std::string> all;
    for (const auto& p : props_) all.push_back(p.id);
    return all;
  }
  std::set<std::string> ids;
  for (const auto& link : links_) {
    ids.insert(link.premises.begin(), link.premises.end());
    ids.insert(link.conclusion);
  }
  std::vector<std::string> ordered;
  for (const auto& p : props_) {
    if (ids.contains(p.id)) ordered.push_back(p.id);
  }
  return ordered;
}

Result<std::string> ArgumentStructure::root() const {
  if (props_.empty()) {
    return make_error(Errc::kInvalidStructure, "structure has no propositions");
  }
  std::set<std::string> supporting;
  for (const auto& link : links_) {
    for (const auto& premise : link.premises) supporting.insert(premise);
  }
  std::vector<std::string> sinks;
  for (const auto& id : participants()) {
    if (!supporting.contains(id)) sinks.push_back(id);
  }
  if (sinks.size() == 1) return sinks.front();
  if (sinks.empty()) {
    return make_error(Errc::kInvalidStructure,
                      "every proposition supports another (cycle)");
  }
  std::string detail;
  for (const auto& s : sinks) {
    if (!detail.empty()) detail += ", ";
    detail += s;
  }
  return make_error(Errc::kMultipleRoots,
                    "multiple root conclusions: " + detail);
}

bool operator==(const ArgumentStructure& a, const ArgumentStructure& b) {
  return a.props_ == b.props_ && a.links_ == b.links_;
}

bool check_single_structure(const ArgumentStructure& structure,
                            StructureDiagnostics* diagnostics) {
  StructureDiagnostics local;
  StructureDiagnostics& diag = diagnostics != nullptr ? *diagnostics : local;
  diag = StructureDiagnostics{};

  if (structure.propositions().empty()) {
    diag.connected = false;
    diag.detail = "structure has no propositions";
    return false;
  }
  const std::vector<std::string> nodes = structure.participants();

  // Support edges premise -> conclusion.
  std::map<std::string, std::vector<std::string>> out;
  std::map<std::string, std::size_t> in_degree;
  for (const auto& id : nodes) {
    out[id];
    in_degree[id] = 0;
  }
  for (const auto& link : structure.links()) {
    for (const auto& premise : link.premises) {
      out[premise].push_back(link.conclusion);
      ++in_degree[link.conclusion];
    }
  }

  // Acyclicity via Kahn's algorithm.
  {
    auto degree = in_degree;
    std::queue<std::string> ready;
    for (const auto& [id, d] : degree) {
      if (d == 0) ready.push(id);
    }
    std::size_t visited = 0;
    while (!ready.empty()) {
      const std::string id = ready.front();
      ready.pop();
      ++visited;
      for (const auto& next : out[id]) {
        if (--degree[next] == 0) ready.push(next);
      }
    }
    diag.acyclic = visited == nodes.size();
    if (!diag.acyclic) diag.detail = "support relation contains a cycle";
  }

  // Weak connectivity via union-find over link endpoints.
  {
    std::map<std::string, std::string> parent;
    for (const auto& id : nodes) parent[id] = id;
    std::function<std::string(const std::string&)> find_root =
        [&](const std::string& x) -> std::string {
      if (parent[x] == x) return x;
      return parent[x] = find_root(parent[x]);
    };
    auto unite = [&](const std::string& x, const std::string& y) {
      parent[find_root(x)] = find_root(y);
    };
    for (const auto& link : structure.links()) {
      for (const auto& premise : link.premises) {
        unite(premise, link.conclusion);
      }
    }
    std::set<std::string> components;
    for (const auto& id : nodes) components.insert(find_root(id));
    diag.connected = components.size() == 1;
    if (!diag.connected && diag.detail.empty()) {
      diag.detail = std::to_string(components.size()) + " disconnected fragments";
    }
  }

  // Root conclusions: participants that support nothing.
  {
    std::set<std::string> supporting;
    for (const auto& link : structure.links()) {
      for (const auto& premise : link.premises) supporting.insert(premise);
    }
    for (const auto& id : nodes) {
      if (!supporting.contains(id)) diag.roots.push_back(id);
    }
  }

  return diag.acyclic && diag.connected && diag.roots.size() == 1;
}

namespace {

// Content-derived id for a synthesized compound, disambiguated if taken.
std::string fresh_id(const ArgumentStructure& context,
                     const std::vector<Proposition>& pending, std::string base) {
  auto taken = [&](const std::string& id) {
    if (!context.resolve(id).empty()) return true;
    return std::any_of(pending.begin(), pending.end(),
                       [&](const Proposition& p) { return p.id == id; });
  };
  std::string id = std::move(base);
  while (taken(id)) id += "'";
  return id;
}

}  // namespace

Result<FormInstance> instantiate_form(const ArgumentStructure& context,
                                      const FormRegistry& registry,
                                      std::string_view form,
                                      const Bindings& bindings) {
  const FormSchema* schema = registry.find(form);
  if (schema == nullptr) {
    return make_error(Errc::kUnmappedForm,
                      "unknown argument form '" + std::string(form) + "'");
  }

  FormInstance instance;
  instance.link.form = schema->name;
  instance.link.mode = schema->mode;

  if (schema->variadic_instances) {
    if (bindings.instances.size() < 2) {
      return make_error(Errc::kSchemaMismatch,
                        "inductive generalisation requires at least two "
                        "instances");
    }
    for (const auto& inst : bindings.instances) {
      const Proposition* p = context.find(inst);
      if (p == nullptr) {
        return make_error(Errc::kDanglingReference,
                          "unknown proposition '" + inst + "'");
      }
      if (p->content.kind != PropKind::kAtom) {
        return make_error(Errc::kSchemaMismatch,
                          "instance '" + inst + "' is not an atom");
      }
      instance.link.premises.push_back(p->id);
    }
    const Proposition* cls = context.find(bindings.generalization);
    if (cls == nullptr) {
      return make_error(Errc::kDanglingReference,
                        "unknown generalization '" + bindings.generalization +
                            "'");
    }
    if (cls->content.kind != PropKind::kAtom) {
      return make_error(Errc::kSchemaMismatch,
                        "generalization '" + bindings.generalization +
                            "' is not an atom");
    }
    instance.link.conclusion = cls->id;
  } else {
    // Resolve a schema term to a proposition id, synthesizing compounds.
    auto materialize = [&](const SchemaTerm& term) -> Result<std::string> {
      auto bound = [&](const std::string& var) -> Result<std::string> {
        auto it = bindings.vars.find(var);
        if (it == bindings.vars.end()) {
          return make_error(Errc::kSchemaMismatch,
                            "binding for schema variable '" + var +
                                "' is missing");
        }
        const std::string canonical = context.resolve(it->second);
        if (canonical.empty()) {
          return make_error(Errc::kDanglingReference,
                            "unknown proposition '" + it->second + "'");
        }
        return canonical;
      };
      switch (term.kind) {
        case PropKind::kAtom:
          return bound(term.var_a);
        case PropKind::kNot: {
          auto inner = bound(term.var_a);
          if (!inner.ok()) return inner;
          const Proposition* p = context.find(inner.value());
          if (p->content.kind == PropKind::kNot) return p->content.a;
          const PropContent content = PropContent::negation(inner.value());
          if (const Proposition* existing = context.find_content(content)) {
            return existing->id;
          }
          for (const auto& pending : instance.generated) {
            if (pending.content == content) return pending.id;
          }
          Proposition fresh{
              fresh_id(context, instance.generated, "~" + inner.value()),
              content, std::nullopt};
          instance.generated.push_back(fresh);
          return fresh.id;
        }
        case PropKind::kImplies: {
          auto a = bound(term.var_a);
          if (!a.ok()) return a;
          auto b = bound(term.var_b);
          if (!b.ok()) return b;
          const PropContent content =
              PropContent::implication(a.value(), b.value());
          if (const Proposition* existing = context.find_content(content)) {
            return existing->id;
          }
          for (const auto& pending : instance.generated) {
            if (pending.content == content) return pending.id;
          }
          Proposition fresh{
              fresh_id(context, instance.generated,
                       "(" + a.value() + ">" + b.value() + ")"),
              content, std::nullopt};
          instance.generated.push_back(fresh);
          return fresh.id;
        }
      }
      return make_error(Errc::kSchemaMismatch, "malformed schema term");
    };
    for (const auto& term : schema->premises) {
      auto id = materialize(term);
      if (!id.ok()) return id.error();
      instance.link.premises.push_back(id.value());
    }
    auto conclusion = materialize(schema->conclusion);
    if (!conclusion.ok()) return conclusion.error();
    instance.link.conclusion = conclusion.value();
  }

  std::string joined;
  for (const auto& premise : instance.link.premises) {
    if (!joined.empty()) joined += ",";
    joined += premise;
  }
  instance.link.id = schema->name + "(" + joined + ")";
  return instance;
}

Result<ArgumentStructure> add_support(const ArgumentStructure& structure,
                                      const FormInstance& instance) {
  ArgumentStructure next = structure;
  for (const auto& p : instance.generated) {
    Result<std::string> added = [&]() -> Result<std::string> {
      switch (p.content.kind) {
        case PropKind::kAtom:
          return next.add_atom(p.id, p.content.a, p.surface_text);
        case PropKind::kNot:
          return next.add_negation(p.id, p.content.a, p.surface_text);
        case PropKind::kImplies:
          return next.add_implication(p.id, p.content.a, p.content.b,
                                      p.surface_text);
      }
      return make_error(Errc::kSchemaMismatch, "malformed proposition");
    }();
    if (!added.ok()) return added.error();
  }
  if (auto added = next.add_link(instance.link); !added.ok()) {
    return added.error();
  }

  StructureDiagnostics diag;
  if (!check_single_structure(next, &diag)) {
    if (!diag.acyclic) {
      return make_error(Errc::kCycleDetected,
                        "support would close a cycle through '" +
                            instance.link.conclusion + "'");
    }
    if (!diag.connected) {
      return make_error(Errc::kDisconnectedFragment, diag.detail);
    }
    std::string roots;
    for (const auto& r : diag.roots) {
      if (!roots.empty()) roots += ", ";
      roots += r;
    }
    return make_error(Errc::kMultipleRoots,
                      "multiple root conclusions: " + roots);
  }
  return next;
}

namespace {

// Unifies one schema term with a stored proposition under a growing variable
// binding.
bool unify_term(const ArgumentStructure& structure, const SchemaTerm& term,
                const std::string& prop_id,
                std::map<std::string, std::string>& binding) {
  auto bind = [&](const std::string& var, const std::string& id) {
    auto [it, inserted] = binding.emplace(var, id);
    return inserted || it->second == id;
  };
  const Proposition* p = structure.find(prop_id);
  if (p == nullptr) return false;
  switch (term.kind) {
    case PropKind::kAtom:
      return bind(term.var_a, p->id);
    case PropKind::kNot: {
      // Double negation is normalized away, so a negative pattern matches a
      // negation directly or any proposition whose negation is stored.
      if (p->content.kind == PropKind::kNot) {
        return bind(term.var_a, p->content.a);
      }
      if (const auto neg = structure.negation_of(p->id)) {
        return bind(term.var_a, *neg);
      }
      return false;
    }
    case PropKind::kImplies:
      return p->content.kind == PropKind::kImplies &&
             bind(term.var_a, p->content.a) && bind(term.var_b, p->content.b);
  }
  return false;
}

bool match_premises(const ArgumentStructure& structure,
                    const std::vector<SchemaTerm>& terms,
                    const std::vector<std::string>& premises,
                    std::vector<bool>& used, std::size_t next,
                    std::map<std::string, std::string> binding,
                    const SchemaTerm& conclusion_term,
                    const std::string& conclusion) {
  if (next == terms.size()) {
    return unify_term(structure, conclusion_term, conclusion, binding);
  }
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (used[i]) continue;
    auto attempt = binding;
    if (!unify_term(structure, terms[next], premises[i], attempt)) continue;
    used[i] = true;
    if (match_premises(structure, terms, premises, used, next + 1,
                       std::move(attempt), conclusion_term, conclusion)) {
      return true;
    }
    used[i] = false;
  }
  return false;
}

}  // namespace

Status check_link_form(const ArgumentStructure& structure,
                       const FormRegistry& registry, const SupportLink& link) {
  const FormSchema* schema = registry.find(link.form);
  if (schema == nullptr) {
    return make_error(Errc::kUnmappedForm,
                      "unknown argument form '" + link.form + "'");
  }
  if (schema->variadic_instances) {
    if (link.premises.size() < 2) {
      return make_error(Errc::kSchemaMismatch,
                        "inductive generalisation requires at least two "
                        "instances");
    }
    for (const auto& premise : link.premises) {
      const Proposition* p = structure.find(premise);
      if (p == nullptr || p->content.kind != PropKind::kAtom) {
        return make_error(Errc::kSchemaMismatch,
                          "instance '" + premise + "' is not an atom");
      }
    }
    const Proposition* c = structure.find(link.conclusion);
    if (c == nullptr || c->content.kind != PropKind::kAtom) {
      return make_error(Errc::kSchemaMismatch,
                        "generalization conclusion is not an atom");
    }
    return Status();
  }
  if (link.premises.size() != schema->premises.size()) {
    return make_error(Errc::kSchemaMismatch,
                      link.form + " takes " +
                          std::to_string(schema->premises.size()) +
                          " premises, link '" + link.id + "' has " +
                          std::to_string(link.premises.size()));
  }
  std::vector<bool> used(link.premises.size(), false);
  if (!match_premises(structure, schema->premises, link.premises, used, 0, {},
                      schema->conclusion, link.conclusion)) {
    return make_error(Errc::kSchemaMismatch,
                      "link '" + link.id + "' does not instantiate " +
                          link.form);
  }
  return Status();
}

std::string support_signature(const ArgumentStructure& structure) {
  std::vector<std::string> lines;
  for (const auto& link : structure.links()) {
    std::vector<std::string> premises = link.premises;
    std::sort(premises.begin(), premises.end());
    std::string line;
    for (const auto& premise : premises) {
      if (!line.empty()) line += ",";
      line += premise;
    }
    line += "=>" + link.conclusion;
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string sig;
  for (const auto& line : lines) {
    if (!sig.empty()) sig += ";";
    sig += line;
  }
  return sig;
}

const DocumentSection* ArgumentDocument::section(SectionKind kind) const {
  for (const auto& s : sections_) {
    if (s.kind == kind) return &s;
  }
  return nullptr;
}

Result<ArgumentDocument> assemble_document(
    std::vector<DocumentSection> sections) {
  std::set<int> seen;
  for (const auto& s : sections) {
    if (!seen.insert(static_cast<int>(s.kind)).second) {
      return make_error(Errc::kDuplicateSection,
                        std::string("section '") + to_string(s.kind) +
                            "' appears twice");
    }
  }
  for (std::size_t i = 1; i < sections.size(); ++i) {
    if (static_cast<int>(sections[i].kind) <
        static_cast<int>(sections[i - 1].kind)) {
      return make_error(Errc::kSectionOrderViolation,
                        std::string("section '") + to_string(sections[i].kind) +
                            "' may not follow '" +
                            to_string(sections[i - 1].kind) + "'");
    }
  }
  if (!seen.contains(static_cast<int>(SectionKind::kArgumentative))) {
    return make_error(Errc::kMissingArgumentativeSection,
                      "the argumentative section is mandatory");
  }
  for (const auto& s : sections) {
    if (const auto* structure = std::get_if<ArgumentStructure>(&s.content)) {
      StructureDiagnostics diag;
      if (!check_single_structure(*structure, &diag)) {
        return make_error(Errc::kInvalidStructure,
                          std::string("section '") + to_string(s.kind) +
                              "' does not hold a single argument structure");
      }
    }
  }
  ArgumentDocument document;
  document.sections_ = std::move(sections);
  return document;
}

}  // namespace arguendo::arg
