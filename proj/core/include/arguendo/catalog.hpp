#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "arguendo/result.hpp"

namespace arguendo::rst {

enum class Nuclearity { kMono, kMulti };

// Where a relation's effect lands: the nucleus, the satellite, or both.
enum class EffectLocus { kNucleus, kSatellite, kBoth };

const char* to_string(Nuclearity n);
const char* to_string(EffectLocus l);

// The four-field relation record plus structural metadata. The four
// definitional fields are free text; the validator only consumes nuclearity,
// the argumentative flag, and allowed_annotations.
struct RelationDefinition {
  std::string name;
  std::string constraints_on_nucleus;
  std::string constraints_on_satellite;
  std::string constraints_on_combination;
  std::string effect;
  EffectLocus locus = EffectLocus::kNucleus;
  Nuclearity nuclearity = Nuclearity::kMono;
  bool argumentative = false;
  // Permitted `tag=` annotation values; empty means unconstrained.
  std::vector<std::string> allowed_annotations;

  friend bool operator==(const RelationDefinition&,
                         const RelationDefinition&) = default;
};

// Canonical relation-name form: uppercase, spaces and underscores folded to
// hyphens. Lookups accept any spelling that normalizes equally, so
// "Volitional Cause", "volitional_cause" and "VOLITIONAL-CAUSE" all match.
std::string normalize_relation_name(std::string_view name);

// Immutable registry of relation definitions in insertion order.
// register_relation returns an extended copy; existing catalogs are never
// mutated and can be shared freely across threads.
class Catalog {
 public:
  Catalog() = default;

  [[nodiscard]] std::size_t size() const { return relations_.size(); }
  [[nodiscard]] const std::vector<RelationDefinition>& relations() const {
    return relations_;
  }
  // Returns nullptr when the (normalized) name is absent.
  [[nodiscard]] const RelationDefinition* find(std::string_view name) const;
  [[nodiscard]] bool contains(std::string_view name) const {
    return find(name) != nullptr;
  }

 private:
  friend Result<Catalog> register_relation(const Catalog&, RelationDefinition);
  friend Catalog builtin_catalog();

  std::vector<RelationDefinition> relations_;
};

// The 23 relations of the Mann & Thompson taxonomy plus the vacuous JOINT
// grouping relation. JUSTIFY and ELABORATION carry their full definitions;
// the remaining names carry placeholder field text with correct nuclearity
// and argumentative flags.
Catalog builtin_catalog();

// Persistent insert. Errors: kMissingField if any of the four definitional
// fields is empty, kDuplicateName if the normalized name is already present.
Result<Catalog> register_relation(const Catalog& catalog,
                                  RelationDefinition def);

// Names (canonical form) of all relations flagged argumentative, in catalog
// order.
std::vector<std::string> argumentative_relations(const Catalog& catalog);

}  // namespace arguendo::rst
