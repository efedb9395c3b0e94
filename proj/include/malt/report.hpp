#pragma once

#include <span>

#include "json.hpp"
#include "malt/clone.hpp"
#include "malt/congruence.hpp"
#include "malt/identities.hpp"
#include "malt/sequence.hpp"

namespace malt {

using Json = nlohmann::ordered_json;

Json to_json(const TermOperation& op);
Json to_json(std::span<const TermOperation> sequence);
Json to_json(const ValidityReport& report);
Json to_json(const LevelReport& report);
Json to_json(const InclusionReport& report);
Json to_json(const Theorem12Report& report);
Json to_json(const Congruence& c);
Json to_json(const CongruenceLattice& lattice);
Json to_json(const BinaryRelation& r);

/// Accepts `[[...], ...]` or `{"tables": [[...], ...]}`; every table must
/// have length size^arity for the given arity.
std::vector<TermOperation> parse_sequence(const Json& doc, std::size_t size,
                                          std::size_t arity);

/// Serialization used for every JSON document the library emits.
std::string dump(const Json& doc);

}  // namespace malt
