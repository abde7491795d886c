#pragma once

// JSON shapes for every report the library produces.  ordered_json keeps
// key order stable so identical runs serialize byte-identically.

#include <string>

#include "json.hpp"
#include "pgldes/cayley.hpp"
#include "pgldes/codes.hpp"
#include "pgldes/designs.hpp"

namespace pgldes {

using Json = nlohmann::ordered_json;

// Exact integers: emitted as JSON numbers while they are safely
// representable (< 2^53), as decimal strings beyond that.
Json bigint_json(const BigInt& v);

Json point_json(const ProjPoint& pt);
ProjPoint point_from_json(const Json& j, std::uint64_t q);

// {"field", "v", "k", "provenance", "blocks"}; blocks embed the field spec
// so a verifier never guesses the context.
Json family_json(const Field& f, const BlockFamily& fam);
std::pair<Field, BlockFamily> family_from_json(const Json& j);

Json design_report_json(const DesignReport& rep);
Json emptiness_json(const Field& f, const EmptinessReport& rep);
Json steiner_json(const Field& f, const SteinerReport& rep);

Json unit_block_json(const ExtField& ext, const UnitBlock& t);
Json model_equivalence_json(const Field& f, std::uint64_t k,
                            const ModelEquivalence& rep,
                            const ExtField& ext);

Json weight_dist_json(const WeightDist& w);
Json melas_json(const MelasReport& rep);

// Read/write helpers (write is atomic enough for CLI use: truncate+flush).
Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace pgldes
