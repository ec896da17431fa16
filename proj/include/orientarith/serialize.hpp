#pragma once

#include "orientarith/basis.hpp"
#include "orientarith/momgroups.hpp"
#include "orientarith/orientations.hpp"
#include "orientarith/report.hpp"

#include <json.hpp>

#include <string>

namespace orient {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json to_json(const CheckReport& r);
Json to_json(const PhiMatrix& P);
Json to_json(const EvenSeq<Int>& seq, const std::string& kind);
Json to_json(const EvenSeq<Rational>& seq, const std::string& kind);
Json to_json(const KOSeq& seq);
Json to_json(const TmfSeq& seq);
Json to_json(const Obstruction& o);
Json to_json(const QExpansion& f);
Json to_json(const PolyQ& f);
Json to_json(const BasisData& d);
Json to_json(const PadicResidue& r);
Json to_json(const Mom0Witness& w);
Json to_json(const Psi0Inverse& inv);

// Reads {"first_weight": w, "entries": [...]} as rationals; entries may be strings or integers.
EvenSeq<Rational> sequence_from_json(const Json& j, unsigned default_first_half_weight);

}  // namespace orient
