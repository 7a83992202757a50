#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "tritherm/classify.hpp"
#include "tritherm/construct.hpp"
#include "tritherm/partition.hpp"

namespace tritherm {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Decimal rendering with enough digits to round-trip the stored precision.
// All numeric report fields are strings: no reader ever re-rounds through a
// native double.
std::string decimal(const Real& v);

// Exact "num/den" (or plain integer) form; parse_rat reads it back.
std::string rational_text(const Rat& q);

// One row per N: N,s,k,value,log_value,normalized,min_denom,pole,precision_bits.
// The pole column carries the first offending word ("10") or is empty.
std::string trace_csv(const FreeEnergyTrace& tr);

json trace_json(const FreeEnergyTrace& tr);
json digits_json(const DigitSequence& d);
json enclosure_json(const Enclosure& e);
json fit_json(const DiophantineFit& f);
json theorem2_json(const Theorem2Report& r);
json divergence_json(const DivergenceReport& r);

}  // namespace tritherm
