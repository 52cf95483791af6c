#pragma once

#include <string>

#include <json.hpp>

#include "riordan/reversibility.hpp"
#include "riordan/subgroups.hpp"

namespace riordan {

using Json = nlohmann::json;

Json to_json(const Fps& s);
Json to_json(const CyclotomicFps& s);
Json to_json(const RiordanPair& p);
Json to_json(const RiordanMatrix& m);
Json to_json(const ConjugacyWitness& w);
Json to_json(const NormalFormDescriptor& d);
Json to_json(const ReversibilityReport& r);
Json to_json(const NormalFormFit& fit);
Json to_json(const ConjugatorResult& r);

// "1 + 2*t - 1/2*t^3"; zero prints as "0".
std::string series_text(const Fps& s);

// Lower triangle, right-aligned per column.
std::string matrix_text(const RiordanMatrix& m);
// Full K x K block, one row per line.
std::string matrix_csv(const RiordanMatrix& m);

// Two-space indented, sorted keys, trailing newline.
std::string dump(const Json& j);

}  // namespace riordan
