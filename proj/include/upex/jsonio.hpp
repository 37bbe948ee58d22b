#pragma once

#include "upex/instance.hpp"
#include "upex/transforms_types.hpp"

#include <json.hpp>

#include <string>

namespace upex {

using Json = nlohmann::ordered_json;

// Rationals travel as numerator/denominator integer pairs, bit-exact.
// Values outside int64 fall back to decimal strings; both forms parse.
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& num, const Json& den);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

Json instance_to_json(const UpeInstance& inst);
UpeInstance instance_from_json(const Json& j);

Json olg_to_json(const OrderedLevelGraph& olg);
OrderedLevelGraph olg_from_json(const Json& j);

Json drawing_to_json(const FullDrawing& d);
FullDrawing drawing_from_json(const Json& j);

UpeInstance read_instance_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace upex
