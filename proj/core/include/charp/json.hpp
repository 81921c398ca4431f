#pragma once

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "charp/polynomial.hpp"

namespace charp {

using Json = nlohmann::ordered_json;

// {"vars": [...], "terms": [{"exp": [2,1], "coeff": "1"}, ...]}, terms in
// decreasing grevlex order.
Json to_json(const MultiPoly& f);
Json to_json(const MultiPoly& f, std::span<const std::string> names);

// Inverse of to_json. Coefficients use the field literal syntax.
MultiPoly poly_from_json(const Json& j, const FieldContext& ctx);

}  // namespace charp
