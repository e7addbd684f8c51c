#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace weil::schema {

/// Validates `instance` against a JSON Schema subset: type, properties, required,
/// additionalProperties, items, enum, const, pattern, minimum, minItems,
/// allOf, anyOf, oneOf, if/then/else, and local "$ref" ("#/$defs/name").
/// Returns one message per violation, each prefixed with a JSON pointer.
std::vector<std::string> validate(const nlohmann::json& instance, const nlohmann::json& schema);

}  // namespace weil::schema
