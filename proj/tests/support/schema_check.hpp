#pragma once

// Validator for the subset of JSON Schema draft-07 the shipped schemas use:
// type, const, enum, required, properties, additionalProperties (boolean),
// items (single schema), minItems, minimum, maximum, pattern.

#include <regex>
#include <string>

#include "json.hpp"

namespace testsupport {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline bool schema_check(const nlohmann::json& value, const nlohmann::json& schema,
                         std::string& error, const std::string& path = "$") {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        }
        if (!ok) {
            error = path + ": type mismatch (" + value.dump() + ")";
            return false;
        }
    }
    if (schema.contains("const") && value != schema["const"]) {
        error = path + ": const mismatch";
        return false;
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || value == alt;
        if (!ok) {
            error = path + ": not in enum (" + value.dump() + ")";
            return false;
        }
    }
    if (value.is_number()) {
        if (schema.contains("minimum") && value.get<double>() < schema["minimum"].get<double>()) {
            error = path + ": below minimum";
            return false;
        }
        if (schema.contains("maximum") && value.get<double>() > schema["maximum"].get<double>()) {
            error = path + ": above maximum";
            return false;
        }
    }
    if (value.is_string() && schema.contains("pattern")) {
        const std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re)) {
            error = path + ": pattern mismatch";
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    error = path + ": missing required key " + key.get<std::string>();
                    return false;
                }
        const bool closed = schema.contains("additionalProperties") &&
                            schema["additionalProperties"].is_boolean() &&
                            !schema["additionalProperties"].get<bool>();
        for (const auto& [key, sub] : value.items()) {
            const bool described = schema.contains("properties") && schema["properties"].contains(key);
            if (described) {
                if (!schema_check(sub, schema["properties"][key], error, path + "." + key))
                    return false;
            } else if (closed) {
                error = path + ": unexpected key " + key;
                return false;
            }
        }
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<size_t>()) {
            error = path + ": too few items";
            return false;
        }
        if (schema.contains("items")) {
            size_t index = 0;
            for (const auto& item : value) {
                if (!schema_check(item, schema["items"], error,
                                  path + "[" + std::to_string(index) + "]"))
                    return false;
                ++index;
            }
        }
    }
    return true;
}

}  // namespace testsupport
