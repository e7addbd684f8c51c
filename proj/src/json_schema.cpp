#include "weil/json_schema.hpp"

#include <regex>

namespace weil::schema {

namespace {

using json = nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& v, const json& s, const std::string& path, std::vector<std::string>& errors) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) errors.push_back(path + ": not allowed");
      return;
    }
    if (s.contains("$ref")) {
      check(v, resolve(s["$ref"].get<std::string>()), path, errors);
      return;
    }
    if (s.contains("type")) {
      const auto& t = s["type"];
      bool ok = false;
      if (t.is_array()) {
        for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
      } else {
        ok = has_type(v, t.get<std::string>());
      }
      if (!ok) {
        errors.push_back(path + ": expected type " + t.dump());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) errors.push_back(path + ": expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& x : s["enum"]) found = found || x == v;
      if (!found) errors.push_back(path + ": not one of " + s["enum"].dump());
    }
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
      errors.push_back(path + ": does not match " + s["pattern"].get<std::string>());
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
      errors.push_back(path + ": below minimum " + s["minimum"].dump());

    if (v.is_object()) {
      const json props = s.value("properties", json::object());
      for (const auto& r : s.value("required", json::array()))
        if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing " + r.get<std::string>());
      for (const auto& [key, value] : v.items()) {
        const std::string sub = path + "/" + key;
        if (props.contains(key))
          check(value, props[key], sub, errors);
        else if (s.contains("additionalProperties"))
          check(value, s["additionalProperties"], sub, errors);
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        errors.push_back(path + ": fewer than " + s["minItems"].dump() + " items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], path + "/" + std::to_string(i), errors);
    }

    if (s.contains("allOf"))
      for (const auto& sub : s["allOf"]) check(v, sub, path, errors);
    if (s.contains("anyOf") || s.contains("oneOf")) {
      const bool one = s.contains("oneOf");
      std::size_t matches = 0;
      for (const auto& sub : s[one ? "oneOf" : "anyOf"]) matches += ok(v, sub) ? 1 : 0;
      if (one ? matches != 1 : matches == 0)
        errors.push_back(path + (one ? ": must match exactly one alternative" : ": matches no alternative"));
    }
    if (s.contains("if")) {
      if (ok(v, s["if"])) {
        if (s.contains("then")) check(v, s["then"], path, errors);
      } else if (s.contains("else")) {
        check(v, s["else"], path, errors);
      }
    }
  }

 private:
  bool ok(const json& v, const json& s) const {
    std::vector<std::string> scratch;
    check(v, s, "", scratch);
    return scratch.empty();
  }

  const json& resolve(const std::string& ref) const {
    if (ref.rfind("#/", 0) != 0) throw std::invalid_argument("unsupported $ref " + ref);
    return root_.at(json::json_pointer(ref.substr(1)));
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate(const nlohmann::json& instance, const nlohmann::json& schema) {
  std::vector<std::string> errors;
  Validator(schema).check(instance, schema, "", errors);
  return errors;
}

}  // namespace weil::schema
