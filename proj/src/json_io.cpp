#include "ncalg/json_io.hpp"

namespace ncalg {

json field_to_json(const FieldSpec& f) {
  json j;
  if (f.kind == FieldSpec::Kind::Prime)
    j["prime"] = std::to_string(f.prime);
  else
    j["rationals"] = true;
  return j;
}

FieldSpec field_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("field: expected an object");
  if (j.contains("rationals")) {
    if (!j["rationals"].is_boolean() || !j["rationals"].get<bool>())
      throw FormatError("field: \"rationals\" must be true when present");
    if (j.contains("prime"))
      throw FormatError("field: give either \"prime\" or \"rationals\"");
    return FieldSpec::rationals();
  }
  if (!j.contains("prime"))
    throw FormatError("field: expected \"prime\" or \"rationals\"");
  const json& p = j["prime"];
  std::uint64_t v = 0;
  if (p.is_string()) {
    const std::string s = p.get<std::string>();
    if (s.empty()) throw FormatError("field: empty \"prime\"");
    unsigned __int128 acc = 0;
    for (const char c : s) {
      if (c < '0' || c > '9')
        throw FormatError("field: \"prime\" must be a decimal string");
      acc = acc * 10 + static_cast<unsigned>(c - '0');
      if (acc > (static_cast<unsigned __int128>(1) << 62))
        throw FormatError("field: \"prime\" too large (need p < 2^62)");
    }
    v = static_cast<std::uint64_t>(acc);
  } else if (p.is_number_unsigned() || p.is_number_integer()) {
    const std::int64_t n = p.get<std::int64_t>();
    if (n <= 0) throw FormatError("field: \"prime\" must be positive");
    v = static_cast<std::uint64_t>(n);
  } else {
    throw FormatError("field: \"prime\" must be a decimal string");
  }
  return FieldSpec::prime_field(v);  /* PreconditionError when composite */
}

const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing key \"") + key + "\"");
  return j[key];
}

std::uint64_t require_u64(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw FormatError(std::string("key \"") + key +
                    "\" must be a nonnegative integer");
}

std::int64_t require_i64(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw FormatError(std::string("key \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

std::string require_str(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_string())
    throw FormatError(std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

bool require_bool(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_boolean())
    throw FormatError(std::string("key \"") + key + "\" must be a boolean");
  return v.get<bool>();
}

FieldSpec embedded_field(const json& j) {
  return field_from_json(require_key(j, "field"));
}

QuiverInput quiver_input_from_json(const json& j) {
  const json& vs = require_key(j, "vertices");
  if (!vs.is_array() || vs.empty())
    throw FormatError("quiver: \"vertices\" must be a nonempty array");
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) throw FormatError("quiver: vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  const json& as = require_key(j, "arrows");
  if (!as.is_array()) throw FormatError("quiver: \"arrows\" must be an array");
  std::vector<Quiver::ArrowSpec> arrows;
  for (const auto& a : as)
    arrows.push_back(
        {require_str(a, "name"), require_str(a, "tail"), require_str(a, "head")});

  Quiver quiver = Quiver::make(std::move(vertices), std::move(arrows));

  const json& dims = require_key(j, "dim");
  const json& weights = require_key(j, "weight");
  DimVector dim(quiver.vertex_count(), 0);
  Weight weight(quiver.vertex_count(), 0);
  for (std::size_t x = 0; x < quiver.vertex_count(); ++x) {
    const auto& name = quiver.vertex_name(x);
    dim[x] = require_u64(dims, name.c_str());
    weight[x] = require_i64(weights, name.c_str());
  }

  QuiverInput in{std::move(quiver), std::move(dim), std::move(weight),
                 require_key(j, "rep"), std::nullopt};
  if (j.contains("field")) in.field = field_from_json(j["field"]);
  return in;
}

}  // namespace ncalg
