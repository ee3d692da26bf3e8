#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ncalg/field.hpp"
#include "ncalg/matrix.hpp"
#include "ncalg/pencil.hpp"
#include "ncalg/quiver.hpp"

namespace ncalg {

/* Reports must serialize byte-identically across runs, so every JSON
 * object built here uses the insertion-ordered flavor. */
using json = nlohmann::ordered_json;

/* Field tags: {"prime": "<decimal>"} or {"rationals": true}. */
json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

/* Lookup helpers that turn nlohmann's exceptions into FormatError. */
const json& require_key(const json& j, const char* key);
std::uint64_t require_u64(const json& j, const char* key);
std::int64_t require_i64(const json& j, const char* key);
std::string require_str(const json& j, const char* key);
bool require_bool(const json& j, const char* key);

/* Matrices travel as arrays of rows of decimal strings ("7", "-3/2").
 * Plain JSON integers are accepted on input for convenience. */
template <class F>
json matrix_to_json(const Matrix<F>& m) {
  const F& fld = m.field();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(fld.to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
typename F::Elem elem_from_json(const F& fld, const json& j) {
  if (j.is_string()) return fld.from_string(j.get<std::string>());
  if (j.is_number_integer())
    return fld.from_int(j.get<std::int64_t>());
  throw FormatError("matrix entry must be a decimal string");
}

template <class F>
Matrix<F> matrix_from_json(const F& fld, const json& j, std::size_t rows,
                           std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw FormatError("matrix: expected an array of " + std::to_string(rows) +
                      " rows");
  Matrix<F> m(fld, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw FormatError("matrix: row " + std::to_string(i) + " must have " +
                        std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = elem_from_json(fld, row[c]);
  }
  return m;
}

/* Shape inferred from the data; [] is the 0 x 0 matrix. */
template <class F>
Matrix<F> matrix_from_json(const F& fld, const json& j) {
  if (!j.is_array()) throw FormatError("matrix: expected an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  return matrix_from_json(fld, j, rows, cols);
}

/* {"rows": r, "cols": c, "vars": m, "field": ..., "coeffs": [...],
 *  "constant": ...?} */
template <class F>
json pencil_to_json(const Pencil<F>& p) {
  json j;
  j["rows"] = p.rows;
  j["cols"] = p.cols;
  j["vars"] = p.vars();
  j["field"] = field_to_json(p.field.spec());
  if (p.constant) j["constant"] = matrix_to_json(*p.constant);
  json coeffs = json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(matrix_to_json(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

template <class F>
Pencil<F> pencil_from_json(const F& fld, const json& j) {
  const auto rows = static_cast<std::size_t>(require_u64(j, "rows"));
  const auto cols = static_cast<std::size_t>(require_u64(j, "cols"));
  const auto vars = static_cast<std::size_t>(require_u64(j, "vars"));
  const json& coeffs = require_key(j, "coeffs");
  if (!coeffs.is_array() || coeffs.size() != vars)
    throw FormatError("pencil: \"coeffs\" must list exactly \"vars\" matrices");
  std::vector<Matrix<F>> cs;
  cs.reserve(vars);
  for (const auto& c : coeffs) cs.push_back(matrix_from_json(fld, c, rows, cols));
  if (j.contains("constant")) {
    auto constant = matrix_from_json(fld, j["constant"], rows, cols);
    return Pencil<F>::affine(fld, std::move(constant), std::move(cs));
  }
  return Pencil<F>::linear(fld, rows, cols, std::move(cs));
}

/* The field tag embedded in a serialized pencil (or other object). */
FieldSpec embedded_field(const json& j);

/* {"p": p, "q": q, "achieved_rank": r, "tuple": [...]} */
template <class F>
json witness_to_json(const BlowupWitness<F>& w) {
  json j;
  j["p"] = w.p;
  j["q"] = w.q;
  j["achieved_rank"] = w.achieved_rank;
  json tuple = json::array();
  for (const auto& t : w.tuple) tuple.push_back(matrix_to_json(t));
  j["tuple"] = std::move(tuple);
  return j;
}

template <class F>
BlowupWitness<F> witness_from_json(const F& fld, const json& j) {
  BlowupWitness<F> w;
  w.p = static_cast<std::size_t>(require_u64(j, "p"));
  w.q = static_cast<std::size_t>(require_u64(j, "q"));
  w.achieved_rank = static_cast<std::size_t>(require_u64(j, "achieved_rank"));
  const json& tuple = require_key(j, "tuple");
  if (!tuple.is_array()) throw FormatError("witness: \"tuple\" must be an array");
  for (const auto& t : tuple)
    w.tuple.push_back(matrix_from_json(fld, t, w.p, w.q));
  return w;
}

/* Quiver input object:
 * {"vertices": [...], "arrows": [{"name","tail","head"}...],
 *  "dim": {vertex: n...}, "weight": {vertex: s...},
 *  "rep": {arrow: matrix...}, "field": ...?} */
struct QuiverInput {
  Quiver quiver;
  DimVector dim;
  Weight weight;
  json rep;  /* arrow name -> matrix json, resolved per field later */
  std::optional<FieldSpec> field;
};

QuiverInput quiver_input_from_json(const json& j);

template <class F>
Representation<F> representation_from_json(const F& fld, const Quiver& q,
                                           const DimVector& dim,
                                           const json& rep) {
  if (!rep.is_object()) throw FormatError("quiver: \"rep\" must be an object");
  Representation<F> out;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    if (!rep.contains(ar.name))
      throw FormatError("quiver: \"rep\" is missing arrow \"" + ar.name + "\"");
    out.push_back(matrix_from_json(fld, rep[ar.name],
                                   static_cast<std::size_t>(dim[ar.head]),
                                   static_cast<std::size_t>(dim[ar.tail])));
  }
  return out;
}

}  // namespace ncalg
