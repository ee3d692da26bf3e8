#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncalg/field.hpp"
#include "ncalg/json_io.hpp"

using namespace ncalg;

TEST_CASE("field specs round-trip through json") {
  auto p = FieldSpec::prime_field(101);
  CHECK(field_from_json(field_to_json(p)) == p);
  auto r = FieldSpec::rationals();
  CHECK(field_from_json(field_to_json(r)) == r);

  CHECK(field_from_json(json::parse(R"({"prime": 101})")) == p);
  CHECK(field_from_json(json::parse(R"({"prime": "101"})")) == p);
  CHECK(field_from_json(json::parse(R"({"rationals": true})")) == r);

  CHECK_THROWS_AS(field_from_json(json::parse(R"({"kind": "real"})")), FormatError);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"rationals": false})")),
                  FormatError);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"prime": 101, "rationals": true})")),
                  FormatError);
  CHECK_THROWS_AS(field_from_json(json::parse("42")), FormatError);
  // non-prime modulus is a precondition failure, not a format one
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"prime": 100})")),
                  PreconditionError);
}

TEST_CASE("require helpers") {
  auto j = json::parse(R"({"n": 7, "s": "x", "neg": -3, "b": true})");
  CHECK(require_u64(j, "n") == 7);
  CHECK(require_i64(j, "neg") == -3);
  CHECK(require_str(j, "s") == "x");
  CHECK(require_bool(j, "b"));
  CHECK_THROWS_AS(require_u64(j, "missing"), FormatError);
  CHECK_THROWS_AS(require_u64(j, "s"), FormatError);
  CHECK_THROWS_AS(require_u64(j, "neg"), FormatError);
  CHECK_THROWS_AS(require_str(j, "n"), FormatError);
  CHECK_THROWS_AS(require_bool(j, "n"), FormatError);
}

TEST_CASE_TEMPLATE("matrices round-trip", F, Fp, Rat) {
  F fld;
  Rng rng(4);
  auto m = Matrix<F>::random(fld, 3, 4, rng);
  CHECK(matrix_from_json(fld, matrix_to_json(m)) == m);
}

TEST_CASE("matrix parsing accepts strings and integers") {
  Fp fld;
  auto m = matrix_from_json(fld, json::parse(R"([["1", 2], [3, "4"]])"));
  CHECK(m(0, 1) == 2);
  CHECK(m(1, 1) == 4);

  // negative entries and big decimal strings reduce into the field
  auto n = matrix_from_json(fld, json::parse(R"([["-1"]])"));
  CHECK(n(0, 0) == fld.from_int(-1));

  // [] is the 0 x 0 matrix, not an error
  CHECK(matrix_from_json(fld, json::parse("[]")).rows() == 0);
  CHECK_THROWS_AS(matrix_from_json(fld, json::parse(R"([[1, 2], [3]])")),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(fld, json::parse(R"([[1.5]])")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(fld, json::parse(R"({"rows": 1})")),
                  FormatError);
}

TEST_CASE("rational matrix entries") {
  Rat fld;
  auto m = matrix_from_json(fld, json::parse(R"([["1/2", "-3"]])"));
  CHECK(m(0, 0) == fld.from_string("1/2"));
  CHECK(m(0, 1) == fld.from_int(-3));
  auto j = matrix_to_json(m);
  CHECK(j[0][0] == "1/2");
}

TEST_CASE_TEMPLATE("pencils round-trip", F, Fp, Rat) {
  F fld;
  Rng rng(6);
  std::vector<Matrix<F>> cs{Matrix<F>::random(fld, 2, 3, rng),
                            Matrix<F>::random(fld, 2, 3, rng)};
  auto lin = Pencil<F>::linear(fld, 2, 3, cs);
  auto back = pencil_from_json(fld, pencil_to_json(lin));
  CHECK(back.rows == 2);
  CHECK(back.cols == 3);
  REQUIRE(back.vars() == 2);
  CHECK(back.coeffs[0] == lin.coeffs[0]);
  CHECK_FALSE(back.is_affine());

  auto aff = Pencil<F>::affine(fld, Matrix<F>::random(fld, 3, 3, rng),
                               {Matrix<F>::random(fld, 3, 3, rng)});
  auto aback = pencil_from_json(fld, pencil_to_json(aff));
  REQUIRE(aback.is_affine());
  CHECK(*aback.constant == *aff.constant);
}

TEST_CASE("pencil json validation") {
  Fp fld;
  CHECK_THROWS_AS(
      pencil_from_json(fld, json::parse(
          R"({"rows": 2, "cols": 2, "vars": 2, "coeffs": [[[1,0],[0,1]]]})")),
      FormatError);  // vars disagrees with coeffs
  CHECK_THROWS_AS(
      pencil_from_json(fld, json::parse(R"({"rows": 2, "cols": 2})")),
      FormatError);
  // embedded field extraction
  auto j = json::parse(
      R"({"rows": 1, "cols": 1, "vars": 1, "field": {"rationals": true},
          "coeffs": [[["1"]]]})");
  CHECK(embedded_field(j) == FieldSpec::rationals());
  CHECK_THROWS_AS(embedded_field(json::parse(R"({"rows": 1})")), FormatError);
}

TEST_CASE_TEMPLATE("witnesses round-trip", F, Fp, Rat) {
  F fld;
  Rng rng(8);
  BlowupWitness<F> w;
  w.p = 2;
  w.q = 2;
  w.achieved_rank = 4;
  w.tuple.push_back(Matrix<F>::random(fld, 2, 2, rng));
  w.tuple.push_back(Matrix<F>::random(fld, 2, 2, rng));
  auto back = witness_from_json(fld, witness_to_json(w));
  CHECK(back.p == 2);
  CHECK(back.achieved_rank == 4);
  REQUIRE(back.tuple.size() == 2);
  CHECK(back.tuple[0] == w.tuple[0]);
  CHECK(back.tuple[1] == w.tuple[1]);
}

TEST_CASE("quiver input parsing") {
  auto j = json::parse(R"({
    "vertices": ["x", "y"],
    "arrows": [{"name": "a", "tail": "x", "head": "y"},
               {"name": "b", "tail": "x", "head": "y"}],
    "dim": {"x": 1, "y": 1},
    "weight": {"x": 1, "y": -1},
    "rep": {"a": [[1]], "b": [[0]]}
  })");
  auto in = quiver_input_from_json(j);
  CHECK(in.quiver.vertex_count() == 2);
  CHECK(in.quiver.arrow_count() == 2);
  CHECK(in.dim == DimVector{1, 1});
  CHECK(in.weight == Weight{1, -1});
  CHECK_FALSE(in.field.has_value());

  Fp fld;
  auto rep = representation_from_json(fld, in.quiver, in.dim, in.rep);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0](0, 0) == 1);

  // field may ride along
  auto j2 = j;
  j2["field"] = field_to_json(FieldSpec::rationals());
  CHECK(quiver_input_from_json(j2).field == FieldSpec::rationals());
}

TEST_CASE("quiver input validation") {
  auto base = json::parse(R"({
    "vertices": ["x", "y"],
    "arrows": [{"name": "a", "tail": "x", "head": "y"}],
    "dim": {"x": 1, "y": 1},
    "weight": {"x": 1, "y": -1},
    "rep": {"a": [[1]]}
  })");

  auto no_dim = base;
  no_dim["dim"].erase("y");
  CHECK_THROWS_AS(quiver_input_from_json(no_dim), FormatError);

  auto no_weight = base;
  no_weight.erase("weight");
  CHECK_THROWS_AS(quiver_input_from_json(no_weight), FormatError);

  auto in = quiver_input_from_json(base);
  Fp fld;
  auto missing_arrow = json::parse(R"({"b": [[1]]})");
  CHECK_THROWS_AS(representation_from_json(fld, in.quiver, in.dim, missing_arrow),
                  FormatError);
  auto wrong_shape = json::parse(R"({"a": [[1, 2]]})");
  CHECK_THROWS_AS(representation_from_json(fld, in.quiver, in.dim, wrong_shape),
                  FormatError);
}
