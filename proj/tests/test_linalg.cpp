#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncalg/field.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/matrix.hpp"

using namespace ncalg;

namespace {

template <class F>
Matrix<F> from_ints(F fld, std::initializer_list<std::initializer_list<int>> rows) {
  Matrix<F> m(fld, rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = fld.from_int(v);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE_TEMPLATE("rank of pinned matrices", F, Fp, Rat) {
  F fld;
  CHECK(rank(Matrix<F>(fld, 3, 5)) == 0);
  CHECK(rank(Matrix<F>::identity(fld, 4)) == 4);
  CHECK(rank(from_ints(fld, {{1, 2}, {2, 4}})) == 1);
  CHECK(rank(from_ints(fld, {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
  CHECK(rank(from_ints(fld, {{0, 1}, {1, 0}, {1, 1}})) == 2);
}

TEST_CASE_TEMPLATE("rank is transpose invariant", F, Fp, Rat) {
  F fld;
  Rng rng(11);
  for (int it = 0; it < 10; ++it) {
    auto m = Matrix<F>::random(fld, 4, 6, rng);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE_TEMPLATE("determinant basics", F, Fp, Rat) {
  F fld;
  // Vandermonde on 1,2,3: det = (2-1)(3-1)(3-2) = 2
  auto v = from_ints(fld, {{1, 1, 1}, {1, 2, 4}, {1, 3, 9}});
  CHECK(det(v) == fld.from_int(2));
  CHECK(det(Matrix<F>::identity(fld, 5)) == fld.one());
  CHECK(fld.is_zero(det(from_ints(fld, {{1, 2}, {2, 4}}))));
  // odd permutation flips the sign
  CHECK(det(from_ints(fld, {{0, 1}, {1, 0}})) == fld.from_int(-1));
  CHECK_THROWS_AS(det(Matrix<F>(fld, 2, 3)), NonSquareError);
}

TEST_CASE_TEMPLATE("determinant is multiplicative", F, Fp, Rat) {
  F fld;
  Rng rng(5);
  for (int it = 0; it < 8; ++it) {
    auto a = Matrix<F>::random(fld, 4, 4, rng);
    auto b = Matrix<F>::random(fld, 4, 4, rng);
    CHECK(det(a * b) == fld.mul(det(a), det(b)));
  }
}

TEST_CASE_TEMPLATE("inverse round-trips", F, Fp, Rat) {
  F fld;
  Rng rng(17);
  const auto id = Matrix<F>::identity(fld, 4);
  int invertible = 0;
  for (int it = 0; it < 8; ++it) {
    auto a = Matrix<F>::random(fld, 4, 4, rng);
    auto inv = try_inverse(a);
    if (!inv) continue;
    ++invertible;
    CHECK(a * *inv == id);
    CHECK(*inv * a == id);
  }
  CHECK(invertible > 0);  // random square matrices are invertible whp
  CHECK_FALSE(try_inverse(from_ints(fld, {{1, 2}, {2, 4}})).has_value());
  CHECK_THROWS_AS(inverse(Matrix<F>(fld, 2, 2)), SingularError);
}

TEST_CASE_TEMPLATE("charpoly on pinned matrices", F, Fp, Rat) {
  F fld;
  // (t-1)(t-2)(t-3) = t^3 - 6t^2 + 11t - 6, coefficients low to high
  auto d = from_ints(fld, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  auto c = charpoly(d);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == fld.from_int(-6));
  CHECK(c[1] == fld.from_int(11));
  CHECK(c[2] == fld.from_int(-6));

  // (t-1)^2 = t^2 - 2t + 1
  auto c2 = charpoly(Matrix<F>::identity(fld, 2));
  REQUIRE(c2.size() == 2);
  CHECK(c2[0] == fld.one());
  CHECK(c2[1] == fld.from_int(-2));

  // c_0 = (-1)^n det
  auto m = from_ints(fld, {{2, 1}, {7, 3}});
  CHECK(charpoly(m)[0] == det(m));  // n = 2, sign +
}

TEST_CASE_TEMPLATE("cayley hamilton", F, Fp, Rat) {
  F fld;
  Rng rng(23);
  for (int it = 0; it < 5; ++it) {
    auto a = Matrix<F>::random(fld, 4, 4, rng);
    CHECK(charpoly_eval(a, charpoly(a)).is_zero());
  }
}

TEST_CASE_TEMPLATE("kronecker product", F, Fp, Rat) {
  F fld;
  auto a = from_ints(fld, {{1, 2}, {3, 4}});
  auto b = from_ints(fld, {{0, 5}, {6, 7}});

  // pinned 4x4 layout
  auto k = kronecker(a, b);
  auto expect = from_ints(fld, {{0, 5, 0, 10},
                                {6, 7, 12, 14},
                                {0, 15, 0, 20},
                                {18, 21, 24, 28}});
  CHECK(k == expect);

  // mixed product rule: (a (x) b)(c (x) d) = ac (x) bd
  Rng rng(31);
  auto c = Matrix<F>::random(fld, 2, 3, rng);
  auto d = Matrix<F>::random(fld, 2, 2, rng);
  CHECK(kronecker(a, b) * kronecker(c, d) == kronecker(a * c, b * d));

  // det(a (x) b) = det(a)^m det(b)^n
  auto da = det(a), db = det(b);
  CHECK(det(k) == fld.mul(fld.mul(da, da), fld.mul(db, db)));
}

TEST_CASE_TEMPLATE("direct sum", F, Fp, Rat) {
  F fld;
  auto a = from_ints(fld, {{1, 2}, {3, 4}});
  auto b = from_ints(fld, {{5}});
  auto s = direct_sum(a, b);
  CHECK(s.rows() == 3);
  CHECK(s.cols() == 3);
  CHECK(s(0, 1) == fld.from_int(2));
  CHECK(s(2, 2) == fld.from_int(5));
  CHECK(fld.is_zero(s(0, 2)));
  CHECK(fld.is_zero(s(2, 0)));
  CHECK(rank(s) == rank(a) + rank(b));
  CHECK(det(s) == fld.mul(det(a), det(b)));
}

TEST_CASE_TEMPLATE("reference kernels agree with production", F, Fp, Rat) {
  F fld;
  Rng rng(41);
  for (int it = 0; it < 6; ++it) {
    auto a = Matrix<F>::random(fld, 5, 5, rng);
    auto b = Matrix<F>::random(fld, 5, 5, rng);
    CHECK(ref::rank(a) == rank(a));
    CHECK(ref::det(a) == det(a));
    CHECK(ref::mul(a, b) == a * b);
  }
  // a case with nontrivial rank deficiency
  auto low = Matrix<F>::random(fld, 5, 2, rng) * Matrix<F>::random(fld, 2, 5, rng);
  CHECK(ref::rank(low) == rank(low));
  CHECK(rank(low) <= 2);
}

TEST_CASE("shape and field mismatches are rejected") {
  Fp fld;
  Matrix<Fp> a(fld, 2, 3), b(fld, 2, 3);
  CHECK_THROWS_AS(a * b, ShapeMismatchError);
  Matrix<Fp> other(Fp(101), 3, 3);
  CHECK_THROWS_AS(Matrix<Fp>(fld, 3, 3) * other, FieldMismatchError);
  CHECK_THROWS_AS(kronecker(Matrix<Fp>(fld, 2, 2), other), FieldMismatchError);
}
