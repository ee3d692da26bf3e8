#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncalg/field.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/pencil.hpp"

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

template <class F>
Pencil<F> diag_pencil(F fld, std::size_t n) {
  // x_i on the i-th diagonal entry; generically full rank
  std::vector<Matrix<F>> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<F> c(fld, n, n);
    c(i, i) = fld.one();
    cs.push_back(std::move(c));
  }
  return Pencil<F>::linear(fld, n, n, std::move(cs));
}

}  // namespace

TEST_CASE("pencil validation") {
  Fp fld;
  std::vector<Matrix<Fp>> bad{Matrix<Fp>(fld, 2, 3)};
  CHECK_THROWS_AS(Pencil<Fp>::linear(fld, 2, 2, bad), ShapeMismatchError);
  std::vector<Matrix<Fp>> wrong_field{Matrix<Fp>(Fp(101), 2, 2)};
  CHECK_THROWS_AS(Pencil<Fp>::linear(fld, 2, 2, wrong_field), FieldMismatchError);
  CHECK_THROWS_AS(
      Pencil<Fp>::affine(fld, Matrix<Fp>(fld, 2, 2), {Matrix<Fp>(fld, 3, 3)}),
      ShapeMismatchError);

  auto p = diag_pencil(fld, 3);
  CHECK(p.vars() == 3);
  CHECK(p.is_square());
  CHECK_FALSE(p.is_affine());
}

TEST_CASE_TEMPLATE("blow-up is the sum of kronecker terms", F, Fp, Rat) {
  F fld;
  auto a = from_ints(fld, {{1, 0}, {0, 0}});
  auto b = from_ints(fld, {{0, 0}, {0, 1}});
  auto p = Pencil<F>::linear(fld, 2, 2, {a, b});

  auto t1 = from_ints(fld, {{1, 2}, {3, 4}});
  auto t2 = from_ints(fld, {{5, 6}, {7, 8}});
  auto blow = blowup_eval(p, std::vector<Matrix<F>>{t1, t2});
  CHECK(blow == kronecker(a, t1) + kronecker(b, t2));
  CHECK(blow == from_ints(fld, {{1, 2, 0, 0},
                                {3, 4, 0, 0},
                                {0, 0, 5, 6},
                                {0, 0, 7, 8}}));
}

TEST_CASE_TEMPLATE("affine blow-up pins the constant slot to identity", F, Fp, Rat) {
  F fld;
  auto c = from_ints(fld, {{0, 1}, {0, 0}});
  auto a = from_ints(fld, {{1, 0}, {0, 1}});
  auto p = Pencil<F>::affine(fld, c, {a});

  auto t = from_ints(fld, {{2, 0}, {0, 3}});
  auto blow = blowup_eval(p, std::vector<Matrix<F>>{t});
  CHECK(blow == kronecker(c, Matrix<F>::identity(fld, 2)) + kronecker(a, t));

  // non-square blocks are meaningless once an identity slot is forced
  CHECK_THROWS_AS(blowup_rank(p, 1, 2, 4, 0), ShapeMismatchError);
}

TEST_CASE("blow-up rejects malformed tuples") {
  Fp fld;
  auto p = diag_pencil(fld, 2);
  std::vector<Matrix<Fp>> short_tuple{Matrix<Fp>(fld, 2, 2)};
  CHECK_THROWS_AS(blowup_eval(p, short_tuple), ShapeMismatchError);
  std::vector<Matrix<Fp>> ragged{Matrix<Fp>(fld, 2, 2), Matrix<Fp>(fld, 3, 3)};
  CHECK_THROWS_AS(blowup_eval(p, ragged), ShapeMismatchError);
}

TEST_CASE("sampled tuples are reproducible and variable-major") {
  Fp fld;
  Rng rng(7);
  auto tup = sample_tuple(fld, 2, 2, 3, rng);
  REQUIRE(tup.size() == 2);
  CHECK(tup[0].rows() == 2);
  CHECK(tup[0].cols() == 3);

  // same stream, drawn by hand in entry order
  Rng rng2(7);
  for (std::size_t v = 0; v < 2; ++v)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(tup[v](i, j) == fld.sample(rng2));
}

TEST_CASE_TEMPLATE("blowup_rank finds full rank on generic pencils", F, Fp, Rat) {
  F fld;
  auto p = diag_pencil(fld, 3);
  for (std::size_t d = 1; d <= 3; ++d) {
    auto w = blowup_rank(p, d, d, 4, 99);
    CHECK(w.achieved_rank == 3 * d);
    CHECK(w.p == d);
    CHECK(w.q == d);
    REQUIRE(w.tuple.size() == 3);
    // the witness tuple reproduces the reported rank exactly
    CHECK(rank(blowup_eval(p, w.tuple, d, d)) == w.achieved_rank);
  }
}

TEST_CASE("blowup_rank caps at the structural rank") {
  Fp fld;
  // second row identically zero: rank of any (d,d) blow-up is at most d
  auto a = from_ints(fld, {{1, 0}, {0, 0}});
  auto b = from_ints(fld, {{0, 1}, {0, 0}});
  auto p = Pencil<Fp>::linear(fld, 2, 2, {a, b});
  auto w = blowup_rank(p, 3, 3, 6, 1);
  CHECK(w.achieved_rank == 3);
}

TEST_CASE("blowup_rank is deterministic in the seed") {
  Fp fld;
  auto p = diag_pencil(fld, 3);
  auto w1 = blowup_rank(p, 2, 2, 8, 12345);
  auto w2 = blowup_rank(p, 2, 2, 8, 12345);
  CHECK(w1.achieved_rank == w2.achieved_rank);
  REQUIRE(w1.tuple.size() == w2.tuple.size());
  for (std::size_t i = 0; i < w1.tuple.size(); ++i)
    CHECK(w1.tuple[i] == w2.tuple[i]);
  CHECK_THROWS_AS(blowup_rank(p, 2, 2, 0, 1), PreconditionError);
}

TEST_CASE("square blow-up rank is divisible by the block size") {
  Fp fld;
  Rng rng(55);
  for (int it = 0; it < 20; ++it) {
    std::vector<Matrix<Fp>> cs;
    for (int v = 0; v < 2; ++v) cs.push_back(Matrix<Fp>::random(fld, 3, 3, rng));
    auto p = Pencil<Fp>::linear(fld, 3, 3, std::move(cs));
    for (std::size_t d = 2; d <= 3; ++d) {
      auto w = blowup_rank(p, d, d, 8, derive_seed(1000, it));
      CHECK(w.achieved_rank % d == 0);
    }
  }
}

TEST_CASE("blow-up rank grid is monotone and concave") {
  Fp fld;
  Rng rng(77);
  const std::size_t top = 4;
  for (int it = 0; it < 5; ++it) {
    std::vector<Matrix<Fp>> cs;
    for (int v = 0; v < 2; ++v) cs.push_back(Matrix<Fp>::random(fld, 3, 3, rng));
    auto p = Pencil<Fp>::linear(fld, 3, 3, std::move(cs));

    std::size_t r[top + 3][top + 3];
    for (std::size_t a = 1; a <= top + 2; ++a)
      for (std::size_t b = 1; b <= top + 2; ++b)
        r[a][b] = blowup_rank(p, a, b, 8, derive_seed(it, a * 16 + b)).achieved_rank;

    for (std::size_t a = 1; a <= top; ++a)
      for (std::size_t b = 1; b <= top; ++b) {
        CHECK(r[a][b + 1] >= r[a][b]);
        CHECK(r[a + 1][b] >= r[a][b]);
        CHECK(2 * r[a][b + 1] >= r[a][b] + r[a][b + 2]);
        CHECK(2 * r[a + 1][b] >= r[a][b] + r[a + 2][b]);
      }
  }
}
