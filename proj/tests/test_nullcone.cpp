#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncalg/field.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/nullcone.hpp"

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
  std::vector<Matrix<F>> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<F> c(fld, n, n);
    c(i, i) = fld.one();
    cs.push_back(std::move(c));
  }
  return Pencil<F>::linear(fld, n, n, std::move(cs));
}

// span{E11, E12}: the second row is identically zero
template <class F>
Pencil<F> top_row_pencil(F fld) {
  auto a = from_ints(fld, {{1, 0}, {0, 0}});
  auto b = from_ints(fld, {{0, 1}, {0, 0}});
  return Pencil<F>::linear(fld, 2, 2, {a, b});
}

}  // namespace

TEST_CASE("deciding blow-up size") {
  CHECK(deciding_blowup_size(1) == 1);
  CHECK(deciding_blowup_size(2) == 1);
  CHECK(deciding_blowup_size(5) == 4);
  CHECK(default_dmax(4, 4) == 3);
  CHECK(default_dmax(1, 7) == 1);
}

TEST_CASE_TEMPLATE("invariant evaluation f_T", F, Fp, Rat) {
  F fld;
  auto p = diag_pencil(fld, 2);
  // d = 1 scalars t1 = 2, t2 = 3: det diag(2,3) = 6
  std::vector<Matrix<F>> t{from_ints(fld, {{2}}), from_ints(fld, {{3}})};
  CHECK(f_T(p, t) == fld.from_int(6));

  CHECK_THROWS_AS(f_T(Pencil<F>::linear(fld, 2, 3,
                                        {Matrix<F>(fld, 2, 3), Matrix<F>(fld, 2, 3)}),
                  t),
                  NonSquareError);
}

TEST_CASE_TEMPLATE("null cone membership both ways", F, Fp, Rat) {
  F fld;

  auto full = in_nullcone(diag_pencil(fld, 3), 8, 42);
  CHECK_FALSE(full.in_null_cone);
  CHECK(full.blowup_size == 2);
  REQUIRE(full.witness.has_value());
  REQUIRE(full.det_value.has_value());
  CHECK_FALSE(fld.is_zero(*full.det_value));
  // the certificate reproduces: f_T at the witness equals the stored value
  CHECK(f_T(diag_pencil(fld, 3), full.witness->tuple) == *full.det_value);

  auto zero = in_nullcone(
      Pencil<F>::linear(fld, 2, 2, {Matrix<F>(fld, 2, 2)}), 8, 42);
  CHECK(zero.in_null_cone);
  CHECK_FALSE(zero.witness.has_value());

  auto degenerate = in_nullcone(top_row_pencil(fld), 8, 42);
  CHECK(degenerate.in_null_cone);
}

TEST_CASE("null cone rejects affine and non-square input") {
  Fp fld;
  auto aff = Pencil<Fp>::affine(fld, Matrix<Fp>::identity(fld, 2),
                                {Matrix<Fp>::identity(fld, 2)});
  CHECK_THROWS_AS(in_nullcone(aff, 4, 0), PreconditionError);
  auto rect = Pencil<Fp>::linear(fld, 2, 3, {Matrix<Fp>(fld, 2, 3)});
  CHECK_THROWS_AS(in_nullcone(rect, 4, 0), NonSquareError);
}

TEST_CASE_TEMPLATE("membership is invariant under unimodular action", F, Fp, Rat) {
  F fld;
  // U (x) V acting on the tuple preserves every f_T up to det(U)det(V) = 1
  auto p = diag_pencil(fld, 2);
  auto u = from_ints(fld, {{1, 3}, {0, 1}});
  auto v = from_ints(fld, {{1, 0}, {-2, 1}});
  std::vector<Matrix<F>> moved;
  for (const auto& c : p.coeffs) moved.push_back(u * c * v);
  auto q = Pencil<F>::linear(fld, 2, 2, std::move(moved));

  auto before = in_nullcone(p, 8, 5);
  auto after = in_nullcone(q, 8, 5);
  CHECK(before.in_null_cone == after.in_null_cone);
}

TEST_CASE("ncrank lower bound") {
  Fp fld;

  // rank-one pencil span{E11}: every blow-up has rank d, so the bound is 1
  Matrix<Fp> e11(fld, 2, 2);
  e11(0, 0) = fld.one();
  auto thin = Pencil<Fp>::linear(fld, 2, 2, {e11});
  auto b1 = ncrank_lower_bound(thin, 3, 6, 9);
  CHECK(b1.best == 1);
  REQUIRE(b1.per_d.size() == 3);
  for (std::size_t d = 1; d <= 3; ++d) {
    CHECK(b1.per_d[d - 1].first == d);
    CHECK(b1.per_d[d - 1].second == d);
  }

  // full pencil: bound reaches n already at d = 1
  auto b2 = ncrank_lower_bound(diag_pencil(fld, 3), 2, 6, 9);
  CHECK(b2.best == 3);

  CHECK_THROWS_AS(ncrank_lower_bound(thin, 0, 6, 9), PreconditionError);
}

TEST_CASE_TEMPLATE("skew field invertibility", F, Fp, Rat) {
  F fld;
  auto inv = skewfield_invertible(diag_pencil(fld, 3), 8, 4);
  CHECK(inv.invertible);
  REQUIRE(inv.witness.has_value());

  // affine pencil I + x E11 is invertible; the identity slot is pinned
  Matrix<F> e11(fld, 2, 2);
  e11(0, 0) = fld.one();
  auto aff = Pencil<F>::affine(fld, Matrix<F>::identity(fld, 2), {e11});
  auto inv2 = skewfield_invertible(aff, 8, 4);
  CHECK(inv2.invertible);
  REQUIRE(inv2.witness.has_value());
  CHECK(!fld.is_zero(det(blowup_eval(aff, inv2.witness->tuple))));

  auto sing = skewfield_invertible(top_row_pencil(fld), 8, 4);
  CHECK_FALSE(sing.invertible);
  CHECK_FALSE(sing.witness.has_value());
}

TEST_CASE_TEMPLATE("witness normalization pins the first slot", F, Fp, Rat) {
  F fld;
  auto p = diag_pencil(fld, 3);
  auto nc = in_nullcone(p, 8, 21);
  REQUIRE(nc.witness.has_value());

  auto norm = normalize_witness(p, *nc.witness, 21);
  CHECK(norm.normalized);
  CHECK(norm.witness.tuple[0] == Matrix<F>::identity(fld, nc.witness->p));
  // normalized tuple still certifies full rank, exactly
  CHECK(rank(blowup_eval(p, norm.witness.tuple, norm.witness.p, norm.witness.q)) ==
        norm.witness.achieved_rank);
}

TEST_CASE("degree bounds formulas") {
  auto b = degree_bounds(8, 4);
  CHECK(b.delta_upper == 7);
  CHECK(b.gamma_upper == 56);
  CHECK(b.delta_lower == 3);  // floor(sqrt(9))
  CHECK(b.gamma_lower == 24);
  CHECK(b.beta_upper_char0 == 4 * 4096);   // min(m, n^2) n^4
  CHECK(b.beta_cap_char0 == 262144);       // n^6

  auto s = degree_bounds(3, 2);
  CHECK(s.delta_upper == 2);
  CHECK(s.gamma_upper == 6);
  CHECK(s.delta_lower == 2);
  CHECK(s.beta_upper_char0 == 2 * 81);

  auto tiny = degree_bounds(1, 1);
  CHECK(tiny.delta_upper == 1);
  CHECK(tiny.delta_lower == 1);

  // delta_lower recovers d on the hard-instance sizes n = d^2 - 1
  for (std::uint64_t d = 2; d <= 6; ++d)
    CHECK(degree_bounds(d * d - 1, d + 1).delta_lower == d);

  CHECK_THROWS_AS(degree_bounds(0, 1), PreconditionError);
  CHECK_THROWS_AS(degree_bounds(1ULL << 12, 1), PreconditionError);  // n^6 > 2^64
}

TEST_CASE("isqrt") {
  CHECK(isqrt_u64(0) == 0);
  CHECK(isqrt_u64(1) == 1);
  CHECK(isqrt_u64(3) == 1);
  CHECK(isqrt_u64(4) == 2);
  CHECK(isqrt_u64(15) == 3);
  CHECK(isqrt_u64(16) == 4);
  CHECK(isqrt_u64(~0ULL) == 4294967295ULL);
  for (std::uint64_t v = 0; v < 2000; ++v) {
    auto r = isqrt_u64(v);
    CHECK(r * r <= v);
    CHECK((r + 1) * (r + 1) > v);
  }
}
