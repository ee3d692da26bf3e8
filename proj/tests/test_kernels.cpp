#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <type_traits>

#include "ncalg/field.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/reports.hpp"

using namespace ncalg;

namespace {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

json diag_pencil_json(std::size_t n) {
  Fp fld;
  std::vector<Matrix<Fp>> cs;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<Fp> c(fld, n, n);
    c(i, i) = fld.one();
    cs.push_back(std::move(c));
  }
  return pencil_to_json(Pencil<Fp>::linear(fld, n, n, std::move(cs)));
}

}  // namespace

TEST_CASE_TEMPLATE("parallel kernels match the serial reference", F, Fp, Rat) {
  F fld;
  Rng rng(1);
  // straddle the parallel dispatch threshold
  for (std::size_t n : {8, 80}) {
    if (std::is_same_v<F, Rat> && n > 8) break;  // keep exact case small
    auto a = Matrix<F>::random(fld, n, n, rng);
    auto b = Matrix<F>::random(fld, n, n, rng);
    CHECK(a * b == ref::mul(a, b));
    CHECK(rank(a) == ref::rank(a));
    CHECK(det(a) == ref::det(a));
    auto low = Matrix<F>::random(fld, n, 3, rng) * Matrix<F>::random(fld, 3, n, rng);
    CHECK(rank(low) == ref::rank(low));
    CHECK(fld.is_zero(det(low)) == fld.is_zero(ref::det(low)));
  }
}

TEST_CASE("thread count does not change results") {
  const int hw = max_threads();
  const json pj = diag_pencil_json(4);
  const auto fs = FieldSpec::prime_field(kDefaultPrime);

  set_threads(1);
  auto serial_nc = nullcone_report(fs, pj, 12, 3).dump(2);
  auto serial_hi = hard_instance_report(fs, 3, 16, 3).dump(2);
  auto serial_rit = rit_report(fs, "t1*t2 - t2*t1", 8, 3).dump(2);

  set_threads(hw);
  auto par_nc = nullcone_report(fs, pj, 12, 3).dump(2);
  auto par_hi = hard_instance_report(fs, 3, 16, 3).dump(2);
  auto par_rit = rit_report(fs, "t1*t2 - t2*t1", 8, 3).dump(2);

  CHECK(serial_nc == par_nc);
  CHECK(serial_hi == par_hi);
  CHECK(serial_rit == par_rit);
}

TEST_CASE("thread count does not change blow-up witnesses") {
  Fp fld;
  Rng rng(77);
  std::vector<Matrix<Fp>> cs{Matrix<Fp>::random(fld, 4, 4, rng),
                             Matrix<Fp>::random(fld, 4, 4, rng)};
  auto p = Pencil<Fp>::linear(fld, 4, 4, std::move(cs));

  set_threads(1);
  auto w1 = blowup_rank(p, 3, 3, 16, 5);
  set_threads(max_threads());
  auto w2 = blowup_rank(p, 3, 3, 16, 5);

  CHECK(w1.achieved_rank == w2.achieved_rank);
  REQUIRE(w1.tuple.size() == w2.tuple.size());
  for (std::size_t i = 0; i < w1.tuple.size(); ++i)
    CHECK(w1.tuple[i] == w2.tuple[i]);
}

TEST_CASE("big parallel product stays exact near the modulus") {
  // entries near p stress the 128-bit reduction inside the parallel loops
  Fp fld;
  const std::size_t n = 64;
  Matrix<Fp> a(fld, n, n), b(fld, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = kDefaultPrime - 1 - ((i + j) % 5);
      b(i, j) = kDefaultPrime - 1 - ((i * 7 + j) % 11);
    }
  CHECK(a * b == ref::mul(a, b));
}
