// Wall-clock comparison of the parallel kernels against the serial
// reference implementations they are tested against. Build with the
// `bench_kernels` target; not part of the test suite.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ncalg/field.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/pencil.hpp"

using namespace ncalg;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = time_once(fn);
  for (int i = 1; i < reps; ++i) best = std::min(best, time_once(fn));
  return best;
}

void report_row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.3f s %10.3f s %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

volatile std::uint64_t sink;

}  // namespace

int main() {
  Fp fld;
  Rng rng(1);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    const std::size_t n = 256;
    auto a = Matrix<Fp>::random(fld, n, n, rng);
    auto b = Matrix<Fp>::random(fld, n, n, rng);
    double s = best_of(3, [&] { sink = ref::mul(a, b)(0, 0); });
    double p = best_of(3, [&] { sink = (a * b)(0, 0); });
    report_row("matmul 256x256", s, p);
  }

  {
    const std::size_t n = 384;
    auto a = Matrix<Fp>::random(fld, n, n, rng);
    double s = best_of(3, [&] { sink = ref::rank(a); });
    double p = best_of(3, [&] { sink = rank(a); });
    report_row("rank 384x384", s, p);
  }

  {
    const std::size_t n = 384;
    auto a = Matrix<Fp>::random(fld, n, n, rng);
    double s = best_of(3, [&] { sink = ref::det(a); });
    double p = best_of(3, [&] { sink = det(a); });
    report_row("det 384x384", s, p);
  }

  {
    // the trial loop itself is parallel; the serial column forces one thread
    std::vector<Matrix<Fp>> cs;
    for (int v = 0; v < 3; ++v) cs.push_back(Matrix<Fp>::random(fld, 6, 6, rng));
    auto pencil = Pencil<Fp>::linear(fld, 6, 6, std::move(cs));
    const std::size_t d = 16, trials = 32;
#ifdef _OPENMP
    const int hw = omp_get_max_threads();
    omp_set_num_threads(1);
    double s = best_of(2, [&] { sink = blowup_rank(pencil, d, d, trials, 9).achieved_rank; });
    omp_set_num_threads(hw);
#else
    double s = best_of(2, [&] { sink = blowup_rank(pencil, d, d, trials, 9).achieved_rank; });
#endif
    double p = best_of(2, [&] { sink = blowup_rank(pencil, d, d, trials, 9).achieved_rank; });
    report_row("blowup_rank 96x96 x32", s, p);
  }

  return 0;
}
