#include "ncalg/selftest.hpp"

#include <cmath>
#include <type_traits>

#include "ncalg/formula.hpp"
#include "ncalg/hard_instance.hpp"
#include "ncalg/linalg.hpp"
#include "ncalg/nullcone.hpp"
#include "ncalg/pencil.hpp"
#include "ncalg/quiver.hpp"

namespace ncalg {

namespace {

struct Check {
  SuiteResult r;
  explicit Check(std::string name) { r.name = std::move(name); }
  void expect(bool ok, const std::string& what) {
    ++r.instances;
    if (!ok) {
      ++r.failures;
      if (r.notes.size() < 4) r.notes.push_back(what);
    }
  }
};

double sample_set_size() { return static_cast<double>(kDefaultPrime); }

template <class F>
double field_size(const F& fld) {
  if constexpr (std::is_same_v<F, Fp>)
    return static_cast<double>(fld.modulus());
  else
    return sample_set_size();
}

template <class F>
Pencil<F> random_pencil(const F& fld, std::size_t rows, std::size_t cols,
                        std::size_t m, Rng& rng) {
  std::vector<Matrix<F>> cs;
  cs.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    cs.push_back(Matrix<F>::random(fld, rows, cols, rng));
  return Pencil<F>::linear(fld, rows, cols, std::move(cs));
}

/* Product of unit triangular matrices: determinant exactly 1. */
template <class F>
Matrix<F> random_unimodular(const F& fld, std::size_t n, Rng& rng) {
  Matrix<F> lo = Matrix<F>::identity(fld, n);
  Matrix<F> up = Matrix<F>::identity(fld, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i > j) lo(i, j) = fld.sample(rng);
      if (i < j) up(i, j) = fld.sample(rng);
    }
  return lo * up;
}

template <class F>
SuiteResult suite_rank_transpose(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("exactalg_rank_transpose");
  for (std::size_t i = 0; i < 6; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t rows = 2 + rng.below(4), cols = 2 + rng.below(5);
    const auto m = Matrix<F>::random(fld, rows, cols, rng);
    const auto r = rank(m);
    c.expect(r == rank(m.transpose()), "rank differs under transpose");
    c.expect(r == ref::rank(m), "rank differs from serial reference");
    c.expect(r <= std::min(rows, cols), "rank exceeds dimensions");
  }
  return c.r;
}

template <class F>
SuiteResult suite_det_multiplicative(const F& fld, std::size_t,
                                     std::uint64_t seed) {
  Check c("exactalg_det_multiplicative");
  for (std::size_t n = 1; n <= 4; ++n) {
    Rng rng = Rng::substream(seed, n);
    const auto a = Matrix<F>::random(fld, n, n, rng);
    const auto b = Matrix<F>::random(fld, n, n, rng);
    c.expect(det(a * b) == fld.mul(det(a), det(b)),
             "det(ab) != det(a) det(b)");
    c.expect(det(a) == ref::det(a), "det differs from serial reference");
    c.expect(det(a.transpose()) == det(a), "det differs under transpose");
  }
  return c.r;
}

template <class F>
SuiteResult suite_inverse(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("exactalg_inverse_roundtrip");
  for (std::size_t n = 1; n <= 4; ++n) {
    Rng rng = Rng::substream(seed, n);
    const auto m = Matrix<F>::random(fld, n, n, rng);
    const auto inv = try_inverse(m);
    c.expect(inv.has_value() == !fld.is_zero(det(m)),
             "invertibility disagrees with det");
    if (inv) {
      const auto id = Matrix<F>::identity(fld, n);
      c.expect(m * *inv == id && *inv * m == id, "inverse round trip failed");
    }
    /* a forced singular matrix: duplicate a row */
    if (n >= 2) {
      auto s = m;
      for (std::size_t j = 0; j < n; ++j) s(n - 1, j) = s(0, j);
      c.expect(!try_inverse(s).has_value(), "inverted a singular matrix");
    }
  }
  return c.r;
}

template <class F>
SuiteResult suite_kronecker(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("exactalg_kronecker_mixed_product");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const auto a = Matrix<F>::random(fld, 2, 3, rng);
    const auto b = Matrix<F>::random(fld, 2, 2, rng);
    const auto x = Matrix<F>::random(fld, 3, 2, rng);
    const auto y = Matrix<F>::random(fld, 2, 2, rng);
    c.expect(kronecker(a, b) * kronecker(x, y) == kronecker(a * x, b * y),
             "mixed product identity failed");
    c.expect(rank(kronecker(a, b)) == rank(a) * rank(b),
             "kronecker rank is not multiplicative");
  }
  c.expect(kronecker(Matrix<F>::identity(fld, 2), Matrix<F>::identity(fld, 3)) ==
               Matrix<F>::identity(fld, 6),
           "kron(I,I) != I");
  return c.r;
}

template <class F>
SuiteResult suite_cayley_hamilton(const F& fld, std::size_t,
                                  std::uint64_t seed) {
  Check c("exactalg_cayley_hamilton");
  for (std::size_t n = 1; n <= 4; ++n) {
    Rng rng = Rng::substream(seed, n);
    const auto m = Matrix<F>::random(fld, n, n, rng);
    const auto p = charpoly(m);
    c.expect(p.size() == n, "charpoly has wrong degree");
    c.expect(charpoly_eval(m, p).is_zero(), "matrix does not satisfy its charpoly");
    /* det(m) = (-1)^n c_0 */
    auto c0 = p[0];
    if (n % 2 == 1) c0 = fld.neg(c0);
    c.expect(det(m) == c0, "charpoly constant term disagrees with det");
  }
  return c.r;
}

template <class F>
SuiteResult suite_blowup_linearity(const F& fld, std::size_t,
                                   std::uint64_t seed) {
  Check c("pencil_blowup_linearity");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const auto pencil = random_pencil(fld, 2 + rng.below(2), 2 + rng.below(2),
                                      1 + rng.below(3), rng);
    const std::size_t d = 2;
    auto t1 = sample_tuple(fld, pencil.vars(), d, d, rng);
    auto t2 = sample_tuple(fld, pencil.vars(), d, d, rng);
    std::vector<Matrix<F>> sum;
    for (std::size_t k = 0; k < t1.size(); ++k) sum.push_back(t1[k] + t2[k]);
    c.expect(blowup_eval(pencil, sum) ==
                 blowup_eval(pencil, t1) + blowup_eval(pencil, t2),
             "blow-up is not additive in the substitution");
    const auto s = fld.sample(rng);
    std::vector<Matrix<F>> scaled;
    for (const auto& t : t1) scaled.push_back(t.scaled(s));
    c.expect(blowup_eval(pencil, scaled) == blowup_eval(pencil, t1).scaled(s),
             "blow-up is not homogeneous in the substitution");
  }
  return c.r;
}

template <class F>
SuiteResult suite_blowup_block_diagonal(const F& fld, std::size_t,
                                        std::uint64_t seed) {
  Check c("pencil_blowup_block_diagonal");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2 + rng.below(2);
    const auto pencil = random_pencil(fld, n, n, 1 + rng.below(3), rng);
    const auto t1 = sample_tuple(fld, pencil.vars(), 2, 2, rng);
    const auto t2 = sample_tuple(fld, pencil.vars(), 1, 1, rng);
    std::vector<Matrix<F>> ds;
    for (std::size_t k = 0; k < t1.size(); ++k)
      ds.push_back(direct_sum(t1[k], t2[k]));
    c.expect(det(blowup_eval(pencil, ds)) ==
                 fld.mul(det(blowup_eval(pencil, t1)),
                         det(blowup_eval(pencil, t2))),
             "det is not multiplicative on block-diagonal substitutions");
    c.expect(rank(blowup_eval(pencil, ds)) ==
                 rank(blowup_eval(pencil, t1)) + rank(blowup_eval(pencil, t2)),
             "rank is not additive on block-diagonal substitutions");
  }
  return c.r;
}

template <class F>
SuiteResult suite_rank_trials_monotone(const F& fld, std::size_t trials,
                                       std::uint64_t seed) {
  Check c("pencil_rank_monotone_in_trials");
  Rng rng = Rng::substream(seed, 0);
  const auto pencil = random_pencil(fld, 3, 3, 2, rng);
  std::size_t prev = 0;
  for (std::size_t t = 1; t <= std::max<std::size_t>(trials, 2); ++t) {
    const auto w = blowup_rank(pencil, 2, 2, t, seed);
    c.expect(w.achieved_rank >= prev, "achieved rank dropped as trials grew");
    c.expect(rank(blowup_eval(pencil, w.tuple)) == w.achieved_rank,
             "witness rank does not recompute");
    prev = w.achieved_rank;
  }
  return c.r;
}

template <class F>
SuiteResult suite_rank_regularity(const F& fld, std::size_t trials,
                                  std::uint64_t seed) {
  Check c("pencil_rank_regularity");
  double maxdeg = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2 + rng.below(2);
    const auto pencil = random_pencil(fld, n, n, 2, rng);
    for (std::size_t d = 2; d <= 3; ++d) {
      const auto w = blowup_rank(pencil, d, d, trials, derive_seed(seed, d));
      c.expect(w.achieved_rank % d == 0,
               "square blow-up rank not divisible by the block size");
      maxdeg = std::max(maxdeg, static_cast<double>(n * d));
    }
    const auto w = blowup_rank(pencil, 2, 4, trials, derive_seed(seed, 24));
    c.expect(w.achieved_rank % 2 == 0,
             "blow-up rank not divisible by gcd of the block shape");
    maxdeg = std::max(maxdeg, static_cast<double>(4 * n));
  }
  c.r.per_trial_failure_bound = maxdeg / field_size(fld);
  return c.r;
}

template <class F>
SuiteResult suite_rank_monotone_concave(const F& fld, std::size_t trials,
                                        std::uint64_t seed) {
  Check c("pencil_rank_monotone_concave");
  Rng rng = Rng::substream(seed, 0);
  const std::size_t n = 3;
  const auto pencil = random_pencil(fld, n, n, 2, rng);
  const std::size_t N = 4;
  std::size_t grid[N + 1][N + 1] = {};
  for (std::size_t p = 1; p <= N; ++p)
    for (std::size_t q = 1; q <= N; ++q)
      grid[p][q] =
          blowup_rank(pencil, p, q, trials, derive_seed(seed, p * 16 + q))
              .achieved_rank;
  for (std::size_t p = 1; p <= N; ++p)
    for (std::size_t q = 1; q <= N; ++q) {
      if (q + 1 <= N)
        c.expect(grid[p][q + 1] >= grid[p][q], "rank not monotone in q");
      if (p + 1 <= N)
        c.expect(grid[p + 1][q] >= grid[p][q], "rank not monotone in p");
      if (q + 2 <= N)
        c.expect(2 * grid[p][q + 1] >= grid[p][q] + grid[p][q + 2],
                 "rank not concave in q");
      if (p + 2 <= N)
        c.expect(2 * grid[p + 1][q] >= grid[p][q] + grid[p + 2][q],
                 "rank not concave in p");
    }
  c.r.per_trial_failure_bound = static_cast<double>(n * N) / field_size(fld);
  return c.r;
}

template <class F>
SuiteResult suite_nullcone_certificates(const F& fld, std::size_t trials,
                                        std::uint64_t seed) {
  Check c("nullcone_certificate_soundness");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2 + rng.below(3);
    const auto pencil = random_pencil(fld, n, n, 1 + rng.below(3), rng);
    const auto v = in_nullcone(pencil, trials, derive_seed(seed, 100 + i));
    if (!v.in_null_cone) {
      /* recompute the certificate through the serial reference path */
      Matrix<F> acc(fld, n * v.blowup_size, n * v.blowup_size);
      for (std::size_t k = 0; k < pencil.vars(); ++k)
        acc = acc + kronecker(pencil.coeffs[k], v.witness->tuple[k]);
      c.expect(ref::rank(acc) == n * v.blowup_size,
               "full-rank witness fails serial recomputation");
      c.expect(!fld.is_zero(ref::det(acc)) &&
                   ref::det(acc) == *v.det_value,
               "stored invariant value does not recompute");
    } else {
      c.expect(v.witness == std::nullopt, "membership verdict carries a witness");
    }
  }
  return c.r;
}

template <class F>
SuiteResult suite_nullcone_descent(const F& fld, std::size_t trials,
                                   std::uint64_t seed) {
  Check c("nullcone_descent");
  for (std::size_t i = 0; i < 3; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 3 + rng.below(2);
    const auto pencil = random_pencil(fld, n, n, 2, rng);
    bool full_somewhere = false;
    for (std::size_t d = 1; d + 1 <= n; ++d) {
      const auto w = blowup_rank(pencil, d, d, trials, derive_seed(seed, d));
      if (w.achieved_rank == n * d) full_somewhere = true;
    }
    const auto top =
        blowup_rank(pencil, n - 1, n - 1, trials, derive_seed(seed, n - 1));
    if (full_somewhere)
      c.expect(top.achieved_rank == n * (n - 1),
               "full rank below did not propagate to the deciding size");
  }
  c.r.per_trial_failure_bound =
      static_cast<double>(4 * 3) / field_size(fld);
  return c.r;
}

template <class F>
SuiteResult suite_nullcone_invariance(const F& fld, std::size_t,
                                      std::uint64_t seed) {
  Check c("nullcone_invariant_under_unimodular_action");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2 + rng.below(2);
    const auto pencil = random_pencil(fld, n, n, 2, rng);
    const auto u = random_unimodular(fld, n, rng);
    const auto v = random_unimodular(fld, n, rng);
    std::vector<Matrix<F>> moved;
    for (const auto& a : pencil.coeffs) moved.push_back(u * a * v);
    const auto pencil2 = Pencil<F>::linear(fld, n, n, std::move(moved));
    const std::size_t d = 2;
    const auto tuple = sample_tuple(fld, pencil.vars(), d, d, rng);
    c.expect(f_T(pencil2, tuple) == f_T(pencil, tuple),
             "invariant changed under a determinant-one basis change");
  }
  return c.r;
}

template <class F>
SuiteResult suite_nullcone_dim1(const F& fld, std::size_t trials,
                                std::uint64_t seed) {
  Check c("nullcone_size_one_pencils");
  const auto zero = Pencil<F>::linear(fld, 1, 1, {Matrix<F>(fld, 1, 1)});
  c.expect(in_nullcone(zero, trials, seed).in_null_cone,
           "zero pencil escaped the zero locus");
  Matrix<F> one(fld, 1, 1);
  one(0, 0) = fld.one();
  const auto unit = Pencil<F>::linear(fld, 1, 1, {one});
  const auto v = in_nullcone(unit, trials, seed);
  c.expect(!v.in_null_cone, "nonzero scalar pencil in the zero locus");
  c.expect(v.blowup_size == 1, "scalar pencil should decide at block size 1");
  return c.r;
}

template <class F>
SuiteResult suite_hard_kernel(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("hardinstance_kernel_certificates");
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t k = 1; k < d; ++k) {
      Rng rng = Rng::substream(seed, d * 8 + k);
      const auto A = Matrix<F>::random(fld, k, k, rng);
      std::vector<Matrix<F>> Bs;
      for (std::size_t i = 0; i + 1 < d; ++i)
        Bs.push_back(Matrix<F>::random(fld, k, k, rng));
      const auto N = power_block_matrix(d, A, Bs);
      /* every basis vector u gives an independent kernel vector */
      for (std::size_t b = 0; b < k; ++b) {
        std::vector<typename F::Elem> u(k, fld.zero());
        u[b] = fld.one();
        const auto v = charpoly_kernel_vector(d, A, u);
        bool nonzero = false, annihilated = true;
        for (const auto& e : v)
          if (!fld.is_zero(e)) nonzero = true;
        for (std::size_t r = 0; r < N.rows(); ++r) {
          auto acc = fld.zero();
          for (std::size_t j = 0; j < N.cols(); ++j)
            acc = fld.add(acc, fld.mul(N(r, j), v[j]));
          if (!fld.is_zero(acc)) annihilated = false;
        }
        c.expect(nonzero, "kernel certificate is the zero vector");
        c.expect(annihilated, "kernel certificate has nonzero residual");
      }
      c.expect(rank(N) < N.rows(), "power block matrix is not singular");
    }
  return c.r;
}

template <class F>
SuiteResult suite_hard_instance(const F& fld, std::size_t trials,
                                std::uint64_t seed) {
  Check c("hardinstance_verification");
  for (std::size_t d = 2; d <= 3; ++d) {
    const auto inst = make_hard_instance(fld, d);
    c.expect(inst.pencil.rows == d * d - 1 && inst.pencil.vars() == d + 1,
             "hard instance has wrong shape");
    const auto rep = verify_hard_instance(inst, trials, derive_seed(seed, d));
    c.expect(rep.canonical_invertible, "canonical substitution is singular");
    for (const auto& level : rep.below) {
      c.expect(level.singular == level.trials,
               "a random substitution below the threshold had full rank");
      c.expect(level.kernel_exact, "kernel certificate failed");
    }
    c.expect(rep.ok && rep.delta_lower == d,
             "hard instance verification did not conclude");
    c.expect(degree_bounds(inst.pencil.rows, inst.pencil.vars()).delta_lower == d,
             "degree bound disagrees with the instance family");
  }
  c.r.per_trial_failure_bound =
      static_cast<double>((3 * 3 - 1) * 2) / field_size(fld);
  return c.r;
}

template <class F>
SuiteResult suite_quiver_shapes(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("quiver_pencil_shape");
  /* x ==(2)==> y --> z, weight pairing zero by construction */
  const Quiver q = Quiver::make(
      {"x", "y", "z"},
      {{"a", "x", "y"}, {"b", "x", "y"}, {"c", "y", "z"}});
  c.expect(q.path_count(0, 2) == 2, "path count along the chain");
  c.expect(q.paths(0, 2).size() == 2, "path enumeration disagrees with count");
  c.expect(q.paths(0, 0).size() == 1, "trivial path missing");
  c.expect(q.path_count(2, 0) == 0, "phantom reverse path");
  for (std::size_t i = 0; i < 3; ++i) {
    Rng rng = Rng::substream(seed, i);
    const DimVector dim{2, 2, 2};
    const Weight weight{1, 0, -1};
    Representation<F> rep;
    rep.push_back(Matrix<F>::random(fld, 2, 2, rng));
    rep.push_back(Matrix<F>::random(fld, 2, 2, rng));
    rep.push_back(Matrix<F>::random(fld, 2, 2, rng));
    const auto pencil = build_weight_pencil(fld, q, dim, weight, rep);
    c.expect(pencil.rows == 2 && pencil.cols == 2, "weight pencil size");
    c.expect(pencil.vars() == 2, "one variable per path expected");
  }
  return c.r;
}

template <class F>
SuiteResult suite_quiver_theta(const F& fld, std::size_t trials,
                               std::uint64_t seed) {
  Check c("quiver_two_vertex_equivalence");
  for (std::size_t i = 0; i < 4; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2 + rng.below(2), m = 1 + rng.below(3);
    std::vector<Quiver::ArrowSpec> arrows;
    for (std::size_t a = 0; a < m; ++a)
      arrows.push_back({"a" + std::to_string(a + 1), "x", "y"});
    const Quiver theta = Quiver::make({"x", "y"}, std::move(arrows));
    Representation<F> rep;
    for (std::size_t a = 0; a < m; ++a)
      rep.push_back(Matrix<F>::random(fld, n, n, rng));
    const auto sv = is_semistable(fld, theta, DimVector{n, n}, Weight{1, -1},
                                  rep, trials, derive_seed(seed, i));
    const auto direct = Pencil<F>::linear(fld, n, n, rep);
    const auto nc = in_nullcone(direct, trials, derive_seed(seed, i));
    c.expect(sv.semistable == !nc.in_null_cone,
             "semistability disagrees with the direct membership test");
  }
  c.r.per_trial_failure_bound =
      static_cast<double>(3 * 2) / field_size(fld);
  return c.r;
}

template <class F>
SuiteResult suite_quiver_weight_scaling(const F& fld, std::size_t trials,
                                        std::uint64_t seed) {
  Check c("quiver_weight_scaling");
  const Quiver theta =
      Quiver::make({"x", "y"}, {{"a1", "x", "y"}, {"a2", "x", "y"}});
  for (std::size_t i = 0; i < 3; ++i) {
    Rng rng = Rng::substream(seed, i);
    const std::size_t n = 2;
    Representation<F> rep;
    rep.push_back(Matrix<F>::random(fld, n, n, rng));
    rep.push_back(Matrix<F>::random(fld, n, n, rng));
    const auto v1 = is_semistable(fld, theta, DimVector{n, n}, Weight{1, -1},
                                  rep, trials, derive_seed(seed, i));
    const auto v2 = is_semistable(fld, theta, DimVector{n, n}, Weight{2, -2},
                                  rep, trials, derive_seed(seed, i));
    c.expect(v1.semistable == v2.semistable,
             "doubling the weight changed the verdict");
  }
  c.r.per_trial_failure_bound =
      static_cast<double>(4 * 3) / field_size(fld);
  return c.r;
}

Formula random_formula(Rng& rng, std::size_t depth, std::size_t nvars) {
  if (depth == 0 || rng.below(5) == 0) {
    if (rng.below(3) == 0)
      return Formula::constant(static_cast<std::int64_t>(rng.below(7)));
    return Formula::var(1 + rng.below(nvars));
  }
  switch (rng.below(5)) {
    case 0:
      return Formula::add(random_formula(rng, depth - 1, nvars),
                          random_formula(rng, depth - 1, nvars));
    case 1:
      return Formula::sub(random_formula(rng, depth - 1, nvars),
                          random_formula(rng, depth - 1, nvars));
    case 2:
      return Formula::mul(random_formula(rng, depth - 1, nvars),
                          random_formula(rng, depth - 1, nvars));
    case 3:
      return Formula::neg(random_formula(rng, depth - 1, nvars));
    default:
      return Formula::inv(random_formula(rng, depth - 1, nvars));
  }
}

template <class F>
std::optional<typename F::Elem> eval_scalar(
    const Formula& f, const F& fld,
    const std::vector<typename F::Elem>& vals) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Const:
      return fld.from_int(f.value());
    case Kind::Var:
      return vals[f.var_index() - 1];
    case Kind::Neg: {
      const auto a = eval_scalar(f.child(), fld, vals);
      if (!a) return std::nullopt;
      return fld.neg(*a);
    }
    case Kind::Add: {
      const auto a = eval_scalar(f.child(0), fld, vals);
      const auto b = eval_scalar(f.child(1), fld, vals);
      if (!a || !b) return std::nullopt;
      return fld.add(*a, *b);
    }
    case Kind::Mul: {
      const auto a = eval_scalar(f.child(0), fld, vals);
      const auto b = eval_scalar(f.child(1), fld, vals);
      if (!a || !b) return std::nullopt;
      return fld.mul(*a, *b);
    }
    case Kind::Inv: {
      const auto a = eval_scalar(f.child(), fld, vals);
      if (!a) return std::nullopt;
      const auto r = fld.try_inv(*a);
      if (!r) return std::nullopt;
      return *r;
    }
  }
  return std::nullopt;
}

template <class F>
SuiteResult suite_formula_roundtrip(const F&, std::size_t, std::uint64_t seed) {
  Check c("formula_parse_print_roundtrip");
  for (std::size_t i = 0; i < 40; ++i) {
    Rng rng = Rng::substream(seed, i);
    const auto f = random_formula(rng, 4, 3);
    const auto text = to_text(f);
    try {
      c.expect(parse_formula(text) == f, "round trip altered: " + text);
    } catch (const Error& e) {
      c.expect(false, "round trip failed to parse: " + text);
    }
  }
  return c.r;
}

template <class F>
SuiteResult suite_formula_scalar(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("formula_matches_scalar_arithmetic");
  for (std::size_t i = 0; i < 12; ++i) {
    Rng rng = Rng::substream(seed, i);
    const auto f = random_formula(rng, 3, 2);
    std::vector<typename F::Elem> vals{fld.sample(rng), fld.sample(rng)};
    std::vector<Matrix<F>> tuple;
    for (const auto& v : vals) {
      Matrix<F> m(fld, 1, 1);
      m(0, 0) = v;
      tuple.push_back(std::move(m));
    }
    const auto direct = eval_scalar(f, fld, vals);
    const auto mat = evaluate(f, fld, tuple, 1);
    c.expect(direct.has_value() == mat.has_value(),
             "definedness differs at scalars");
    if (direct && mat) c.expect((*mat)(0, 0) == *direct, "values differ at scalars");
  }
  return c.r;
}

template <class F>
SuiteResult suite_formula_rit(const F& fld, std::size_t trials,
                              std::uint64_t seed) {
  Check c("formula_identity_test_soundness");
  const auto t1 = Formula::var(1), t2 = Formula::var(2), t3 = Formula::var(3);
  const std::vector<Formula> zeros{
      Formula::sub(t1, t1),
      Formula::sub(Formula::add(t1, t2), Formula::add(t2, t1)),
      Formula::sub(Formula::mul(t1, Formula::add(t2, t3)),
                   Formula::add(Formula::mul(t1, t2), Formula::mul(t1, t3))),
  };
  for (const auto& z : zeros) {
    const auto v = rit(fld, z, trials, seed);
    c.expect(v.status != RitStatus::NonZero,
             "identically zero formula produced a nonzero witness");
  }
  const auto v1 = rit(fld, t1, trials, seed);
  c.expect(v1.status == RitStatus::NonZero, "t1 tested as zero");
  const auto comm = Formula::sub(Formula::mul(t1, t2), Formula::mul(t2, t1));
  const auto v2 = rit(fld, comm, trials, seed);
  c.expect(v2.status == RitStatus::NonZero, "commutator tested as zero");
  if (v2.status == RitStatus::NonZero) {
    const auto again =
        evaluate(comm, fld, v2.witness_tuple, v2.dimension);
    c.expect(again.has_value() && *again == *v2.witness_value &&
                 !again->is_zero(),
             "commutator witness does not recompute");
  }
  return c.r;
}

template <class F>
SuiteResult suite_kernels(const F& fld, std::size_t, std::uint64_t seed) {
  Check c("kernels_match_serial_reference");
  const std::size_t big = std::is_same_v<F, Fp> ? 72 : 10;
  for (std::size_t i = 0; i < 2; ++i) {
    Rng rng = Rng::substream(seed, i);
    const auto a = Matrix<F>::random(fld, big, big, rng);
    const auto b = Matrix<F>::random(fld, big, big, rng);
    c.expect(a * b == ref::mul(a, b), "parallel product mismatch");
    c.expect(rank(a) == ref::rank(a), "parallel rank mismatch");
    c.expect(det(a) == ref::det(a), "parallel det mismatch");
  }
  /* a rank-deficient case above the parallel cutoff */
  Rng rng = Rng::substream(seed, 99);
  auto lowrank = Matrix<F>(fld, big, 3);
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = 0; j < 3; ++j) lowrank(i, j) = fld.sample(rng);
  auto wide = Matrix<F>(fld, 3, big);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < big; ++j) wide(i, j) = fld.sample(rng);
  const auto prod = lowrank * wide;
  c.expect(rank(prod) == ref::rank(prod) && rank(prod) <= 3,
           "low-rank product rank mismatch");
  return c.r;
}

template <class F>
std::vector<SuiteResult> run_all(const F& fld, std::size_t trials,
                                 std::uint64_t seed) {
  std::vector<SuiteResult> out;
  std::size_t idx = 0;
  const auto go = [&](auto&& suite) {
    out.push_back(suite(fld, trials, derive_seed(seed, 1000 + idx)));
    ++idx;
  };
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_rank_transpose(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_det_multiplicative(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_inverse(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_kronecker(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_cayley_hamilton(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_blowup_linearity(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_blowup_block_diagonal(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_rank_trials_monotone(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_rank_regularity(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_rank_monotone_concave(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_nullcone_certificates(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_nullcone_descent(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_nullcone_invariance(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_nullcone_dim1(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_hard_kernel(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_hard_instance(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_quiver_shapes(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_quiver_theta(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_quiver_weight_scaling(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_formula_roundtrip(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_formula_scalar(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_formula_rit(f, t, s); });
  go([](const F& f, std::size_t t, std::uint64_t s) { return suite_kernels(f, t, s); });
  return out;
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  const std::size_t trials = opts.trials == 0 ? 1 : opts.trials;
  return with_field(opts.field, [&](auto fld) {
    return run_all(fld, trials, opts.seed);
  });
}

}  // namespace ncalg
