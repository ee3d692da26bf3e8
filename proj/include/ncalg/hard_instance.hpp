#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncalg/nullcone.hpp"
#include "ncalg/pencil.hpp"

namespace ncalg {

/* The d x d block matrix over k x k blocks
 *
 *     block(i, j) = A^{d-1-j} * B_i   for block rows i = 0..d-2,
 *     block(d-1, j) = A^{d-1-j}       (identity in place of B),
 *
 * columns j = 0..d-1. Every substitution with square A of size k < d makes
 * it singular: the vector of characteristic-polynomial coefficients,
 * padded to length d against the decreasing powers, annihilates each block
 * row (Cayley-Hamilton). Size-d substitutions with distinct eigenvalues
 * and a transitive permutation make it invertible. */
template <class F>
Matrix<F> power_block_matrix(std::size_t d, const Matrix<F>& A,
                             std::span<const Matrix<F>> Bs) {
  if (d < 2) throw PreconditionError("power_block_matrix: need d >= 2");
  if (A.rows() != A.cols())
    throw NonSquareError("power_block_matrix: A must be square");
  if (Bs.size() != d - 1)
    throw ShapeMismatchError("power_block_matrix: need d-1 B blocks, got " +
                             std::to_string(Bs.size()));
  const std::size_t k = A.rows();
  const F& fld = A.field();
  for (const auto& b : Bs) {
    if (!(b.field() == fld))
      throw FieldMismatchError("power_block_matrix: field mismatch");
    if (b.rows() != k || b.cols() != k)
      throw ShapeMismatchError("power_block_matrix: B block shape " +
                               b.shape_str());
  }
  std::vector<Matrix<F>> apow;  /* apow[e] = A^e */
  apow.reserve(d);
  apow.push_back(Matrix<F>::identity(fld, k));
  for (std::size_t e = 1; e < d; ++e) apow.push_back(apow.back() * A);

  Matrix<F> out(fld, d * k, d * k);
  auto place = [&](std::size_t bi, std::size_t bj, const Matrix<F>& blk) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) out(bi * k + i, bj * k + j) = blk(i, j);
  };
  for (std::size_t j = 0; j < d; ++j) {
    const Matrix<F>& pw = apow[d - 1 - j];
    for (std::size_t i = 0; i + 1 < d; ++i) place(i, j, pw * Bs[i]);
    place(d - 1, j, pw);
  }
  return out;
}

template <class F>
Matrix<F> power_block_matrix(std::size_t d, const Matrix<F>& A,
                             const std::vector<Matrix<F>>& Bs) {
  return power_block_matrix(d, A, std::span<const Matrix<F>>(Bs));
}

/* Exact kernel certificate for power_block_matrix with k = dim(A) < d:
 * v = w (x) u, where w holds the coefficients of the characteristic
 * polynomial of A aligned with the powers A^{d-1-j} (leading zeros first),
 * so each block row contracts to charpoly(A)(A) * B_i * u = 0. The residual
 * is identically zero; callers check it exactly. */
template <class F>
std::vector<typename F::Elem> charpoly_kernel_vector(
    std::size_t d, const Matrix<F>& A, const std::vector<typename F::Elem>& u) {
  if (d < 2) throw PreconditionError("charpoly_kernel_vector: need d >= 2");
  if (A.rows() != A.cols())
    throw NonSquareError("charpoly_kernel_vector: A must be square");
  const std::size_t k = A.rows();
  if (k == 0 || k >= d)
    throw PreconditionError(
        "charpoly_kernel_vector: need 1 <= dim(A) < d, got dim " +
        std::to_string(k));
  if (u.size() != k)
    throw ShapeMismatchError("charpoly_kernel_vector: u must have length " +
                             std::to_string(k));
  const F& fld = A.field();
  const auto c = charpoly(A);  /* c[i] = coefficient of t^i, monic degree k */
  /* w[j] pairs with A^{d-1-j}: zero for exponents above k, one at k */
  std::vector<typename F::Elem> w(d, fld.zero());
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t e = d - 1 - j;
    if (e == k)
      w[j] = fld.one();
    else if (e < k)
      w[j] = c[e];
  }
  std::vector<typename F::Elem> v(d * k, fld.zero());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t s = 0; s < k; ++s) v[j * k + s] = fld.mul(w[j], u[s]);
  return v;
}

/* A square linear pencil of size d^2 - 1 in d + 1 variables whose blow-up
 * rank is maximal at block size d but at no smaller size. Layout, in block
 * coordinates over k x k substitution blocks (variables X_1 = identity
 * slot, X_2 = A slot, X_{2+l} = B_l slot):
 *
 *   - d-1 bidiagonal towers of shape d x (d-1) blocks: X_1 on the diagonal,
 *     -X_2 on the subdiagonal;
 *   - one last tower of shape (d-1) x (d-2) blocks of the same form;
 *   - a final column strip of d blocks: tower l (l = 1..d-1) carries
 *     X_{1+l+1} = B_l on its shifted diagonal, and the last tower carries
 *     X_2 on its diagonal with X_1 in its lower right corner.
 *
 * Eliminating the bidiagonal towers telescopes the strip into
 * power_block_matrix(d, A, Bs), so the pencil is singular for all blocks
 * of size < d and invertible at the canonical size-d substitution. */
template <class F>
struct HardInstance {
  std::size_t d = 0;
  Pencil<F> pencil;                        /* linear, (d^2-1) x (d^2-1) */
  std::vector<Matrix<F>> canonical_tuple;  /* (I, A, B_1..B_{d-1}), size d */
};

template <class F>
HardInstance<F> make_hard_instance(F fld, std::size_t d) {
  if (d < 2) throw PreconditionError("make_hard_instance: need d >= 2");
  const std::size_t n = d * d - 1;
  const std::size_t m = d + 1;
  std::vector<Matrix<F>> X(m, Matrix<F>(fld, n, n));
  const auto one = fld.one();
  const auto minus_one = fld.neg(fld.one());

  /* towers tau = 0..d-2: rows tau*d + (0..d-1), cols tau*(d-1) + (0..d-2) */
  for (std::size_t tau = 0; tau + 1 < d; ++tau) {
    const std::size_t r0 = tau * d, c0 = tau * (d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
      X[0](r0 + i, c0 + i) = one;
      X[1](r0 + i + 1, c0 + i) = minus_one;
    }
  }
  /* last tower: rows (d-1)*d + (0..d-2), cols (d-1)^2 + (0..d-3) */
  {
    const std::size_t r0 = (d - 1) * d, c0 = (d - 1) * (d - 1);
    for (std::size_t i = 0; i + 2 < d; ++i) {
      X[0](r0 + i, c0 + i) = one;
      X[1](r0 + i + 1, c0 + i) = minus_one;
    }
  }
  /* final strip: columns L..L+d-1 with L = d^2 - d - 1 */
  const std::size_t L = d * d - d - 1;
  for (std::size_t tau = 0; tau + 1 < d; ++tau)
    for (std::size_t i = 0; i < d; ++i) X[2 + tau](tau * d + i, L + i) = one;
  {
    const std::size_t r0 = (d - 1) * d;
    for (std::size_t i = 0; i + 1 < d; ++i) X[1](r0 + i, L + i) = one;
    X[0](r0 + (d - 2), L + (d - 1)) = one;
  }

  HardInstance<F> inst{
      d, Pencil<F>::linear(fld, n, n, std::move(X)), {}};

  /* canonical substitution: A with eigenvalues 1..d, B_l = l-th power of
   * the long cycle */
  Matrix<F> A(fld, d, d);
  for (std::size_t i = 0; i < d; ++i)
    A(i, i) = fld.from_int(static_cast<std::int64_t>(i) + 1);
  Matrix<F> cycle(fld, d, d);
  for (std::size_t j = 0; j < d; ++j) cycle((j + 1) % d, j) = fld.one();
  inst.canonical_tuple.push_back(Matrix<F>::identity(fld, d));
  inst.canonical_tuple.push_back(A);
  Matrix<F> bl = cycle;
  for (std::size_t l = 1; l + 1 <= d; ++l) {
    inst.canonical_tuple.push_back(bl);
    bl = bl * cycle;
  }
  return inst;
}

/* Verification transcript for a hard instance:
 *  - for every block size k < d, `trials` random substitutions with the
 *    identity slot pinned all leave the blow-up singular (Monte Carlo),
 *    and one random kernel certificate checks exactly;
 *  - the canonical size-d substitution makes the blow-up invertible
 *    (exact).
 * Together these place the smallest deciding blow-up size at exactly d. */
template <class F>
struct HardInstanceLevel {
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t singular = 0;  /* trials whose blow-up stayed rank deficient */
  bool kernel_exact = false; /* certificate residual identically zero */
  /* the sampled certificate data, serialized into reports */
  std::optional<Matrix<F>> cert_A;
  std::vector<Matrix<F>> cert_Bs;
  std::vector<typename F::Elem> cert_v;
};

template <class F>
struct HardInstanceReport {
  std::size_t d = 0;
  std::size_t n = 0;
  std::vector<HardInstanceLevel<F>> below;
  bool canonical_invertible = false;
  std::optional<typename F::Elem> canonical_det;
  std::size_t delta_lower = 0;  /* = d when ok */
  bool ok = false;
};

template <class F>
HardInstanceReport<F> verify_hard_instance(const HardInstance<F>& inst,
                                           std::size_t trials,
                                           std::uint64_t seed) {
  if (trials == 0)
    throw PreconditionError("verify_hard_instance: need at least one trial");
  const F& fld = inst.pencil.field;
  const std::size_t d = inst.d, n = inst.pencil.rows, m = inst.pencil.vars();
  HardInstanceReport<F> rep;
  rep.d = d;
  rep.n = n;

  for (std::size_t k = 1; k < d; ++k) {
    HardInstanceLevel<F> level;
    level.k = k;
    level.trials = trials;
    const std::uint64_t seed_k = derive_seed(seed, k);
    std::vector<unsigned char> singular(trials, 0);
    const std::int64_t hi = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (trials > 1)
#endif
    for (std::int64_t t = 0; t < hi; ++t) {
      Rng rng = Rng::substream(seed_k, static_cast<std::uint64_t>(t));
      std::vector<Matrix<F>> tuple;
      tuple.reserve(m);
      tuple.push_back(Matrix<F>::identity(fld, k));
      for (std::size_t x = 1; x < m; ++x)
        tuple.push_back(Matrix<F>::random(fld, k, k, rng));
      const auto r = rank(blowup_eval(inst.pencil, tuple, k, k));
      singular[static_cast<std::size_t>(t)] = (r < n * k) ? 1 : 0;
    }
    for (auto s : singular) level.singular += s;

    /* one explicit kernel certificate at this size, checked exactly */
    Rng rng = Rng::substream(seed_k, trials);
    Matrix<F> A = Matrix<F>::random(fld, k, k, rng);
    std::vector<Matrix<F>> Bs;
    for (std::size_t i = 0; i + 1 < d; ++i)
      Bs.push_back(Matrix<F>::random(fld, k, k, rng));
    std::vector<typename F::Elem> u(k, fld.zero());
    u[0] = fld.one();
    const auto v = charpoly_kernel_vector(d, A, u);
    const auto N = power_block_matrix(d, A, Bs);
    bool zero_residual = true;
    for (std::size_t i = 0; i < N.rows(); ++i) {
      auto acc = fld.zero();
      for (std::size_t j = 0; j < N.cols(); ++j)
        acc = fld.add(acc, fld.mul(N(i, j), v[j]));
      if (!fld.is_zero(acc)) zero_residual = false;
    }
    bool v_nonzero = false;
    for (const auto& e : v)
      if (!fld.is_zero(e)) v_nonzero = true;
    level.kernel_exact = zero_residual && v_nonzero;
    level.cert_A = std::move(A);
    level.cert_Bs = std::move(Bs);
    level.cert_v = v;
    rep.below.push_back(std::move(level));
  }

  const auto dv =
      det(blowup_eval(inst.pencil, inst.canonical_tuple, d, d));
  rep.canonical_invertible = !fld.is_zero(dv);
  rep.canonical_det = dv;

  rep.ok = rep.canonical_invertible;
  for (const auto& level : rep.below)
    if (level.singular != level.trials || !level.kernel_exact) rep.ok = false;
  if (rep.ok) rep.delta_lower = d;
  return rep;
}

}  // namespace ncalg
