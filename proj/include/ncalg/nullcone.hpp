#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ncalg/pencil.hpp"

namespace ncalg {

/* The degree-(d n) invariant f_T(A) = det(sum kron(A_i, T_i)) attached to a
 * square linear pencil A and a d x d substitution tuple T. The pencil lies
 * on the common zero locus of all these invariants iff every f_T vanishes. */
template <class F>
typename F::Elem f_T(const Pencil<F>& pencil,
                     std::span<const Matrix<F>> tuple) {
  if (pencil.is_affine())
    throw PreconditionError("f_T: pencil must be linear (no constant term)");
  if (!pencil.is_square())
    throw NonSquareError("f_T: pencil must be square");
  if (tuple.empty())
    throw ShapeMismatchError("f_T: empty substitution tuple");
  const std::size_t d = tuple[0].rows();
  if (tuple[0].cols() != d)
    throw ShapeMismatchError("f_T: substitution blocks must be square");
  return det(blowup_eval(pencil, tuple, d, d));
}

template <class F>
typename F::Elem f_T(const Pencil<F>& pencil,
                     const std::vector<Matrix<F>>& tuple) {
  return f_T(pencil, std::span<const Matrix<F>>(tuple));
}

/* Verdict of the membership test. `in_null_cone == false` comes with an
 * exact certificate (witness + nonzero determinant value); `true` is a
 * Monte Carlo conclusion whose failure probability is at most
 * trials * (blowup_size * n) / |S|. */
template <class F>
struct NullConeVerdict {
  bool in_null_cone = true;
  std::size_t blowup_size = 0;  /* d used for the decisive test */
  std::size_t trials = 0;
  std::optional<BlowupWitness<F>> witness;      /* set iff not in the cone */
  std::optional<typename F::Elem> det_value;    /* f_T at the witness */
};

/* Blow-up size that decides membership: d = n-1 suffices for every n >= 2
 * (and d = 1 for n = 1). */
inline std::size_t deciding_blowup_size(std::size_t n) {
  return n >= 2 ? n - 1 : 1;
}

/* Membership of a square linear pencil in the common zero locus of the
 * invariants f_T. Tests full rank of the (d,d) blow-up at d = n-1: the
 * pencil avoids the zero locus iff some d x d tuple makes the blow-up
 * invertible, and random tuples reach the maximal rank whp. */
template <class F>
NullConeVerdict<F> in_nullcone(const Pencil<F>& pencil, std::size_t trials,
                               std::uint64_t seed) {
  if (pencil.is_affine())
    throw PreconditionError("in_nullcone: pencil must be linear");
  if (!pencil.is_square())
    throw NonSquareError("in_nullcone: pencil must be square");
  const std::size_t n = pencil.rows;
  const std::size_t d = deciding_blowup_size(n);
  NullConeVerdict<F> v;
  v.blowup_size = d;
  v.trials = trials;
  auto w = blowup_rank(pencil, d, d, trials, seed);
  if (w.achieved_rank == d * n) {
    v.in_null_cone = false;
    v.det_value = det(blowup_eval(pencil, w.tuple, d, d));
    v.witness = std::move(w);
  }
  return v;
}

/* Lower bound on the largest n' such that some blow-up has an invertible
 * n' x n' block structure: best over d <= d_max of ceil(rhat(d,d) / d).
 * Always a valid bound; exactness needs d large enough, hence "lower". */
struct NcrankBound {
  std::size_t best = 0;
  std::size_t d_max = 0;
  std::size_t trials = 0;
  std::vector<std::pair<std::size_t, std::size_t>> per_d;  /* (d, rhat) */
};

template <class F>
NcrankBound ncrank_lower_bound(const Pencil<F>& pencil, std::size_t d_max,
                               std::size_t trials, std::uint64_t seed) {
  if (pencil.is_affine())
    throw PreconditionError("ncrank_lower_bound: pencil must be linear");
  if (d_max == 0)
    throw PreconditionError("ncrank_lower_bound: d_max must be positive");
  NcrankBound out;
  out.d_max = d_max;
  out.trials = trials;
  for (std::size_t d = 1; d <= d_max; ++d) {
    const auto w = blowup_rank(pencil, d, d, trials, derive_seed(seed, d));
    out.per_d.emplace_back(d, w.achieved_rank);
    const std::size_t bound = (w.achieved_rank + d - 1) / d;
    if (bound > out.best) out.best = bound;
  }
  return out;
}

/* Default d_max: the deciding size for the square case, clamped by shape. */
inline std::size_t default_dmax(std::size_t rows, std::size_t cols) {
  const std::size_t n = rows < cols ? rows : cols;
  return n >= 2 ? n - 1 : 1;
}

template <class F>
struct InvertibilityVerdict {
  bool invertible = false;  /* false = singular whp (Monte Carlo) */
  std::size_t blowup_size = 0;
  std::size_t trials = 0;
  std::optional<BlowupWitness<F>> witness;  /* set iff invertible */
};

/* Invertibility of a square pencil over the free skew field: decided by
 * full rank of the (d,d) blow-up with d = n-1, where affine pencils pin
 * the constant slot to an identity block. */
template <class F>
InvertibilityVerdict<F> skewfield_invertible(const Pencil<F>& pencil,
                                             std::size_t trials,
                                             std::uint64_t seed) {
  if (!pencil.is_square())
    throw NonSquareError("skewfield_invertible: pencil must be square");
  const std::size_t n = pencil.rows;
  const std::size_t d = deciding_blowup_size(n);
  InvertibilityVerdict<F> v;
  v.blowup_size = d;
  v.trials = trials;
  auto w = blowup_rank(pencil, d, d, trials, seed);
  if (w.achieved_rank == d * n) {
    v.invertible = true;
    v.witness = std::move(w);
  }
  return v;
}

/* Rewrite a full-rank witness into the normal form with first block the
 * identity: S_1 = I, S_i = T_1^{-1} T_i. If T_1 is singular, T_1 alone is
 * resampled (the full-rank locus restricted to that slice is still dense),
 * re-verified exactly, up to `retries` attempts. `normalized == false`
 * means exhaustion; the witness is then returned untouched. */
template <class F>
struct NormalizeResult {
  BlowupWitness<F> witness;
  bool normalized = false;
  std::size_t resamples = 0;
};

template <class F>
NormalizeResult<F> normalize_witness(const Pencil<F>& pencil,
                                     const BlowupWitness<F>& w,
                                     std::uint64_t seed,
                                     std::size_t retries = 16) {
  if (pencil.is_affine())
    throw PreconditionError("normalize_witness: pencil must be linear");
  if (!pencil.is_square())
    throw NonSquareError("normalize_witness: pencil must be square");
  if (pencil.vars() == 0 || w.tuple.empty())
    throw PreconditionError("normalize_witness: pencil has no variables");
  if (w.p != w.q)
    throw PreconditionError("normalize_witness: witness blocks must be square");
  if (w.achieved_rank != pencil.rows * w.p)
    throw PreconditionError("normalize_witness: witness is not full rank");
  const F& fld = pencil.field;
  const std::size_t full = pencil.rows * w.p;

  NormalizeResult<F> out{w, false, 0};
  std::vector<Matrix<F>> tuple = w.tuple;
  for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
    auto t1inv = try_inverse(tuple[0]);
    if (t1inv &&
        rank(blowup_eval(pencil, tuple, w.p, w.q)) == full) {
      std::vector<Matrix<F>> normal;
      normal.reserve(tuple.size());
      normal.push_back(Matrix<F>::identity(fld, w.p));
      for (std::size_t i = 1; i < tuple.size(); ++i)
        normal.push_back(*t1inv * tuple[i]);
      /* exact re-check; left multiplication by kron(I, T_1^{-1}) preserves
       * full rank, so this must hold */
      if (rank(blowup_eval(pencil, normal, w.p, w.q)) == full) {
        out.witness.tuple = std::move(normal);
        out.normalized = true;
        out.resamples = attempt;
        return out;
      }
    }
    if (attempt == retries) break;
    Rng rng = Rng::substream(seed, attempt);
    tuple[0] = Matrix<F>::random(fld, w.p, w.q, rng);
  }
  return out;  /* exhausted: original witness, normalized = false */
}

/* Degree bounds for the invariant ring of the left-right action on m
 * matrices of size n, all in one place:
 *   - blow-up size n-1 always suffices (delta_upper), so invariants of
 *     degree <= gamma_upper = n(n-1) cut out the zero locus;
 *   - no blow-up size below floor(sqrt(n+1)) suffices for every pencil
 *     (delta_lower), witnessed by the built-in hard instances;
 *   - in characteristic 0 the full invariant ring is generated in degree
 *     <= beta_upper (<= n^6 always). */
struct DegreeBounds {
  std::uint64_t n = 0, m = 0;
  std::uint64_t delta_upper = 0;
  std::uint64_t gamma_upper = 0;
  std::uint64_t delta_lower = 0;
  std::uint64_t gamma_lower = 0;
  std::uint64_t beta_upper_char0 = 0;
  std::uint64_t beta_cap_char0 = 0;
};

inline std::uint64_t isqrt_u64(std::uint64_t x) {
  if (x == 0) return 0;
  auto r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(x)));
  while (r > 0 && r > x / r) --r;
  while ((r + 1) <= x / (r + 1)) ++r;
  return r;
}

inline DegreeBounds degree_bounds(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0)
    throw PreconditionError("degree_bounds: need n >= 1 and m >= 1");
  DegreeBounds b;
  b.n = n;
  b.m = m;
  b.delta_upper = n >= 2 ? n - 1 : 1;
  b.gamma_upper = n * b.delta_upper;
  b.delta_lower = isqrt_u64(n + 1);
  b.gamma_lower = n * b.delta_lower;
  const unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
  const unsigned __int128 n4 = n2 * n2;
  const unsigned __int128 cap = n4 * n2;
  const unsigned __int128 gen =
      (static_cast<unsigned __int128>(m) < n2 ? m : n2) * n4;
  constexpr unsigned __int128 u64max = ~static_cast<std::uint64_t>(0);
  if (cap > u64max || gen > u64max)
    throw PreconditionError("degree_bounds: bound exceeds 64 bits (n too large)");
  b.beta_upper_char0 = static_cast<std::uint64_t>(gen);
  b.beta_cap_char0 = static_cast<std::uint64_t>(cap);
  return b;
}

}  // namespace ncalg
