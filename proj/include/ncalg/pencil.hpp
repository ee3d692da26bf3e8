#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ncalg/linalg.hpp"
#include "ncalg/matrix.hpp"

namespace ncalg {

/* A matrix of linear forms  L(x) = C + x_1 A_1 + ... + x_m A_m  stored by
 * its coefficient matrices. `constant` is absent for homogeneous (linear)
 * pencils; when present the pencil is affine and evaluation of the blow-up
 * pins the constant slot to an identity. */
template <class F>
struct Pencil {
  F field;
  std::size_t rows = 0, cols = 0;
  std::vector<Matrix<F>> coeffs;
  std::optional<Matrix<F>> constant;

  std::size_t vars() const { return coeffs.size(); }
  bool is_affine() const { return constant.has_value(); }
  bool is_square() const { return rows == cols; }

  static Pencil linear(F field, std::size_t rows, std::size_t cols,
                       std::vector<Matrix<F>> coeffs) {
    Pencil p{std::move(field), rows, cols, std::move(coeffs), std::nullopt};
    p.validate();
    return p;
  }

  static Pencil affine(F field, Matrix<F> constant,
                       std::vector<Matrix<F>> coeffs) {
    const std::size_t r = constant.rows(), c = constant.cols();
    Pencil p{std::move(field), r, c, std::move(coeffs), std::move(constant)};
    p.validate();
    return p;
  }

  void validate() const {
    for (const auto& m : coeffs) {
      if (!(m.field() == field))
        throw FieldMismatchError("pencil: coefficient over a different field");
      if (m.rows() != rows || m.cols() != cols)
        throw ShapeMismatchError("pencil: coefficient shape " + m.shape_str() +
                                 " does not match " + std::to_string(rows) +
                                 "x" + std::to_string(cols));
    }
    if (constant) {
      if (!(constant->field() == field))
        throw FieldMismatchError("pencil: constant over a different field");
      if (constant->rows() != rows || constant->cols() != cols)
        throw ShapeMismatchError("pencil: constant shape mismatch");
    }
  }
};

namespace detail {

template <class F>
void check_tuple(const Pencil<F>& pencil, std::span<const Matrix<F>> tuple,
                 std::size_t p, std::size_t q) {
  if (tuple.size() != pencil.vars())
    throw ShapeMismatchError(
        "blow-up substitution: got " + std::to_string(tuple.size()) +
        " matrices for " + std::to_string(pencil.vars()) + " variables");
  for (const auto& t : tuple) {
    if (!(t.field() == pencil.field))
      throw FieldMismatchError("blow-up substitution: field mismatch");
    if (t.rows() != p || t.cols() != q)
      throw ShapeMismatchError("blow-up substitution: block " + t.shape_str() +
                               ", expected " + std::to_string(p) + "x" +
                               std::to_string(q));
  }
  if (pencil.is_affine() && p != q)
    throw ShapeMismatchError(
        "blow-up of an affine pencil needs square blocks (identity slot)");
}

}  // namespace detail

/* Blow-up evaluation: sum of kron(A_i, T_i), plus kron(C, I_p) for affine
 * pencils. Blocks T_i are p x q, result is (rows*p) x (cols*q). Assembly is
 * parallel over block rows; each output cell is written once, so the result
 * is independent of the schedule. */
template <class F>
Matrix<F> blowup_eval(const Pencil<F>& pencil,
                      std::span<const Matrix<F>> tuple, std::size_t p,
                      std::size_t q) {
  detail::check_tuple(pencil, tuple, p, q);
  const F& fld = pencil.field;
  const std::size_t rows = pencil.rows, cols = pencil.cols;
  Matrix<F> out(fld, rows * p, cols * q);
  const std::int64_t hi = static_cast<std::int64_t>(rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    if (rows * p * cols * q >= kOmpCutoff)
#endif
  for (std::int64_t bi = 0; bi < hi; ++bi) {
    const auto i1 = static_cast<std::size_t>(bi);
    for (std::size_t j1 = 0; j1 < cols; ++j1) {
      for (std::size_t k = 0; k < tuple.size(); ++k) {
        const auto& e = pencil.coeffs[k](i1, j1);
        if (fld.is_zero(e)) continue;
        const auto& t = tuple[k];
        for (std::size_t i2 = 0; i2 < p; ++i2)
          for (std::size_t j2 = 0; j2 < q; ++j2)
            out(i1 * p + i2, j1 * q + j2) =
                fld.add(out(i1 * p + i2, j1 * q + j2), fld.mul(e, t(i2, j2)));
      }
      if (pencil.is_affine()) {
        const auto& e = (*pencil.constant)(i1, j1);
        if (fld.is_zero(e)) continue;
        for (std::size_t i2 = 0; i2 < p; ++i2)
          out(i1 * p + i2, j1 * q + i2) =
              fld.add(out(i1 * p + i2, j1 * q + i2), e);
      }
    }
  }
  return out;
}

/* Convenience overload: block shape inferred from the tuple (nonempty). */
template <class F>
Matrix<F> blowup_eval(const Pencil<F>& pencil,
                      std::span<const Matrix<F>> tuple) {
  if (tuple.empty())
    throw ShapeMismatchError(
        "blow-up substitution: empty tuple, block shape unknown");
  return blowup_eval(pencil, tuple, tuple[0].rows(), tuple[0].cols());
}

template <class F>
Matrix<F> blowup_eval(const Pencil<F>& pencil,
                      const std::vector<Matrix<F>>& tuple) {
  return blowup_eval(pencil, std::span<const Matrix<F>>(tuple));
}

template <class F>
Matrix<F> blowup_eval(const Pencil<F>& pencil,
                      const std::vector<Matrix<F>>& tuple, std::size_t p,
                      std::size_t q) {
  return blowup_eval(pencil, std::span<const Matrix<F>>(tuple), p, q);
}

/* A rank certificate: substitution blocks together with the rank of the
 * resulting blow-up. Serializable; anyone can recompute. */
template <class F>
struct BlowupWitness {
  std::size_t p = 0, q = 0;
  std::vector<Matrix<F>> tuple;
  std::size_t achieved_rank = 0;
};

/* Sample the trial tuple for blowup_rank. Entry order (variable-major,
 * then row-major) is part of the format: the winning tuple is regenerated
 * from its substream after the rank scan. */
template <class F>
std::vector<Matrix<F>> sample_tuple(const F& fld, std::size_t m, std::size_t p,
                                    std::size_t q, Rng& rng) {
  std::vector<Matrix<F>> tuple;
  tuple.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    tuple.push_back(Matrix<F>::random(fld, p, q, rng));
  return tuple;
}

/* Monte Carlo estimate of the maximal blow-up rank r(p,q): the max rank of
 * the blow-up over `trials` independent uniform substitutions. The maximum
 * is attained with high probability at any fixed trial (the max-rank locus
 * is Zariski open and dense; failure probability per trial is at most
 * deg/|S| = min(rows*p, cols*q)/|S|).
 *
 * Deterministic given (seed): trial t draws from Rng::substream(seed, t),
 * ties break toward the lowest trial index, so the returned witness is
 * identical whatever the thread count. */
template <class F>
BlowupWitness<F> blowup_rank(const Pencil<F>& pencil, std::size_t p,
                             std::size_t q, std::size_t trials,
                             std::uint64_t seed) {
  if (trials == 0)
    throw PreconditionError("blowup_rank: need at least one trial");
  if (pencil.is_affine() && p != q)
    throw ShapeMismatchError(
        "blow-up of an affine pencil needs square blocks (identity slot)");
  const F& fld = pencil.field;
  std::vector<std::size_t> ranks(trials, 0);
  const std::int64_t hi = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (trials > 1)
#endif
  for (std::int64_t t = 0; t < hi; ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    const auto tuple = sample_tuple(fld, pencil.vars(), p, q, rng);
    ranks[static_cast<std::size_t>(t)] =
        rank(blowup_eval(pencil, std::span<const Matrix<F>>(tuple), p, q));
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < trials; ++t)
    if (ranks[t] > ranks[best]) best = t;  /* strict: lowest index wins ties */
  Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(best));
  BlowupWitness<F> w;
  w.p = p;
  w.q = q;
  w.tuple = sample_tuple(fld, pencil.vars(), p, q, rng);
  w.achieved_rank = ranks[best];
  return w;
}

}  // namespace ncalg
