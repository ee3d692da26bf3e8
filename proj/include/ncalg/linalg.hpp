#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncalg/matrix.hpp"

namespace ncalg {

/* Exact Gaussian elimination over the runtime field. Pivot selection is
 * the first nonzero entry in scan order, so results are reproducible and
 * independent of thread count (the row-update loop is the parallel part).
 *
 * Matrices are taken by value: the elimination consumes its copy. */

template <class F>
std::size_t rank(Matrix<F> m) {
  const F fld = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!fld.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    m.swap_rows(piv, r);
    const auto pinv = fld.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = fld.mul(m(r, j), pinv);
    const std::int64_t lo = static_cast<std::int64_t>(r) + 1;
    const std::int64_t hi = static_cast<std::int64_t>(rows);
    [[maybe_unused]] const std::size_t width = cols - c;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    if (static_cast<std::size_t>(hi - lo) * width >= kOmpCutoff)
#endif
    for (std::int64_t i = lo; i < hi; ++i) {
      auto* tgt = m.row_data(static_cast<std::size_t>(i));
      const auto* src = m.row_data(r);
      const auto f = tgt[c];
      if (fld.is_zero(f)) continue;
      tgt[c] = fld.zero();
      for (std::size_t j = c + 1; j < cols; ++j)
        tgt[j] = fld.sub(tgt[j], fld.mul(f, src[j]));
    }
    ++r;
  }
  return r;
}

template <class F>
typename F::Elem det(Matrix<F> m) {
  if (m.rows() != m.cols())
    throw NonSquareError("det: matrix must be square, got " + m.shape_str());
  const F fld = m.field();
  const std::size_t n = m.rows();
  auto acc = fld.one();
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!fld.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return fld.zero();
    if (piv != c) {
      m.swap_rows(piv, c);
      negate = !negate;
    }
    acc = fld.mul(acc, m(c, c));
    const auto pinv = fld.inv(m(c, c));
    for (std::size_t j = c; j < n; ++j) m(c, j) = fld.mul(m(c, j), pinv);
    const std::int64_t lo = static_cast<std::int64_t>(c) + 1;
    const std::int64_t hi = static_cast<std::int64_t>(n);
    [[maybe_unused]] const std::size_t width = n - c;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) \
    if (static_cast<std::size_t>(hi - lo) * width >= kOmpCutoff)
#endif
    for (std::int64_t i = lo; i < hi; ++i) {
      auto* tgt = m.row_data(static_cast<std::size_t>(i));
      const auto* src = m.row_data(c);
      const auto f = tgt[c];
      if (fld.is_zero(f)) continue;
      tgt[c] = fld.zero();
      for (std::size_t j = c + 1; j < n; ++j)
        tgt[j] = fld.sub(tgt[j], fld.mul(f, src[j]));
    }
  }
  return negate ? fld.neg(acc) : acc;
}

template <class F>
std::optional<Matrix<F>> try_inverse(Matrix<F> m) {
  if (m.rows() != m.cols())
    throw NonSquareError("inverse: matrix must be square, got " + m.shape_str());
  const F fld = m.field();
  const std::size_t n = m.rows();
  Matrix<F> inv = Matrix<F>::identity(fld, n);
  /* forward pass: reduce m to unit upper triangular, mirroring ops on inv */
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!fld.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return std::nullopt;
    m.swap_rows(piv, c);
    inv.swap_rows(piv, c);
    const auto pinv = fld.inv(m(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) = fld.mul(m(c, j), pinv);
      inv(c, j) = fld.mul(inv(c, j), pinv);
    }
    const std::int64_t hi = static_cast<std::int64_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n * n >= kOmpCutoff)
#endif
    for (std::int64_t i = 0; i < hi; ++i) {
      if (static_cast<std::size_t>(i) == c) continue;
      const auto f = m(static_cast<std::size_t>(i), c);
      if (fld.is_zero(f)) continue;
      auto* mt = m.row_data(static_cast<std::size_t>(i));
      auto* it = inv.row_data(static_cast<std::size_t>(i));
      const auto* ms = m.row_data(c);
      const auto* is = inv.row_data(c);
      for (std::size_t j = 0; j < n; ++j) {
        mt[j] = fld.sub(mt[j], fld.mul(f, ms[j]));
        it[j] = fld.sub(it[j], fld.mul(f, is[j]));
      }
    }
  }
  return inv;
}

template <class F>
Matrix<F> inverse(Matrix<F> m) {
  auto r = try_inverse(std::move(m));
  if (!r) throw SingularError("inverse: matrix is singular");
  return std::move(*r);
}

/* Characteristic polynomial by the Berkowitz algorithm (division free, so
 * it is exact over any commutative coefficient ring, GF(2) included).
 *
 * Returns (c_0, ..., c_{n-1}) with
 *   det(t I - m) = t^n + c_{n-1} t^{n-1} + ... + c_1 t + c_0,
 * i.e. index i holds the coefficient of t^i. */
template <class F>
std::vector<typename F::Elem> charpoly(const Matrix<F>& a) {
  if (a.rows() != a.cols())
    throw NonSquareError("charpoly: matrix must be square, got " + a.shape_str());
  const F& fld = a.field();
  const std::size_t n = a.rows();
  using Elem = typename F::Elem;
  if (n == 0) return {};
  /* c = coefficients of the leading r x r principal submatrix, degree-first */
  std::vector<Elem> c{fld.one(), fld.neg(a(0, 0))};
  for (std::size_t r = 2; r <= n; ++r) {
    /* Toeplitz column: t_0 = 1, t_1 = -a_rr, t_k = -(R M^{k-2} S) */
    std::vector<Elem> t(r + 1, fld.zero());
    t[0] = fld.one();
    t[1] = fld.neg(a(r - 1, r - 1));
    std::vector<Elem> v(r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i) v[i] = a(i, r - 1);
    for (std::size_t k = 2; k <= r; ++k) {
      Elem dot = fld.zero();
      for (std::size_t i = 0; i + 1 < r; ++i)
        dot = fld.add(dot, fld.mul(a(r - 1, i), v[i]));
      t[k] = fld.neg(dot);
      if (k < r) {
        std::vector<Elem> nv(r - 1, fld.zero());
        for (std::size_t i = 0; i + 1 < r; ++i)
          for (std::size_t j = 0; j + 1 < r; ++j)
            nv[i] = fld.add(nv[i], fld.mul(a(i, j), v[j]));
        v = std::move(nv);
      }
    }
    std::vector<Elem> nc(r + 1, fld.zero());
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < c.size() && j <= i; ++j)
        nc[i] = fld.add(nc[i], fld.mul(t[i - j], c[j]));
    c = std::move(nc);
  }
  std::vector<Elem> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = c[n - j];
  return out;
}

/* Evaluate t^k + c_{k-1} t^{k-1} + ... + c_0 at a square matrix. */
template <class F>
Matrix<F> charpoly_eval(const Matrix<F>& m,
                        const std::vector<typename F::Elem>& c) {
  if (m.rows() != m.cols())
    throw NonSquareError("charpoly_eval: matrix must be square");
  const F& fld = m.field();
  const std::size_t n = m.rows();
  /* Horner from the leading (monic) coefficient down */
  Matrix<F> acc = Matrix<F>::identity(fld, n);
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = acc * m;
    Matrix<F> term = Matrix<F>::identity(fld, n).scaled(c[j]);
    acc = acc + term;
  }
  return acc;
}

namespace ref {

/* Serial reference implementations. Deliberately simple and free of any
 * pragma: unit tests check the parallel kernels against these, and report
 * verification recomputes certificates through this path. */

template <class F>
std::size_t rank(Matrix<F> m) {
  const F fld = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!fld.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    m.swap_rows(piv, r);
    const auto pinv = fld.inv(m(r, c));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (fld.is_zero(m(i, c))) continue;
      const auto f = fld.mul(m(i, c), pinv);
      for (std::size_t j = c; j < cols; ++j)
        m(i, j) = fld.sub(m(i, j), fld.mul(f, m(r, j)));
    }
    ++r;
  }
  return r;
}

template <class F>
typename F::Elem det(Matrix<F> m) {
  if (m.rows() != m.cols())
    throw NonSquareError("det: matrix must be square, got " + m.shape_str());
  const F fld = m.field();
  const std::size_t n = m.rows();
  auto acc = fld.one();
  bool negate = false;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!fld.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return fld.zero();
    if (piv != c) {
      m.swap_rows(piv, c);
      negate = !negate;
    }
    acc = fld.mul(acc, m(c, c));
    const auto pinv = fld.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (fld.is_zero(m(i, c))) continue;
      const auto f = fld.mul(m(i, c), pinv);
      for (std::size_t j = c; j < n; ++j)
        m(i, j) = fld.sub(m(i, j), fld.mul(f, m(c, j)));
    }
  }
  return negate ? fld.neg(acc) : acc;
}

template <class F>
Matrix<F> mul(const Matrix<F>& a, const Matrix<F>& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatchError("matrix product: operands over different fields");
  if (a.cols() != b.rows())
    throw ShapeMismatchError("matrix product shape mismatch: " +
                             a.shape_str() + " * " + b.shape_str());
  const F& fld = a.field();
  Matrix<F> r(fld, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto acc = fld.zero();
      for (std::size_t k = 0; k < a.cols(); ++k)
        acc = fld.add(acc, fld.mul(a(i, k), b(k, j)));
      r(i, j) = acc;
    }
  return r;
}

}  // namespace ref

}  // namespace ncalg
