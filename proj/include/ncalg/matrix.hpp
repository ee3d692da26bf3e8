#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ncalg/errors.hpp"
#include "ncalg/field.hpp"
#include "ncalg/rng.hpp"

namespace ncalg {

/* Element count below which loops stay serial; parallel regions carry
 * an if() clause against this, so results never depend on thread count. */
inline constexpr std::size_t kOmpCutoff = 4096;

/* Dense row-major matrix over a runtime field object F (Fp or Rat).
 * Zero-dimensional shapes are legal (the empty product has det 1). */
template <class F>
class Matrix {
 public:
  using Field = F;
  using Elem = typename F::Elem;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)),
        rows_(rows),
        cols_(cols),
        a_(rows * cols, field_.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  static Matrix random(F field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& e : m.a_) e = m.field_.sample(rng);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& field() const { return field_; }

  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Elem* row_data(std::size_t i) { return a_.data() + i * cols_; }
  const Elem* row_data(std::size_t i) const { return a_.data() + i * cols_; }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!field_.is_zero(e)) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           a_ == o.a_;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o, "matrix sum");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k)
      r.a_[k] = field_.add(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    check_same_shape(o, "matrix difference");
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k)
      r.a_[k] = field_.sub(a_[k], o.a_[k]);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (!(field_ == o.field_))
      throw FieldMismatchError("matrix product: operands over different fields");
    if (cols_ != o.rows_)
      throw ShapeMismatchError(
          "matrix product shape mismatch: " + shape_str() + " * " + o.shape_str());
    Matrix r(field_, rows_, o.cols_);
    const std::size_t n = cols_, q = o.cols_;
    const F fld = field_;
    const std::int64_t hi = static_cast<std::int64_t>(rows_);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (rows_ * n * q >= kOmpCutoff)
#endif
    for (std::int64_t i = 0; i < hi; ++i) {
      Elem* out = r.row_data(static_cast<std::size_t>(i));
      const Elem* lhs = row_data(static_cast<std::size_t>(i));
      for (std::size_t k = 0; k < n; ++k) {
        const Elem& e = lhs[k];
        if (fld.is_zero(e)) continue;
        const Elem* rhs = o.row_data(k);
        for (std::size_t j = 0; j < q; ++j)
          out[j] = fld.add(out[j], fld.mul(e, rhs[j]));
      }
    }
    return r;
  }

  Matrix scaled(const Elem& c) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = field_.mul(c, a_[k]);
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void check_same_shape(const Matrix& o, const char* what) const {
    if (!(field_ == o.field_))
      throw FieldMismatchError(std::string(what) + ": operands over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeMismatchError(std::string(what) + " shape mismatch: " +
                               shape_str() + " vs " + o.shape_str());
  }

  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

/* Kronecker product: (a (x) b)[(i1,i2),(j1,j2)] = a(i1,j1) * b(i2,j2) with
 * row-major pair ordering, so (a (x) b)(c (x) d) = ac (x) bd. */
template <class F>
Matrix<F> kronecker(const Matrix<F>& a, const Matrix<F>& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatchError("kronecker: operands over different fields");
  const F& fld = a.field();
  Matrix<F> r(fld, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const auto& e = a(i1, j1);
      if (fld.is_zero(e)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          r(i1 * b.rows() + i2, j1 * b.cols() + j2) = fld.mul(e, b(i2, j2));
    }
  return r;
}

template <class F>
Matrix<F> direct_sum(const Matrix<F>& a, const Matrix<F>& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatchError("direct_sum: operands over different fields");
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

template <class F>
Matrix<F> matrix_power(const Matrix<F>& a, std::uint64_t e) {
  if (a.rows() != a.cols())
    throw NonSquareError("matrix_power: matrix must be square");
  Matrix<F> r = Matrix<F>::identity(a.field(), a.rows());
  Matrix<F> base = a;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

}  // namespace ncalg
