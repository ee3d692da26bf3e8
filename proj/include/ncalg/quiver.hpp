#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncalg/nullcone.hpp"
#include "ncalg/pencil.hpp"

namespace ncalg {

/* Finite acyclic quiver. Vertices and arrows keep declaration order; that
 * order fixes every enumeration below, so builds are reproducible. */
class Quiver {
 public:
  struct Arrow {
    std::string name;
    std::size_t tail = 0, head = 0;
  };

  struct ArrowSpec {
    std::string name, tail, head;
  };

  /* Validates: nonempty unique vertex names, unique arrow names, endpoints
   * declared, no directed cycle (CyclicQuiverError). */
  static Quiver make(std::vector<std::string> vertices,
                     std::vector<ArrowSpec> arrows);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& vertex_name(std::size_t i) const { return vertices_[i]; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  std::size_t vertex_index(const std::string& name) const;

  /* All directed paths from x to y as arrow index sequences in traversal
   * order; includes the empty path iff x == y. Enumeration is depth first,
   * branching in arrow declaration order. Quiver acyclicity keeps the set
   * finite. */
  std::vector<std::vector<std::size_t>> paths(std::size_t x, std::size_t y) const;

  /* Number of paths from x to y (including the trivial one when x == y). */
  std::uint64_t path_count(std::size_t x, std::size_t y) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> out_;  /* arrow indices by tail */
};

using DimVector = std::vector<std::uint64_t>;  /* per vertex, >= 0 */
using Weight = std::vector<std::int64_t>;      /* per vertex */

/* A representation assigns to each arrow a matrix of shape
 * dim(head) x dim(tail), i.e. a linear map V(tail) -> V(head) acting on
 * column vectors. */
template <class F>
using Representation = std::vector<Matrix<F>>;

template <class F>
void check_representation(const Quiver& q, const DimVector& dim,
                          const Representation<F>& rep) {
  if (dim.size() != q.vertex_count())
    throw ShapeMismatchError("representation: dim vector length mismatch");
  if (rep.size() != q.arrow_count())
    throw ShapeMismatchError("representation: one matrix per arrow required");
  for (std::size_t a = 0; a < rep.size(); ++a) {
    const auto& ar = q.arrow(a);
    if (rep[a].rows() != dim[ar.head] || rep[a].cols() != dim[ar.tail])
      throw ShapeMismatchError("representation: matrix for arrow \"" +
                               ar.name + "\" is " + rep[a].shape_str() +
                               ", expected " + std::to_string(dim[ar.head]) +
                               "x" + std::to_string(dim[ar.tail]));
  }
}

/* Value of a path on a representation: composition of the arrow maps,
 * identity on V(x) for the trivial path at x. */
template <class F>
Matrix<F> eval_path([[maybe_unused]] const Quiver& q, const DimVector& dim,
                    const Representation<F>& rep, const F& fld,
                    const std::vector<std::size_t>& path, std::size_t x) {
  Matrix<F> acc = Matrix<F>::identity(fld, dim[x]);
  for (const std::size_t a : path) acc = rep[a] * acc;
  return acc;
}

/* The weight pencil of (quiver, dim, weight, rep): a square linear pencil
 * whose invertibility over the free skew field detects weight-semistability.
 *
 * Writing s+ = max(weight, 0) and s- = max(-weight, 0), the pencil is the
 * block matrix of the generic map
 *     (+) V(x)^{s+(x)}  ->  (+) V(y)^{s-(y)}
 * whose (y-copy, x-copy) block is sum_p t_{fresh} * V(p) over all paths p
 * from x to y. Row blocks run over codomain vertices in declaration order
 * (copies innermost), column blocks likewise over domain vertices, and
 * variables are numbered row-major over (row block, column block, path).
 * Requires <weight, dim> = 0 (NonzeroPairingError otherwise), which makes
 * the pencil square of size sum s+(x) dim(x). */
template <class F>
Pencil<F> build_weight_pencil(F fld, const Quiver& q, const DimVector& dim,
                              const Weight& weight,
                              const Representation<F>& rep) {
  check_representation(q, dim, rep);
  if (weight.size() != q.vertex_count())
    throw ShapeMismatchError("weight vector length mismatch");
  std::int64_t pairing = 0;
  for (std::size_t x = 0; x < weight.size(); ++x)
    pairing += weight[x] * static_cast<std::int64_t>(dim[x]);
  if (pairing != 0)
    throw NonzeroPairingError(
        "weight pairs nontrivially with the dimension vector: <weight, dim> = " +
        std::to_string(pairing));

  struct Block {
    std::size_t vertex, offset, size;
  };
  std::vector<Block> colb, rowb;
  std::size_t ncols = 0, nrows = 0;
  for (std::size_t x = 0; x < q.vertex_count(); ++x)
    if (weight[x] > 0)
      for (std::int64_t i = 0; i < weight[x]; ++i) {
        colb.push_back({x, ncols, dim[x]});
        ncols += dim[x];
      }
  for (std::size_t y = 0; y < q.vertex_count(); ++y)
    if (weight[y] < 0)
      for (std::int64_t j = 0; j < -weight[y]; ++j) {
        rowb.push_back({y, nrows, dim[y]});
        nrows += dim[y];
      }
  /* <weight, dim> = 0 forces nrows == ncols */
  const std::size_t n = nrows;

  std::vector<Matrix<F>> coeffs;
  for (const auto& rb : rowb) {
    for (const auto& cb : colb) {
      const auto ps = q.paths(cb.vertex, rb.vertex);
      for (const auto& p : ps) {
        Matrix<F> coeff(fld, n, n);
        const Matrix<F> val = eval_path(q, dim, rep, fld, p, cb.vertex);
        for (std::size_t i = 0; i < rb.size; ++i)
          for (std::size_t j = 0; j < cb.size; ++j)
            coeff(rb.offset + i, cb.offset + j) = val(i, j);
        coeffs.push_back(std::move(coeff));
      }
    }
  }
  return Pencil<F>::linear(std::move(fld), n, n, std::move(coeffs));
}

template <class F>
struct SemistabilityVerdict {
  bool semistable = false;  /* false = unstable whp (Monte Carlo) */
  std::size_t pencil_size = 0;
  std::size_t pencil_vars = 0;
  std::size_t blowup_size = 0;
  std::size_t trials = 0;
  std::optional<BlowupWitness<F>> witness;      /* set iff semistable */
  std::optional<typename F::Elem> det_value;    /* f_T at the witness */
};

/* Weight-semistability of a representation: some semi-invariant of weight
 * a positive multiple of `weight` is nonzero at rep iff the weight pencil
 * is invertible over the free skew field, i.e. iff its (d,d) blow-up has
 * full rank for d = n-1. A full-rank witness is an exact certificate of
 * semistability; the negative verdict is Monte Carlo. */
template <class F>
SemistabilityVerdict<F> is_semistable(F fld, const Quiver& q,
                                      const DimVector& dim,
                                      const Weight& weight,
                                      const Representation<F>& rep,
                                      std::size_t trials, std::uint64_t seed) {
  const auto pencil = build_weight_pencil(std::move(fld), q, dim, weight, rep);
  SemistabilityVerdict<F> v;
  v.pencil_size = pencil.rows;
  v.pencil_vars = pencil.vars();
  v.trials = trials;
  if (pencil.rows == 0) {
    /* zero weight: the empty determinant is the constant 1, never zero */
    v.semistable = true;
    v.blowup_size = 1;
    return v;
  }
  const auto nc = in_nullcone(pencil, trials, seed);
  v.blowup_size = nc.blowup_size;
  v.semistable = !nc.in_null_cone;
  v.witness = nc.witness;
  v.det_value = nc.det_value;
  return v;
}

/* Full-rank test for a tuple of p x q matrices, reduced to semistability
 * on the two-vertex quiver with m parallel arrows: dimensions (p, q),
 * weight (q/g, -p/g) with g = gcd(p, q), arrow a_i carrying the transpose
 * of X_i. The tuple is "full" iff some product of the X_i patterns admits
 * an invertible square assembly, which the blow-up test decides at size
 * lcm(p, q) - 1 (or 1 when p = q = 1). */
template <class F>
struct PqFullVerdict {
  bool full = false;
  std::size_t p = 0, q = 0;
  std::int64_t sigma_x = 0, sigma_y = 0;
  std::size_t pencil_size = 0;
  std::size_t pencil_vars = 0;
  std::size_t blowup_size = 0;
  std::size_t trials = 0;
  std::uint64_t generator_degree_bound = 0;  /* (p q lcm(p,q))^2 */
  std::optional<BlowupWitness<F>> witness;
  std::optional<typename F::Elem> det_value;
};

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

/* The weight pencil behind the (p, q)-fullness test, exposed so reports can
 * embed it and verifiers can rebuild it from the raw tuple. */
template <class F>
Pencil<F> pq_weight_pencil(F fld, const std::vector<Matrix<F>>& X) {
  if (X.empty())
    throw PreconditionError("pq_full_test: need at least one matrix");
  const std::size_t p = X[0].rows(), q = X[0].cols();
  if (p == 0 || q == 0)
    throw PreconditionError("pq_full_test: matrices must be nonempty");
  for (const auto& x : X)
    if (x.rows() != p || x.cols() != q)
      throw ShapeMismatchError("pq_full_test: mixed shapes in tuple");
  const std::uint64_t g = gcd_u64(p, q);
  std::vector<Quiver::ArrowSpec> arrows;
  for (std::size_t i = 0; i < X.size(); ++i)
    arrows.push_back({"a" + std::to_string(i + 1), "x", "y"});
  const Quiver theta = Quiver::make({"x", "y"}, std::move(arrows));
  DimVector dim{p, q};
  Weight weight{static_cast<std::int64_t>(q / g),
                -static_cast<std::int64_t>(p / g)};
  Representation<F> rep;
  rep.reserve(X.size());
  for (const auto& x : X) rep.push_back(x.transpose());
  return build_weight_pencil(std::move(fld), theta, dim, weight, rep);
}

template <class F>
PqFullVerdict<F> pq_full_test(F fld, const std::vector<Matrix<F>>& X,
                              std::size_t trials, std::uint64_t seed) {
  const auto pencil = pq_weight_pencil(fld, X);
  const std::size_t p = X[0].rows(), q = X[0].cols();
  const std::uint64_t g = gcd_u64(p, q);
  const std::uint64_t lcm = p / g * q;

  const auto nc = in_nullcone(pencil, trials, seed);
  PqFullVerdict<F> v;
  v.full = !nc.in_null_cone;
  v.p = p;
  v.q = q;
  v.sigma_x = static_cast<std::int64_t>(q / g);
  v.sigma_y = -static_cast<std::int64_t>(p / g);
  v.pencil_size = pencil.rows;
  v.pencil_vars = pencil.vars();
  v.blowup_size = nc.blowup_size;
  v.trials = trials;
  v.witness = nc.witness;
  v.det_value = nc.det_value;
  const unsigned __int128 base =
      static_cast<unsigned __int128>(p) * q * lcm;
  const unsigned __int128 bound = base * base;
  if (bound > static_cast<unsigned __int128>(~static_cast<std::uint64_t>(0)))
    throw PreconditionError("pq_full_test: degree bound exceeds 64 bits");
  v.generator_degree_bound = static_cast<std::uint64_t>(bound);
  return v;
}

}  // namespace ncalg
