#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncalg/linalg.hpp"
#include "ncalg/matrix.hpp"

namespace ncalg {

/* Immutable expression tree over +, unary -, *, ^-1, integer constants and
 * variables t1, t2, ... Shared subtrees are fine (value-semantic handle).
 *
 * `size` counts the arithmetic gates Const/Var/Add/Mul/Inv. Unary minus is
 * a sign on an edge, not a gate: it costs nothing at evaluation and does
 * not enter the witness-dimension bound. */
class Formula {
 public:
  enum class Kind { Const, Var, Neg, Add, Mul, Inv };

  static Formula constant(std::int64_t v);
  static Formula var(std::size_t index);  /* 1-based */
  static Formula neg(Formula a);
  static Formula add(Formula a, Formula b);
  static Formula sub(Formula a, Formula b) { return add(std::move(a), neg(std::move(b))); }
  static Formula mul(Formula a, Formula b);
  static Formula inv(Formula a);

  Kind kind() const;
  std::int64_t value() const;      /* Const only */
  std::size_t var_index() const;   /* Var only */
  std::size_t arity() const;
  Formula child(std::size_t i = 0) const;

  std::size_t size() const;     /* gate count; Neg is transparent */
  std::size_t max_var() const;  /* 0 when variable free */
  std::size_t inv_height() const;  /* deepest nesting of ^-1 gates */

  bool operator==(const Formula& o) const;  /* structural */

  struct Node;  /* opaque; defined with the parser */

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/* Grammar (whitespace between tokens is insignificant):
 *   expr   := term (('+' | '-') term)*
 *   term   := ['-'] factor ('*' factor)*
 *   factor := atom ('^-1')*
 *   atom   := integer | 't' posint | '(' expr ')'
 * Binary '-' builds add(a, neg(b)); unary '-' wraps the whole term.
 * Throws SyntaxError (with offset) on malformed input and VarIndexError
 * for t0. */
Formula parse_formula(std::string_view text);

/* Canonical text form; parse_formula(to_text(f)) == f for every tree the
 * parser can produce (trees with negative constants print as value-equal
 * but structurally distinct text, since the grammar has no negative
 * literals). */
std::string to_text(const Formula& f);

/* Evaluate at dim x dim matrices tuple[0] = t1, ... Returns nullopt when
 * some inversion hits a singular matrix (the evaluation is undefined at
 * that point). Needs tuple.size() >= max_var; every matrix dim x dim. */
template <class F>
std::optional<Matrix<F>> evaluate(const Formula& f, const F& fld,
                                  std::span<const Matrix<F>> tuple,
                                  std::size_t dim) {
  if (tuple.size() < f.max_var())
    throw ShapeMismatchError("evaluate: formula uses t" +
                             std::to_string(f.max_var()) + " but only " +
                             std::to_string(tuple.size()) +
                             " matrices were given");
  for (const auto& t : tuple)
    if (t.rows() != dim || t.cols() != dim)
      throw ShapeMismatchError("evaluate: matrices must all be " +
                               std::to_string(dim) + "x" + std::to_string(dim));
  using Kind = Formula::Kind;
  auto rec = [&](auto&& self, const Formula& g) -> std::optional<Matrix<F>> {
    switch (g.kind()) {
      case Kind::Const:
        return Matrix<F>::identity(fld, dim).scaled(fld.from_int(g.value()));
      case Kind::Var:
        return tuple[g.var_index() - 1];
      case Kind::Neg: {
        auto a = self(self, g.child());
        if (!a) return std::nullopt;
        return a->scaled(fld.neg(fld.one()));
      }
      case Kind::Add: {
        auto a = self(self, g.child(0));
        if (!a) return std::nullopt;
        auto b = self(self, g.child(1));
        if (!b) return std::nullopt;
        return *a + *b;
      }
      case Kind::Mul: {
        auto a = self(self, g.child(0));
        if (!a) return std::nullopt;
        auto b = self(self, g.child(1));
        if (!b) return std::nullopt;
        return *a * *b;
      }
      case Kind::Inv: {
        auto a = self(self, g.child());
        if (!a) return std::nullopt;
        return try_inverse(std::move(*a));  /* nullopt when singular */
      }
    }
    throw Error("evaluate: unreachable");
  };
  return rec(rec, f);
}

template <class F>
std::optional<Matrix<F>> evaluate(const Formula& f, const F& fld,
                                  const std::vector<Matrix<F>>& tuple,
                                  std::size_t dim) {
  return evaluate(f, fld, std::span<const Matrix<F>>(tuple), dim);
}

enum class RitStatus { ZeroWhp, NonZero, UndefinedWhp };

inline const char* to_string(RitStatus s) {
  switch (s) {
    case RitStatus::ZeroWhp: return "ZeroWhp";
    case RitStatus::NonZero: return "NonZero";
    case RitStatus::UndefinedWhp: return "UndefinedWhp";
  }
  return "?";
}

/* Rational identity test transcript. NonZero is exact (witness stored);
 * the other verdicts are Monte Carlo. */
template <class F>
struct RitVerdict {
  RitStatus status = RitStatus::UndefinedWhp;
  std::size_t dimension = 0;
  std::size_t trials = 0;
  std::size_t defined_trials = 0;
  std::optional<std::size_t> witness_trial;
  std::vector<Matrix<F>> witness_tuple;
  std::optional<Matrix<F>> witness_value;
};

/* Randomized rational identity test at matrix dimension 2*(size+1)-1.
 * That dimension is large enough that a formula of this gate count which
 * is nonzero anywhere in its domain is defined and nonzero at some tuple
 * of that size; the defined-and-nonzero locus is Zariski open, so uniform
 * tuples land in it whp. Verdicts:
 *   NonZero      exact, with the first witnessing trial;
 *   ZeroWhp      every defined trial evaluated to the zero matrix;
 *   UndefinedWhp no trial was defined (nested inversions all singular).
 * Deterministic for fixed (seed, trials) regardless of thread count. */
template <class F>
RitVerdict<F> rit(const F& fld, const Formula& f, std::size_t trials,
                  std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("rit: need at least one trial");
  RitVerdict<F> v;
  v.dimension = 2 * (f.size() + 1) - 1;
  v.trials = trials;
  const std::size_t m = f.max_var();
  const std::size_t dim = v.dimension;

  /* 0 = undefined, 1 = zero, 2 = nonzero */
  std::vector<unsigned char> status(trials, 0);
  const std::int64_t hi = static_cast<std::int64_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (trials > 1)
#endif
  for (std::int64_t t = 0; t < hi; ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    std::vector<Matrix<F>> tuple;
    tuple.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      tuple.push_back(Matrix<F>::random(fld, dim, dim, rng));
    const auto val = evaluate(f, fld, std::span<const Matrix<F>>(tuple), dim);
    if (!val)
      status[static_cast<std::size_t>(t)] = 0;
    else
      status[static_cast<std::size_t>(t)] = val->is_zero() ? 1 : 2;
  }

  std::size_t first_nonzero = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    if (status[t] != 0) ++v.defined_trials;
    if (status[t] == 2 && first_nonzero == trials) first_nonzero = t;
  }
  if (first_nonzero < trials) {
    v.status = RitStatus::NonZero;
    v.witness_trial = first_nonzero;
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(first_nonzero));
    for (std::size_t i = 0; i < m; ++i)
      v.witness_tuple.push_back(Matrix<F>::random(fld, dim, dim, rng));
    v.witness_value =
        *evaluate(f, fld, std::span<const Matrix<F>>(v.witness_tuple), dim);
  } else if (v.defined_trials > 0) {
    v.status = RitStatus::ZeroWhp;
  } else {
    v.status = RitStatus::UndefinedWhp;
  }
  return v;
}

}  // namespace ncalg
