#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "ncalg/errors.hpp"
#include "ncalg/rng.hpp"

namespace ncalg {

/* 2^61 - 1, prime. Default modulus; also the sample-set size used for
 * rational sampling, so randomized failure bounds read degree / 2^61-1
 * for both field kinds. */
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

/* Deterministic Miller-Rabin, exact for all 64-bit n. */
bool is_prime_u64(std::uint64_t n);

/* Runtime tag describing the coefficient field of a serialized object. */
struct FieldSpec {
  enum class Kind { Prime, Rationals };

  Kind kind = Kind::Prime;
  std::uint64_t prime = kDefaultPrime;

  static FieldSpec prime_field(std::uint64_t p);
  static FieldSpec rationals() { return {Kind::Rationals, 0}; }

  bool operator==(const FieldSpec&) const = default;
};

/* GF(p) for word-sized prime p < 2^62. Elements are canonical residues
 * in [0, p) stored as plain u64; all arithmetic goes through the field
 * object. Construction validates primality. */
class Fp {
 public:
  using Elem = std::uint64_t;

  explicit Fp(std::uint64_t p = kDefaultPrime) : p_(p) {
    if (p >= (1ULL << 62))
      throw PreconditionError("prime modulus too large (need p < 2^62)");
    if (!is_prime_u64(p))
      throw PreconditionError("modulus is not prime: " + std::to_string(p));
  }

  std::uint64_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::Prime, p_}; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const {
    const std::uint64_t s = a + b;  /* no overflow: a, b < 2^62 */
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + (p_ - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p_);
  }

  std::optional<Elem> try_inv(Elem a) const {
    if (a == 0) return std::nullopt;
    /* extended Euclid on (a, p); p < 2^62 fits in int64 */
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      const std::int64_t q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }
  Elem inv(Elem a) const {
    const auto r = try_inv(a);
    if (!r) throw SingularError("division by zero in GF(p)");
    return *r;
  }

  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r);
  }

  /* Uniform residue. */
  Elem sample(Rng& rng) const { return rng.below(p_); }

  std::string to_string(Elem a) const { return std::to_string(a); }

  /* Decimal integer of any length, optional leading '-'; reduced mod p. */
  Elem from_string(std::string_view s) const;

  bool operator==(const Fp&) const = default;

 private:
  std::uint64_t p_;
};

/* The rationals, backed by GMP. Elements are mpq_class in lowest terms
 * with positive denominator (canonicalized on every parse). */
class Rat {
 public:
  using Elem = mpq_class;

  FieldSpec spec() const { return FieldSpec::rationals(); }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }

  std::optional<Elem> try_inv(const Elem& a) const {
    if (sgn(a) == 0) return std::nullopt;
    return Elem(1) / a;
  }
  Elem inv(const Elem& a) const {
    const auto r = try_inv(a);
    if (!r) throw SingularError("division by zero in Q");
    return *r;
  }

  Elem from_int(std::int64_t v) const {
    return Elem(mpz_class(static_cast<signed long>(v)));
  }

  /* Uniform integer in [0, 2^61-1), embedded in Q. True uniform sampling
   * of an infinite field does not exist; this fixes the sample set used
   * by every randomized routine and by the reported failure bounds. */
  Elem sample(Rng& rng) const {
    return Elem(mpz_class(static_cast<unsigned long>(rng.below(kDefaultPrime))));
  }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  /* "n" or "n/d" in base 10; canonicalized. */
  Elem from_string(std::string_view s) const;

  bool operator==(const Rat&) const { return true; }

 private:
};

/* Invoke fn with the field object matching spec; returns fn's result. */
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Prime) return fn(Fp(spec.prime));
  return fn(Rat{});
}

}  // namespace ncalg
