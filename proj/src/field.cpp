#include "ncalg/field.hpp"

#include <array>

namespace ncalg {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

/* Witness set {2,...,37} is exact for every n < 3.3 * 10^24. */
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                          19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                          19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p >= (1ULL << 62))
    throw PreconditionError("prime modulus too large (need p < 2^62)");
  if (!is_prime_u64(p))
    throw PreconditionError("modulus is not prime: " + std::to_string(p));
  return {Kind::Prime, p};
}

Fp::Elem Fp::from_string(std::string_view s) const {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    negative = (s[i] == '-');
    ++i;
  }
  if (i == s.size())
    throw FormatError("empty integer literal");
  unsigned __int128 acc = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw FormatError("bad digit in integer literal: \"" + std::string(s) + "\"");
    acc = (acc * 10 + static_cast<unsigned>(s[i] - '0')) % p_;
  }
  const Elem v = static_cast<Elem>(acc);
  return negative ? neg(v) : v;
}

Rat::Elem Rat::from_string(std::string_view s) const {
  if (s.empty()) throw FormatError("empty rational literal");
  /* validate shape before handing to GMP: [-+]?digits(/digits)? */
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  bool seen_digit = false, seen_slash = false;
  for (; i < s.size(); ++i) {
    if (s[i] >= '0' && s[i] <= '9') {
      seen_digit = true;
    } else if (s[i] == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
      seen_digit = false;
    } else {
      throw FormatError("bad rational literal: \"" + std::string(s) + "\"");
    }
  }
  if (!seen_digit)
    throw FormatError("bad rational literal: \"" + std::string(s) + "\"");
  if (s[0] == '+') s.remove_prefix(1);  /* GMP does not take a leading '+' */
  mpq_class q(std::string(s), 10);
  if (sgn(q.get_den()) == 0)
    throw FormatError("zero denominator in rational literal: \"" + std::string(s) + "\"");
  q.canonicalize();
  return q;
}

}  // namespace ncalg
