#pragma once

#include <gmpxx.h>

#include <string>

namespace nilcover {

// Exponents and matrix entries are unbounded.
using Int = mpz_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

// Floor division and matching nonnegative remainder, divisor > 0.
inline void fdiv_qr(Int& q, Int& r, const Int& a, const Int& d) {
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
}

// g = gcd(a, b) = s*a + t*b.
inline void gcdext(Int& g, Int& s, Int& t, const Int& a, const Int& b) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
}

}  // namespace nilcover
