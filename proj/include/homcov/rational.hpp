#pragma once

#include <gmpxx.h>

#include <string>

namespace homcov {

// Exact rational scalar. mpq_class does not canonicalize two-argument
// constructions on its own, so all construction from raw parts goes through
// these helpers. Invariant everywhere else: denominator > 0, gcd(num,den) = 1.
using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }

inline Rat rat(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

// Parses "n", "-n", or "n/d". Throws Error(BadInput) on malformed text or d = 0.
Rat rat_parse(const std::string& text);

// Canonical text form: "n" when the denominator is 1, else "n/d".
std::string rat_str(const Rat& q);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

mpz_class rat_floor(const Rat& q);
mpz_class rat_ceil(const Rat& q);

// The rational with the smallest denominator (ties: smallest |numerator|)
// strictly inside the open interval (lo, hi). Requires lo < hi.
Rat simplest_between(const Rat& lo, const Rat& hi);

// Rational r >= 0 with r*r <= x, within relative 2^-bits of sqrt(x).
// Requires x >= 0. Exact when x is a perfect rational square of dyadic form.
Rat sqrt_lower_bound(const Rat& x, unsigned bits = 32);

// Approximate double value, display use only.
inline double rat_double(const Rat& q) { return q.get_d(); }

}  // namespace homcov
