#include "homcov/rational.hpp"

#include <cctype>

#include "homcov/errors.hpp"

namespace homcov {

Rat rat_parse(const std::string& text) {
  if (text.empty()) fail(Errc::BadInput, "empty rational literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '+' && c != '/')
      fail(Errc::BadInput, "bad character in rational literal '" + text + "'");
  }
  Rat q;
  if (q.set_str(text, 10) != 0) fail(Errc::BadInput, "unparsable rational '" + text + "'");
  if (q.get_den() == 0) fail(Errc::BadInput, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpz_class rat_floor(const Rat& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

mpz_class rat_ceil(const Rat& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

namespace {

// Continued-fraction descent on the open interval (lo, hi) with 0 <= lo < hi.
Rat simplest_nonneg(const Rat& lo, const Rat& hi) {
  mpz_class fl = rat_floor(lo);
  if (Rat(fl + 1) < hi) return Rat(fl + 1);
  Rat lo_frac = lo - Rat(fl);
  Rat hi_frac = hi - Rat(fl);
  if (lo_frac == 0) {
    // interval (fl, fl + hi_frac) with hi_frac <= 1: take fl + 1/n, minimal n
    mpz_class n = rat_ceil(1 / hi_frac);
    if (Rat(n) * hi_frac == 1) n += 1;
    return Rat(fl) + Rat(1) / Rat(n);
  }
  return Rat(fl) + 1 / simplest_nonneg(1 / hi_frac, 1 / lo_frac);
}

}  // namespace

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (!(lo < hi)) fail(Errc::BadInput, "simplest_between needs lo < hi");
  if (lo < 0 && hi > 0) return Rat(0);
  if (lo >= 0) return simplest_nonneg(lo, hi);
  return -simplest_nonneg(-hi, -lo);
}

Rat sqrt_lower_bound(const Rat& x, unsigned bits) {
  if (x < 0) fail(Errc::BadInput, "sqrt_lower_bound of negative value");
  if (x == 0) return Rat(0);
  // floor(sqrt(num * 4^k / den)) / 2^k; k sized so the integer root carries
  // at least `bits` significant bits.
  mpz_class num = x.get_num(), den = x.get_den();
  std::size_t nb = mpz_sizeinbase(num.get_mpz_t(), 2);
  std::size_t db = mpz_sizeinbase(den.get_mpz_t(), 2);
  unsigned long k = bits + (db > nb ? (db - nb) / 2 + 1 : 0);
  mpz_class scaled = (num << (2 * k)) / den;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Rat r(root, mpz_class(1) << k);
  r.canonicalize();
  return r;
}

}  // namespace homcov
