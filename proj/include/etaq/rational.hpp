#ifndef ETAQ_RATIONAL_HPP
#define ETAQ_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace etaq {

// Arbitrary-precision integers and rationals. Everything exact in this
// library goes through these two types; floating point appears only in
// the numeric evaluation helpers.
using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& z) { return z.get_str(); }

// Canonical "n" or "num/den" form (GMP keeps mpq_class canonicalized).
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Int parse_int(const std::string& s) {
  Int z;
  if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer: '" + s + "'");
  return z;
}

inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// mpq_class two-argument constructors do not canonicalize, and GMP's mpq
// arithmetic is only specified on canonical operands. All ratios built
// from a numerator/denominator pair go through here.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

// Floor of a rational, as Int.
inline Int rat_floor(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// |num * den|, used as a pivot-size measure in exact elimination.
inline Int rat_complexity(const Rat& q) {
  Int out = q.get_num() * q.get_den();
  return abs(out);
}

}  // namespace etaq

#endif
