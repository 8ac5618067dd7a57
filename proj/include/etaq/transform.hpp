#ifndef ETAQ_TRANSFORM_HPP
#define ETAQ_TRANSFORM_HPP

#include <complex>

#include "etaq/eta_quotient.hpp"

namespace etaq {

struct UnimodularMatrix {
  int64_t a, b, c, d;

  bool valid() const { return a * d - b * c == 1; }
};

// The eta multiplier v(A) written exactly as sign * e^{i pi m / 12} with
// m reduced mod 24.
struct EtaMultiplier {
  int sign;              // value of the extended Legendre symbol, +-1
  int exponent_mod24;    // m in [0, 24)

  std::complex<double> value() const {
    constexpr double pi = 3.14159265358979323846;
    return double(sign) * std::exp(std::complex<double>(0.0, pi * exponent_mod24 / 12.0));
  }

  // v^t, still a 24th root of unity times a sign.
  EtaMultiplier pow(int64_t t) const {
    int64_t m = ((exponent_mod24 * t) % 24 + 24) % 24;
    return {t % 2 == 0 ? 1 : sign, int(m)};
  }

  bool operator==(const EtaMultiplier&) const = default;
};

// Multiplier system of eta: eta(A tau) = v(A) (c tau + d)^{1/2} eta(tau).
// Closed form (Knopp), branch chosen by parity with c odd first:
//   c odd:  v = (d/|c|) e^{i pi/12 ((a+d)c - bd(c^2-1) - 3c)}
//   d odd:  v = (c/d)   e^{i pi/12 ((a+d)c - bd(c^2-1) + 3d - 3 - 3cd)}
// with Kronecker-extended symbols. Valid for every determinant-1 integer
// matrix (checked against direct eta evaluation over random SL2(Z)).
inline EtaMultiplier eta_multiplier(const UnimodularMatrix& A) {
  if (!A.valid()) throw std::domain_error("eta_multiplier: determinant must be 1");
  Int a((long)A.a), b((long)A.b), c((long)A.c), d((long)A.d);
  int sym;
  Int m;
  if (A.c % 2 != 0) {
    sym = kronecker(d, abs(c));
    m = (a + d) * c - b * d * (c * c - 1) - 3 * c;
  } else {
    sym = kronecker(c, d);
    m = (a + d) * c - b * d * (c * c - 1) + 3 * d - 3 - 3 * c * d;
  }
  Int mm = m % 24;
  if (mm < 0) mm += 24;
  return {sym, (int)mm.get_si()};
}

namespace detail {

using cld = std::complex<long double>;

inline cld cpow_int(cld z, int64_t m) {
  if (m < 0) return cld(1.0L) / cpow_int(z, -m);
  cld acc(1.0L), base = z;
  for (;;) {
    if (m & 1) acc *= base;
    m >>= 1;
    if (!m) break;
    base *= base;
  }
  return acc;
}

// eta(z) = e^{i pi z/12} prod_{24n < trunc} (1 - e^{2 pi i n z}). The
// prefactor must be e^{i pi z/12} itself, not a principal 24th root of
// e^{2 pi i z}. The product form is used rather than the pentagonal sum:
// near the real line the sum cancels catastrophically while the product
// is multiplicatively stable.
inline cld eta_value(cld z, int64_t trunc) {
  constexpr long double pi = 3.141592653589793238462643383279502884L;
  const cld q = std::exp(cld(0.0L, 2.0L * pi) * z);
  cld qn(1.0L), prod(1.0L);
  for (int64_t n = 1; 24 * n < trunc; ++n) {
    qn *= q;
    prod *= cld(1.0L) - qn;
    if (std::abs(qn) < 1e-24L) break;
  }
  return std::exp(cld(0.0L, pi / 12.0L) * z) * prod;
}

}  // namespace detail

// Extended-precision core; tau in long double keeps the evaluation stable
// close to the real line, where eta is extremely sensitive to its argument.
inline std::complex<long double> numeric_eval_ld(const EtaQuotient& f,
                                                 std::complex<long double> tau, int64_t trunc) {
  if (!(tau.imag() > 0)) throw std::domain_error("numeric_eval: tau must have positive imaginary part");
  detail::cld out(1.0L);
  for (auto& [d, r] : f.exponents())
    out *= detail::cpow_int(detail::eta_value((long double)d * tau, trunc), r);
  return out;
}

// Floating-point value of the quotient from its truncated eta-factor
// expansions; trunc bounds the lattice exponents used per factor.
inline std::complex<double> numeric_eval(const EtaQuotient& f, std::complex<double> tau,
                                         int64_t trunc) {
  auto out = numeric_eval_ld(f, {tau.real(), tau.imag()}, trunc);
  return {double(out.real()), double(out.imag())};
}

}  // namespace etaq

#endif
