#ifndef ETAQ_NUMTHEORY_HPP
#define ETAQ_NUMTHEORY_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "etaq/rational.hpp"

namespace etaq {

using std::int64_t;

inline int64_t gcd_ll(int64_t a, int64_t b) { return std::gcd(a, b); }

// Trial-division factorization; levels in this library are small.
inline std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  if (n <= 0) throw std::domain_error("factorize: n must be positive");
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    if (n % p == 0) return false;
  return true;
}

inline bool is_squarefree(int64_t n) {
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

inline std::vector<int64_t> divisors_ascending(int64_t n) {
  std::vector<int64_t> out{1};
  for (auto& [p, e] : factorize(n)) {
    size_t m = out.size();
    int64_t pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < m; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int64_t sigma1(int64_t n) {
  int64_t s = 0;
  for (int64_t d : divisors_ascending(n)) s += d;
  return s;
}

inline int64_t euler_phi(int64_t n) {
  int64_t out = n;
  for (auto& [p, e] : factorize(n)) out = out / p * (p - 1);
  return out;
}

// Kronecker symbol (a/n), Cohen's convention: (a/2) is 0, 1, -1 for
// a = 0, +-1, +-3 mod 8, and (a/-1) = sign(a) with (0/-1) = 1.
inline int kronecker(const Int& a, const Int& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(int64_t a, int64_t n) { return kronecker(Int((long)a), Int((long)n)); }

inline bool is_perfect_square(const Int& z) {
  return z >= 0 && mpz_perfect_square_p(z.get_mpz_t());
}

}  // namespace etaq

#endif
