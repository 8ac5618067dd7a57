#ifndef ETAQ_CUSPS_HPP
#define ETAQ_CUSPS_HPP

#include <string>
#include <vector>

#include "etaq/numtheory.hpp"

namespace etaq {

// A cusp a/c of Gamma_0(N) by a representative fraction.
struct Cusp {
  int64_t num;  // a, with gcd(a, N) = 1
  int64_t den;  // c | N

  bool operator==(const Cusp&) const = default;
};

inline std::string to_string(const Cusp& c) {
  return std::to_string(c.num) + "/" + std::to_string(c.den);
}

// Complete set of representatives for the cusps of Gamma_0(N): for each
// c | N one representative a_c/c per residue class of a_c mod gcd(c, N/c),
// with gcd(a_c, N) = 1. For squarefree N this is exactly {1/d : d | N}.
inline std::vector<Cusp> cusp_representatives(int64_t N) {
  if (N < 1) throw std::domain_error("cusp_representatives: N must be positive");
  std::vector<Cusp> out;
  for (int64_t c : divisors_ascending(N)) {
    int64_t g = gcd_ll(c, N / c);
    std::vector<bool> seen(g, false);
    for (int64_t a = 1; a <= N; ++a) {
      if (gcd_ll(a, N) != 1) continue;
      int64_t r = a % g;
      if (seen[r]) continue;
      seen[r] = true;
      out.push_back({a, c});
    }
  }
  return out;
}

}  // namespace etaq

#endif
