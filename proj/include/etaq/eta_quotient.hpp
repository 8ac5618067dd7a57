#ifndef ETAQ_ETA_QUOTIENT_HPP
#define ETAQ_ETA_QUOTIENT_HPP

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "etaq/cusps.hpp"
#include "etaq/numtheory.hpp"
#include "etaq/series.hpp"

namespace etaq {

class NotModularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ModularityClass { not_modular, weakly_holomorphic, holomorphic, cusp_form };

inline std::string to_string(ModularityClass m) {
  switch (m) {
    case ModularityClass::not_modular: return "not modular (level-N conditions fail)";
    case ModularityClass::weakly_holomorphic: return "weakly holomorphic";
    case ModularityClass::holomorphic: return "holomorphic";
    case ModularityClass::cusp_form: return "cusp form";
  }
  return "?";
}

// The character d -> ((-1)^k s / d) attached to a modular eta-quotient,
// where s = prod delta^{r_delta} in lowest terms u/v. For gcd(v, d) = 1
// the symbol ((u/v)/d) equals (u v / d), so a single Kronecker symbol
// with top (-1)^k * u * v evaluates the character.
struct NebentypusChar {
  int64_t modulus;
  int weight_parity_sign;  // (-1)^k
  Int s_num, s_den;        // s = prod delta^{r_delta} in lowest terms

  Int symbol_top() const { return weight_parity_sign * s_num * s_den; }

  int eval(const Int& d) const {
    Int g = gcd(d, Int((long)modulus));
    if (g != 1) return 0;
    return kronecker(symbol_top(), d);
  }
  int eval(int64_t d) const { return eval(Int((long)d)); }

  // Trivial exactly when the symbol top is a perfect square: all primes
  // dividing s divide N, and Gamma_0(N) only ever asks for d coprime to N.
  bool is_trivial() const { return is_perfect_square(symbol_top()); }

  std::string describe() const {
    if (is_trivial()) return "trivial";
    return "d -> kronecker(" + etaq::to_string(symbol_top()) + ", d)";
  }
};

// Cusp orders of an eta-quotient, one exact rational per representative.
struct CuspOrders {
  int64_t level;
  std::vector<std::pair<Cusp, Rat>> orders;  // in cusp_representatives order

  const Rat& at_denominator(int64_t d) const {
    for (auto& [c, v] : orders)
      if (c.den == d) return v;
    throw std::domain_error("CuspOrders: no representative with denominator " + std::to_string(d));
  }
};

// prod_{delta | N} eta(delta tau)^{r_delta}. Exponent zero entries are
// dropped so the exponent map is canonical.
class EtaQuotient {
 public:
  using ExpMap = std::map<int64_t, int64_t>;

  EtaQuotient(int64_t level, ExpMap exponents) : level_(level) {
    if (level < 1) throw std::domain_error("EtaQuotient: level must be positive");
    for (auto& [d, r] : exponents) {
      if (d < 1 || level % d != 0)
        throw std::domain_error("EtaQuotient: " + std::to_string(d) + " does not divide the level");
      if (r != 0) exps_[d] = r;
    }
  }

  static EtaQuotient constant(int64_t level) { return EtaQuotient(level, {}); }

  int64_t level() const { return level_; }
  const ExpMap& exponents() const { return exps_; }

  int64_t exponent_at(int64_t delta) const {
    auto it = exps_.find(delta);
    return it == exps_.end() ? 0 : it->second;
  }

  bool operator==(const EtaQuotient&) const = default;

  // k = (1/2) sum r_delta; may be a half-integer.
  Rat weight() const {
    int64_t s = 0;
    for (auto& [d, r] : exps_) s += r;
    return make_rat((long)s, 2);
  }

  // The two level-N congruences: sum delta r = 0 and sum (N/delta) r = 0 mod 24.
  std::pair<bool, bool> newman_conditions() const {
    Int s1 = 0, s2 = 0;
    for (auto& [d, r] : exps_) {
      s1 += Int((long)d) * (long)r;
      s2 += Int((long)(level_ / d)) * (long)r;
    }
    return {s1 % 24 == 0, s2 % 24 == 0};
  }

  bool is_modular() const {
    auto [a, b] = newman_conditions();
    return a && b;
  }

  NebentypusChar nebentypus() const {
    if (!is_modular()) throw NotModularError("nebentypus: level-N conditions fail");
    Rat k = weight();
    if (!is_integral(k)) throw NotModularError("nebentypus: weight is not integral");
    Rat s(1);
    for (auto& [d, r] : exps_) {
      if (r > 0)
        s *= Rat(int_pow(Int((long)d), (unsigned long)r));
      else
        s /= Rat(int_pow(Int((long)d), (unsigned long)(-r)));
    }
    s.canonicalize();
    int sign = mpz_even_p(k.get_num_mpz_t()) ? 1 : -1;
    return NebentypusChar{level_, sign, s.get_num(), s.get_den()};
  }

  // Order of vanishing at the cusp c/d relative to Gamma_0(N):
  //   (N/24) sum_delta gcd(d,delta)^2 r_delta / (gcd(d,N/d) d delta).
  // Depends only on the denominator d.
  Rat cusp_order(int64_t d) const {
    if (d < 1 || level_ % d != 0) throw std::domain_error("cusp_order: d must divide the level");
    Rat sum(0);
    for (auto& [delta, r] : exps_) {
      int64_t g = gcd_ll(d, delta);
      sum += make_rat(Int((long)(g * g)) * (long)r, Int((long)(d * delta)));
    }
    return sum * make_rat((long)level_, (long)(24 * gcd_ll(d, level_ / d)));
  }

  // Orders at every representative. The cusp at i-infinity is the class
  // of 1/N (for squarefree N), where the order equals the leading
  // q-exponent sum(delta r)/24.
  CuspOrders cusp_orders_all() const {
    if (!is_modular()) throw NotModularError("cusp_orders_all: level-N conditions fail");
    CuspOrders out{level_, {}};
    for (const Cusp& c : cusp_representatives(level_)) out.orders.emplace_back(c, cusp_order(c.den));
    return out;
  }

  ModularityClass classify() const {
    if (!is_modular()) return ModularityClass::not_modular;
    bool all_positive = true;
    for (const Cusp& c : cusp_representatives(level_)) {
      Rat v = cusp_order(c.den);
      if (v < 0) return ModularityClass::weakly_holomorphic;
      if (v == 0) all_positive = false;
    }
    return all_positive ? ModularityClass::cusp_form : ModularityClass::holomorphic;
  }

  // Lattice lead exponent of the q-expansion: sum delta r_delta.
  int64_t lead_lattice_exponent() const {
    int64_t s = 0;
    for (auto& [d, r] : exps_) s += d * r;
    return s;
  }

  // Expansion known modulo q^{trunc/24}.
  FracSeries expansion_lattice(int64_t trunc) const {
    const int64_t lead = lead_lattice_exponent();
    const int64_t rel = trunc - lead;  // relative precision each factor needs
    FracSeries out = FracSeries::one(rel);
    for (auto& [d, r] : exps_) out = out * FracSeries::eta_power(d, r, d * r + rel);
    return out;
  }

  // Expansion exposing n_terms integral coefficients past the lead.
  FracSeries q_expansion(int64_t n_terms) const {
    return expansion_lattice(lead_lattice_exponent() + FracSeries::kLattice * n_terms + 1);
  }

  // Pointwise product / integer power of quotients at a common level.
  friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b) {
    if (a.level_ != b.level_) throw std::domain_error("EtaQuotient: mixed levels");
    ExpMap e = a.exps_;
    for (auto& [d, r] : b.exps_) e[d] += r;
    return EtaQuotient(a.level_, e);
  }

  EtaQuotient pow(int64_t m) const {
    ExpMap e;
    for (auto& [d, r] : exps_) e[d] = r * m;
    return EtaQuotient(level_, e);
  }

  EtaQuotient div(const EtaQuotient& b) const { return *this * b.pow(-1); }

  // Textual form `N; delta1:r1, delta2:r2, ...`, ascending divisors,
  // zero exponents omitted.
  std::string to_string() const {
    std::ostringstream os;
    os << level_ << ";";
    bool first = true;
    for (auto& [d, r] : exps_) {
      os << (first ? " " : ", ") << d << ":" << r;
      first = false;
    }
    return os.str();
  }

  static EtaQuotient parse(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
      throw std::invalid_argument("eta-quotient: expected `N; delta:r, ...`");
    int64_t level;
    try {
      size_t used = 0;
      level = std::stoll(text.substr(0, semi), &used);
      while (used < semi && std::isspace((unsigned char)text[used])) ++used;
      if (used != semi) throw std::invalid_argument("");
    } catch (...) {
      throw std::invalid_argument("eta-quotient: bad level in '" + text + "'");
    }
    ExpMap exps;
    std::string rest = text.substr(semi + 1);
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ',')) {
      // allow a trailing/empty segment from "N;"
      size_t a = item.find_first_not_of(" \t");
      if (a == std::string::npos) continue;
      size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("eta-quotient: expected `delta:r` in '" + item + "'");
      int64_t d, r;
      try {
        d = std::stoll(item.substr(0, colon));
        r = std::stoll(item.substr(colon + 1));
      } catch (...) {
        throw std::invalid_argument("eta-quotient: bad entry '" + item + "'");
      }
      if (exps.count(d)) throw std::invalid_argument("eta-quotient: duplicate divisor " + std::to_string(d));
      exps[d] = r;
    }
    return EtaQuotient(level, exps);
  }

 private:
  int64_t level_;
  ExpMap exps_;
};

// Rouse-Webb bound on sum |r_delta| for holomorphic eta-quotients of
// weight k: 2k prod_{p|N} ((p+1)/(p-1))^{min(2, ord_p N)}.
inline Rat rouse_webb_bound(int64_t N, const Rat& k) {
  if (k <= 0) throw std::domain_error("rouse_webb_bound: weight must be positive");
  Rat out = 2 * k;
  for (auto& [p, e] : factorize(N)) {
    int m = e < 2 ? e : 2;
    for (int i = 0; i < m; ++i) out *= make_rat((long)(p + 1), (long)(p - 1));
  }
  return out;
}

}  // namespace etaq

#endif
