#ifndef ETAQ_SPACES_HPP
#define ETAQ_SPACES_HPP

#include <optional>
#include <string>
#include <vector>

#include "etaq/eta_quotient.hpp"

namespace etaq {

// Precomputed invariants of Gamma_0(N).
struct LevelProfile {
  int64_t level;
  std::vector<std::pair<int64_t, int>> factorization;
  std::vector<int64_t> divisors;
  std::vector<Cusp> cusp_reps;
  int64_t index_mu;  // [SL2(Z) : Gamma_0(N)]
  int64_t eps2, eps3, eps_inf;
  int64_t genus;

  static LevelProfile compute(int64_t N);
};

inline int64_t index_gamma0(int64_t N) {
  if (N < 1) throw std::domain_error("index_gamma0: N must be positive");
  int64_t mu = N;
  for (auto& [p, e] : factorize(N)) mu = mu / p * (p + 1);
  return mu;
}

inline std::vector<Cusp> cusp_reps(int64_t N) { return cusp_representatives(N); }

inline LevelProfile LevelProfile::compute(int64_t N) {
  LevelProfile lp;
  lp.level = N;
  lp.factorization = factorize(N);
  lp.divisors = divisors_ascending(N);
  lp.cusp_reps = cusp_representatives(N);
  lp.index_mu = index_gamma0(N);
  // elliptic point counts, standard formulas (Diamond-Shurman)
  if (N % 4 == 0) {
    lp.eps2 = 0;
  } else {
    lp.eps2 = 1;
    for (auto& [p, e] : lp.factorization) lp.eps2 *= 1 + (p == 2 ? 0 : kronecker(-1, p));
  }
  if (N % 9 == 0) {
    lp.eps3 = 0;
  } else {
    lp.eps3 = 1;
    for (auto& [p, e] : lp.factorization) lp.eps3 *= 1 + kronecker(-3, p);
  }
  lp.eps_inf = (int64_t)lp.cusp_reps.size();
  // genus from the index and special point counts
  Rat g = Rat(1) + make_rat((long)lp.index_mu, 12) - make_rat((long)lp.eps2, 4) -
          make_rat((long)lp.eps3, 3) - make_rat((long)lp.eps_inf, 2);
  if (!is_integral(g)) throw std::logic_error("LevelProfile: genus must be integral");
  lp.genus = (int64_t)g.get_num().get_si();
  return lp;
}

// floor(k [SL2(Z):Gamma_0(N)] / 12); forms agreeing through q^bound coincide.
inline int64_t sturm_bound(int64_t N, int64_t k) {
  if (k < 1) throw std::domain_error("sturm_bound: weight must be >= 1");
  return k * index_gamma0(N) / 12;
}

// dim S_k(Gamma_0(N)) for even k >= 2; k = 2 gives the genus.
inline int64_t dim_cusp_forms(int64_t N, int64_t k) {
  if (k < 2 || k % 2 != 0) throw std::domain_error("dim_cusp_forms: only even k >= 2 supported");
  LevelProfile lp = LevelProfile::compute(N);
  if (k == 2) return lp.genus;
  return (k - 1) * (lp.genus - 1) + (k / 2 - 1) * lp.eps_inf + (k / 4) * lp.eps2 +
         (k / 3) * lp.eps3;
}

// dim M_k(Gamma_0(N)) for even k >= 2 (cusp dimension plus Eisenstein count).
inline int64_t dim_modular_forms(int64_t N, int64_t k) {
  if (k < 2 || k % 2 != 0) throw std::domain_error("dim_modular_forms: only even k >= 2 supported");
  LevelProfile lp = LevelProfile::compute(N);
  return dim_cusp_forms(N, k) + lp.eps_inf - (k == 2 ? 1 : 0);
}

// h = (1/2) gcd(p_1 - 1, ..., p_t - 1, 24) for distinct primes >= 5.
inline int64_t h_invariant(const std::vector<int64_t>& primes) {
  if (primes.empty()) throw std::domain_error("h_invariant: need at least one prime");
  int64_t g = 24;
  for (size_t i = 0; i < primes.size(); ++i) {
    int64_t p = primes[i];
    if (p < 5 || !is_prime(p)) throw std::domain_error("h_invariant: primes must be >= 5");
    for (size_t j = i + 1; j < primes.size(); ++j)
      if (primes[j] == p) throw std::domain_error("h_invariant: primes must be distinct");
    g = gcd_ll(g, p - 1);
  }
  return g / 2;
}

// k sigma_1(N) / 12, the forced sum of cusp orders at squarefree level.
inline Rat vanishing_sum_expected(int64_t N, int64_t k) {
  if (!is_squarefree(N)) throw std::domain_error("vanishing_sum_expected: N must be squarefree");
  return make_rat(Int((long)k) * (long)sigma1(N), Int(12));
}

// f = prod_delta eta^{k/2^{t-1}}(delta tau) for N = p_1...p_t, the balanced
// construction; holomorphic with every cusp order k sigma_1(N) / (2^t 12).
inline EtaQuotient balanced_construction(const std::vector<int64_t>& primes, int64_t k) {
  int64_t h = h_invariant(primes);  // validates the prime list
  const int t = (int)primes.size();
  int64_t N = 1;
  for (int64_t p : primes) N *= p;
  const int64_t half_pow = int64_t(1) << (t - 1);
  if (k % h != 0 || k % half_pow != 0)
    throw std::domain_error("balanced_construction: requires h | k and 2^(t-1) | k");
  Rat total = vanishing_sum_expected(N, k);
  if (!is_integral(total) || total.get_num() % (2 * half_pow) != 0)
    throw std::domain_error("balanced_construction: requires 2^t | k sigma_1(N)/12");
  EtaQuotient::ExpMap e;
  for (int64_t d : divisors_ascending(N)) e[d] = k / half_pow;
  return EtaQuotient(N, e);
}

struct ExistenceVerdict {
  enum class Reason { h_divides_fails, excluded_case_k2, negative_weight, constructive };
  bool exists;
  Reason reason;
  std::optional<EtaQuotient> witness;
};

inline std::string to_string(ExistenceVerdict::Reason r) {
  using R = ExistenceVerdict::Reason;
  switch (r) {
    case R::h_divides_fails: return "h does not divide k";
    case R::excluded_case_k2: return "excluded weight-2 residue case";
    case R::negative_weight: return "negative weight";
    case R::constructive: return "constructive";
  }
  return "?";
}

namespace detail {

// Sanity-check a constructed witness: modular, holomorphic, right weight.
inline EtaQuotient checked_witness(EtaQuotient f, int64_t k) {
  if (!f.is_modular()) throw std::logic_error("witness fails the level-N conditions");
  auto cls = f.classify();
  if (cls != ModularityClass::holomorphic && cls != ModularityClass::cusp_form)
    throw std::logic_error("witness is not holomorphic");
  if (f.weight() != k) throw std::logic_error("witness has the wrong weight");
  return f;
}

}  // namespace detail

// Existence of eta-quotients in M_k(Gamma_1(p)), p >= 5 prime, k even:
// exists iff h | k and not (p = 5 mod 24, p != 5, k = 2). Witnesses follow
// the constructive cases: balanced when k(p+1)/12 is even, otherwise
// eta^9 eta_p^3 (p = 13 mod 24), eta_5^5/eta (p = 5), or an f4/f6 product.
inline ExistenceVerdict exists_prime_level(int64_t p, int64_t k) {
  if (p < 5 || !is_prime(p)) throw std::domain_error("exists_prime_level: p must be a prime >= 5");
  if (k % 2 != 0) throw std::domain_error("exists_prime_level: k must be even");
  using R = ExistenceVerdict::Reason;
  if (k < 0) return {false, R::negative_weight, std::nullopt};
  if (k == 0) return {true, R::constructive, EtaQuotient::constant(p)};
  const int64_t h = h_invariant({p});
  if (k % h != 0) return {false, R::h_divides_fails, std::nullopt};
  if (p % 24 == 5 && p != 5 && k == 2) return {false, R::excluded_case_k2, std::nullopt};

  const int64_t kp12 = k * (p + 1) / 12;  // integral once h | k
  if (kp12 % 2 == 0)
    return {true, R::constructive, detail::checked_witness(balanced_construction({p}, k), k)};
  if (p % 24 == 13) {
    EtaQuotient f6(p, {{1, 9}, {p, 3}});
    return {true, R::constructive, detail::checked_witness(f6.pow(k / 6), k)};
  }
  if (p == 5) {
    EtaQuotient f2(5, {{1, -1}, {5, 5}});
    return {true, R::constructive, detail::checked_witness(f2.pow(k / 2), k)};
  }
  // p = 5 mod 24, p != 5, k even, k != 2, k(p+1)/12 odd: combine
  // f4 = eta^4 eta_p^4 and f6 = eta^9 eta_p^3 using 4 | k or 4 | (k - 6).
  EtaQuotient f4(p, {{1, 4}, {p, 4}});
  EtaQuotient f6(p, {{1, 9}, {p, 3}});
  EtaQuotient w = (k % 4 == 0) ? f4.pow(k / 4) : f4.pow((k - 6) / 4) * f6;
  return {true, R::constructive, detail::checked_witness(w, k)};
}

// Existence in M_k(Gamma_1(pq)), distinct primes p, q >= 5, k even:
// exists iff h | k and not ((p,q) = (1,5),(5,1),(5,5) mod 24, p,q != 5,
// k = 2). Witness order: balanced construction, the residue table, the
// eta_5^5/eta route when 5 | N, then the f4/f6 combination.
inline ExistenceVerdict exists_semiprime_level(int64_t p, int64_t q, int64_t k) {
  if (p == q) throw std::domain_error("exists_semiprime_level: primes must be distinct");
  if (p < 5 || q < 5 || !is_prime(p) || !is_prime(q))
    throw std::domain_error("exists_semiprime_level: primes must be >= 5");
  if (k % 2 != 0) throw std::domain_error("exists_semiprime_level: k must be even");
  using R = ExistenceVerdict::Reason;
  const int64_t N = p * q;
  if (k < 0) return {false, R::negative_weight, std::nullopt};
  if (k == 0) return {true, R::constructive, EtaQuotient::constant(N)};
  const int64_t h = h_invariant({p, q});
  if (k % h != 0) return {false, R::h_divides_fails, std::nullopt};

  // order the pair by residue mod 24 (tie: by size), matching the table
  int64_t lo = p, hi = q;
  if (std::pair(lo % 24, lo) > std::pair(hi % 24, hi)) std::swap(lo, hi);
  const int64_t rlo = lo % 24, rhi = hi % 24;

  const bool excluded_residues = (rlo == 1 && rhi == 5) || (rlo == 5 && rhi == 5);
  if (excluded_residues && p != 5 && q != 5 && k == 2)
    return {false, R::excluded_case_k2, std::nullopt};

  Rat total = vanishing_sum_expected(N, k);
  if (is_integral(total) && total.get_num() % 4 == 0 && k % 2 == 0)
    return {true, R::constructive, detail::checked_witness(balanced_construction({p, q}, k), k)};

  // now k = 2 mod 4 and p = q = 1 mod 4; residues lie in {1, 5, 13, 17}
  auto table_witness = [&](std::initializer_list<std::pair<int64_t, int64_t>> exps,
                           int64_t hh) -> ExistenceVerdict {
    EtaQuotient f(N, EtaQuotient::ExpMap(exps.begin(), exps.end()));
    return {true, R::constructive, detail::checked_witness(f.pow(k / hh), k)};
  };
  if (rlo == 1 && rhi == 13) return table_witness({{1, 11}, {hi, 1}}, 6);
  if (rlo == 5 && rhi == 13) return table_witness({{lo, 1}, {hi, 2}, {N, 1}}, 2);
  if (rlo == 5 && rhi == 17) return table_witness({{lo, 1}, {hi, 1}, {N, 2}}, 2);
  if (rlo == 13 && rhi == 13) return table_witness({{hi, 1}, {N, 11}}, 6);
  if (rlo == 13 && rhi == 17) return table_witness({{lo, 2}, {hi, 1}, {N, 1}}, 2);

  // remaining: (1,5) and (5,5)
  if (p == 5 || q == 5) {
    EtaQuotient f2(N, {{1, -1}, {5, 5}});
    return {true, R::constructive, detail::checked_witness(f2.pow(k / 2), k)};
  }
  // p, q != 5, k = 2 mod 4, k >= 6
  EtaQuotient f4 = balanced_construction({p, q}, 4);
  EtaQuotient f6 = (rlo == 1) ? EtaQuotient(N, {{1, 3}, {N, 9}})
                              : EtaQuotient(N, {{hi, 3}, {N, 9}});
  EtaQuotient w = f4.pow((k - 6) / 4) * f6;
  return {true, R::constructive, detail::checked_witness(w, k)};
}

}  // namespace etaq

#endif
