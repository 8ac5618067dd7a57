#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "etaq/spaces.hpp"

using namespace etaq;

TEST_CASE("cusp representatives") {
  auto c35 = cusp_reps(35);
  REQUIRE(c35.size() == 4);
  for (size_t i = 0; i < 4; ++i) CHECK(c35[i].num == 1);
  CHECK(c35[0].den == 1);
  CHECK(c35[1].den == 5);
  CHECK(c35[2].den == 7);
  CHECK(c35[3].den == 35);

  auto c1 = cusp_reps(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0] == Cusp{1, 1});

  // N = 4: classes collapse at c = 2 since gcd(2, 2) = 2
  CHECK(cusp_reps(4).size() == 3);
  // N = 12: eps_inf should be sum of phi(gcd(c, N/c)) = 1+1+2+1+1+1... = 6? no:
  // divisors 1,2,3,4,6,12: gcds 1,2,3,2,2,1 -> phi: 1,1,2,1,1,1 = 7? phi(3)=2
  int64_t count = 0;
  for (int64_t c : divisors_ascending(12)) count += euler_phi(gcd_ll(c, 12 / c));
  CHECK((int64_t)cusp_reps(12).size() == count);
}

TEST_CASE("index of Gamma_0(N)") {
  CHECK(index_gamma0(1) == 1);
  CHECK(index_gamma0(35) == 48);
  CHECK(index_gamma0(55) == 72);
  CHECK(index_gamma0(4) == 6);
  // oracle: mu = #P^1(Z/N) counted directly for small N
  for (int64_t N = 1; N <= 20; ++N) {
    int64_t count = 0;
    for (int64_t c = 0; c < N; ++c)
      for (int64_t d = 0; d < N; ++d) {
        if (std::gcd(std::gcd(c, d), N) != 1) continue;
        // count (c:d) up to units: count all coprime pairs, divide by phi(N)
        ++count;
      }
    CHECK(index_gamma0(N) == count / euler_phi(N));
  }
}

TEST_CASE("level profile invariants") {
  LevelProfile lp = LevelProfile::compute(35);
  CHECK(lp.index_mu == 48);
  CHECK(lp.eps2 == 0);
  CHECK(lp.eps3 == 0);
  CHECK(lp.eps_inf == 4);
  CHECK(lp.genus == 3);

  LevelProfile lp55 = LevelProfile::compute(55);
  CHECK(lp55.genus == 5);
  CHECK(lp55.eps2 == 0);

  // classical values
  CHECK(LevelProfile::compute(1).genus == 0);
  CHECK(LevelProfile::compute(11).genus == 1);
  CHECK(LevelProfile::compute(2).eps2 == 1);
  CHECK(LevelProfile::compute(3).eps3 == 1);
  CHECK(LevelProfile::compute(5).eps2 == 2);

  for (int64_t N : {6, 10, 14, 15, 21, 49, 100}) {
    LevelProfile p = LevelProfile::compute(N);
    CHECK(p.index_mu == index_gamma0(N));
    CHECK(p.eps_inf == (int64_t)p.cusp_reps.size());
  }
}

TEST_CASE("sturm bounds") {
  CHECK(sturm_bound(35, 2) == 8);
  CHECK(sturm_bound(55, 2) == 12);
  CHECK(sturm_bound(55, 8) == 48);
  CHECK(sturm_bound(1, 12) == 1);
  CHECK_THROWS_AS(sturm_bound(35, 0), std::domain_error);
}

TEST_CASE("cusp form dimensions") {
  CHECK(dim_cusp_forms(35, 2) == 3);
  CHECK(dim_cusp_forms(55, 2) == 5);
  CHECK(dim_cusp_forms(55, 8) == 40);
  // classical: dim S_12(SL2(Z)) = 1 (the discriminant), dim S_2(Gamma_0(11)) = 1
  CHECK(dim_cusp_forms(1, 12) == 1);
  CHECK(dim_cusp_forms(11, 2) == 1);
  CHECK(dim_cusp_forms(1, 2) == 0);
  CHECK_THROWS_AS(dim_cusp_forms(35, 3), std::domain_error);
  CHECK_THROWS_AS(dim_cusp_forms(35, 0), std::domain_error);

  CHECK(dim_modular_forms(1, 4) == 1);   // Eisenstein E4
  CHECK(dim_modular_forms(35, 2) == 3 + 4 - 1);
}

TEST_CASE("h invariant") {
  CHECK(h_invariant({13, 37}) == 6);  // both 13 mod 24
  CHECK(h_invariant({5, 13}) == 2);
  CHECK(h_invariant({29}) == 2);
  CHECK(h_invariant({5}) == 2);
  CHECK(h_invariant({73}) == 12);  // 73 = 1 mod 24
  CHECK_THROWS_AS(h_invariant({5, 5}), std::domain_error);
  CHECK_THROWS_AS(h_invariant({3, 7}), std::domain_error);
  CHECK_THROWS_AS(h_invariant({}), std::domain_error);
}

TEST_CASE("vanishing sum") {
  CHECK(vanishing_sum_expected(35, 2) == 8);
  CHECK(vanishing_sum_expected(35, 0) == 0);
  CHECK(vanishing_sum_expected(55, 8) == 48);
  CHECK_THROWS_AS(vanishing_sum_expected(25, 2), std::domain_error);
}

TEST_CASE("inner sum identity: row sums equal sigma_1(N)") {
  for (int64_t N : {35, 55, 77, 85, 91, 5 * 7 * 11}) {
    auto divs = divisors_ascending(N);
    for (int64_t delta : divs) {
      Rat sum(0);
      for (int64_t d : divs)
        sum += make_rat(Int((long)N) * (long)(gcd_ll(d, delta) * gcd_ll(d, delta)),
                        Int((long)(d * delta)));
      CHECK(sum == sigma1(N));
    }
  }
}

TEST_CASE("vanishing sum identity on random modular quotients") {
  std::mt19937_64 rng(2027);
  std::uniform_int_distribution<int64_t> re(-6, 6), shift(-2, 2);
  for (int64_t N : {35, 55, 77, 85}) {
    auto divs = divisors_ascending(N);
    for (int rep = 0; rep < 100; ++rep) {
      EtaQuotient::ExpMap e;
      int64_t s = 0;
      for (size_t i = 1; i < divs.size(); ++i) {
        int64_t r = re(rng);
        e[divs[i]] = r;
        s += divs[i] * r;
      }
      e[1] = ((-s) % 24 + 24) % 24 + 24 * shift(rng);
      EtaQuotient f(N, e);
      REQUIRE(f.is_modular());
      Rat total(0);
      for (auto& [c, v] : f.cusp_orders_all().orders) total += v;
      CHECK(total == f.weight() * make_rat((long)sigma1(N), 12));
      // necessity of the h-divisibility (weight is an integer multiple of h)
      std::vector<int64_t> primes;
      for (auto& [p, ex] : factorize(N)) primes.push_back(p);
      Rat k = f.weight();
      REQUIRE(is_integral(k));
      CHECK(k.get_num() % h_invariant(primes) == 0);
    }
  }
}

TEST_CASE("parity lemma: k(p+1)/12 odd forces (p-1)/2h odd") {
  for (int64_t p = 5; p < 500; ++p) {
    if (!is_prime(p)) continue;
    int64_t h = h_invariant({p});
    for (int64_t k = 2; k <= 24; k += 2) {
      if (k % h != 0) continue;
      if ((k * (p + 1)) % 12 != 0) continue;  // always divisible here, keep safe
      int64_t v = k * (p + 1) / 12;
      if (v % 2 == 1) CHECK(((p - 1) / (2 * h)) % 2 == 1);
    }
  }
}

TEST_CASE("balanced construction") {
  // single prime: eta^k(tau) eta^k(p tau) when k(p+1)/12 is even
  EtaQuotient f = balanced_construction({5}, 4);
  CHECK(f == EtaQuotient(5, {{1, 4}, {5, 4}}));
  CHECK(f.classify() == ModularityClass::cusp_form);

  // semiprime, k = 4: every cusp order k sigma_1(N)/48
  for (auto [p, q] : std::vector<std::pair<int64_t, int64_t>>{{5, 7}, {5, 11}, {7, 11}}) {
    EtaQuotient g = balanced_construction({p, q}, 4);
    Rat want = make_rat(4 * (p + 1) * (q + 1), 48);
    for (auto& [c, v] : g.cusp_orders_all().orders) CHECK(v == want);
  }

  // hypotheses violated: t = 2, k = 2, sigma_1 an odd multiple of 12
  CHECK_THROWS_AS(balanced_construction({5, 17}, 2), std::domain_error);
}

TEST_CASE("existence at prime level") {
  ExistenceVerdict no29 = exists_prime_level(29, 2);
  CHECK_FALSE(no29.exists);
  CHECK(no29.reason == ExistenceVerdict::Reason::excluded_case_k2);

  ExistenceVerdict yes5 = exists_prime_level(5, 2);
  REQUIRE(yes5.exists);
  CHECK(*yes5.witness == EtaQuotient(5, {{1, -1}, {5, 5}}));

  ExistenceVerdict yes13 = exists_prime_level(13, 6);
  REQUIRE(yes13.exists);
  CHECK(*yes13.witness == EtaQuotient(13, {{1, 9}, {13, 3}}));

  // h = 6 does not divide 2
  ExistenceVerdict no13 = exists_prime_level(13, 2);
  CHECK_FALSE(no13.exists);
  CHECK(no13.reason == ExistenceVerdict::Reason::h_divides_fails);

  // k = 0 and k < 0 boundaries
  CHECK(exists_prime_level(7, 0).exists);
  CHECK(exists_prime_level(7, 0).witness == EtaQuotient::constant(7));
  CHECK_FALSE(exists_prime_level(7, -2).exists);
  CHECK(exists_prime_level(7, -2).reason == ExistenceVerdict::Reason::negative_weight);

  CHECK_THROWS_AS(exists_prime_level(4, 2), std::domain_error);
  CHECK_THROWS_AS(exists_prime_level(7, 3), std::domain_error);
}

TEST_CASE("every prime-level witness is valid") {
  for (int64_t p = 5; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    for (int64_t k : {2, 4, 6, 8, 10, 12}) {
      ExistenceVerdict v = exists_prime_level(p, k);
      if (!v.exists) continue;
      REQUIRE(v.witness.has_value());
      CHECK(v.witness->weight() == k);
      CHECK(v.witness->is_modular());
      auto cls = v.witness->classify();
      CHECK((cls == ModularityClass::holomorphic || cls == ModularityClass::cusp_form));
    }
  }
}

TEST_CASE("existence at semiprime level") {
  // excluded residue classes at k = 2 (neither prime 5)
  // (1,5): 73 = 1, 29 = 5 mod 24
  CHECK_FALSE(exists_semiprime_level(73, 29, 2).exists);
  CHECK(exists_semiprime_level(73, 29, 2).reason == ExistenceVerdict::Reason::excluded_case_k2);
  // (5,5): 29, 53
  CHECK_FALSE(exists_semiprime_level(29, 53, 2).exists);
  // argument order does not matter
  CHECK_FALSE(exists_semiprime_level(29, 73, 2).exists);

  // (13,17) table witness: 13 and 17 themselves
  ExistenceVerdict v = exists_semiprime_level(13, 17, 2);
  REQUIRE(v.exists);
  CHECK(*v.witness == EtaQuotient(13 * 17, {{13, 2}, {17, 1}, {13 * 17, 1}}));

  // (5,5) at k = 6: eta^3(q tau) eta^9(N tau)
  ExistenceVerdict v55 = exists_semiprime_level(29, 53, 6);
  REQUIRE(v55.exists);
  CHECK(*v55.witness == EtaQuotient(29 * 53, {{53, 3}, {29 * 53, 9}}));

  // one of the primes is 5: k = 2 exists via eta_5^5/eta
  ExistenceVerdict v5 = exists_semiprime_level(5, 29, 2);
  REQUIRE(v5.exists);
  CHECK(*v5.witness == EtaQuotient(145, {{1, -1}, {5, 5}}));

  // plain balanced case
  ExistenceVerdict vb = exists_semiprime_level(5, 7, 2);
  REQUIRE(vb.exists);
  CHECK(*vb.witness == EtaQuotient(35, {{1, 1}, {5, 1}, {7, 1}, {35, 1}}));

  CHECK_THROWS_AS(exists_semiprime_level(5, 5, 2), std::domain_error);
  CHECK_THROWS_AS(exists_semiprime_level(5, 7, 3), std::domain_error);
}

TEST_CASE("every semiprime-level witness is valid") {
  const int64_t primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 61, 73, 97};
  for (size_t i = 0; i < std::size(primes); ++i)
    for (size_t j = i + 1; j < std::size(primes); ++j)
      for (int64_t k : {2, 4, 6, 12}) {
        ExistenceVerdict v = exists_semiprime_level(primes[i], primes[j], k);
        int64_t h = h_invariant({primes[i], primes[j]});
        if (k % h != 0) {
          CHECK_FALSE(v.exists);
          continue;
        }
        if (!v.exists) {
          CHECK(v.reason == ExistenceVerdict::Reason::excluded_case_k2);
          continue;
        }
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->weight() == k);
        auto cls = v.witness->classify();
        CHECK((cls == ModularityClass::holomorphic || cls == ModularityClass::cusp_form));
      }
}
