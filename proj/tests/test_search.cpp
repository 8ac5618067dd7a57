#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "etaq/search.hpp"

using namespace etaq;

namespace {

EtaQuotient quot(const char* s) { return EtaQuotient::parse(s); }

// Brute-force search over all exponent vectors with sum |r| below the
// Rouse-Webb bound; independent of the vanishing-tuple route.
std::vector<EtaQuotient> brute_force_space(int64_t N, int64_t k, SpaceKind kind) {
  auto divs = divisors_ascending(N);
  Rat bound = rouse_webb_bound(N, Rat((long)k));
  int64_t B = rat_floor(bound).get_si();
  std::vector<EtaQuotient> out;
  std::vector<int64_t> r(divs.size());
  auto rec = [&](auto&& self, size_t i, int64_t budget) -> void {
    if (i == divs.size()) {
      int64_t sum = 0;
      for (int64_t x : r) sum += x;
      if (sum != 2 * k) return;
      EtaQuotient::ExpMap e;
      for (size_t j = 0; j < divs.size(); ++j) e[divs[j]] = r[j];
      EtaQuotient f(N, e);
      if (!f.is_modular() || !f.nebentypus().is_trivial()) return;
      ModularityClass cls = f.classify();
      if (kind == SpaceKind::cusp ? cls == ModularityClass::cusp_form
                                  : (cls == ModularityClass::cusp_form ||
                                     cls == ModularityClass::holomorphic))
        out.push_back(f);
      return;
    }
    for (int64_t v = -budget; v <= budget; ++v) {
      r[i] = v;
      self(self, i + 1, budget - std::abs(v));
    }
  };
  rec(rec, 0, B);
  return out;
}

}  // namespace

TEST_CASE("vanishing tuple enumeration") {
  // compositions of 8 into 4 parts, each >= 1: C(7,3) = 35
  auto cusp35 = enumerate_vanishing_tuples(35, 2, SpaceKind::cusp);
  CHECK(cusp35.size() == 35);
  for (auto& t : cusp35) {
    int64_t sum = 0;
    for (int64_t v : t.orders) {
      CHECK(v >= 1);
      sum += v;
    }
    CHECK(sum == 8);
  }
  // lexicographic and duplicate-free
  CHECK(std::is_sorted(cusp35.begin(), cusp35.end(),
                       [](auto& a, auto& b) { return a.orders < b.orders; }));
  CHECK(std::adjacent_find(cusp35.begin(), cusp35.end()) == cusp35.end());

  // lower bound 0 for the holomorphic space: C(11,3) = 165
  CHECK(enumerate_vanishing_tuples(35, 2, SpaceKind::holomorphic).size() == 165);

  CHECK_THROWS_AS(enumerate_vanishing_tuples(35, 2, SpaceKind::cusp, 10), TupleCapExceeded);
  CHECK_THROWS_AS(enumerate_vanishing_tuples(36, 2, SpaceKind::cusp), std::domain_error);
}

TEST_CASE("order system matrix") {
  for (int64_t N : {35, 55, 77, 85, 91, 159, 1001}) {
    RatMat M = order_system_matrix(N);
    // every row sums to sigma_1(N)
    for (auto& row : M) {
      Rat s(0);
      for (auto& x : row) s += x;
      CHECK(s == sigma1(N));
    }
    CHECK(rank(M) == M.size());
  }
}

TEST_CASE("solve_exponents inverts the cusp-order map") {
  // forward map of eta^2 eta_35^2 is (3,1,1,3); solving recovers (2,0,0,2)
  auto r = solve_exponents({35, {3, 1, 1, 3}});
  CHECK(r == RatVec{Rat(2), Rat(0), Rat(0), Rat(2)});
  // the balanced quotient has all orders 2
  auto r2 = solve_exponents({35, {2, 2, 2, 2}});
  CHECK(r2 == RatVec{Rat(1), Rat(1), Rat(1), Rat(1)});
  // homogeneous system
  auto r0 = solve_exponents({35, {0, 0, 0, 0}});
  CHECK(r0 == RatVec(4, Rat(0)));
}

TEST_CASE("round-trip: exponents -> orders -> exponents") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int64_t> re(-6, 6), shift(-2, 2);
  for (int64_t N : {35, 55, 77, 85}) {
    auto divs = divisors_ascending(N);
    for (int rep = 0; rep < 40; ++rep) {
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
      // orders can be negative for these random quotients; the linear
      // system does not care
      std::vector<int64_t> orders;
      bool integral_orders = true;
      for (int64_t d : divs) {
        Rat v = f.cusp_order(d);
        if (!is_integral(v)) {
          integral_orders = false;
          break;
        }
        orders.push_back(v.get_num().get_si());
      }
      REQUIRE(integral_orders);
      RatVec back = solve_exponents({N, orders});
      for (size_t i = 0; i < divs.size(); ++i) CHECK(back[i] == f.exponent_at(divs[i]));
    }
  }
}

TEST_CASE("enumeration at (35, 2, cusp) finds exactly the three quotients") {
  SearchReport rep = enumerate_eta_quotients(35, 2, SpaceKind::cusp);
  REQUIRE(rep.found.size() == 3);
  CHECK(rep.found[0] == quot("35; 5:2, 7:2"));            // orders (1,2,2,3)? lexicographic
  CHECK(rep.found[1] == quot("35; 1:1, 5:1, 7:1, 35:1"));
  CHECK(rep.found[2] == quot("35; 1:2, 35:2"));
  CHECK(rep.independent_count == 3);
  CHECK(rep.space_dim == 3);
  CHECK(rep.spans);
  // re-running classify on everything found confirms the space
  for (auto& f : rep.found) CHECK(f.classify() == ModularityClass::cusp_form);
}

TEST_CASE("enumeration at (55, 2, cusp): three quotients, dimension five") {
  SearchReport rep = enumerate_eta_quotients(55, 2, SpaceKind::cusp);
  REQUIRE(rep.found.size() == 3);
  CHECK(rep.independent_count == 3);
  CHECK(rep.space_dim == 5);
  CHECK_FALSE(rep.spans);
  std::vector<EtaQuotient> want = {quot("55; 5:2, 55:2"), quot("55; 1:1, 5:1, 11:1, 55:1"),
                                   quot("55; 1:2, 11:2")};
  for (auto& w : want) CHECK(std::count(rep.found.begin(), rep.found.end(), w) == 1);
}

TEST_CASE("weight not a multiple of h: the order sum is not an integer") {
  // N = 91 = 7*13 has h = 3, so k = 2 leaves k sigma_1/12 non-integral
  CHECK(h_invariant({7, 13}) == 3);
  CHECK_THROWS_AS(enumerate_vanishing_tuples(91, 2, SpaceKind::cusp), std::domain_error);
  CHECK_THROWS_AS(enumerate_eta_quotients(91, 2, SpaceKind::cusp), std::domain_error);
}

TEST_CASE("brute-force completeness at squarefree weight-2 levels") {
  for (int64_t N : {35, 55, 77, 85}) {
    for (SpaceKind kind : {SpaceKind::cusp, SpaceKind::holomorphic}) {
      SearchReport rep = enumerate_eta_quotients(N, 2, kind);
      std::vector<EtaQuotient> brute = brute_force_space(N, 2, kind);
      CHECK(rep.found.size() == brute.size());
      for (auto& f : brute) CHECK(std::count(rep.found.begin(), rep.found.end(), f) == 1);
    }
  }
}

TEST_CASE("extract_basis keeps a stable independent subset") {
  EtaQuotient g1 = quot("35; 1:1, 5:1, 7:1, 35:1");
  EtaQuotient g2 = quot("35; 1:2, 35:2");
  EtaQuotient g3 = quot("35; 5:2, 7:2");
  auto [basis, rows] = extract_basis({g1, g2, g3}, 35, 2);
  REQUIRE(basis.size() == 3);  // distinct leading powers 2, 3, 1
  CHECK(basis[0] == g1);
  CHECK(basis[1] == g2);
  CHECK(basis[2] == g3);
  CHECK(rows.size() == 3);

  // duplicate elimination keeps the first copy only
  auto [basis2, rows2] = extract_basis({g2, g2}, 35, 2);
  REQUIRE(basis2.size() == 1);
  CHECK(basis2[0] == g2);
}

TEST_CASE("deterministic results under parallelism") {
  SearchOptions serial, parallel;
  parallel.jobs = 4;
  SearchReport a = enumerate_eta_quotients(55, 4, SpaceKind::cusp, serial);
  SearchReport b = enumerate_eta_quotients(55, 4, SpaceKind::cusp, parallel);
  CHECK(a.found == b.found);
  CHECK(a.basis_indices == b.basis_indices);
  CHECK(a.independent_count == b.independent_count);
}
