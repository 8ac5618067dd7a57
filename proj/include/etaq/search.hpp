#ifndef ETAQ_SEARCH_HPP
#define ETAQ_SEARCH_HPP

#include <atomic>
#include <thread>
#include <vector>

#include "etaq/linalg.hpp"
#include "etaq/spaces.hpp"

namespace etaq {

enum class SpaceKind { cusp, holomorphic };

inline std::string to_string(SpaceKind k) {
  return k == SpaceKind::cusp ? "cusp" : "holo";
}

class TupleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Candidate cusp-order vector (v_{1/d})_{d|N}, ascending divisors; entries
// sum to k sigma_1(N)/12.
struct VanishingTuple {
  int64_t level;
  std::vector<int64_t> orders;

  bool operator==(const VanishingTuple&) const = default;
};

struct SearchOptions {
  int64_t max_tuples = 5'000'000;
  int jobs = 1;
};

namespace detail {

inline void require_enumerable(int64_t N, int64_t k) {
  if (!is_squarefree(N)) throw std::domain_error("enumeration: level must be squarefree");
  for (auto& [p, e] : factorize(N))
    if (p < 5) throw std::domain_error("enumeration: prime factors must be >= 5");
  if (k % 2 != 0 || k < 2) throw std::domain_error("enumeration: weight must be even and >= 2");
}

}  // namespace detail

// All integer compositions of k sigma_1(N)/12 into 2^t parts with the
// per-entry lower bound (1 for cusp forms, 0 for holomorphic forms), in
// lexicographic order.
inline std::vector<VanishingTuple> enumerate_vanishing_tuples(int64_t N, int64_t k,
                                                              SpaceKind kind,
                                                              int64_t max_tuples = 5'000'000) {
  detail::require_enumerable(N, k);
  Rat total_r = vanishing_sum_expected(N, k);
  if (!is_integral(total_r))
    throw std::domain_error("enumerate_vanishing_tuples: k sigma_1(N)/12 is not an integer");
  const int64_t total = total_r.get_num().get_si();
  const size_t parts = divisors_ascending(N).size();
  const int64_t lower = kind == SpaceKind::cusp ? 1 : 0;

  std::vector<VanishingTuple> out;
  std::vector<int64_t> cur(parts);
  // iterative lexicographic composition walk
  auto rec = [&](auto&& self, size_t i, int64_t left) -> void {
    if (i + 1 == parts) {
      if (left < lower) return;
      cur[i] = left;
      if ((int64_t)out.size() >= max_tuples)
        throw TupleCapExceeded("enumeration exceeds the tuple cap of " +
                               std::to_string(max_tuples));
      out.push_back({N, cur});
      return;
    }
    for (int64_t v = lower; v <= left - lower * (int64_t)(parts - 1 - i); ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (total >= lower * (int64_t)parts) rec(rec, 0, total);
  return out;
}

// The linear system tying cusp orders to exponents at squarefree level:
// 24 v_{1/d} = sum_delta M[d][delta] r_delta with
// M[d][delta] = N gcd(d,delta)^2 / (d delta). Every row sums to sigma_1(N)
// and M is invertible, so each tuple determines a unique rational
// exponent vector.
inline RatMat order_system_matrix(int64_t N) {
  std::vector<int64_t> divs = divisors_ascending(N);
  RatMat M(divs.size(), RatVec(divs.size()));
  for (size_t i = 0; i < divs.size(); ++i)
    for (size_t j = 0; j < divs.size(); ++j) {
      int64_t g = gcd_ll(divs[i], divs[j]);
      M[i][j] = make_rat(Int((long)N) * (long)(g * g), Int((long)(divs[i] * divs[j])));
    }
  return M;
}

inline RatVec solve_exponents(const VanishingTuple& t) {
  if (!is_squarefree(t.level)) throw std::domain_error("solve_exponents: level must be squarefree");
  RatMat M = order_system_matrix(t.level);
  if (M.size() != t.orders.size()) throw std::domain_error("solve_exponents: tuple length mismatch");
  RatVec rhs;
  rhs.reserve(t.orders.size());
  for (int64_t v : t.orders) rhs.push_back(Rat(24) * Rat((long)v));
  auto x = solve(M, rhs);
  if (!x) throw std::logic_error("solve_exponents: order system is singular");
  return *x;
}

struct SearchReport {
  int64_t level;
  int64_t weight;
  SpaceKind space_kind;
  std::vector<EtaQuotient> found;         // deterministic tuple order
  std::vector<size_t> basis_indices;      // greedy independent subset of `found`
  int64_t independent_count;
  int64_t space_dim;
  bool spans;

  std::vector<EtaQuotient> basis() const {
    std::vector<EtaQuotient> out;
    out.reserve(basis_indices.size());
    for (size_t i : basis_indices) out.push_back(found[i]);
    return out;
  }
};

// Coefficient rows a_0 .. a_{sturm+1} of the q-expansions; enough, by the
// Sturm bound, for rank decisions to be decisions about the forms.
inline RatMat expansion_rows(const std::vector<EtaQuotient>& forms, int64_t N, int64_t k) {
  const int64_t cols = sturm_bound(N, k) + 2;  // a_0 .. a_{B+1}
  RatMat rows;
  rows.reserve(forms.size());
  for (const EtaQuotient& f : forms) {
    FracSeries s = f.expansion_lattice(FracSeries::kLattice * cols);
    RatVec row(cols);
    for (int64_t n = 0; n < cols; ++n) row[n] = s.q_coeff(n);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Greedy left-to-right maximal independent subset (stable) plus the
// coefficient rows used for the rank decision.
inline std::pair<std::vector<EtaQuotient>, RatMat> extract_basis(
    const std::vector<EtaQuotient>& forms, int64_t N, int64_t k) {
  RatMat rows = expansion_rows(forms, N, k);
  std::vector<size_t> keep = independent_rows(rows);
  std::vector<EtaQuotient> basis;
  RatMat kept_rows;
  for (size_t i : keep) {
    basis.push_back(forms[i]);
    kept_rows.push_back(rows[i]);
  }
  return {basis, kept_rows};
}

// Steps 3-5 of the search: enumerate vanishing tuples, invert the order
// system, keep integral exponent vectors that satisfy the level-N
// congruences and land in the requested space of Gamma_0(N) (trivial
// nebentypus; quotients whose character is a nontrivial twist belong to
// S_k(Gamma_0(N), chi) and are excluded), then attach the independence
// analysis.
inline SearchReport enumerate_eta_quotients(int64_t N, int64_t k, SpaceKind kind,
                                            const SearchOptions& opt = {}) {
  std::vector<VanishingTuple> tuples = enumerate_vanishing_tuples(N, k, kind, opt.max_tuples);
  std::vector<int64_t> divs = divisors_ascending(N);
  const RatMat M = order_system_matrix(N);

  auto process = [&](const VanishingTuple& t) -> std::optional<EtaQuotient> {
    RatVec rhs;
    rhs.reserve(t.orders.size());
    for (int64_t v : t.orders) rhs.push_back(Rat(24) * Rat((long)v));
    auto x = solve(M, rhs);
    if (!x) return std::nullopt;
    EtaQuotient::ExpMap e;
    for (size_t i = 0; i < divs.size(); ++i) {
      if (!is_integral((*x)[i])) return std::nullopt;
      e[divs[i]] = (*x)[i].get_num().get_si();
    }
    EtaQuotient f(N, std::move(e));
    if (!f.is_modular()) return std::nullopt;
    if (!f.nebentypus().is_trivial()) return std::nullopt;
    ModularityClass cls = f.classify();
    if (kind == SpaceKind::cusp && cls != ModularityClass::cusp_form) return std::nullopt;
    if (kind == SpaceKind::holomorphic && cls != ModularityClass::cusp_form &&
        cls != ModularityClass::holomorphic)
      return std::nullopt;
    return f;
  };

  std::vector<std::optional<EtaQuotient>> results(tuples.size());
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1 || tuples.size() < 64) {
    for (size_t i = 0; i < tuples.size(); ++i) results[i] = process(tuples[i]);
  } else {
    // chunked workers; aggregation by index keeps the order deterministic
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const size_t chunk = 128;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&] {
        for (;;) {
          size_t start = next.fetch_add(chunk);
          if (start >= tuples.size()) return;
          size_t end = std::min(start + chunk, tuples.size());
          for (size_t i = start; i < end; ++i) results[i] = process(tuples[i]);
        }
      });
    for (auto& th : pool) th.join();
  }

  SearchReport rep{N, k, kind, {}, {}, 0, 0, false};
  for (auto& r : results)
    if (r) rep.found.push_back(std::move(*r));
  rep.basis_indices = independent_rows(expansion_rows(rep.found, N, k));
  rep.independent_count = (int64_t)rep.basis_indices.size();
  rep.space_dim =
      kind == SpaceKind::cusp ? dim_cusp_forms(N, k) : dim_modular_forms(N, k);
  rep.spans = rep.independent_count == rep.space_dim;
  return rep;
}

}  // namespace etaq

#endif
