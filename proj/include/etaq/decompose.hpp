#ifndef ETAQ_DECOMPOSE_HPP
#define ETAQ_DECOMPOSE_HPP

#include <fstream>
#include <sstream>

#include "etaq/search.hpp"

namespace etaq {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A weight-k level-N form given through its integral Fourier coefficients
// a(1..n_max).
struct TargetForm {
  enum class Source { file, curve };
  int64_t level;
  int64_t weight;
  std::vector<Int> coeffs;  // coeffs[n-1] = a(n)
  Source source;

  int64_t n_max() const { return (int64_t)coeffs.size(); }

  const Int& a(int64_t n) const {
    if (n < 1 || n > n_max()) throw PrecisionError("target: coefficient a(" + std::to_string(n) +
                                                   ") not available");
    return coeffs[n - 1];
  }

  // Known through q^{n_max}: series with trunc 24 n_max + 1.
  FracSeries series() const {
    FracSeries out(FracSeries::kLattice * n_max() + 1);
    FracSeries acc = out;
    for (int64_t n = 1; n <= n_max(); ++n)
      acc = acc + FracSeries::monomial(FracSeries::kLattice * n, Rat(coeffs[n - 1]), out.trunc());
    return acc;
  }
};

// Target file format: lines `n a_n`, n ascending from 1, `#` comments.
inline TargetForm load_target(const std::string& path, int64_t level, int64_t weight = 2) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open target file: " + path);
  std::vector<Int> coeffs;
  std::string line;
  int64_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::string ns, as;
    if (!(is >> ns)) continue;  // blank
    if (!(is >> as)) fail("expected `n a_n`");
    std::string extra;
    if (is >> extra) fail("trailing token '" + extra + "'");
    int64_t n;
    try {
      n = std::stoll(ns);
    } catch (...) {
      fail("bad index '" + ns + "'");
      return {};  // unreachable
    }
    if (n != (int64_t)coeffs.size() + 1)
      fail("index " + std::to_string(n) + " out of order (expected " +
           std::to_string(coeffs.size() + 1) + ")");
    try {
      coeffs.push_back(parse_int(as));
    } catch (...) {
      fail("bad coefficient '" + as + "'");
    }
  }
  if (coeffs.empty()) throw std::invalid_argument(path + ": no coefficients");
  return {level, weight, std::move(coeffs), TargetForm::Source::file};
}

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q with a declared
// squarefree-compatible conductor. The conductor is taken as given; only
// the reduction types at its prime divisors are validated.
struct WeierstrassCurve {
  Int a1, a2, a3, a4, a6;
  int64_t conductor;

  Int discriminant() const {
    Int b2 = a1 * a1 + 4 * a2;
    Int b4 = 2 * a4 + a1 * a3;
    Int b6 = a3 * a3 + 4 * a6;
    Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }
};

namespace detail {

inline int64_t mod_ll(const Int& a, int64_t p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r.get_si();
}

// a_p = p + 1 - #E(F_p) by quadratic-character counting (p odd) or direct
// enumeration (p = 2).
inline int64_t trace_good(const WeierstrassCurve& E, int64_t p) {
  int64_t a1 = mod_ll(E.a1, p), a2 = mod_ll(E.a2, p), a3 = mod_ll(E.a3, p),
          a4 = mod_ll(E.a4, p), a6 = mod_ll(E.a6, p);
  if (p == 2) {
    int64_t count = 1;
    for (int64_t x = 0; x < 2; ++x)
      for (int64_t y = 0; y < 2; ++y) {
        int64_t F = y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6);
        if (((F % 2) + 2) % 2 == 0) ++count;
      }
    return 2 + 1 - count;
  }
  std::vector<char> qr(p, 0);
  for (int64_t t = 0; t <= p / 2; ++t) qr[(t * t) % p] = 1;
  int64_t count = 1;  // point at infinity
  for (int64_t x = 0; x < p; ++x) {
    // complete the square in y: (2y + a1 x + a3)^2 = 4 f(x) + (a1 x + a3)^2
    int64_t fx = ((x * x % p) * x % p + (a2 * x % p) * x % p + a4 * x % p + a6) % p;
    int64_t lin = (a1 * x + a3) % p;
    int64_t D = ((4 * fx % p + lin * lin % p) % p + p) % p;
    if (D == 0)
      count += 1;
    else if (qr[D])
      count += 2;
  }
  return p + 1 - count;
}

enum class Reduction { good, split, nonsplit, additive };

inline Reduction reduction_type(const WeierstrassCurve& E, int64_t p) {
  if (p == 2 || p == 3)
    throw std::domain_error("curve: primes 2 and 3 dividing the conductor are unsupported");
  int64_t a1 = mod_ll(E.a1, p), a2 = mod_ll(E.a2, p), a3 = mod_ll(E.a3, p),
          a4 = mod_ll(E.a4, p), a6 = mod_ll(E.a6, p);
  // singular point of the reduced curve, if any
  for (int64_t x = 0; x < p; ++x)
    for (int64_t y = 0; y < p; ++y) {
      int64_t F = ((y * y + a1 * x * y + a3 * y - (x * x * x % p + a2 * x * x + a4 * x + a6)) % p + p) % p;
      if (F) continue;
      int64_t Fx = ((a1 * y - 3 * x * x - 2 * a2 * x - a4) % p + p) % p;
      int64_t Fy = ((2 * y + a1 * x + a3) % p + p) % p;
      if (Fx || Fy) continue;
      // tangent cone at (x, y): Y^2 + a1 XY - (3x + a2) X^2; split node
      // iff the discriminant a1^2 + 4(3x + a2) is a nonzero square mod p
      int64_t D = ((a1 * a1 + 12 * x + 4 * a2) % p + p) % p;
      if (D == 0) return Reduction::additive;
      for (int64_t t = 0; t <= p / 2; ++t)
        if ((t * t) % p == D) return Reduction::split;
      return Reduction::nonsplit;
    }
  return Reduction::good;
}

}  // namespace detail

// a(1..n_max) of the level-N weight-2 form attached to E: point counts at
// good primes, the split/nonsplit sign at multiplicative primes, Hecke
// recursions at prime powers, multiplicativity elsewhere.
inline TargetForm curve_coefficients(const WeierstrassCurve& E, int64_t n_max) {
  const int64_t N = E.conductor;
  if (N < 1) throw std::domain_error("curve: conductor must be positive");
  if (N % 2 == 0 || N % 3 == 0)
    throw std::domain_error("curve: conductors divisible by 2 or 3 are unsupported");
  if (E.discriminant() == 0) throw std::domain_error("curve: discriminant is zero");
  if (n_max < 1) throw std::domain_error("curve: n_max must be >= 1");

  std::vector<Int> a(n_max + 1, Int(0));
  a[1] = 1;
  for (int64_t p = 2; p <= n_max; ++p) {
    if (!is_prime(p)) continue;
    Int ap;
    if (N % p == 0) {
      switch (detail::reduction_type(E, p)) {
        case detail::Reduction::split: ap = 1; break;
        case detail::Reduction::nonsplit: ap = -1; break;
        case detail::Reduction::additive:
          throw std::domain_error("curve: additive reduction at p = " + std::to_string(p) +
                                  " is unsupported (conductor would not be squarefree)");
        case detail::Reduction::good:
          throw std::domain_error("curve: good reduction at declared conductor prime p = " +
                                  std::to_string(p));
      }
    } else {
      ap = detail::trace_good(E, p);
      if (ap * ap > 4 * p)
        throw std::logic_error("curve: Hasse bound violated at p = " + std::to_string(p));
    }
    // prime powers
    a[p] = ap;
    Int prev2 = 1, prev1 = ap;  // a_{p^0}, a_{p^1}
    for (int64_t pe = p * p; pe <= n_max; pe *= p) {
      Int cur = (N % p == 0) ? Int(prev1 * ap) : Int(ap * prev1 - p * prev2);
      a[pe] = cur;
      prev2 = prev1;
      prev1 = cur;
    }
  }
  // multiplicativity
  for (int64_t n = 2; n <= n_max; ++n) {
    auto fac = factorize(n);
    if (fac.size() < 2) continue;
    Int v = 1;
    for (auto& [p, e] : fac) {
      int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe *= p;
      v *= a[pe];
    }
    a[n] = v;
  }
  std::vector<Int> coeffs(a.begin() + 1, a.end());
  return {N, 2, std::move(coeffs), TargetForm::Source::curve};
}

// Exact coefficients expressing the target in the given (independent)
// basis through the Sturm bound; nullopt when no combination matches.
// By the Sturm bound a match through q^{bound+1} certifies equality.
inline std::optional<RatVec> express_in_basis(const TargetForm& target,
                                              const std::vector<EtaQuotient>& basis, int64_t N,
                                              int64_t k,
                                              PivotRule pivot = PivotRule::min_complexity) {
  const int64_t rows = sturm_bound(N, k) + 2;  // a_0 .. a_{B+1}
  if (target.n_max() < rows - 1)
    throw PrecisionError("express_in_basis: target needs coefficients through n = " +
                         std::to_string(rows - 1) + " but has " + std::to_string(target.n_max()));
  RatMat A(rows, RatVec(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    FracSeries s = basis[j].expansion_lattice(FracSeries::kLattice * rows);
    for (int64_t n = 0; n < rows; ++n) A[n][j] = s.q_coeff(n);
  }
  RatVec b(rows);
  b[0] = 0;
  for (int64_t n = 1; n < rows; ++n) b[n] = Rat(target.a(n));
  return solve(A, b, pivot);
}

struct DecompositionResult {
  TargetForm target;
  int64_t stage_weight;
  std::optional<EtaQuotient> multiplier;  // a(tau), absent at stage 2
  std::vector<EtaQuotient> basis;
  RatVec coefficients;

  // g_i / a by exponent subtraction (the reported weakly holomorphic
  // quotients); the basis itself when there is no multiplier.
  std::vector<EtaQuotient> reduced_quotients() const {
    if (!multiplier) return basis;
    std::vector<EtaQuotient> out;
    out.reserve(basis.size());
    for (const EtaQuotient& g : basis) out.push_back(g.div(*multiplier));
    return out;
  }
};

struct DecomposeOptions {
  int64_t max_weight = 16;  // even-weight escalation cap
  std::optional<EtaQuotient> multiplier_override;
  std::optional<std::vector<EtaQuotient>> basis_override;
  SearchOptions search;
};

namespace detail {

inline std::vector<EtaQuotient> validated_basis_override(const std::vector<EtaQuotient>& forms,
                                                         int64_t N, int64_t k) {
  for (const EtaQuotient& f : forms) {
    if (f.level() != N) throw DecompositionError("basis override: level mismatch for " + f.to_string());
    if (f.weight() != k)
      throw DecompositionError("basis override: " + f.to_string() + " does not have weight " +
                               std::to_string(k));
    if (f.classify() != ModularityClass::cusp_form)
      throw DecompositionError("basis override: " + f.to_string() + " is not a cusp form");
    if (!f.nebentypus().is_trivial())
      throw DecompositionError("basis override: " + f.to_string() + " has nontrivial character");
  }
  size_t rank_found = independent_rows(expansion_rows(forms, N, k)).size();
  if (rank_found != forms.size())
    throw DecompositionError("basis override: the " + std::to_string(forms.size()) +
                             " quotients are linearly dependent (rank " +
                             std::to_string(rank_found) + ")");
  int64_t dim = dim_cusp_forms(N, k);
  if ((int64_t)forms.size() != dim)
    throw DecompositionError("basis override: " + std::to_string(forms.size()) +
                             " quotients cannot span a space of dimension " + std::to_string(dim));
  return forms;
}

}  // namespace detail

// The weight-escalation pipeline (Steps 7-8): try the weight-2 basis,
// then even weights k' = 4, 6, ... until S_{k'} is spanned by
// eta-quotients and S_{k'-2} contains a multiplier; express target * a in
// the k' basis.
inline DecompositionResult escalate_and_decompose(const TargetForm& target,
                                                  const DecomposeOptions& opt = {}) {
  const int64_t N = target.level;
  if (target.weight != 2) throw std::domain_error("decompose: only weight-2 targets supported");
  if (!is_squarefree(N)) throw std::domain_error("decompose: level must be squarefree");

  // A pinned multiplier or basis fixes the escalation stage.
  std::optional<int64_t> pinned_stage;
  if (opt.multiplier_override) {
    Rat w = opt.multiplier_override->weight();
    if (!is_integral(w)) throw DecompositionError("multiplier override: non-integral weight");
    pinned_stage = w.get_num().get_si() + 2;
  }
  if (opt.basis_override) {
    if (opt.basis_override->empty()) throw DecompositionError("basis override: empty list");
    Rat w = opt.basis_override->front().weight();
    if (!is_integral(w)) throw DecompositionError("basis override: non-integral weight");
    int64_t bw = w.get_num().get_si();
    if (pinned_stage && *pinned_stage != bw)
      throw DecompositionError("basis override weight " + std::to_string(bw) +
                               " conflicts with the multiplier override stage " +
                               std::to_string(*pinned_stage));
    pinned_stage = bw;
  }

  // Stage 2: direct expression in whatever independent set exists.
  if (!opt.multiplier_override && (!pinned_stage || *pinned_stage == 2)) {
    SearchReport r2 = enumerate_eta_quotients(N, 2, SpaceKind::cusp, opt.search);
    std::vector<EtaQuotient> basis2 =
        opt.basis_override ? detail::validated_basis_override(*opt.basis_override, N, 2)
                           : r2.basis();
    if (!basis2.empty()) {
      if (auto c = express_in_basis(target, basis2, N, 2))
        return {target, 2, std::nullopt, std::move(basis2), std::move(*c)};
    }
  }

  for (int64_t kp = 4; kp <= opt.max_weight; kp += 2) {
    if (pinned_stage && kp != *pinned_stage) continue;
    SearchReport rk = enumerate_eta_quotients(N, kp, SpaceKind::cusp, opt.search);
    if (!rk.spans) {
      if (pinned_stage)
        throw DecompositionError("pinned stage " + std::to_string(kp) +
                                 ": eta-quotients span only " +
                                 std::to_string(rk.independent_count) + " of " +
                                 std::to_string(rk.space_dim) + " dimensions");
      continue;
    }
    SearchReport rm = enumerate_eta_quotients(N, kp - 2, SpaceKind::cusp, opt.search);
    if (rm.found.empty()) {
      if (pinned_stage)
        throw DecompositionError("pinned stage " + std::to_string(kp) +
                                 ": no eta-quotient multiplier in weight " +
                                 std::to_string(kp - 2));
      continue;
    }

    EtaQuotient mult = rm.found.front();  // first in enumeration order
    if (opt.multiplier_override) {
      const EtaQuotient& m = *opt.multiplier_override;
      if (m.level() != N) throw DecompositionError("multiplier override: level mismatch");
      if (m.weight() != kp - 2)
        throw DecompositionError("multiplier override: weight " + to_string(m.weight()) +
                                 " does not match stage weight " + std::to_string(kp) + " - 2");
      if (m.classify() != ModularityClass::cusp_form || !m.nebentypus().is_trivial())
        throw DecompositionError("multiplier override: not a cusp form in S_" +
                                 std::to_string(kp - 2) + "(Gamma_0(N))");
      mult = m;
    }
    std::vector<EtaQuotient> basis =
        opt.basis_override ? detail::validated_basis_override(*opt.basis_override, N, kp)
                           : rk.basis();

    // product target * a, known far enough for the Sturm rows
    const int64_t rows = sturm_bound(N, kp) + 2;
    const int64_t mult_lead = mult.lead_lattice_exponent() / FracSeries::kLattice;
    const int64_t need = rows - 1 - mult_lead;
    if (target.n_max() < need)
      throw PrecisionError("decompose: target needs coefficients through n = " +
                           std::to_string(need) + " but has " + std::to_string(target.n_max()));
    FracSeries prod = target.series() * mult.expansion_lattice(FracSeries::kLattice * rows);

    RatMat A(rows, RatVec(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) {
      FracSeries s = basis[j].expansion_lattice(FracSeries::kLattice * rows);
      for (int64_t n = 0; n < rows; ++n) A[n][j] = s.q_coeff(n);
    }
    RatVec b(rows);
    for (int64_t n = 0; n < rows; ++n) b[n] = prod.q_coeff(n);
    auto c = solve(A, b);
    if (!c)
      throw DecompositionError("decompose: product does not lie in the weight-" +
                               std::to_string(kp) + " eta-quotient span (internal inconsistency)");
    return {target, kp, std::move(mult), std::move(basis), std::move(*c)};
  }
  throw DecompositionError(
      "decompose: no even weight <= " + std::to_string(opt.max_weight) +
      " has an eta-quotient basis of S_k plus a multiplier in S_{k-2}; raise --max-weight");
}

// Recompute both sides through Sturm bound + margin and compare exactly.
inline bool verify_decomposition(const DecompositionResult& res, int64_t margin) {
  if (margin < 0) throw std::domain_error("verify: margin must be >= 0");
  const int64_t N = res.target.level;
  const int64_t bound = sturm_bound(N, res.stage_weight) + margin;
  const int64_t trunc = FracSeries::kLattice * bound + 1;

  FracSeries lhs(trunc);
  for (size_t j = 0; j < res.basis.size(); ++j)
    lhs = lhs + res.coefficients[j] * res.basis[j].expansion_lattice(trunc);

  FracSeries rhs = res.multiplier
                       ? res.target.series() * res.multiplier->expansion_lattice(trunc)
                       : res.target.series();
  if (std::min(lhs.trunc(), rhs.trunc()) < trunc)
    throw PrecisionError("verify: target coefficients insufficient for margin " +
                         std::to_string(margin) + " (need through n = " +
                         std::to_string(bound - (res.multiplier
                                                     ? res.multiplier->lead_lattice_exponent() /
                                                           FracSeries::kLattice
                                                     : 0)) +
                         ")");
  for (int64_t n = 0; n <= bound; ++n)
    if (lhs.q_coeff(n) != rhs.q_coeff(n)) return false;
  return true;
}

}  // namespace etaq

#endif
