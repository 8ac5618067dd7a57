#ifndef ETAQ_SERIES_HPP
#define ETAQ_SERIES_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "etaq/rational.hpp"

namespace etaq {

// Truncated formal series on the q^{1/24} exponent lattice with exact
// rational coefficients. A stored pair (e, c) means a term c * q^{e/24};
// the series is known modulo q^{trunc/24}. Stored coefficients are never
// zero, so equality of the underlying maps is equality of known terms.
//
// Truncation bookkeeping: a sum carries min(trunc_a, trunc_b); a product
// of a (lead la, trunc ta) by b (lead lb, trunc tb) carries
// min(ta + lb, tb + la), which is exactly the range of coefficients
// fully determined by the known coefficients of the operands.
class FracSeries {
 public:
  static constexpr int64_t kLattice = 24;
  using TermMap = std::map<int64_t, Rat>;

  // Zero series known through q^{trunc/24}.
  explicit FracSeries(int64_t trunc) : trunc_(trunc) {}

  static FracSeries one(int64_t trunc) { return monomial(0, Rat(1), trunc); }

  static FracSeries monomial(int64_t exponent, const Rat& coeff, int64_t trunc) {
    FracSeries s(trunc);
    if (coeff != 0 && exponent < trunc) s.terms_[exponent] = coeff;
    return s;
  }

  int64_t trunc() const { return trunc_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Smallest stored exponent, or trunc() for a series with no known
  // nonzero coefficient.
  int64_t lead_exponent() const { return terms_.empty() ? trunc_ : terms_.begin()->first; }

  Rat lead_coeff() const { return terms_.empty() ? Rat(0) : terms_.begin()->second; }

  // Number of lattice exponents the series is known past its lead.
  int64_t relative_precision() const { return trunc_ - lead_exponent(); }

  // Coefficient of q^{e/24}; asking past the truncation is a bug.
  Rat coeff(int64_t e) const {
    if (e >= trunc_) throw std::domain_error("FracSeries::coeff: exponent beyond truncation");
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  // Coefficient of the integral power q^n.
  Rat q_coeff(int64_t n) const { return coeff(kLattice * n); }

  // True when all stored exponents are integral powers of q.
  bool integral() const {
    for (auto& [e, c] : terms_)
      if (e % kLattice) return false;
    return true;
  }

  friend FracSeries operator+(const FracSeries& a, const FracSeries& b) {
    FracSeries out(std::min(a.trunc_, b.trunc_));
    for (auto& [e, c] : a.terms_)
      if (e < out.trunc_) out.terms_[e] = c;
    for (auto& [e, c] : b.terms_) {
      if (e >= out.trunc_) continue;
      Rat& slot = out.terms_[e];
      slot += c;
      if (slot == 0) out.terms_.erase(e);
    }
    return out;
  }

  friend FracSeries operator-(const FracSeries& a) {
    FracSeries out(a.trunc_);
    for (auto& [e, c] : a.terms_) out.terms_[e] = -c;
    return out;
  }

  friend FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

  friend FracSeries operator*(const FracSeries& a, const FracSeries& b) {
    FracSeries out(std::min(a.trunc_ + b.lead_exponent(), b.trunc_ + a.lead_exponent()));
    for (auto& [ea, ca] : a.terms_) {
      for (auto& [eb, cb] : b.terms_) {
        int64_t e = ea + eb;
        if (e >= out.trunc_) break;  // b.terms_ ascending
        Rat& slot = out.terms_[e];
        slot += ca * cb;
        if (slot == 0) out.terms_.erase(e);
      }
    }
    return out;
  }

  friend FracSeries operator*(const Rat& c, const FracSeries& a) {
    FracSeries out(a.trunc_);
    if (c == 0) return out;
    for (auto& [e, v] : a.terms_) out.terms_[e] = c * v;
    return out;
  }

  // Multiplicative inverse. Requires a nonzero leading coefficient; the
  // result has lead -L and relative precision equal to the operand's.
  FracSeries inverse() const {
    if (terms_.empty()) throw std::domain_error("FracSeries::inverse: zero leading coefficient");
    const int64_t lead = lead_exponent();
    const int64_t rel = trunc_ - lead;
    // Work at lead 0: u = q^{-L} * this, compute v with u*v = 1.
    TermMap u;
    for (auto& [e, c] : terms_) u[e - lead] = c;
    const Rat u0 = u.at(0);
    FracSeries out(rel - lead);
    TermMap v;
    v[0] = 1 / u0;
    for (int64_t n = 1; n < rel; ++n) {
      Rat s(0);
      for (auto it = u.upper_bound(0); it != u.end() && it->first <= n; ++it) {
        auto vt = v.find(n - it->first);
        if (vt != v.end()) s += it->second * vt->second;
      }
      if (s != 0) v[n] = -s / u0;
    }
    for (auto& [e, c] : v) out.terms_[e - lead] = c;
    return out;
  }

  // Integer power, negative exponents through inverse(). a^0 is the
  // constant 1 carried at a's relative precision.
  FracSeries pow(int64_t m) const {
    if (m < 0) return inverse().pow(-m);
    FracSeries acc = one(relative_precision());
    if (m == 0) return acc;
    FracSeries base = *this;
    for (;;) {
      if (m & 1) acc = acc * base;
      m >>= 1;
      if (!m) break;
      base = base * base;
    }
    return acc;
  }

  // Euler product prod_{n>=1} (1 - q^{delta n}), expanded sparsely by the
  // pentagonal number theorem: sum_j (-1)^j q^{delta j(3j-1)/2}.
  static FracSeries euler_product(int64_t delta, int64_t trunc) {
    if (delta < 1) throw std::domain_error("euler_product: delta must be >= 1");
    FracSeries out(trunc);
    if (trunc > 0) out.terms_[0] = 1;
    for (int64_t j = 1;; ++j) {
      bool any = false;
      for (int64_t jj : {j, -j}) {
        int64_t e = kLattice * delta * jj * (3 * jj - 1) / 2;
        if (e < trunc) {
          any = true;
          Rat& slot = out.terms_[e];
          slot += (j % 2 == 0 ? 1 : -1);
          if (slot == 0) out.terms_.erase(e);
        }
      }
      if (!any) break;
    }
    return out;
  }

  // eta(delta tau)^r as a series: q^{delta r/24} * euler_product(delta)^r.
  static FracSeries eta_power(int64_t delta, int64_t r, int64_t trunc) {
    const int64_t shift = delta * r;
    const int64_t body_trunc = trunc - shift;
    if (body_trunc < 1) return FracSeries(trunc);  // nothing determinable
    FracSeries body = euler_product(delta, body_trunc).pow(r);
    FracSeries out(body.trunc_ + shift);
    for (auto& [e, c] : body.terms_) out.terms_[e + shift] = c;
    return out;
  }

  // q^{s/24} * this.
  FracSeries shifted(int64_t s) const {
    FracSeries out(trunc_ + s);
    for (auto& [e, c] : terms_) out.terms_[e + s] = c;
    return out;
  }

  bool operator==(const FracSeries& o) const {
    return trunc_ == o.trunc_ && terms_ == o.terms_;
  }

  // Fixture format: one `<e>/24 <coeff>` line per term, then `TRUNC <t>/24`.
  std::string to_text() const {
    std::ostringstream os;
    for (auto& [e, c] : terms_) os << e << "/24 " << to_string(c) << "\n";
    os << "TRUNC " << trunc_ << "/24\n";
    return os.str();
  }

  static FracSeries from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    TermMap terms;
    int64_t trunc = 0;
    bool have_trunc = false;
    int64_t prev = INT64_MIN;
    while (is >> tok) {
      if (tok == "TRUNC") {
        std::string t;
        if (!(is >> t)) throw std::invalid_argument("series text: missing truncation");
        trunc = parse_lattice(t);
        have_trunc = true;
        break;
      }
      int64_t e = parse_lattice(tok);
      std::string cs;
      if (!(is >> cs)) throw std::invalid_argument("series text: missing coefficient");
      if (e <= prev) throw std::invalid_argument("series text: exponents must increase");
      prev = e;
      Rat c = parse_rat(cs);
      if (c != 0) terms[e] = c;
    }
    if (!have_trunc) throw std::invalid_argument("series text: missing TRUNC line");
    FracSeries out(trunc);
    for (auto& [e, c] : terms) {
      if (e >= trunc) throw std::invalid_argument("series text: term beyond truncation");
      out.terms_[e] = c;
    }
    return out;
  }

 private:
  static int64_t parse_lattice(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos || s.substr(slash + 1) != "24")
      throw std::invalid_argument("series text: exponent must be written <n>/24");
    return std::stoll(s.substr(0, slash));
  }

  TermMap terms_;
  int64_t trunc_;
};

}  // namespace etaq

#endif
