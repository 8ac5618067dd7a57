#ifndef ETAQ_LINALG_HPP
#define ETAQ_LINALG_HPP

#include <optional>
#include <vector>

#include "etaq/rational.hpp"

namespace etaq {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major, rectangular

enum class PivotRule {
  min_complexity,  // smallest |num*den| nonzero entry; keeps numbers small
  first_nonzero,
};

namespace detail {

inline size_t pick_pivot(const RatMat& A, size_t col, size_t from, PivotRule rule) {
  size_t best = A.size();
  Int best_size;
  for (size_t i = from; i < A.size(); ++i) {
    if (A[i][col] == 0) continue;
    if (rule == PivotRule::first_nonzero) return i;
    Int sz = rat_complexity(A[i][col]);
    if (best == A.size() || sz < best_size) {
      best = i;
      best_size = sz;
    }
  }
  return best;  // A.size() when the column is empty below `from`
}

}  // namespace detail

// Reduce A in place to row echelon form (full reduction above and below
// pivots); returns the pivot columns. Exact arithmetic throughout.
inline std::vector<size_t> rref(RatMat& A, PivotRule rule = PivotRule::min_complexity) {
  std::vector<size_t> pivots;
  if (A.empty()) return pivots;
  const size_t rows = A.size(), cols = A[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = detail::pick_pivot(A, c, r, rule);
    if (p == rows) continue;
    std::swap(A[r], A[p]);
    Rat inv = 1 / A[r][c];
    for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c];
      for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(RatMat A, PivotRule rule = PivotRule::min_complexity) {
  return rref(A, rule).size();
}

// Solve A x = b for a matrix with linearly independent columns. Returns
// nullopt when the system is inconsistent; throws when the columns are
// dependent (callers guarantee independence).
inline std::optional<RatVec> solve(const RatMat& A, const RatVec& b,
                                   PivotRule rule = PivotRule::min_complexity) {
  if (A.size() != b.size()) throw std::logic_error("solve: dimension mismatch");
  if (A.empty()) return RatVec{};
  const size_t cols = A[0].size();
  RatMat aug = A;
  for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  std::vector<size_t> pivots = rref(aug, rule);
  // a pivot in the last column marks inconsistency
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  if (pivots.size() < cols) throw std::logic_error("solve: columns are linearly dependent");
  RatVec x(cols);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

// Indices of a greedy left-to-right maximal independent subset of the
// rows, preserving input order. Incremental elimination: kept rows are
// stored normalized with pairwise distinct leading columns.
inline std::vector<size_t> independent_rows(const RatMat& A) {
  std::vector<size_t> kept;
  if (A.empty()) return kept;
  const size_t cols = A[0].size();
  std::vector<std::optional<RatVec>> by_lead(cols);  // lead column -> reduced row
  for (size_t i = 0; i < A.size(); ++i) {
    RatVec v = A[i];
    size_t lead = 0;
    while (lead < cols) {
      if (v[lead] == 0) {
        ++lead;
        continue;
      }
      if (!by_lead[lead]) break;
      const RatVec& row = *by_lead[lead];
      Rat f = v[lead];
      for (size_t j = lead; j < cols; ++j) v[j] -= f * row[j];
      ++lead;
    }
    if (lead == cols) continue;  // reduced to zero: dependent
    Rat inv = 1 / v[lead];
    for (size_t j = lead; j < cols; ++j) v[j] *= inv;
    by_lead[lead] = std::move(v);
    kept.push_back(i);
  }
  return kept;
}

}  // namespace etaq

#endif
