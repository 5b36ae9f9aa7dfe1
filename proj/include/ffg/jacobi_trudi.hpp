#pragma once

// The determinant side: G~_{lambda,f} = det( jt_entry(i, j) ).

#include <cstdint>
#include <vector>

#include "ffg/polynomial.hpp"
#include "ffg/series.hpp"
#include "ffg/tableaux.hpp"

namespace ffg {

/// Square matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  PolyMatrix(std::initializer_list<std::initializer_list<Polynomial>> rows) : n_(rows.size()) {
    for (const auto& row : rows) {
      if (row.size() != n_) throw invalid_argument("PolyMatrix: matrix must be square");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const { return n_; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_.at(i * n_ + j); }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }

 private:
  std::size_t n_ = 0;
  std::vector<Polynomial> entries_;
};

/**
 * Determinant by Laplace expansion along rows with memoized minors over
 * column subsets; products are taken in the quotient ring of `trunc`.
 * Uses no division.
 */
inline Polynomial determinant(const PolyMatrix& m, const TruncationOrder& trunc = TruncationOrder::none()) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n > 20) throw invalid_argument("determinant: matrix too large for subset expansion");
  // minor[S] = det of rows (n-|S|)..(n-1) restricted to the columns in S.
  std::vector<Polynomial> minor(std::size_t{1} << n);
  minor[0] = 1;
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t s = 1; s < (1u << n); ++s) by_size[std::popcount(s)].push_back(s);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t row = n - k;
    for (std::uint32_t s : by_size[k]) {
      PolynomialAccumulator acc;
      int position = 0;
      for (std::size_t col = 0; col < n; ++col) {
        if (!((s >> col) & 1u)) continue;
        const Polynomial& rest = minor[s & ~(1u << col)];
        if (!rest.is_zero() && !m.at(row, col).is_zero())
          acc.add(multiply(m.at(row, col), rest, trunc), position % 2 ? -1 : 1);
        ++position;
      }
      minor[s] = acc.take();
    }
  }
  return truncate(minor[(std::size_t{1} << n) - 1], trunc);
}

/**
 * Truncation under which the determinant is computed exactly.
 *
 * `bound` = 2 * sum lambda_i f_i bounds the xb-degree of G_{lambda,f}. The
 * caps below are tighter a priori bounds on the true polynomial and keep the
 * intermediate power series small:
 *  - each value occurs at most once per column, so every x_k has exponent <= lambda_1;
 *  - row i holds values in [i, f_i] and adjacent boxes share at most one value,
 *    so |T| <= sum_i max(0, lambda_i + f_i - i), which bounds the x-degree.
 */
inline TruncationOrder degree_bound(const FlaggedPartition& fp) {
  TruncationOrder t;
  std::size_t bound = 0, entries = 0;
  for (std::size_t i = 0; i < fp.rows(); ++i) {
    const long lam = fp.lambda()[i], f = fp.flag()[i];
    bound += static_cast<std::size_t>(2 * lam * f);
    entries += static_cast<std::size_t>(std::max(0L, lam + f - static_cast<long>(i + 1)));
  }
  t.bound = bound;
  t.x_degree = entries;
  t.x_exponent = fp.empty() ? 0 : static_cast<std::size_t>(fp.lambda().front());
  return t;
}

inline PolyMatrix jt_matrix(const FlaggedPartition& fp, const TruncationOrder& trunc) {
  const std::size_t r = fp.rows();
  PolyMatrix m(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      m.at(i, j) = jt_entry(fp.lambda()[i], fp.flag()[i], static_cast<long>(i + 1), static_cast<long>(j + 1), trunc);
  return m;
}

/// G~_{lambda,f}, computed at degree_bound(fp) widened by `margin`.
inline Polynomial grothendieck_determinant(const FlaggedPartition& fp, std::size_t margin = 0) {
  if (fp.empty()) return 1;
  if (fp.zero_flag()) return {};
  const TruncationOrder trunc = degree_bound(fp).widened(margin);
  return determinant(jt_matrix(fp, trunc), trunc);
}

}  // namespace ffg
