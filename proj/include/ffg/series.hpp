#pragma once

// Truncated series in a formal variable u with polynomial coefficients, and
// the one-row building blocks G_m^{[p,q]} they generate.
//
//   sum_m G_m^{[p,q]} u^m = (1 + beta/u)^{-1} * P_{p,q}(u),
//   P_{p,q}(u) = prod_{i<=p} (1 + beta x_i) / (1 - x_i u) * prod_{i<=q} (1 + (u + beta) b_i).

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "ffg/polynomial.hpp"

namespace ffg {

/// n(n-1)...(n-s+1)/s! for any integer n.
inline Integer binomial_generalized(long n, long s) {
  if (s < 0) throw invalid_argument("binomial_generalized: s must be non-negative");
  Integer num = 1, den = 1;
  for (long k = 0; k < s; ++k) {
    num *= Integer(n - k);
    den *= Integer(k + 1);
  }
  return num / den;
}

/**
 * Coefficients of u^lo ... u^hi of a series that vanishes below u^lo.
 *
 * Only the window is known; asking for anything outside it throws.
 * Every stored coefficient is already truncated.
 */
class TruncatedLaurentSeries {
 public:
  TruncatedLaurentSeries(long lo, long hi, TruncationOrder trunc) : lo_(lo), hi_(hi), trunc_(trunc) {
    if (lo > hi) throw invalid_argument("TruncatedLaurentSeries: empty window");
  }

  long lo() const { return lo_; }
  long hi() const { return hi_; }
  const TruncationOrder& truncation() const { return trunc_; }

  const Polynomial& coefficient(long e) const {
    if (e < lo_ || e > hi_)
      throw domain_error("series coefficient u^" + std::to_string(e) + " outside known window [" +
                         std::to_string(lo_) + ", " + std::to_string(hi_) + "]");
    static const Polynomial zero;
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? zero : it->second;
  }

  void set(long e, const Polynomial& p) {
    if (e < lo_ || e > hi_) throw domain_error("series exponent outside window");
    Polynomial t = truncate(p, trunc_);
    if (t.is_zero())
      coeffs_.erase(e);
    else
      coeffs_[e] = std::move(t);
  }

  /// Product, exact on [lo_a + lo_b, min(hi_a + lo_b, hi_b + lo_a)].
  friend TruncatedLaurentSeries operator*(const TruncatedLaurentSeries& a, const TruncatedLaurentSeries& c) {
    if (!(a.trunc_ == c.trunc_)) throw invalid_argument("series truncation orders differ");
    long lo = a.lo_ + c.lo_;
    long hi = std::min(a.hi_ + c.lo_, c.hi_ + a.lo_);
    TruncatedLaurentSeries out(lo, hi, a.trunc_);
    for (long e = lo; e <= hi; ++e) {
      PolynomialAccumulator acc;
      for (const auto& [ea, pa] : a.coeffs_) {
        long ec = e - ea;
        if (ec < c.lo_) break;
        if (ec > c.hi_) continue;
        auto it = c.coeffs_.find(ec);
        if (it != c.coeffs_.end()) acc.add_product(pa, it->second, a.trunc_);
      }
      out.set(e, acc.take());
    }
    return out;
  }

 private:
  long lo_;
  long hi_;
  TruncationOrder trunc_;
  std::map<long, Polynomial> coeffs_;
};

/// Highest u-power with a coefficient surviving `trunc` in P_{p,q}(u).
/// Each u comes with one x or one b, and at most q of them with a b.
inline long max_u_power(long p, long q, const TruncationOrder& trunc) {
  std::size_t x_room = p == 0 ? 0 : trunc.max_x_degree(static_cast<std::size_t>(p));
  std::size_t n = std::min(trunc.bound, x_room == TruncationOrder::unbounded
                                             ? TruncationOrder::unbounded
                                             : x_room + static_cast<std::size_t>(q));
  if (n == TruncationOrder::unbounded)
    throw invalid_argument("generating series with x variables need a finite truncation");
  return static_cast<long>(n);
}

/// P_{p,q}(u) on the window [0, hi].
inline TruncatedLaurentSeries generating_product(long p, long q, long hi, const TruncationOrder& trunc) {
  if (p < 0 || q < 0) throw invalid_argument("generating_product: p and q must be non-negative");
  TruncatedLaurentSeries s(0, std::max(hi, 0L), trunc);
  const long top = s.hi();
  std::vector<Polynomial> c(top + 1);
  c[0] = truncate(Polynomial(1), trunc);

  for (long i = 1; i <= p; ++i) {
    const auto xi = static_cast<std::uint32_t>(i);
    const Monomial x = Monomial::x(xi);
    // times 1/(1 - x_i u): c'_n = c_n + x_i c'_{n-1}
    for (long n = 1; n <= top; ++n) c[n] = truncate(c[n] + c[n - 1].times(x), trunc);
    // times (1 + beta x_i)
    const Monomial bx = Monomial::beta() * x;
    for (long n = 0; n <= top; ++n) c[n] = truncate(c[n] + c[n].times(bx), trunc);
  }
  for (long j = 1; j <= q; ++j) {
    const auto bj = static_cast<std::uint32_t>(j);
    const Monomial b = Monomial::b(bj);
    const Monomial bb = Monomial::beta() * b;
    // times (1 + beta b_j) + b_j u, from the top down so c[n-1] is still old
    for (long n = top; n >= 0; --n) {
      Polynomial next = c[n] + c[n].times(bb);
      if (n > 0) next += c[n - 1].times(b);
      c[n] = truncate(next, trunc);
    }
  }
  for (long n = 0; n <= top; ++n) s.set(n, c[n]);
  return s;
}

/**
 * G_m^{[p,q]} for m in [lo, hi], exact modulo `trunc`.
 *
 * Uses G_m = sum_{k>=0} (-beta)^k [u^{m+k}] P, i.e. G_m = P_m - beta G_{m+1}
 * for m >= 0, and G_m = (-beta)^{-m} G_0 below. P vanishes modulo `trunc`
 * above max_u_power, which makes the recursion finite.
 */
inline TruncatedLaurentSeries gf_coefficients(long p, long q, long lo, long hi, const TruncationOrder& trunc) {
  if (p < 0 || q < 0) throw invalid_argument("gf_coefficients: p and q must be non-negative");
  TruncatedLaurentSeries out(lo, hi, trunc);
  const long top = max_u_power(p, q, trunc);
  const TruncatedLaurentSeries P = generating_product(p, q, top, trunc);
  const Monomial minus_beta_mono = Monomial::beta();

  // G_n for n = top down to max(lo, 0).
  Polynomial g;
  const long stop = std::max(lo, 0L);
  for (long n = top; n >= stop; --n) {
    g = P.coefficient(n) + g.times(minus_beta_mono, -1);
    if (n <= hi) out.set(n, g);
  }
  if (lo < 0) {
    // g now holds G_0
    for (long n = std::min(hi, -1L); n >= lo; --n) {
      auto k = static_cast<std::uint32_t>(-n);
      out.set(n, g.times(Monomial::beta(k), (k % 2) ? -1 : 1));
    }
  }
  return out;
}

/// Single coefficient G_m^{[p,q]}, exact up to `trunc`.
inline Polynomial gf_coefficient(long p, long q, long m, const TruncationOrder& trunc) {
  return gf_coefficients(p, q, m, m, trunc).coefficient(m);
}

/// Overload taking a bare xb-degree; negative degrees are rejected.
inline Polynomial gf_coefficient(long p, long q, long m, long degree) {
  return gf_coefficient(p, q, m, TruncationOrder::at(degree));
}

/// Upper index q = f_i + lambda_i - i of the row-i building blocks; an empty
/// product when that is negative.
inline long jt_row_q(long lam_i, long f_i, long i) { return std::max(0L, f_i + lam_i - i); }

/**
 * Entry (i, j) of the Jacobi-Trudi matrix:
 *   sum_{s>=0} C(i-j, s) beta^s G_{lam_i - i + j + s}^{[f_i, f_i + lam_i - i]}.
 *
 * For i >= j the sum stops at s = i - j. For i < j it runs until the index
 * passes max_u_power, beyond which every G vanishes modulo `trunc`.
 */
inline Polynomial jt_entry(long lam_i, long f_i, long i, long j, const TruncationOrder& trunc) {
  if (i < 1 || j < 1 || lam_i < 1 || f_i < 0)
    throw invalid_argument("jt_entry: need i, j, lambda_i >= 1 and f_i >= 0");
  const long p = f_i, q = jt_row_q(lam_i, f_i, i);
  const long m = lam_i - i + j;
  const long top = max_u_power(p, q, trunc);
  const long s_max = i >= j ? i - j : std::max(top - m, 0L);
  const TruncatedLaurentSeries g = gf_coefficients(p, q, m, std::max(m + s_max, m), trunc);
  PolynomialAccumulator acc;
  for (long s = 0; s <= s_max; ++s) {
    Integer c = binomial_generalized(i - j, s);
    if (c == 0) continue;
    acc.add(g.coefficient(m + s).times(Monomial::beta(static_cast<std::uint32_t>(s)), c));
  }
  return truncate(acc.take(), trunc);
}

/**
 * The same entry through the folded generating function:
 *   [u^m] (1 + beta/u)^{i-j} GF = sum_s C(i-j-1, s) beta^s [u^{m+s}] P.
 */
inline Polynomial jt_entry_folded(long lam_i, long f_i, long i, long j, const TruncationOrder& trunc) {
  if (i < 1 || j < 1 || lam_i < 1 || f_i < 0)
    throw invalid_argument("jt_entry_folded: need i, j, lambda_i >= 1 and f_i >= 0");
  const long p = f_i, q = jt_row_q(lam_i, f_i, i);
  const long m = lam_i - i + j;
  const long top = max_u_power(p, q, trunc);
  if (top < 0) return {};
  const TruncatedLaurentSeries P = generating_product(p, q, top, trunc);
  PolynomialAccumulator acc;
  for (long n = std::max(m, 0L); n <= top; ++n) {
    const long s = n - m;
    Integer c = binomial_generalized(i - j - 1, s);
    if (c == 0) continue;
    acc.add(P.coefficient(n).times(Monomial::beta(static_cast<std::uint32_t>(s)), c));
  }
  return truncate(acc.take(), trunc);
}

}  // namespace ffg
