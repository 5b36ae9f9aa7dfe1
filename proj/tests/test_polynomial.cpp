#include <vector>

#include <gtest/gtest.h>

#include "ffg/polynomial.hpp"
#include "ffg/verify.hpp"

using namespace ffg;

namespace {

Polynomial X(long i) { return Polynomial::x(static_cast<std::uint32_t>(i)); }
Polynomial B(long j) { return Polynomial::b(static_cast<std::uint32_t>(j)); }
const Polynomial beta = Polynomial::beta();

// Expands a product of x_i (+) b_j factors by summing over all 3^n choices.
Polynomial expand_factors(const std::vector<std::pair<long, long>>& factors) {
  const std::size_t n = factors.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= 3;
  Polynomial sum;
  for (std::size_t code = 0; code < total; ++code) {
    Monomial m;
    std::size_t c = code;
    for (const auto& [i, j] : factors) {
      const auto xi = static_cast<std::uint32_t>(i), bj = static_cast<std::uint32_t>(j);
      switch (c % 3) {
        case 0: m.set_x(xi, m.x_exponent(xi) + 1); break;
        case 1: m.set_b(bj, m.b_exponent(bj) + 1); break;
        default:
          m.set_beta(m.beta_exponent() + 1);
          m.set_x(xi, m.x_exponent(xi) + 1);
          m.set_b(bj, m.b_exponent(bj) + 1);
      }
      c /= 3;
    }
    sum += Polynomial::term(m, 1);
  }
  return sum;
}

std::vector<Polynomial> samples(std::uint64_t seed, int n) {
  detail::Random rng(seed);
  std::vector<Polynomial> out;
  for (int k = 0; k < n; ++k) out.push_back(detail::random_polynomial(rng));
  return out;
}

}  // namespace

TEST(Monomial, RejectsIndexZero) {
  EXPECT_THROW(Monomial::x(0), invalid_argument);
  EXPECT_THROW(Monomial::b(0), invalid_argument);
}

TEST(Monomial, Degrees) {
  Monomial m = Monomial::beta(3) * Monomial::x(1, 2) * Monomial::b(4);
  EXPECT_EQ(m.xb_degree(), 3u);
  EXPECT_EQ(m.graded_degree(), 0);
  EXPECT_EQ((Monomial::beta(2)).graded_degree(), -2);
}

TEST(Monomial, CanonicalOrder) {
  // beta first, then x lexicographic with larger exponents first, then b
  EXPECT_LT(Monomial::x(1), Monomial::beta() * Monomial::x(1));
  EXPECT_LT(Monomial::x(1), Monomial::x(2));
  EXPECT_LT(Monomial::x(1, 2), Monomial::x(1) * Monomial::x(2));
  EXPECT_LT(Monomial::x(1), Monomial::b(1));
  EXPECT_LT(Monomial::b(1), Monomial::b(2));
}

TEST(Polynomial, LinearFactor) {
  EXPECT_EQ(linear_factor(1, 1), X(1) + B(1) + beta * X(1) * B(1));
  EXPECT_EQ(linear_factor(2, 3), X(2) + B(3) + beta * X(2) * B(3));
  EXPECT_THROW(linear_factor(0, 1), invalid_argument);
  EXPECT_THROW(linear_factor(1, -2), invalid_argument);
}

TEST(Polynomial, ProductOfSixFactorsMatchesDirectExpansion) {
  const std::vector<std::pair<long, long>> f{{1, 1}, {1, 2}, {1, 3}, {2, 4}, {2, 1}, {3, 2}};
  Polynomial p = 1;
  for (auto [i, j] : f) p = p * linear_factor(i, j);
  const Polynomial oracle = expand_factors(f);
  EXPECT_EQ(p, oracle);
}

TEST(Polynomial, CanonicalEqualityAndZero) {
  EXPECT_EQ(X(1) + B(1) - X(1), B(1));
  EXPECT_TRUE((X(1) - X(1)).is_zero());
  EXPECT_EQ(X(1) * B(2), B(2) * X(1));
  EXPECT_EQ(Polynomial(0).size(), 0u);
}

TEST(Polynomial, RingAxiomsOnSamples) {
  auto s = samples(7, 30);
  for (std::size_t k = 0; k + 2 < s.size(); ++k) {
    const auto &a = s[k], &b = s[k + 1], &c = s[k + 2];
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
  }
}

TEST(Polynomial, BigCoefficients) {
  Polynomial p = 1;
  for (int k = 0; k < 70; ++k) p = p * (Polynomial(1) + X(1));
  Integer binom = 1;
  for (int k = 0; k < 35; ++k) binom = binom * (70 - k) / (k + 1);
  EXPECT_EQ(p.coefficient(Monomial::x(1, 35)), binom);
  EXPECT_GT(binom, Integer(std::numeric_limits<std::int64_t>::max()));
}

TEST(Polynomial, WideIndicesAndExponentsAgreeWithPackedProducts) {
  auto s = samples(11, 12);
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    Polynomial a = s[k], c = s[k + 1], prod = s[k] * s[k + 1];
    for (int shift = 0; shift < 9; ++shift) {
      a = star_shift(a);
      c = star_shift(c);
      prod = star_shift(prod);
    }
    EXPECT_EQ(a * c, prod);  // x indices above 7 take the general path
  }
  const Polynomial big = Polynomial::term(Monomial::x(1, 40), 1);
  EXPECT_EQ((big + B(1)) * big, Polynomial::term(Monomial::x(1, 80), 1) + Polynomial::term(Monomial::x(1, 40) * Monomial::b(1), 1));
  EXPECT_EQ((big * big) * big, Polynomial::term(Monomial::x(1, 120), 1));
}

TEST(Polynomial, SwapX) {
  EXPECT_EQ(swap_x(X(1), 1), X(2));
  EXPECT_EQ(swap_x(X(1) * X(2), 1), X(1) * X(2));
  EXPECT_EQ(swap_x(X(1) * X(1) * B(1), 1), X(2) * X(2) * B(1));
  for (const auto& p : samples(3, 10)) EXPECT_EQ(swap_x(swap_x(p, 2), 2), p);
  EXPECT_THROW(swap_x(X(1), 0), invalid_argument);
}

TEST(DividedDifference, Examples) {
  EXPECT_EQ(divided_difference(X(1), 1), Polynomial(1));
  EXPECT_EQ(divided_difference(linear_factor(1, 1), 1), Polynomial(1));
  EXPECT_EQ(divided_difference(Polynomial(7), 1), -7 * beta);
  const Polynomial lhs = divided_difference(linear_factor(1, 1) * linear_factor(1, 2), 1);
  EXPECT_EQ(lhs, linear_factor(2, 2) + linear_factor(1, 1) + beta * linear_factor(1, 1) * linear_factor(2, 2));
  EXPECT_THROW(divided_difference(X(1), 0), invalid_argument);
}

TEST(DividedDifference, MatchesDefinitionBySyntheticDivision) {
  for (const auto& f : samples(5, 30))
    for (long i = 1; i <= 3; ++i) {
      auto [q, r] = divided_difference_division(f, i);
      EXPECT_TRUE(r.is_zero());
      EXPECT_EQ(q, divided_difference(f, i));
      // (x_i - x_{i+1}) q is the numerator
      EXPECT_EQ((X(i) - X(i + 1)) * q,
                (Polynomial(1) + beta * X(i + 1)) * f - (Polynomial(1) + beta * X(i)) * swap_x(f, i));
    }
}

TEST(DividedDifference, ResultIsSymmetric) {
  for (const auto& f : samples(9, 20)) EXPECT_EQ(swap_x(divided_difference(f, 2), 2), divided_difference(f, 2));
}

TEST(DividedDifference, Leibniz) {
  auto s = samples(21, 42);
  for (std::size_t k = 0; k + 1 < s.size(); k += 2) {
    const auto &f = s[k], &g = s[k + 1];
    const long i = 1 + static_cast<long>(k % 3);
    EXPECT_EQ(divided_difference(f * g, i),
              divided_difference(f, i) * g + swap_x(f, i) * divided_difference(g, i) + beta * swap_x(f, i) * g);
  }
}

TEST(DividedDifference, SymmetricKill) {
  auto s = samples(22, 42);
  for (std::size_t k = 0; k + 1 < s.size(); k += 2) {
    const long i = 1 + static_cast<long>(k % 3);
    const Polynomial f = s[k] + swap_x(s[k], i), g = s[k + 1];
    EXPECT_EQ(divided_difference(f, i), -(beta * f));
    EXPECT_EQ(divided_difference(f * g, i), f * divided_difference(g, i));
  }
}

TEST(DividedDifference, OnlySymmetricInputsAreScaledByMinusBeta) {
  for (const auto& f : samples(23, 20))
    if (!(swap_x(f, 1) == f)) {
      EXPECT_NE(divided_difference(f, 1), -(beta * f));
    }
}

TEST(DividedDifference, SquareIsMinusBetaTimes) {
  for (const auto& f : samples(24, 20))
    for (long i = 1; i <= 3; ++i) EXPECT_EQ(apply_word(f, {i, i}), -(beta * apply_word(f, {i})));
}

TEST(DividedDifference, BraidAndCommutation) {
  for (const auto& f : samples(25, 20)) {
    EXPECT_EQ(apply_word(f, {1, 2, 1}), apply_word(f, {2, 1, 2}));
    EXPECT_EQ(apply_word(f, {2, 3, 2}), apply_word(f, {3, 2, 3}));
    EXPECT_EQ(apply_word(f, {1, 3}), apply_word(f, {3, 1}));
    EXPECT_EQ(apply_word(f, {1, 4}), apply_word(f, {4, 1}));
  }
}

TEST(DividedDifference, LinearProductClosedForm) {
  detail::Random rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const long t = rng.between(1, 3), n = rng.between(1, 4);
    std::vector<long> b;
    for (long k = 0; k < n; ++k) b.push_back(rng.between(1, 5));
    auto prod = [&](long x, long from, long to) {
      Polynomial p = 1;
      for (long k = from; k <= to; ++k) p = p * linear_factor(x, b[k - 1]);
      return p;
    };
    Polynomial rhs;
    for (long v = 0; v <= n - 1; ++v) rhs += prod(t, 1, v) * prod(t + 1, v + 2, n);
    for (long v = 1; v <= n - 1; ++v) rhs += beta * prod(t, 1, v) * prod(t + 1, v + 1, n);
    EXPECT_EQ(divided_difference(prod(t, 1, n), t), rhs);
    EXPECT_EQ(swap_x(rhs, t), rhs);
  }
}

TEST(ApplyWord, Examples) {
  EXPECT_EQ(apply_word(X(1), {}), X(1));
  EXPECT_EQ(apply_word(X(1), {1}), Polynomial(1));
  // pi_1 acts first: pi_2 pi_1 (x1^2) = pi_2 (x1 + x2 + beta x1 x2)
  EXPECT_EQ(apply_word(X(1) * X(1), {1, 2}), divided_difference(divided_difference(X(1) * X(1), 1), 2));
}

TEST(Truncation, Examples) {
  EXPECT_EQ(truncate(X(1) * X(1) + X(1), TruncationOrder::at(1)), X(1));
  const Polynomial p = beta * beta * beta * X(1) * B(1);
  EXPECT_EQ(truncate(p, TruncationOrder::at(2)), p);
  EXPECT_THROW(TruncationOrder::at(-1), invalid_argument);
}

TEST(Truncation, IsRingHomomorphism) {
  auto s = samples(31, 40);
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    for (long d = 0; d <= 5; ++d) {
      const auto t = TruncationOrder::at(d);
      EXPECT_EQ(truncate(truncate(s[k], t) * truncate(s[k + 1], t), t), truncate(s[k] * s[k + 1], t));
      EXPECT_EQ(multiply(s[k], s[k + 1], t), truncate(s[k] * s[k + 1], t));
      EXPECT_EQ(truncate(truncate(s[k], t), t), truncate(s[k], t));
    }
}

TEST(Truncation, ExtraCapsAreRingHomomorphisms) {
  auto s = samples(32, 30);
  TruncationOrder t;
  t.bound = 6;
  t.x_degree = 3;
  t.x_exponent = 2;
  for (std::size_t k = 0; k + 1 < s.size(); ++k)
    EXPECT_EQ(multiply(truncate(s[k], t), truncate(s[k + 1], t), t), truncate(s[k] * s[k + 1], t));
}

TEST(Substitute, Examples) {
  Substitution s;
  s.beta = Integer(0);
  EXPECT_EQ(substitute(linear_factor(1, 1), s), X(1) + B(1));
  Substitution t;
  t.all_b = Integer(0);
  EXPECT_EQ(substitute(linear_factor(1, 1), t), X(1));
  Substitution u;
  u.x[1] = 2;
  u.b[1] = 3;
  u.beta = 1;
  EXPECT_EQ(substitute(linear_factor(1, 1), u), Polynomial(11));
  Substitution partial;
  partial.x[2] = 5;
  EXPECT_EQ(substitute(X(1) * X(2) + B(2), partial), 5 * X(1) + B(2));
}

TEST(StarShift, Examples) {
  EXPECT_EQ(star_shift(X(1)), X(2));
  EXPECT_EQ(star_shift(B(5)), B(5));
  EXPECT_EQ(star_shift(X(1) * X(2) * beta), X(2) * X(3) * beta);
}

TEST(Rendering, Text) {
  EXPECT_EQ(to_string(linear_factor(1, 1)), "x1 + b1 + beta*x1*b1");
  EXPECT_EQ(to_string(Polynomial()), "0");
  EXPECT_EQ(to_string(3 * beta * beta * X(1) * X(1) * B(3)), "3*beta^2*x1^2*b3");
  EXPECT_EQ(to_string(X(1) - 2 * B(1)), "x1 - 2*b1");
  EXPECT_EQ(to_string(-7 * beta), "-7*beta");
  EXPECT_EQ(to_string(Polynomial(1) - X(2)), "-x2 + 1");
}

TEST(Rendering, Latex) {
  EXPECT_EQ(to_latex(linear_factor(1, 3)), "x_{1} + b_{3} + \\beta x_{1} b_{3}");
  EXPECT_EQ(to_latex(-2 * beta * beta * X(2)), "-2 \\beta^{2} x_{2}");
}

TEST(Degrees, Homogeneity) {
  EXPECT_TRUE(is_homogeneous(linear_factor(1, 1), 1));
  EXPECT_FALSE(is_homogeneous(X(1) + Polynomial(1), 1));
  EXPECT_TRUE(is_homogeneous(Polynomial(), 5));
  EXPECT_EQ(max_xb_degree(beta * X(1) * B(1) + X(3)), 2u);
}
