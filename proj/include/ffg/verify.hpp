#pragma once

// Verification suites cross-checking the three constructions.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ffg/jacobi_trudi.hpp"
#include "ffg/permutation.hpp"
#include "ffg/polynomial.hpp"
#include "ffg/series.hpp"
#include "ffg/tableaux.hpp"

namespace ffg {

struct CheckResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string counterexample;  ///< first failure only

  void record(bool ok, const std::string& instance) {
    if (ok) {
      ++passed;
    } else {
      if (failed == 0) counterexample = instance;
      ++failed;
    }
  }
  bool ok() const { return failed == 0; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  CheckResult& check(const std::string& name) {
    for (auto& c : checks)
      if (c.name == name) return c;
    checks.emplace_back();
    checks.back().name = name;
    return checks.back();
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
  }
  std::string render() const {
    std::ostringstream os;
    os << "suite " << suite << ": " << (ok() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : checks) {
      os << "  " << c.name << ": " << c.passed << "/" << (c.passed + c.failed) << " passed\n";
      if (!c.ok()) os << "    counterexample: " << c.counterexample << "\n";
    }
    return os.str();
  }
};

/// Limits of the flagged-partition grid: r <= max_rows, lambda_1 <= max_part, f_r <= max_flag.
struct GridLimits {
  long max_rows = 3;
  long max_part = 3;
  long max_flag = 4;
};

/// Every flagged partition within `limits`, f_1 = 0 included, in a fixed order.
inline std::vector<FlaggedPartition> flagged_grid(const GridLimits& limits) {
  if (limits.max_rows < 1 || limits.max_part < 1 || limits.max_flag < 0)
    throw invalid_argument("grid limits must be positive");
  std::vector<FlaggedPartition> out;
  for (long r = 1; r <= limits.max_rows; ++r) {
    std::vector<long> lam(r), f(r);
    std::function<void(long)> flags = [&](long k) {
      if (k == r) {
        out.emplace_back(lam, f);
        return;
      }
      for (long v = k ? f[k - 1] : 0; v <= limits.max_flag; ++v) {
        f[k] = v;
        flags(k + 1);
      }
    };
    std::function<void(long)> parts = [&](long k) {
      if (k == r) {
        flags(0);
        return;
      }
      for (long v = 1; v <= (k ? lam[k - 1] : limits.max_part); ++v) {
        lam[k] = v;
        parts(k + 1);
      }
    };
    parts(0);
  }
  return out;
}

namespace detail {

/// Runs fn(0..count-1) on a small worker pool; results land at their own index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < count;) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
  return out;
}

// Deterministic across platforms: raw mt19937_64 output reduced by modulo.
class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}
  long below(long n) { return static_cast<long>(gen_() % static_cast<std::uint64_t>(n)); }
  long between(long lo, long hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 gen_;
};

// Sparse polynomial in beta, x_1..x_4, b_1..b_2 with xb-degree <= 4.
inline Polynomial random_polynomial(Random& rng) {
  Polynomial p;
  const long terms = rng.between(1, 5);
  for (long t = 0; t < terms; ++t) {
    Monomial m = Monomial::beta(static_cast<std::uint32_t>(rng.below(3)));
    const long degree = rng.below(5);
    for (long d = 0; d < degree; ++d) {
      const long v = rng.below(6);
      if (v < 4) {
        const auto i = static_cast<std::uint32_t>(v + 1);
        m.set_x(i, m.x_exponent(i) + 1);
      } else {
        const auto j = static_cast<std::uint32_t>(v - 3);
        m.set_b(j, m.b_exponent(j) + 1);
      }
    }
    long c = rng.between(-5, 4);
    if (c >= 0) ++c;
    p += Polynomial::term(m, c);
  }
  return p;
}

inline std::string describe(const Polynomial& p) {
  std::string s = to_string(p);
  return s.size() > 200 ? s.substr(0, 200) + "..." : s;
}

}  // namespace detail

/**
 * sum over classical flagged tableaux (one value per box, rows weakly and
 * columns strictly increasing, row i bounded by f_i) of prod x_value.
 * Written independently of the set-valued enumeration.
 */
inline Polynomial classical_flagged_schur(const FlaggedPartition& fp) {
  if (fp.empty()) return 1;
  if (fp.zero_flag()) return {};
  const auto& lam = fp.lambda();
  std::vector<std::vector<long>> t;
  for (long l : lam) t.emplace_back(static_cast<std::size_t>(l), 0);
  PolynomialAccumulator sum;
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t j) {
    if (i == t.size()) {
      Monomial m;
      for (const auto& row : t)
        for (long v : row) m.set_x(static_cast<std::uint32_t>(v), m.x_exponent(static_cast<std::uint32_t>(v)) + 1);
      sum.add(Polynomial::term(m, 1));
      return;
    }
    if (j == t[i].size()) {
      fill(i + 1, 0);
      return;
    }
    long lo = 1;
    if (j > 0) lo = t[i][j - 1];
    if (i > 0) lo = std::max(lo, t[i - 1][j] + 1);
    for (long v = lo; v <= fp.flag()[i]; ++v) {
      t[i][j] = v;
      fill(i, j + 1);
    }
  };
  fill(0, 0);
  return sum.take();
}

/// beta = 0 and every b_j = 0.
inline Polynomial classical_specialization(const Polynomial& p) {
  Substitution s;
  s.beta = Integer(0);
  s.all_b = Integer(0);
  return substitute(p, s);
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Operator identities on `samples` seeded random polynomials.
inline SuiteReport verify_operators(std::uint64_t seed = 20240607, std::size_t samples = 25) {
  SuiteReport rep{"operators", {}};
  detail::Random rng(seed);
  const Polynomial beta = Polynomial::beta();
  for (std::size_t k = 0; k < samples; ++k) {
    const Polynomial f = detail::random_polynomial(rng), g = detail::random_polynomial(rng);
    const long i = rng.between(1, 3);
    const std::string inst = "i=" + std::to_string(i) + " f=" + detail::describe(f) + " g=" + detail::describe(g);
    const Polynomial pf = divided_difference(f, i), sf = swap_x(f, i);

    rep.check("leibniz").record(
        divided_difference(f * g, i) == pf * g + sf * divided_difference(g, i) + beta * sf * g, inst);

    const Polynomial sym = f + sf;
    rep.check("symmetric kill").record(divided_difference(sym, i) == -(beta * sym) &&
                                           divided_difference(sym * g, i) == sym * divided_difference(g, i),
                                       inst);
    rep.check("pi_i^2 = -beta pi_i").record(divided_difference(pf, i) == -(beta * pf), inst);
    rep.check("braid").record(apply_word(f, {i, i + 1, i}) == apply_word(f, {i + 1, i, i + 1}), inst);
    rep.check("commutation").record(apply_word(f, {i, i + 2}) == apply_word(f, {i + 2, i}), inst);

    auto [quotient, remainder] = divided_difference_division(f, i);
    rep.check("exact division").record(remainder.is_zero() && quotient == pf, inst);

    const long d = rng.between(0, 6);
    const auto trunc = TruncationOrder::at(d);
    rep.check("truncation homomorphism")
        .record(truncate(truncate(f, trunc) * truncate(g, trunc), trunc) == truncate(f * g, trunc) &&
                    truncate(truncate(f, trunc) + truncate(g, trunc), trunc) == truncate(f + g, trunc),
                inst + " D=" + std::to_string(d));

    // pi_t of a product of linear factors in x_t
    const long t = rng.between(1, 3), n = rng.between(1, 4);
    std::vector<long> bs;
    for (long a = 0; a < n; ++a) bs.push_back(rng.between(1, 4));
    auto prod = [&](long x, long from, long to) {  // prod_{from <= a <= to} (x_x (+) b_{bs[a-1]})
      Polynomial p = 1;
      for (long a = from; a <= to; ++a) p = p * linear_factor(x, bs[a - 1]);
      return p;
    };
    Polynomial rhs;
    for (long v = 0; v <= n - 1; ++v) rhs += prod(t, 1, v) * prod(t + 1, v + 2, n);
    for (long v = 1; v <= n - 1; ++v) rhs += beta * prod(t, 1, v) * prod(t + 1, v + 1, n);
    std::string li = "t=" + std::to_string(t) + " b=";
    for (long b : bs) li += std::to_string(b) + " ";
    rep.check("linear product").record(divided_difference(prod(t, 1, n), t) == rhs && swap_x(rhs, t) == rhs, li);
  }
  return rep;
}

/// Tableau sum against determinant on the grid.
inline SuiteReport verify_main(const GridLimits& limits, std::size_t margin = 0) {
  SuiteReport rep{"main", {}};
  const auto grid = flagged_grid(limits);
  auto ok = detail::parallel_map<char>(grid.size(), [&](std::size_t k) {
    return static_cast<char>(grothendieck_tableau(grid[k]) == grothendieck_determinant(grid[k], margin));
  });
  for (std::size_t k = 0; k < grid.size(); ++k) rep.check("tableau = determinant").record(ok[k], to_string(grid[k]));

  for (long m = 1; m <= std::min(3L, limits.max_part); ++m)
    for (long p = 1; p <= std::min(3L, limits.max_flag); ++p) {
      const FlaggedPartition fp({m}, {p});
      rep.check("single row").record(
          grothendieck_tableau(fp) == gf_coefficient(p, p + m - 1, m, degree_bound(fp)), to_string(fp));
    }
  return rep;
}

/// Tableau sum against divided differences of a linear product on the grid.
inline SuiteReport verify_divdiff(const GridLimits& limits) {
  SuiteReport rep{"divdiff", {}};
  const auto grid = flagged_grid(limits);
  auto ok = detail::parallel_map<char>(grid.size(), [&](std::size_t k) {
    return static_cast<char>(grothendieck_tableau(grid[k]) == grothendieck_divdiff(grid[k]));
  });
  for (std::size_t k = 0; k < grid.size(); ++k) rep.check("tableau = divdiff").record(ok[k], to_string(grid[k]));
  return rep;
}

/// Classical limits and homogeneity on the grid.
inline SuiteReport verify_degenerations(const GridLimits& limits) {
  SuiteReport rep{"degenerations", {}};
  const auto grid = flagged_grid(limits);
  struct Outcome {
    char classical, homogeneous;
  };
  auto res = detail::parallel_map<Outcome>(grid.size(), [&](std::size_t k) {
    const Polynomial g = grothendieck_tableau(grid[k]);
    return Outcome{static_cast<char>(classical_specialization(g) == classical_flagged_schur(grid[k])),
                   static_cast<char>(is_homogeneous(g, grid[k].size()))};
  });
  for (std::size_t k = 0; k < grid.size(); ++k) {
    rep.check("beta=0, b=0 gives flagged Schur").record(res[k].classical, to_string(grid[k]));
    rep.check("homogeneous of degree |lambda|").record(res[k].homogeneous, to_string(grid[k]));
  }
  return rep;
}

/// Vexillary permutations of S_n.
inline SuiteReport verify_vexillary(long n) {
  if (n < 1 || n > 6) throw invalid_argument("vexillary suite supports 1 <= n <= 6");
  SuiteReport rep{"vexillary", {}};
  const auto perms = all_permutations(n);
  grothendieck_table(n);
  struct Outcome {
    char vex, agrees, independent, recursion, diagram;
  };
  auto res = detail::parallel_map<Outcome>(perms.size(), [&](std::size_t k) {
    const Permutation& w = perms[k];
    Outcome o{static_cast<char>(is_vexillary(w)), 1, 1, 1, 0};
    o.diagram = static_cast<long>(diagram(w).size()) == w.inversions();
    o.recursion = recursion_disagreements(w).empty();
    if (o.vex) {
      const Polynomial g = grothendieck_tableau(flagged_partition_of(w));
      o.agrees = grothendieck_perm(w) == g;
      for (const auto& s : all_flagging_sets(w))
        if (!is_flagging_set(w, s) || !(grothendieck_tableau(flagged_partition_from(s)) == g)) o.independent = 0;
    }
    return o;
  });
  std::size_t vexillary = 0;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    const std::string inst = "w=" + to_string(perms[k]);
    vexillary += res[k].vex;
    rep.check("|D(w)| = l(w)").record(res[k].diagram, inst);
    rep.check("recursion well defined").record(res[k].recursion, inst);
    if (!res[k].vex) continue;
    rep.check("G_w = G_{lambda(w),f(w)}").record(res[k].agrees, inst);
    rep.check("flagging independence").record(res[k].independent, inst);
  }
  // 2143-avoiders of S_n, n <= 6
  static const std::size_t known[] = {0, 1, 2, 6, 23, 103, 513};
  rep.check("vexillary count").record(vexillary == known[n], "found " + std::to_string(vexillary));
  return rep;
}

}  // namespace ffg
