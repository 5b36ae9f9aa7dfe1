#pragma once

// Permutations, vexillary data and double Grothendieck polynomials.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ffg/polynomial.hpp"
#include "ffg/tableaux.hpp"

namespace ffg {

/// A cell (p, q) of the n x n grid, both 1-based.
using GridCell = std::pair<long, long>;

/// An element of S_n in one-line notation (w(1), ..., w(n)).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<long> one_line) : w_(std::move(one_line)) {
    const long n = length();
    std::vector<bool> seen(w_.size() + 1, false);
    for (long v : w_) {
      if (v < 1 || v > n) throw invalid_argument("permutation: value " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (seen[v]) throw invalid_argument("permutation: value " + std::to_string(v) + " repeated");
      seen[v] = true;
    }
  }

  static Permutation identity(long n) {
    std::vector<long> w(n);
    for (long i = 0; i < n; ++i) w[i] = i + 1;
    return Permutation(std::move(w));
  }
  static Permutation longest(long n) {
    std::vector<long> w(n);
    for (long i = 0; i < n; ++i) w[i] = n - i;
    return Permutation(std::move(w));
  }

  /// Parses "2,1,4,3". Blanks around entries are ignored.
  static Permutation parse(const std::string& text) {
    std::vector<long> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto first = item.find_first_not_of(" \t");
      auto last = item.find_last_not_of(" \t");
      if (first == std::string::npos) throw invalid_argument("permutation: empty entry in '" + text + "'");
      item = item.substr(first, last - first + 1);
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size()) throw invalid_argument("permutation: '" + item + "' is not an integer");
      w.push_back(v);
    }
    if (w.empty()) throw invalid_argument("permutation: no entries");
    return Permutation(std::move(w));
  }

  long length() const { return static_cast<long>(w_.size()); }
  const std::vector<long>& one_line() const { return w_; }
  long operator()(long i) const { return w_.at(i - 1); }

  /// Inversion count l(w).
  long inversions() const {
    long n = 0;
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::size_t j = i + 1; j < w_.size(); ++j) n += w_[j] < w_[i];
    return n;
  }

  /// c_i = #{j > i : w(j) < w(i)}.
  std::vector<long> code() const {
    std::vector<long> c(w_.size(), 0);
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::size_t j = i + 1; j < w_.size(); ++j) c[i] += w_[j] < w_[i];
    return c;
  }

  Permutation inverse() const {
    std::vector<long> v(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) v[w_[i] - 1] = static_cast<long>(i + 1);
    return Permutation(std::move(v));
  }

  /// w s_i: swaps the entries in positions i and i+1.
  Permutation times_simple(long i) const {
    if (i < 1 || i >= length()) throw invalid_argument("simple transposition index out of range");
    auto v = w_;
    std::swap(v[i - 1], v[i]);
    return Permutation(std::move(v));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] != static_cast<long>(i + 1)) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<long> w_;
};

inline std::string to_string(const Permutation& w) {
  std::string s;
  for (long i = 1; i <= w.length(); ++i) s += (i > 1 ? "," : "") + std::to_string(w(i));
  return s;
}

/// All of S_n in lexicographic order.
inline std::vector<Permutation> all_permutations(long n) {
  std::vector<long> v(n);
  for (long i = 0; i < n; ++i) v[i] = i + 1;
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// Positions a < b < c < d of the first 2143 pattern, if any.
inline std::optional<std::array<long, 4>> find_2143(const Permutation& w) {
  const long n = w.length();
  for (long a = 1; a <= n; ++a)
    for (long b = a + 1; b <= n; ++b) {
      if (!(w(b) < w(a))) continue;
      for (long c = b + 1; c <= n; ++c) {
        if (!(w(c) > w(a))) continue;
        for (long d = c + 1; d <= n; ++d)
          if (w(a) < w(d) && w(d) < w(c)) return std::array<long, 4>{a, b, c, d};
      }
    }
  return std::nullopt;
}

inline bool is_vexillary(const Permutation& w) { return !find_2143(w).has_value(); }

/// r_w(p, q) = #{i <= p : w(i) <= q}.
inline long rank_function(const Permutation& w, long p, long q) {
  const long n = w.length();
  if (p < 1 || p > n || q < 1 || q > n)
    throw invalid_argument("rank_function: (" + std::to_string(p) + "," + std::to_string(q) + ") outside 1.." +
                           std::to_string(n));
  long r = 0;
  for (long i = 1; i <= p; ++i) r += w(i) <= q;
  return r;
}

/// D(w) = {(p, q) : w(p) > q and w^{-1}(q) > p}, sorted.
inline std::vector<GridCell> diagram(const Permutation& w) {
  const Permutation inv = w.inverse();
  std::vector<GridCell> d;
  for (long p = 1; p <= w.length(); ++p)
    for (long q = 1; q <= w.length(); ++q)
      if (w(p) > q && inv(q) > p) d.emplace_back(p, q);
  return d;
}

/// Boxes of D(w) with neither (p+1, q) nor (p, q+1) in D(w).
inline std::vector<GridCell> essential_set(const Permutation& w) {
  const auto d = diagram(w);
  const std::set<GridCell> in(d.begin(), d.end());
  std::vector<GridCell> e;
  for (const auto& [p, q] : d)
    if (!in.count({p + 1, q}) && !in.count({p, q + 1})) e.emplace_back(p, q);
  return e;
}

/// D(w) is a Young diagram and r_w vanishes on it.
inline bool is_dominant(const Permutation& w) {
  const auto d = diagram(w);
  const std::set<GridCell> in(d.begin(), d.end());
  for (const auto& [p, q] : d) {
    if (rank_function(w, p, q) != 0) return false;
    if (p > 1 && !in.count({p - 1, q})) return false;
    if (q > 1 && !in.count({p, q - 1})) return false;
  }
  return true;
}

struct FlaggingSet {
  std::vector<GridCell> pairs;
  friend bool operator==(const FlaggingSet&, const FlaggingSet&) = default;
};

/// lambda_i = q_i - p_i + i, f_i = p_i.
inline FlaggedPartition flagged_partition_from(const FlaggingSet& s) {
  std::vector<long> lam, f;
  for (std::size_t k = 0; k < s.pairs.size(); ++k) {
    const auto [p, q] = s.pairs[k];
    lam.push_back(q - p + static_cast<long>(k + 1));
    f.push_back(p);
  }
  return FlaggedPartition(std::move(lam), std::move(f));
}

/// Checks both monotonicity conditions, the rank condition, Ess(w) inclusion and
/// that the resulting shape is a partition.
inline bool is_flagging_set(const Permutation& w, const FlaggingSet& s) {
  const long n = w.length();
  for (std::size_t k = 0; k < s.pairs.size(); ++k) {
    const auto [p, q] = s.pairs[k];
    if (p < 1 || p > n || q < 1 || q > n) return false;
    if (p - rank_function(w, p, q) != static_cast<long>(k + 1)) return false;
    if (q - p + static_cast<long>(k + 1) < 1) return false;
    if (k > 0) {
      const auto [pp, pq] = s.pairs[k - 1];
      if (p < pp || q > pq) return false;
      if (q - p + static_cast<long>(k + 1) > pq - pp + static_cast<long>(k)) return false;
    }
  }
  for (const auto& e : essential_set(w))
    if (std::find(s.pairs.begin(), s.pairs.end(), e) == s.pairs.end()) return false;
  return true;
}

namespace detail {

// Depth-first search over flagging sets of length r; candidates for slot i are
// tried in order of (p ascending, q descending). `visit` returns false to stop.
template <class Visit>
void search_flagging_sets(const Permutation& w, Visit&& visit) {
  const long n = w.length();
  long r = 0;
  for (long c : w.code()) r += c != 0;

  std::map<long, GridCell> forced;  // slot -> essential box
  for (const auto& e : essential_set(w)) {
    const long slot = e.first - rank_function(w, e.first, e.second);
    if (slot < 1 || slot > r || forced.count(slot)) return;
    forced[slot] = e;
  }

  FlaggingSet cur;
  bool stop = false;
  std::function<void(long)> go = [&](long i) {
    if (stop) return;
    if (i > r) {
      if (!visit(cur)) stop = true;
      return;
    }
    std::vector<GridCell> cands;
    if (auto it = forced.find(i); it != forced.end())
      cands.push_back(it->second);
    else
      for (long p = 1; p <= n; ++p)
        for (long q = n; q >= 1; --q) cands.emplace_back(p, q);
    for (const auto& [p, q] : cands) {
      if (p - rank_function(w, p, q) != i) continue;
      const long lam = q - p + i;
      if (lam < 1) continue;
      if (!cur.pairs.empty()) {
        const auto [pp, pq] = cur.pairs.back();
        if (p < pp || q > pq || lam > pq - pp + (i - 1)) continue;
      }
      cur.pairs.emplace_back(p, q);
      go(i + 1);
      cur.pairs.pop_back();
      if (stop) return;
    }
  };
  go(1);
}

}  // namespace detail

/// Every flagging set of a vexillary w, in search order.
inline std::vector<FlaggingSet> all_flagging_sets(const Permutation& w) {
  if (find_2143(w)) throw domain_error("flagging set: permutation " + to_string(w) + " is not vexillary");
  std::vector<FlaggingSet> out;
  detail::search_flagging_sets(w, [&](const FlaggingSet& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

/// The lexicographically first flagging set. Empty for the identity.
inline FlaggingSet flagging_set(const Permutation& w) {
  if (find_2143(w)) throw domain_error("flagging set: permutation " + to_string(w) + " is not vexillary");
  std::optional<FlaggingSet> found;
  detail::search_flagging_sets(w, [&](const FlaggingSet& s) {
    found = s;
    return false;
  });
  if (!found) throw internal_error("flagging set: no valid completion for " + to_string(w));
  return *found;
}

/// (lambda(w), f(w)); the identity gives the empty shape.
inline FlaggedPartition flagged_partition_of(const Permutation& w) {
  return flagged_partition_from(flagging_set(w));
}

// ---------------------------------------------------------------------------
// Double Grothendieck polynomials
// ---------------------------------------------------------------------------

/// prod_{i+j<=n} (x_i (+) b_j).
inline Polynomial grothendieck_longest(long n) {
  Polynomial g = 1;
  for (long i = 1; i < n; ++i)
    for (long j = 1; i + j <= n; ++j) g = g * linear_factor(i, j);
  return g;
}

/**
 * G_w for every w in S_n, from G_{w0} downwards: G_w = pi_i G_{w s_i} for the
 * smallest i with w(i) < w(i+1). Built once per n and cached.
 */
inline const std::map<Permutation, Polynomial>& grothendieck_table(long n) {
  if (n < 1) throw invalid_argument("grothendieck_table: n must be positive");
  if (n > 6) throw invalid_argument("grothendieck_table: n > 6 is not supported");
  static std::mutex mu;
  static std::map<long, std::map<Permutation, Polynomial>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto perms = all_permutations(n);
  std::stable_sort(perms.begin(), perms.end(),
                   [](const Permutation& a, const Permutation& c) { return a.inversions() > c.inversions(); });
  std::map<Permutation, Polynomial> table;
  for (const auto& w : perms) {
    if (w == Permutation::longest(n)) {
      table.emplace(w, grothendieck_longest(n));
      continue;
    }
    long i = 1;
    while (w(i) > w(i + 1)) ++i;
    table.emplace(w, divided_difference(table.at(w.times_simple(i)), i));
  }
  return cache.emplace(n, std::move(table)).first->second;
}

inline Polynomial grothendieck_perm(const Permutation& w) {
  if (w.length() == 0) return 1;
  return grothendieck_table(w.length()).at(w);
}

/// Ascents i of w where pi_i G_{w s_i} differs from G_w.
inline std::vector<long> recursion_disagreements(const Permutation& w) {
  const auto& table = grothendieck_table(w.length());
  std::vector<long> bad;
  for (long i = 1; i < w.length(); ++i)
    if (w(i) < w(i + 1) && !(divided_difference(table.at(w.times_simple(i)), i) == table.at(w))) bad.push_back(i);
  return bad;
}

// ---------------------------------------------------------------------------
// Divided differences of a product of linear factors
// ---------------------------------------------------------------------------

/// (r, ..., f_r - 1, ..., 1, ..., f_1 - 1): the row-r block acts first.
inline std::vector<long> divdiff_word(const FlaggedPartition& fp) {
  std::vector<long> word;
  for (long i = static_cast<long>(fp.rows()); i >= 1; --i)
    for (long k = i; k <= fp.flag()[i - 1] - 1; ++k) word.push_back(k);
  return word;
}

/// prod_i prod_{j <= a_i} (x_i (+) b_j) with a_i = lambda_i + f_i - i.
inline Polynomial divdiff_seed(const FlaggedPartition& fp) {
  Polynomial g = 1;
  for (std::size_t i = 0; i < fp.rows(); ++i) {
    const long row = static_cast<long>(i + 1);
    const long a = fp.lambda()[i] + fp.flag()[i] - row;
    for (long j = 1; j <= a; ++j) g = g * linear_factor(row, j);
  }
  return g;
}

/// G_{lambda,f} as pi_w applied to divdiff_seed(fp). Zero when some row i has
/// f_i < i, since then no tableau exists.
inline Polynomial grothendieck_divdiff(const FlaggedPartition& fp) {
  if (fp.empty()) return 1;
  if (!fp.has_tableaux()) return {};
  return apply_word(divdiff_seed(fp), divdiff_word(fp));
}

}  // namespace ffg
