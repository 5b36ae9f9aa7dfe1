#pragma once

// Flagged partitions and flagged set-valued tableaux.

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffg/polynomial.hpp"

namespace ffg {

/**
 * A partition lambda_1 >= ... >= lambda_r > 0 with a weakly increasing
 * flagging f_1 <= ... <= f_r of non-negative integers.
 *
 * f_1 = 0 is accepted and denotes the zero polynomial. r = 0 is the empty
 * partition.
 */
class FlaggedPartition {
 public:
  FlaggedPartition() = default;

  /// Validating constructor; throws invalid_argument naming the violated condition.
  FlaggedPartition(std::vector<long> lambda, std::vector<long> flag)
      : lambda_(std::move(lambda)), flag_(std::move(flag)) {
    if (lambda_.size() != flag_.size())
      throw invalid_argument("flagged partition: lambda and flag lengths differ (" +
                             std::to_string(lambda_.size()) + " vs " + std::to_string(flag_.size()) + ")");
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
      if (lambda_[i] <= 0) throw invalid_argument("flagged partition: lambda parts must be positive");
      if (flag_[i] < 0) throw invalid_argument("flagged partition: flag entries must be non-negative");
      if (i > 0 && lambda_[i] > lambda_[i - 1])
        throw invalid_argument("flagged partition: lambda is not weakly decreasing");
      if (i > 0 && flag_[i] < flag_[i - 1])
        throw invalid_argument("flagged partition: flag is not weakly increasing");
    }
  }

  const std::vector<long>& lambda() const { return lambda_; }
  const std::vector<long>& flag() const { return flag_; }
  std::size_t rows() const { return lambda_.size(); }
  bool empty() const { return lambda_.empty(); }
  long size() const {
    long s = 0;
    for (long l : lambda_) s += l;
    return s;
  }
  /// f_1 = 0: the polynomial is zero by convention.
  bool zero_flag() const { return !flag_.empty() && flag_.front() == 0; }
  /// Row i (1-based) can hold values only in [i, f_i]; if some f_i < i no
  /// tableau exists.
  bool has_tableaux() const {
    for (std::size_t i = 0; i < flag_.size(); ++i)
      if (flag_[i] < static_cast<long>(i + 1)) return false;
    return true;
  }

  friend bool operator==(const FlaggedPartition&, const FlaggedPartition&) = default;

 private:
  std::vector<long> lambda_;
  std::vector<long> flag_;
};

inline FlaggedPartition validate_flagged_partition(std::vector<long> lambda, std::vector<long> flag) {
  return FlaggedPartition(std::move(lambda), std::move(flag));
}

inline std::string to_string(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string to_string(const FlaggedPartition& fp) {
  return "lambda=" + to_string(fp.lambda()) + " f=" + to_string(fp.flag());
}

/// Nonempty set of positive integers below 64, as a bit mask.
class CellSet {
 public:
  constexpr CellSet() = default;
  constexpr explicit CellSet(std::uint64_t mask) : mask_(mask) {}
  static CellSet of(std::initializer_list<unsigned> values) {
    std::uint64_t m = 0;
    for (unsigned v : values) m |= std::uint64_t{1} << v;
    return CellSet(m);
  }

  std::uint64_t mask() const { return mask_; }
  unsigned min() const { return static_cast<unsigned>(std::countr_zero(mask_)); }
  unsigned max() const { return 63u - static_cast<unsigned>(std::countl_zero(mask_)); }
  unsigned size() const { return static_cast<unsigned>(std::popcount(mask_)); }
  bool contains(unsigned v) const { return v < 64 && ((mask_ >> v) & 1u); }
  std::vector<unsigned> values() const {
    std::vector<unsigned> out;
    for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(static_cast<unsigned>(std::countr_zero(m)));
    return out;
  }

  friend bool operator==(CellSet, CellSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// A filling of the boxes of lambda by nonempty sets; cells[i][j] is box (i+1, j+1).
struct SetValuedTableau {
  FlaggedPartition shape;
  std::vector<std::vector<CellSet>> cells;

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& row : cells)
      for (CellSet c : row) n += c.size();
    return n;
  }

  /// Checks row, column and flag conditions.
  bool is_valid() const {
    const auto& lam = shape.lambda();
    if (cells.size() != lam.size()) return false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() != static_cast<std::size_t>(lam[i])) return false;
      for (std::size_t j = 0; j < cells[i].size(); ++j) {
        CellSet c = cells[i][j];
        if (c.mask() == 0 || c.contains(0)) return false;
        if (c.max() > static_cast<unsigned>(shape.flag()[i])) return false;
        if (j > 0 && cells[i][j - 1].max() > c.min()) return false;
        if (i > 0 && cells[i - 1][j].max() >= c.min()) return false;
      }
    }
    return true;
  }
};

/// `{1} {1} {1,2} / {2,3}`
inline std::string to_string(const SetValuedTableau& t) {
  std::string out;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    if (i) out += " / ";
    for (std::size_t j = 0; j < t.cells[i].size(); ++j) {
      if (j) out += ' ';
      out += '{';
      auto vs = t.cells[i][j].values();
      for (std::size_t k = 0; k < vs.size(); ++k) out += (k ? "," : "") + std::to_string(vs[k]);
      out += '}';
    }
  }
  return out;
}

namespace detail {

// Nonempty subsets of {lo..hi}, ordered lexicographically as increasing sequences.
inline void lex_subsets(unsigned lo, unsigned hi, std::uint64_t prefix, std::vector<CellSet>& out) {
  for (unsigned a = lo; a <= hi; ++a) {
    std::uint64_t m = prefix | (std::uint64_t{1} << a);
    out.emplace_back(m);
    lex_subsets(a + 1, hi, m, out);
  }
}

inline const std::vector<CellSet>& subsets_cached(unsigned lo, unsigned hi) {
  thread_local std::map<std::pair<unsigned, unsigned>, std::vector<CellSet>> cache;
  auto [it, inserted] = cache.try_emplace({lo, hi});
  if (inserted && lo <= hi) lex_subsets(lo, hi, 0, it->second);
  return it->second;
}

/// Depth-first walk over the boxes in row-major order. `enter` is called with
/// (row, col, set) before descending and returns false to prune; `leave`
/// undoes it; `leaf` sees each complete tableau.
template <class Enter, class Leave, class Leaf>
void walk_tableaux(const FlaggedPartition& fp, Enter&& enter, Leave&& leave, Leaf&& leaf) {
  if (fp.zero_flag()) return;
  SetValuedTableau t{fp, {}};
  for (long l : fp.lambda()) t.cells.emplace_back(static_cast<std::size_t>(l));
  if (!fp.flag().empty() && fp.flag().back() >= 64)
    throw invalid_argument("tableau enumeration supports flags below 64");

  std::vector<std::pair<std::size_t, std::size_t>> boxes;
  for (std::size_t i = 0; i < fp.rows(); ++i)
    for (std::size_t j = 0; j < t.cells[i].size(); ++j) boxes.emplace_back(i, j);

  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == boxes.size()) {
      leaf(t);
      return;
    }
    auto [i, j] = boxes[k];
    unsigned lo = 1;
    if (j > 0) lo = std::max(lo, t.cells[i][j - 1].max());
    if (i > 0) lo = std::max(lo, t.cells[i - 1][j].max() + 1);
    const auto hi = static_cast<unsigned>(fp.flag()[i]);
    if (lo > hi) return;
    for (CellSet s : subsets_cached(lo, hi)) {
      t.cells[i][j] = s;
      if (enter(i, j, s)) {
        go(k + 1);
        leave(i, j, s);
      }
    }
    t.cells[i][j] = CellSet{};
  };
  go(0);
}

}  // namespace detail

/**
 * Streams every flagged set-valued tableau of `fp` to `visit`, exactly once,
 * boxes filled in row-major order and each box's sets in lexicographic order.
 * The empty shape yields one empty tableau; f_1 = 0 yields none.
 */
template <class Visitor>
void for_each_tableau(const FlaggedPartition& fp, Visitor&& visit) {
  detail::walk_tableaux(
      fp, [](std::size_t, std::size_t, CellSet) { return true; }, [](std::size_t, std::size_t, CellSet) {},
      [&](const SetValuedTableau& t) { visit(t); });
}

inline std::vector<SetValuedTableau> enumerate_tableaux(const FlaggedPartition& fp) {
  std::vector<SetValuedTableau> out;
  for_each_tableau(fp, [&](const SetValuedTableau& t) { out.push_back(t); });
  return out;
}

/// Weight of the entries of one box (i, j) (0-based): prod_v (x_v (+) b_{v-i+j}).
inline Polynomial box_weight(std::size_t i, std::size_t j, CellSet s) {
  Polynomial w = 1;
  for (unsigned v : s.values())
    w = w * linear_factor(v, static_cast<long>(v) - static_cast<long>(i) + static_cast<long>(j));
  return w;
}

/// [x|b]^T = prod over entries e of (x_{val e} (+) b_{val e - row e + col e}); no beta power.
inline Polynomial tableau_weight(const SetValuedTableau& t) {
  Polynomial w = 1;
  for (std::size_t i = 0; i < t.cells.size(); ++i)
    for (std::size_t j = 0; j < t.cells[i].size(); ++j) w = w * box_weight(i, j, t.cells[i][j]);
  return w;
}

/// sum_T beta^{|T| - |lambda|} [x|b]^T, one tableau at a time.
inline Polynomial grothendieck_tableau_direct(const FlaggedPartition& fp) {
  PolynomialAccumulator sum;
  for_each_tableau(fp, [&](const SetValuedTableau& t) {
    const auto extra = static_cast<std::uint32_t>(t.entry_count() - static_cast<std::size_t>(fp.size()));
    sum.add(tableau_weight(t).times(Monomial::beta(extra)));
  });
  return fp.empty() ? Polynomial(1) : sum.take();
}

/**
 * G_{lambda,f} = sum_T beta^{|T| - |lambda|} [x|b]^T over flagged set-valued
 * tableaux.
 *
 * Boxes are filled in row-major order. What a later box may hold depends only
 * on the largest entry seen so far in each column, so partial sums are
 * collected per column-maxima state instead of per tableau.
 */
inline Polynomial grothendieck_tableau(const FlaggedPartition& fp) {
  if (fp.empty()) return 1;
  if (fp.zero_flag()) return {};
  if (fp.flag().back() >= 64) throw invalid_argument("tableau enumeration supports flags below 64");
  const auto width = static_cast<std::size_t>(fp.lambda().front());
  if (width > 10) throw invalid_argument("tableau sum supports lambda_1 <= 10");

  using State = std::uint64_t;  // 6 bits per column: max entry, 0 if none
  auto get = [](State st, std::size_t j) { return static_cast<unsigned>((st >> (6 * j)) & 63u); };
  auto put = [](State st, std::size_t j, unsigned v) {
    return (st & ~(State{63} << (6 * j))) | (State{v} << (6 * j));
  };

  std::map<State, Polynomial> layer{{0, Polynomial(1)}};
  for (std::size_t i = 0; i < fp.rows(); ++i) {
    const auto hi = static_cast<unsigned>(fp.flag()[i]);
    const auto len = static_cast<std::size_t>(fp.lambda()[i]);
    for (std::size_t j = 0; j < len; ++j) {
      std::map<State, PolynomialAccumulator> next;
      std::map<std::uint64_t, Polynomial> weights;
      for (const auto& [st, poly] : layer) {
        unsigned lo = std::max(1u, get(st, j) + 1);
        if (j > 0) lo = std::max(lo, get(st, j - 1));
        if (lo > hi) continue;
        for (CellSet c : detail::subsets_cached(lo, hi)) {
          auto [it, fresh] = weights.try_emplace(c.mask());
          if (fresh) {
            it->second = box_weight(i, j, c);
            if (c.size() > 1) it->second = it->second.times(Monomial::beta(c.size() - 1));
          }
          next[put(st, j, c.max())].add(poly * it->second);
        }
      }
      layer.clear();
      for (auto& [st, acc] : next) {
        Polynomial p = acc.take();
        if (!p.is_zero()) layer[st] = std::move(p);
      }
    }
    // Columns past the end of this row are never read again.
    std::map<State, Polynomial> merged;
    for (auto& [st, p] : layer) {
      State key = st;
      for (std::size_t j = len; j < width; ++j) key = put(key, j, 0);
      auto [it, fresh] = merged.try_emplace(key, std::move(p));
      if (!fresh) it->second += p;
    }
    layer = std::move(merged);
  }
  PolynomialAccumulator sum;
  for (const auto& [st, p] : layer) sum.add(p);
  return sum.take();
}

/// max |T| over all tableaux of `fp`; 0 when there are none.
inline std::size_t max_entry_count(const FlaggedPartition& fp) {
  std::size_t best = 0;
  for_each_tableau(fp, [&](const SetValuedTableau& t) { best = std::max(best, t.entry_count()); });
  return best;
}

inline std::size_t count_tableaux(const FlaggedPartition& fp) {
  std::size_t n = 0;
  for_each_tableau(fp, [&](const SetValuedTableau&) { ++n; });
  return n;
}

}  // namespace ffg
