#pragma once

// Exact sparse polynomials in Z[beta][x_1, x_2, ..., b_1, b_2, ...].

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ffg/errors.hpp"

namespace ffg {

/// Arbitrary-precision integer; expression templates off so results bind to plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// One factor v_index^exponent of a monomial; exponent is never zero.
struct VarPower {
  std::uint32_t index;
  std::uint32_t exponent;
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

using PowerList = boost::container::small_vector<VarPower, 4>;

namespace detail {

inline void set_power(PowerList& list, std::uint32_t index, std::uint32_t exponent) {
  auto it = std::lower_bound(list.begin(), list.end(), index,
                             [](const VarPower& p, std::uint32_t i) { return p.index < i; });
  if (it != list.end() && it->index == index) {
    if (exponent == 0)
      list.erase(it);
    else
      it->exponent = exponent;
  } else if (exponent != 0) {
    list.insert(it, VarPower{index, exponent});
  }
}

inline std::uint32_t get_power(const PowerList& list, std::uint32_t index) {
  for (const auto& p : list) {
    if (p.index == index) return p.exponent;
    if (p.index > index) break;
  }
  return 0;
}

inline PowerList merge_powers(const PowerList& a, const PowerList& b) {
  PowerList out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->index < j->index) {
      out.push_back(*i++);
    } else if (j->index < i->index) {
      out.push_back(*j++);
    } else {
      out.push_back(VarPower{i->index, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

// Orders dense exponent vectors lexicographically with the larger exponent
// first, so x1 precedes x2 and x1^2 precedes x1*x2.
inline int compare_powers(const PowerList& a, const PowerList& b) {
  auto i = a.begin(), j = b.begin();
  for (; i != a.end() && j != b.end(); ++i, ++j) {
    if (i->index != j->index) return i->index < j->index ? -1 : 1;
    if (i->exponent != j->exponent) return i->exponent > j->exponent ? -1 : 1;
  }
  if (i != a.end()) return -1;
  if (j != b.end()) return 1;
  return 0;
}

inline std::size_t sum_exponents(const PowerList& list) {
  std::size_t s = 0;
  for (const auto& p : list) s += p.exponent;
  return s;
}

inline std::uint32_t max_exponent(const PowerList& list) {
  std::uint32_t m = 0;
  for (const auto& p : list) m = std::max(m, p.exponent);
  return m;
}

}  // namespace detail

/**
 * A monomial beta^k * prod x_i^{e_i} * prod b_j^{d_j}.
 *
 * Stored sparsely: only nonzero exponents, sorted by variable index.
 * Variable indices start at 1 and are unbounded.
 */
class Monomial {
 public:
  Monomial() = default;

  static Monomial beta(std::uint32_t exponent = 1) {
    Monomial m;
    m.beta_ = exponent;
    return m;
  }
  static Monomial x(std::uint32_t index, std::uint32_t exponent = 1) {
    check_index(index);
    Monomial m;
    detail::set_power(m.x_, index, exponent);
    return m;
  }
  static Monomial b(std::uint32_t index, std::uint32_t exponent = 1) {
    check_index(index);
    Monomial m;
    detail::set_power(m.b_, index, exponent);
    return m;
  }

  /// Assembles a monomial from index-sorted power lists with nonzero exponents.
  static Monomial from_sorted(std::uint32_t beta, PowerList x, PowerList b) {
    Monomial m;
    m.beta_ = beta;
    m.x_ = std::move(x);
    m.b_ = std::move(b);
    return m;
  }

  std::uint32_t beta_exponent() const { return beta_; }
  const PowerList& x_powers() const { return x_; }
  const PowerList& b_powers() const { return b_; }
  std::uint32_t x_exponent(std::uint32_t index) const { return detail::get_power(x_, index); }
  std::uint32_t b_exponent(std::uint32_t index) const { return detail::get_power(b_, index); }

  void set_beta(std::uint32_t exponent) { beta_ = exponent; }
  void set_x(std::uint32_t index, std::uint32_t exponent) {
    check_index(index);
    detail::set_power(x_, index, exponent);
  }
  void set_b(std::uint32_t index, std::uint32_t exponent) {
    check_index(index);
    detail::set_power(b_, index, exponent);
  }

  std::size_t x_degree() const { return detail::sum_exponents(x_); }
  std::size_t b_degree() const { return detail::sum_exponents(b_); }
  std::size_t xb_degree() const { return x_degree() + b_degree(); }
  /// Degree with deg x = deg b = 1 and deg beta = -1.
  long graded_degree() const {
    return static_cast<long>(xb_degree()) - static_cast<long>(beta_);
  }
  bool is_one() const { return beta_ == 0 && x_.empty() && b_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& c) {
    Monomial m;
    m.beta_ = a.beta_ + c.beta_;
    m.x_ = detail::merge_powers(a.x_, c.x_);
    m.b_ = detail::merge_powers(a.b_, c.b_);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& c) {
    return a.beta_ == c.beta_ && a.x_ == c.x_ && a.b_ == c.b_;
  }

  /// Canonical total order: beta exponent ascending, then x exponents, then
  /// b exponents, each compared lexicographically by index (larger first).
  friend int compare(const Monomial& a, const Monomial& c) {
    if (a.beta_ != c.beta_) return a.beta_ < c.beta_ ? -1 : 1;
    if (int r = detail::compare_powers(a.x_, c.x_)) return r;
    return detail::compare_powers(a.b_, c.b_);
  }
  friend bool operator<(const Monomial& a, const Monomial& c) { return compare(a, c) < 0; }

  std::size_t hash() const {
    std::size_t h = beta_ * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (const auto& p : x_) mix((std::uint64_t{p.index} << 32) | p.exponent);
    mix(0xabcdefULL);
    for (const auto& p : b_) mix((std::uint64_t{p.index} << 32) | p.exponent);
    return h;
  }

 private:
  static void check_index(std::uint32_t index) {
    if (index == 0) throw invalid_argument("variable indices start at 1");
  }

  std::uint32_t beta_ = 0;
  PowerList x_;
  PowerList b_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/**
 * Truncation of Z[beta][[x, b]] to a finite quotient.
 *
 * `bound` drops every monomial whose x- plus b-degree exceeds it (beta does
 * not count). The optional caps additionally drop monomials whose total
 * x-degree, or whose exponent of any single x variable, is too large.
 * Every cap cuts out a monomial ideal, so truncation is a ring homomorphism.
 */
struct TruncationOrder {
  static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  std::size_t bound = unbounded;
  std::optional<std::size_t> x_degree;
  std::optional<std::size_t> x_exponent;

  static TruncationOrder none() { return {}; }
  static TruncationOrder at(long degree) {
    if (degree < 0) throw invalid_argument("truncation degree must be non-negative");
    return TruncationOrder{static_cast<std::size_t>(degree), std::nullopt, std::nullopt};
  }

  bool is_unbounded() const { return bound == unbounded && !x_degree && !x_exponent; }

  bool admits(const Monomial& m) const {
    if (is_unbounded()) return true;
    std::size_t xd = m.x_degree();
    if (bound != unbounded && xd + m.b_degree() > bound) return false;
    if (x_degree && xd > *x_degree) return false;
    if (x_exponent && detail::max_exponent(m.x_powers()) > *x_exponent) return false;
    return true;
  }

  /// Every cap raised by `margin`.
  TruncationOrder widened(std::size_t margin) const {
    TruncationOrder t = *this;
    if (t.bound != unbounded) t.bound += margin;
    if (t.x_degree) *t.x_degree += margin;
    if (t.x_exponent) *t.x_exponent += margin;
    return t;
  }

  /// Largest total x-degree a surviving monomial can have in `num_x` variables.
  std::size_t max_x_degree(std::size_t num_x) const {
    std::size_t m = bound;
    if (x_degree) m = std::min(m, *x_degree);
    if (x_exponent) m = std::min(m, *x_exponent * num_x);
    return m;
  }

  friend bool operator==(const TruncationOrder&, const TruncationOrder&) = default;
};

namespace detail {

// 128-bit packed monomials for the multiplication kernel.
// lo: beta in byte 7, x_1..x_7 in bytes 0..6; hi: b_1..b_8 in bytes 0..7.
// Every packed exponent is at most 63, so a sum of two never carries.
struct PackedKey {
  std::uint64_t lo;
  std::uint64_t hi;
  friend bool operator==(const PackedKey&, const PackedKey&) = default;
};

inline constexpr std::uint32_t kPackedMaxExponent = 63;
inline constexpr std::uint32_t kPackedMaxX = 7;
inline constexpr std::uint32_t kPackedMaxB = 8;
inline constexpr std::uint64_t kXBytes = 0x00FFFFFFFFFFFFFFULL;
inline constexpr std::uint64_t kXOnes = 0x0001010101010101ULL;
inline constexpr std::uint64_t kXHigh = 0x0080808080808080ULL;

/// True when some x byte of `lo` exceeds `cap` (bytes are below 128).
inline bool any_x_above(std::uint64_t lo, std::uint64_t cap) {
  const std::uint64_t xs = lo & kXBytes;
  return (((xs + (127 - cap) * kXOnes) | xs) & kXHigh) != 0;
}

inline std::size_t packed_hash(const PackedKey& k) {
  std::uint64_t h = (k.lo ^ (k.hi * 0xC2B2AE3D27D4EB4FULL)) * 0x9E3779B97F4A7C15ULL;
  return static_cast<std::size_t>(h ^ (h >> 32));
}

/// Packs m; false when it does not fit. `xd` and `xb` receive its x- and xb-degree.
inline bool pack_monomial(const Monomial& m, PackedKey& key, std::size_t& xd, std::size_t& xb) {
  if (m.beta_exponent() > kPackedMaxExponent) return false;
  key = {std::uint64_t{m.beta_exponent()} << 56, 0};
  xd = 0;
  for (const auto& v : m.x_powers()) {
    if (v.index > kPackedMaxX || v.exponent > kPackedMaxExponent) return false;
    key.lo |= std::uint64_t{v.exponent} << (8 * (v.index - 1));
    xd += v.exponent;
  }
  xb = xd;
  for (const auto& v : m.b_powers()) {
    if (v.index > kPackedMaxB || v.exponent > kPackedMaxExponent) return false;
    key.hi |= std::uint64_t{v.exponent} << (8 * (v.index - 1));
    xb += v.exponent;
  }
  return true;
}

struct PackedTerm {
  PackedKey key;
  std::uint32_t xb;
  std::uint32_t xd;
  std::int64_t small;
  std::size_t source;
};

template <class Terms>
bool pack_terms(const Terms& terms, std::vector<PackedTerm>& out, bool& small) {
  out.reserve(terms.size());
  constexpr std::int64_t kSmall = std::int64_t{1} << 31;
  std::size_t xd = 0, xb = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [m, c] = terms[k];
    PackedTerm t{{0, 0}, 0, 0, 0, k};
    if (!pack_monomial(m, t.key, xd, xb)) return false;
    t.xd = static_cast<std::uint32_t>(xd);
    t.xb = static_cast<std::uint32_t>(xb);
    if (small && c > -kSmall && c < kSmall)
      t.small = static_cast<std::int64_t>(c);
    else
      small = false;
    out.push_back(t);
  }
  return true;
}

inline Monomial unpack(const PackedKey& k) {
  PowerList x, b;
  for (std::uint32_t i = 0; i < kPackedMaxX; ++i)
    if (auto e = static_cast<std::uint32_t>((k.lo >> (8 * i)) & 0xFF)) x.push_back({i + 1, e});
  for (std::uint32_t j = 0; j < kPackedMaxB; ++j)
    if (auto e = static_cast<std::uint32_t>((k.hi >> (8 * j)) & 0xFF)) b.push_back({j + 1, e});
  return Monomial::from_sorted(static_cast<std::uint32_t>(k.lo >> 56), std::move(x), std::move(b));
}

// Key whose unsigned order is the canonical monomial order: beta ascending,
// then x_1, x_2, ... descending, then b_1, b_2, ... descending.
inline std::pair<std::uint64_t, std::uint64_t> order_key(const PackedKey& k) {
  const std::uint64_t xs = ~k.lo & kXBytes;
  return {(k.lo & ~kXBytes) | (__builtin_bswap64(xs) >> 8), __builtin_bswap64(~k.hi)};
}

inline Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? Integer(-r) : r;
}
inline const Integer& to_integer(const Integer& v) { return v; }

/// Open-addressing accumulator keyed by packed monomials.
template <class Value>
class PackedTable {
 public:
  explicit PackedTable(std::size_t expected = 0) { reset(expected); }

  void add(const PackedKey& k, const Value& v) { slot(k).value += v; }
  bool empty() const { return used_ == 0; }

  /// Appends the nonzero entries in canonical monomial order.
  template <class Terms>
  void drain_sorted(Terms& out) {
    std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::size_t>> order;
    order.reserve(used_);
    for (std::size_t s = 0; s < slots_.size(); ++s)
      if (!(slots_[s].key == kEmpty) && slots_[s].value != 0) order.emplace_back(order_key(slots_[s].key), s);
    std::sort(order.begin(), order.end());
    out.reserve(out.size() + order.size());
    for (const auto& [k, s] : order) out.emplace_back(unpack(slots_[s].key), to_integer(slots_[s].value));
    reset(0);
  }

  template <class Terms>
  void drain(Terms& out) {
    out.reserve(out.size() + used_);
    for (const auto& e : slots_)
      if (!(e.key == kEmpty) && e.value != 0) out.emplace_back(unpack(e.key), to_integer(e.value));
    reset(0);
  }

 private:
  struct Slot {
    PackedKey key;
    Value value;
  };
  static constexpr PackedKey kEmpty{~std::uint64_t{0}, ~std::uint64_t{0}};

  void reset(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < 2 * expected && cap < (std::size_t{1} << 24)) cap <<= 1;
    slots_.assign(cap, Slot{kEmpty, Value(0)});
    used_ = 0;
  }

  Slot& slot(const PackedKey& k) {
    if (2 * (used_ + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = packed_hash(k) & mask;
    while (true) {
      Slot& e = slots_[s];
      if (e.key == k) return e;
      if (e.key == kEmpty) {
        e.key = k;
        ++used_;
        return e;
      }
      s = (s + 1) & mask;
    }
  }

  void grow() {
    std::vector<Slot> slots(slots_.size() * 2, Slot{kEmpty, Value(0)});
    const std::size_t mask = slots.size() - 1;
    for (auto& e : slots_) {
      if (e.key == kEmpty) continue;
      std::size_t t = packed_hash(e.key) & mask;
      while (!(slots[t].key == kEmpty)) t = (t + 1) & mask;
      slots[t] = std::move(e);
    }
    slots_ = std::move(slots);
  }

  std::vector<Slot> slots_;
  std::size_t used_ = 0;
};

}  // namespace detail

/// Exact polynomial with canonical (sorted, zero-free) term list.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Integer>;

  Polynomial() = default;
  Polynomial(const Integer& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace_back(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(Integer(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Integer(c)) {}   // NOLINT(google-explicit-constructor)

  static Polynomial term(Monomial m, Integer c = 1) {
    Polynomial p;
    if (c != 0) p.terms_.emplace_back(std::move(m), std::move(c));
    return p;
  }
  static Polynomial beta(std::uint32_t e = 1) { return term(Monomial::beta(e)); }
  static Polynomial x(std::uint32_t i, std::uint32_t e = 1) { return term(Monomial::x(i, e)); }
  static Polynomial b(std::uint32_t j, std::uint32_t e = 1) { return term(Monomial::b(j, e)); }

  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  /// Wraps terms already in canonical order with nonzero coefficients.
  static Polynomial from_sorted_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    return p;
  }

  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& c) { return a.terms_ == c.terms_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& c) { return merge(a, c, 1); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& c) { return merge(a, c, -1); }
  friend Polynomial operator-(Polynomial a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }
  Polynomial& operator+=(const Polynomial& c) { return *this = *this + c; }
  Polynomial& operator-=(const Polynomial& c) { return *this = *this - c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& c) {
    return multiply(a, c, TruncationOrder::none());
  }
  Polynomial& operator*=(const Polynomial& c) { return *this = *this * c; }

  friend Polynomial operator*(const Integer& k, Polynomial a) {
    if (k == 0) return {};
    for (auto& t : a.terms_) t.second *= k;
    return a;
  }
  friend Polynomial operator*(long k, Polynomial a) { return Integer(k) * std::move(a); }
  friend Polynomial operator*(int k, Polynomial a) { return Integer(k) * std::move(a); }

  /// Product in the quotient ring given by `trunc`.
  friend Polynomial multiply(const Polynomial& a, const Polynomial& c, const TruncationOrder& trunc) {
    if (a.is_zero() || c.is_zero()) return {};
    if (auto fast = multiply_packed(a, c, trunc)) return std::move(*fast);
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * c.size(), 1u << 20));
    std::size_t bound = trunc.bound;
    for (const auto& [ma, ca] : a.terms_) {
      std::size_t da = ma.xb_degree();
      if (da > bound) continue;
      for (const auto& [mc, cc] : c.terms_) {
        if (bound != TruncationOrder::unbounded && da + mc.xb_degree() > bound) continue;
        Monomial m = ma * mc;
        if (!trunc.admits(m)) continue;
        auto [it, inserted] = acc.try_emplace(std::move(m), ca * cc);
        if (!inserted) it->second += ca * cc;
      }
    }
    Polynomial p;
    p.terms_.reserve(acc.size());
    for (auto& [m, k] : acc)
      if (k != 0) p.terms_.emplace_back(m, std::move(k));
    p.sort_terms();
    return p;
  }

  /// Multiplication by c*m. Monomial multiplication preserves the canonical
  /// order, so no re-sort is needed.
  Polynomial times(const Monomial& m, const Integer& c = 1) const {
    Polynomial p;
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& [k, v] : terms_) p.terms_.emplace_back(k * m, c == 1 ? v : Integer(v * c));
    return p;
  }

  /// Applies `f` to every monomial and re-normalizes (for variable renamings).
  template <class F>
  Polynomial map_monomials(F&& f) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.emplace_back(f(m), c);
    return from_terms(std::move(out));
  }

  /// Keeps the terms satisfying `keep`.
  template <class F>
  Polynomial filter(F&& keep) const {
    Polynomial p;
    for (const auto& t : terms_)
      if (keep(t.first)) p.terms_.push_back(t);
    return p;
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& l, const Term& r) { return l.first < r.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& l, const Term& r) { return l.first < r.first; });
  }

  // Product through 128-bit packed monomials. Returns nullopt when an
  // operand does not fit the packed layout.
  static std::optional<Polynomial> multiply_packed(const Polynomial& a, const Polynomial& c,
                                                   const TruncationOrder& trunc) {
    using detail::PackedTerm;
    std::vector<PackedTerm> pa, pc;
    bool small = true;
    if (!detail::pack_terms(a.terms_, pa, small) || !detail::pack_terms(c.terms_, pc, small))
      return std::nullopt;

    const std::size_t bound = trunc.bound;
    const std::size_t xcap = trunc.x_degree.value_or(TruncationOrder::unbounded);
    const bool per_var = trunc.x_exponent.has_value();
    const std::uint64_t var_cap = per_var ? std::min<std::size_t>(*trunc.x_exponent, 126) : 126;
    std::sort(pc.begin(), pc.end(), [](const PackedTerm& l, const PackedTerm& r) { return l.xd < r.xd; });

    const std::size_t expected = std::min(pa.size() * pc.size(), 4 * (pa.size() + pc.size()));
    detail::PackedTable<__int128> small_table(small ? expected : 0);
    detail::PackedTable<Integer> big_table(small ? 0 : expected);
    for (const auto& ta : pa) {
      if (ta.xb > bound || ta.xd > xcap) continue;
      for (const auto& tc : pc) {
        if (ta.xd + tc.xd > xcap) break;
        if (ta.xb + tc.xb > bound) continue;
        const std::uint64_t lo = ta.key.lo + tc.key.lo;
        if (per_var && detail::any_x_above(lo, var_cap)) continue;
        const detail::PackedKey key{lo, ta.key.hi + tc.key.hi};
        if (small)
          small_table.add(key, static_cast<__int128>(ta.small) * tc.small);
        else
          big_table.add(key, a.terms_[ta.source].second * c.terms_[tc.source].second);
      }
    }
    Polynomial p;
    if (small)
      small_table.drain_sorted(p.terms_);
    else
      big_table.drain_sorted(p.terms_);
    return p;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& c, int sign) {
    Polynomial p;
    p.terms_.reserve(a.size() + c.size());
    auto i = a.terms_.begin(), j = c.terms_.begin();
    while (i != a.terms_.end() || j != c.terms_.end()) {
      int cmp = i == a.terms_.end() ? 1 : j == c.terms_.end() ? -1 : compare(i->first, j->first);
      if (cmp < 0) {
        p.terms_.push_back(*i++);
      } else if (cmp > 0) {
        p.terms_.emplace_back(j->first, sign > 0 ? j->second : Integer(-j->second));
        ++j;
      } else {
        Integer s = sign > 0 ? i->second + j->second : i->second - j->second;
        if (s != 0) p.terms_.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> terms_;
};

/// Hash-based running sum, cheaper than repeated sorted merges.
class PolynomialAccumulator {
 public:
  void add(const Polynomial& p, const Integer& scale = 1) {
    detail::PackedKey key;
    std::size_t xd, xb;
    for (const auto& [m, c] : p.terms()) {
      if (detail::pack_monomial(m, key, xd, xb)) {
        packed_.add(key, scale == 1 ? c : c * scale);
        continue;
      }
      auto [it, inserted] = acc_.try_emplace(m, c * scale);
      if (!inserted) it->second += c * scale;
    }
  }
  void add(const Monomial& m, const Integer& c) {
    detail::PackedKey key;
    std::size_t xd, xb;
    if (detail::pack_monomial(m, key, xd, xb)) {
      packed_.add(key, c);
      return;
    }
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
  }
  void add_product(const Polynomial& a, const Polynomial& c, const TruncationOrder& trunc) {
    add(multiply(a, c, trunc));
  }
  Polynomial take() {
    std::vector<Polynomial::Term> out;
    if (acc_.empty()) {
      packed_.drain_sorted(out);
      return Polynomial::from_sorted_terms(std::move(out));
    }
    packed_.drain(out);
    out.reserve(out.size() + acc_.size());
    for (auto& [m, c] : acc_)
      if (c != 0) out.emplace_back(m, std::move(c));
    acc_.clear();
    return Polynomial::from_terms(std::move(out));
  }

 private:
  detail::PackedTable<Integer> packed_;
  std::unordered_map<Monomial, Integer, MonomialHash> acc_;
};

// ---------------------------------------------------------------------------
// Ring operations
// ---------------------------------------------------------------------------

/// x_i (+) b_j = x_i + b_j + beta x_i b_j.
inline Polynomial linear_factor(long i, long j) {
  if (i < 1 || j < 1) throw invalid_argument("linear_factor: indices must be positive");
  auto xi = static_cast<std::uint32_t>(i);
  auto bj = static_cast<std::uint32_t>(j);
  Monomial top = Monomial::beta() * Monomial::x(xi) * Monomial::b(bj);
  return Polynomial::from_terms({{Monomial::x(xi), 1}, {Monomial::b(bj), 1}, {top, 1}});
}

inline Polynomial truncate(const Polynomial& p, const TruncationOrder& trunc) {
  if (trunc.is_unbounded()) return p;
  return p.filter([&](const Monomial& m) { return trunc.admits(m); });
}

/// s_i: exchanges x_i and x_{i+1}.
inline Polynomial swap_x(const Polynomial& p, long i) {
  if (i < 1) throw invalid_argument("swap_x: index must be positive");
  auto a = static_cast<std::uint32_t>(i);
  return p.map_monomials([a](const Monomial& m) {
    Monomial r = m;
    std::uint32_t ea = m.x_exponent(a), eb = m.x_exponent(a + 1);
    r.set_x(a, eb);
    r.set_x(a + 1, ea);
    return r;
  });
}

/// The shift x_i -> x_{i+1} for every i.
inline Polynomial star_shift(const Polynomial& p) {
  return p.map_monomials([](const Monomial& m) {
    Monomial r = Monomial::beta(m.beta_exponent());
    for (const auto& v : m.x_powers()) r.set_x(v.index + 1, v.exponent);
    for (const auto& v : m.b_powers()) r.set_b(v.index, v.exponent);
    return r;
  });
}

/// Exact partial evaluation. Unassigned variables survive.
struct Substitution {
  std::optional<Integer> beta;
  std::map<std::uint32_t, Integer> x;
  std::map<std::uint32_t, Integer> b;
  std::optional<Integer> all_b;  ///< value for every b_j not listed in `b`
};

inline Polynomial substitute(const Polynomial& p, const Substitution& s) {
  auto power = [](const Integer& v, std::uint32_t e) {
    Integer r = 1;
    for (std::uint32_t k = 0; k < e; ++k) r *= v;
    return r;
  };
  std::vector<Polynomial::Term> out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Integer coeff = c;
    Monomial r;
    if (s.beta)
      coeff *= power(*s.beta, m.beta_exponent());
    else
      r.set_beta(m.beta_exponent());
    for (const auto& v : m.x_powers()) {
      if (auto it = s.x.find(v.index); it != s.x.end())
        coeff *= power(it->second, v.exponent);
      else
        r.set_x(v.index, v.exponent);
    }
    for (const auto& v : m.b_powers()) {
      if (auto it = s.b.find(v.index); it != s.b.end())
        coeff *= power(it->second, v.exponent);
      else if (s.all_b)
        coeff *= power(*s.all_b, v.exponent);
      else
        r.set_b(v.index, v.exponent);
    }
    if (coeff != 0) out.emplace_back(std::move(r), std::move(coeff));
  }
  return Polynomial::from_terms(std::move(out));
}

namespace detail {

// Numerator (1 + beta x_{i+1}) f - (1 + beta x_i) s_i(f) of pi_i.
inline Polynomial divided_difference_numerator(const Polynomial& p, std::uint32_t a) {
  return p + p.times(Monomial::beta() * Monomial::x(a + 1)) - swap_x(p, a) -
         swap_x(p, a).times(Monomial::beta() * Monomial::x(a));
}

}  // namespace detail

/**
 * Quotient and remainder of the pi_i numerator under synthetic division by
 * (x_i - x_{i+1}), treating it as a polynomial in x_i.
 */
inline std::pair<Polynomial, Polynomial> divided_difference_division(const Polynomial& p, long i) {
  if (i < 1) throw invalid_argument("divided_difference: index must be positive");
  const auto a = static_cast<std::uint32_t>(i);
  const Polynomial numerator = detail::divided_difference_numerator(p, a);
  if (numerator.is_zero()) return {};

  // Coefficients of x_i^k, with x_i removed from the monomial.
  std::map<std::uint32_t, std::vector<Polynomial::Term>> by_power;
  for (const auto& [m, c] : numerator.terms()) {
    Monomial rest = m;
    std::uint32_t e = m.x_exponent(a);
    rest.set_x(a, 0);
    by_power[e].emplace_back(std::move(rest), c);
  }
  const std::uint32_t top = by_power.rbegin()->first;
  std::vector<Polynomial> coeff(top + 1);
  for (auto& [e, ts] : by_power) coeff[e] = Polynomial::from_terms(std::move(ts));

  // q_{k-1} = a_k + x_{i+1} q_k.
  const Monomial root = Monomial::x(a + 1);
  std::vector<Polynomial> quotient(top);
  Polynomial carry;
  for (std::uint32_t k = top; k >= 1; --k) {
    carry = coeff[k] + carry.times(root);
    quotient[k - 1] = carry;
  }
  Polynomial remainder = coeff[0] + carry.times(root);

  std::vector<Polynomial::Term> out;
  for (std::uint32_t k = 0; k < top; ++k) {
    for (const auto& [m, c] : quotient[k].terms()) {
      Monomial r = m;
      r.set_x(a, k);
      out.emplace_back(std::move(r), c);
    }
  }
  return {Polynomial::from_terms(std::move(out)), std::move(remainder)};
}

/**
 * The K-theoretic divided difference
 *   pi_i(f) = ((1 + beta x_{i+1}) f - (1 + beta x_i) s_i(f)) / (x_i - x_{i+1}).
 *
 * Evaluated as d_i((1 + beta x_{i+1}) f) with the ordinary divided difference
 * d_i x_i^a x_{i+1}^c = (x_i x_{i+1})^c (x_i^{a-c-1} + ... + x_{i+1}^{a-c-1}) for a > c.
 */
inline Polynomial divided_difference(const Polynomial& p, long i) {
  if (i < 1) throw invalid_argument("divided_difference: index must be positive");
  const auto a = static_cast<std::uint32_t>(i);
  const Polynomial g = p + p.times(Monomial::beta() * Monomial::x(a + 1));
  PolynomialAccumulator acc;
  for (const auto& [m, c] : g.terms()) {
    const std::uint32_t ea = m.x_exponent(a), eb = m.x_exponent(a + 1);
    if (ea == eb) continue;
    const std::uint32_t low = std::min(ea, eb), d = std::max(ea, eb) - low;
    const Integer coeff = ea > eb ? c : Integer(-c);
    Monomial base = m;
    for (std::uint32_t k = 0; k < d; ++k) {
      base.set_x(a, low + d - 1 - k);
      base.set_x(a + 1, low + k);
      acc.add(base, coeff);
    }
  }
  return acc.take();
}

/// pi_{i_k} ... pi_{i_1} applied to p for word (i_1, ..., i_k): i_1 acts first.
inline Polynomial apply_word(Polynomial p, std::span<const long> word) {
  for (long i : word) p = divided_difference(p, i);
  return p;
}

inline Polynomial apply_word(Polynomial p, std::initializer_list<long> word) {
  return apply_word(std::move(p), std::span<const long>(word.begin(), word.size()));
}

// ---------------------------------------------------------------------------
// Degree queries
// ---------------------------------------------------------------------------

/// True when every term has graded degree `d` (deg beta = -1). Zero is homogeneous.
inline bool is_homogeneous(const Polynomial& p, long d) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [d](const Polynomial::Term& t) { return t.first.graded_degree() == d; });
}

inline std::size_t max_xb_degree(const Polynomial& p) {
  std::size_t d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.first.xb_degree());
  return d;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

inline std::string monomial_factors(const Monomial& m, bool latex) {
  std::vector<std::string> parts;
  auto power = [latex](std::string base, std::uint32_t e) {
    if (e == 1) return base;
    return latex ? base + "^{" + std::to_string(e) + "}" : base + "^" + std::to_string(e);
  };
  if (m.beta_exponent()) parts.push_back(power(latex ? "\\beta" : "beta", m.beta_exponent()));
  for (const auto& v : m.x_powers())
    parts.push_back(power(latex ? "x_{" + std::to_string(v.index) + "}" : "x" + std::to_string(v.index),
                          v.exponent));
  for (const auto& v : m.b_powers())
    parts.push_back(power(latex ? "b_{" + std::to_string(v.index) + "}" : "b" + std::to_string(v.index),
                          v.exponent));
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += latex ? " " : "*";
    out += parts[k];
  }
  return out;
}

inline std::string render(const Polynomial& p, bool latex) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string factors = monomial_factors(m, latex);
    if (factors.empty()) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + (latex ? " " : "*");
      out += factors;
    }
  }
  return out;
}

}  // namespace detail

/// Canonical text form, e.g. `x1 + b1 + beta*x1*b1`.
inline std::string to_string(const Polynomial& p) { return detail::render(p, false); }

/// LaTeX form, e.g. `x_{1} + b_{1} + \beta x_{1} b_{1}`.
inline std::string to_latex(const Polynomial& p) { return detail::render(p, true); }

inline std::string to_string(const Monomial& m) {
  std::string s = detail::monomial_factors(m, false);
  return s.empty() ? "1" : s;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace ffg
