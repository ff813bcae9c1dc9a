#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "culab/errors.hpp"

namespace culab {

// Exact rational over int64 with overflow guards. All quantities handled by
// the library stay tiny (numerators/denominators well below 2^32 at the
// bounds the checkers use), so int64 with a checked __int128 intermediate is
// plenty; the guard exists so a misuse aborts loudly instead of wrapping.
class Rat {
 public:
  constexpr Rat() : n_(0), d_(1) {}
  Rat(std::int64_t n) : n_(n), d_(1) {}
  Rat(std::int64_t n, std::int64_t d) : n_(n), d_(d) {
    if (d_ == 0) fail(ErrCode::BadParam, "rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return n_; }
  std::int64_t den() const { return d_; }

  bool is_zero() const { return n_ == 0; }
  bool is_integer() const { return d_ == 1; }
  bool negative() const { return n_ < 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_;
    __int128 d = (__int128)a.d_ * b.d_;
    return make(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.n_ * b.d_ - (__int128)b.n_ * a.d_;
    __int128 d = (__int128)a.d_ * b.d_;
    return make(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.n_ == 0) fail(ErrCode::BadParam, "division by zero");
    return make((__int128)a.n_ * b.d_, (__int128)a.d_ * b.n_);
  }
  Rat operator-() const { return Rat(-n_, d_); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    __int128 l = (__int128)a.n_ * b.d_;
    __int128 r = (__int128)b.n_ * a.d_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
  }

 private:
  static Rat make(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      fail(ErrCode::Overflow, "rational arithmetic exceeded 64-bit range");
    Rat r;
    r.n_ = (std::int64_t)n;
    r.d_ = (std::int64_t)d;
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  void normalize() {
    if (d_ < 0) { n_ = -n_; d_ = -d_; }
    std::int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
    if (g > 1) { n_ /= g; d_ /= g; }
  }

  std::int64_t n_;
  std::int64_t d_;
};

// A value in [0, inf]: a nonnegative rational or the symbol inf.
// Conventions: q + inf = inf, inf <= inf, 0 * inf = 0.
class ExtValue {
 public:
  constexpr ExtValue() : inf_(false), q_() {}
  ExtValue(Rat q) : inf_(false), q_(q) {
    if (q.negative()) fail(ErrCode::BadParam, "extended value must be nonnegative");
  }
  ExtValue(std::int64_t n) : ExtValue(Rat(n)) {}
  static ExtValue infinity() {
    ExtValue v;
    v.inf_ = true;
    return v;
  }

  bool is_inf() const { return inf_; }
  bool is_zero() const { return !inf_ && q_.is_zero(); }
  const Rat& finite() const {
    if (inf_) fail(ErrCode::Internal, "finite() on inf");
    return q_;
  }

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtValue(a.q_ + b.q_);
  }
  friend ExtValue operator*(const ExtValue& a, const ExtValue& b) {
    if (a.is_zero() || b.is_zero()) return ExtValue(Rat(0));
    if (a.inf_ || b.inf_) return infinity();
    return ExtValue(a.q_ * b.q_);
  }
  ExtValue scaled(const Rat& r) const {
    if (r.negative()) fail(ErrCode::BadParam, "negative scale");
    if (r.is_zero()) return ExtValue(Rat(0));
    if (inf_) return infinity();
    return ExtValue(q_ * r);
  }

  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.q_ == b.q_;
  }
  friend bool operator<=(const ExtValue& a, const ExtValue& b) {
    if (b.inf_) return true;
    if (a.inf_) return false;
    return a.q_ <= b.q_;
  }
  friend bool operator<(const ExtValue& a, const ExtValue& b) { return a <= b && !(a == b); }

  std::string str() const { return inf_ ? "inf" : q_.str(); }

 private:
  bool inf_;
  Rat q_;
};

inline ExtValue min(const ExtValue& a, const ExtValue& b) { return a <= b ? a : b; }
inline ExtValue max(const ExtValue& a, const ExtValue& b) { return a <= b ? b : a; }

}  // namespace culab
