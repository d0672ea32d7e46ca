#pragma once

// Shared numeric vocabulary: big integers and rationals (GMP), the error
// types used across the library, and a small outward-rounded interval type.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace latdisc {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Raised when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a truncated expansion or fixed-point value cannot deliver the
/// precision an operation needs.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error("precision-exhausted: " + what) {}
};

/// Raised by checkers when a guaranteed inequality fails.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

/// Closed interval [lo, hi] of doubles. Every arithmetic helper rounds
/// outward by one ulp per operation, so an enclosure stays an enclosure.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double x) { return {x, x}; }
  /// Interval guaranteed to contain x when x was produced by one correctly
  /// rounded operation (or a decimal literal).
  static Interval around(double x) { return {next_down(x), next_up(x)}; }

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  double half_width() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  // adding an exact zero needs no rounding
  return {a.lo == 0 || b.lo == 0 ? a.lo + b.lo : next_down(a.lo + b.lo),
          a.hi == 0 || b.hi == 0 ? a.hi + b.hi : next_up(a.hi + b.hi)};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {next_down(a.lo - b.hi), next_up(a.hi - b.lo)};
}
/// Product for nonnegative intervals only (all enclosure arithmetic is on
/// nonnegative quantities).
inline Interval mul_nonneg(const Interval& a, const Interval& b) {
  const double lo = a.lo * b.lo, hi = a.hi * b.hi;
  return {lo > 0 ? next_down(lo) : 0.0, a.hi == 0 || b.hi == 0 ? 0.0 : next_up(hi)};
}
inline Interval scale_nonneg(const Interval& a, const Interval& c) { return mul_nonneg(a, c); }
/// 1/a for a with a.lo > 0.
inline Interval reciprocal_pos(const Interval& a) { return {next_down(1.0 / a.hi), next_up(1.0 / a.lo)}; }
inline Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

/// Interval containing the exact rational.
Interval to_interval(const BigRational& q);
/// Interval containing the exact integer.
Interval to_interval(const BigInt& z);

/// Renders with 17 significant digits.
std::string format_double(double x);
/// Renders as "num/den" (den omitted never; integers print as "k/1").
std::string format_rational(const BigRational& q);

// Constants as enclosing intervals.
Interval pi_interval();
Interval pi2_interval();
Interval pi4_interval();
Interval zeta3_interval();
Interval log2_interval();

/// floor(log2(z)) + 1 for z > 0, 0 for z == 0.
std::size_t bit_length(const BigInt& z);

/// True iff z fits into std::int64_t / std::uint64_t.
bool fits_i64(const BigInt& z);
bool fits_u64(const BigInt& z);
std::uint64_t to_u64(const BigInt& z);
std::int64_t to_i64(const BigInt& z);
BigInt from_u64(std::uint64_t v);
BigInt from_i64(std::int64_t v);
BigInt from_u128(unsigned __int128 v);
BigInt from_i128(__int128 v);

}  // namespace latdisc
