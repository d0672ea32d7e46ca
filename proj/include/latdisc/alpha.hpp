#pragma once

// A lattice parameter alpha, held either as an exact rational p/q or as a
// fixed-point fractional part, together with its continued fraction.
//
// Lattices only see {n alpha}, so the stored coordinate data is the
// fractional part; the continued fraction keeps a0 for display.

#include <optional>
#include <string>

#include "latdisc/arith.hpp"
#include "latdisc/cf.hpp"
#include "latdisc/fixedpoint.hpp"

namespace latdisc {

class Alpha {
 public:
  enum class Kind { Rational, FixedPoint };

  /// Exact p/q (q >= 1), reduced.
  static Alpha rational(const BigInt& p, const BigInt& q);
  /// Finite expansions become exact rationals; everything else is evaluated
  /// to `bits` bits.
  static Alpha from_cf(ContinuedFraction cf, unsigned bits = kDefaultBits);
  /// The exact dyadic mantissa / 2^bits, paired with the truncated expansion
  /// it shares with every real in its 2^-bits cell.
  static Alpha dyadic(const BigInt& mantissa, unsigned bits);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  /// True when every {n alpha} is represented without error.
  bool is_exact() const { return is_rational() || fixed_->is_exact(); }

  const ContinuedFraction& cf() const { return cf_; }

  /// Coordinates are x_n = X_n / x_scale() with X_n = n * x_step() mod x_scale().
  const BigInt& x_scale() const { return scale_; }
  const BigInt& x_step() const { return step_; }
  /// Error of x_step() in units of 1 / x_scale(); zero when exact.
  const BigInt& x_err_ulp() const { return err_; }

  /// Fractional part as an exact rational when kind() == Rational.
  BigRational frac_exact() const;
  const FixedPointReal& fixed() const { return *fixed_; }

  double to_double() const;

  /// alpha mod 1 rounded down to 128 fractional bits, and a bound on the
  /// absolute error in units of 2^-128.
  unsigned __int128 frac128() const { return frac128_; }
  double frac128_err() const { return frac128_err_; }

 private:
  Alpha(ContinuedFraction cf) : cf_(std::move(cf)) {}
  void init_128();

  Kind kind_ = Kind::Rational;
  ContinuedFraction cf_;
  std::optional<FixedPointReal> fixed_;
  BigInt scale_;
  BigInt step_;
  BigInt err_;
  unsigned __int128 frac128_ = 0;
  double frac128_err_ = 0.0;
};

}  // namespace latdisc
