#pragma once

// Certified fixed-point reals on the circle R/Z and the Birkhoff sums
// T_n = sum_{l<=n} (1/2 - {l alpha}), E_N = N^-1 sum_{n<N} T_n.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latdisc/arith.hpp"
#include "latdisc/cf.hpp"

namespace latdisc {

inline constexpr unsigned kDefaultBits = 256;

/// Fractional part of a real as mantissa / 2^bits. The true value lies
/// within err_ulp / 2^bits of the mantissa, distance measured mod 1.
struct FixedPointReal {
  BigInt mantissa;  // in [0, 2^bits)
  unsigned bits = kDefaultBits;
  BigInt err_ulp;

  BigInt scale() const;
  double to_double() const;
  bool is_exact() const { return err_ulp == 0; }
};

/// Fractional part of the value of cf, |error| <= 2^(1-bits).
FixedPointReal eval_alpha(const ContinuedFraction& cf, unsigned bits = kDefaultBits);

/// {n x}; error grows to n * x.err_ulp.
FixedPointReal frac_multiple(const FixedPointReal& x, const BigInt& n);

/// ||x||, the distance to the nearest integer.
FixedPointReal dist_to_int(const FixedPointReal& x);

/// Partial quotients of mantissa / 2^bits, kept while q_k^2 <= 2^(bits - guard_bits),
/// i.e. the prefix shared by every real in [m, m+1) / 2^bits.
ContinuedFraction truncated_cf_of_dyadic(const BigInt& mantissa, unsigned bits, unsigned guard_bits = 64);

class Alpha;

/// T_0 .. T_{N-1} as numerators over a common denominator. Every T_n and E_N
/// is within err of the true value; err == 0 for exactly representable alpha.
struct BirkhoffSums {
  std::size_t N = 0;
  std::vector<BigInt> T_num;
  BigInt den;
  BigRational E;  // E_N
  BigRational err;

  BigRational T(std::size_t n) const;
};

BirkhoffSums birkhoff_sums(const Alpha& alpha, std::size_t N);

/// T*_n = sum_{l<=n} (1/2 - 1/(2q) - {l p / q}) for 0 <= n < q, and E*_q.
BirkhoffSums starred_sums(const BigInt& p, const BigInt& q);

/// Streaming moments of T_n for large N: sum T_n, sum T_n^2 (exact in the
/// representation) and the per-term error bound.
struct BirkhoffMoments {
  std::size_t N = 0;
  BigRational sum_T;
  BigRational sum_T2;
  BigRational err;  // bound on |T_n - true T_n| for every n < N
};
BirkhoffMoments birkhoff_moments(const Alpha& alpha, std::size_t N);

}  // namespace latdisc
