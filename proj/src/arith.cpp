#include "latdisc/arith.hpp"

#include <cstdio>

namespace latdisc {

Interval to_interval(const BigRational& q) {
  // mpq_get_d truncates toward zero; one ulp either side covers the value.
  const double d = q.get_d();
  if (sgn(q) == 0) return Interval::point(0.0);
  return {next_down(d), next_up(d)};
}

Interval to_interval(const BigInt& z) {
  const double d = z.get_d();
  if (fits_i64(z) && std::fabs(d) < 9007199254740992.0) return Interval::point(d);
  return {next_down(d), next_up(d)};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_rational(const BigRational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Literals below are the nearest doubles; widening by one ulp each side
// encloses the true constant.
Interval pi_interval() { return Interval::around(3.141592653589793238462643383279502884); }
Interval pi2_interval() { return Interval::around(9.869604401089358618834490999876151135); }
Interval pi4_interval() { return Interval::around(97.40909103400243723644033268870511124); }
Interval zeta3_interval() { return Interval::around(1.202056903159594285399738161511449990); }
Interval log2_interval() { return Interval::around(0.693147180559945309417232121458176568); }

std::size_t bit_length(const BigInt& z) {
  if (sgn(z) == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

bool fits_i64(const BigInt& z) {
  static const BigInt lo = from_i64(std::numeric_limits<std::int64_t>::min());
  static const BigInt hi = from_i64(std::numeric_limits<std::int64_t>::max());
  return z >= lo && z <= hi;
}

bool fits_u64(const BigInt& z) { return sgn(z) >= 0 && bit_length(z) <= 64; }

std::uint64_t to_u64(const BigInt& z) {
  if (!fits_u64(z)) throw std::overflow_error("value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, z.get_mpz_t());
  return out;
}

std::int64_t to_i64(const BigInt& z) {
  if (!fits_i64(z)) throw std::overflow_error("value does not fit in int64");
  if (sgn(z) >= 0) return static_cast<std::int64_t>(to_u64(z));
  const BigInt neg = -z;
  if (bit_length(neg) == 64) return std::numeric_limits<std::int64_t>::min();
  return -static_cast<std::int64_t>(to_u64(neg));
}

BigInt from_u64(std::uint64_t v) {
  BigInt z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return z;
}

BigInt from_i64(std::int64_t v) {
  if (v >= 0) return from_u64(static_cast<std::uint64_t>(v));
  BigInt z = from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1u);
  return -z;
}

BigInt from_u128(unsigned __int128 v) {
  const std::uint64_t parts[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  BigInt z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, parts);
  return z;
}

BigInt from_i128(__int128 v) {
  if (v >= 0) return from_u128(static_cast<unsigned __int128>(v));
  return -from_u128(static_cast<unsigned __int128>(-(v + 1)) + 1u);
}

}  // namespace latdisc
