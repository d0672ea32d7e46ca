#include "latdisc/fixedpoint.hpp"

#include "latdisc/alpha.hpp"

namespace latdisc {

namespace {

BigInt pow2(unsigned bits) {
  BigInt z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, bits);
  return z;
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

BigInt FixedPointReal::scale() const { return pow2(bits); }

double FixedPointReal::to_double() const {
  BigRational v(mantissa, scale());
  return v.get_d();
}

FixedPointReal eval_alpha(const ContinuedFraction& cf, unsigned bits) {
  if (bits < 8) throw ValidationError("fixed-point evaluation needs at least 8 bits");
  const BigInt scale = pow2(bits);
  const BigInt target = pow2(bits + 8);
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = cf.a0(), q = 1;
  bool exact = false;
  for (std::size_t k = 1;; ++k) {
    if (q * q > target) break;
    if (!cf.has(k)) {
      if (cf.is_truncated()) {
        throw PrecisionExhausted("expansion ends at k=" + std::to_string(k - 1) + " before reaching " +
                                 std::to_string(bits) + " bits");
      }
      exact = true;
      break;
    }
    const BigInt a = cf.quotient(k);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  const BigInt frac_num = floor_mod(p, q);
  BigInt rem;
  FixedPointReal out;
  out.bits = bits;
  mpz_fdiv_qr(out.mantissa.get_mpz_t(), rem.get_mpz_t(), BigInt(frac_num * scale).get_mpz_t(), q.get_mpz_t());
  if (exact) {
    out.err_ulp = rem == 0 ? 0 : 1;
  } else {
    // |alpha - p/q| < 1/q^2 < 2^-(bits+8), plus < 1 ulp of truncation.
    out.err_ulp = 2;
  }
  return out;
}

FixedPointReal frac_multiple(const FixedPointReal& x, const BigInt& n) {
  if (n < 0) throw ValidationError("frac_multiple needs n >= 0");
  FixedPointReal out;
  out.bits = x.bits;
  mpz_fdiv_r_2exp(out.mantissa.get_mpz_t(), BigInt(x.mantissa * n).get_mpz_t(), x.bits);
  out.err_ulp = x.err_ulp * n;
  if (out.err_ulp >= pow2(x.bits / 2)) {
    throw PrecisionExhausted("error budget of {n x} exceeds 2^(bits/2) ulps");
  }
  return out;
}

FixedPointReal dist_to_int(const FixedPointReal& x) {
  FixedPointReal out = x;
  const BigInt other = x.scale() - x.mantissa;
  if (other < out.mantissa) out.mantissa = other;
  return out;
}

ContinuedFraction truncated_cf_of_dyadic(const BigInt& mantissa, unsigned bits, unsigned guard_bits) {
  const BigInt scale = pow2(bits);
  if (mantissa < 0 || mantissa >= scale) throw ValidationError("dyadic mantissa must lie in [0, 2^bits)");
  const BigInt limit = pow2(bits > guard_bits ? bits - guard_bits : 0);
  std::vector<BigInt> terms;
  BigInt num = scale, den = mantissa;
  BigInt q_prev = 0, q = 1;
  while (den != 0) {
    BigInt a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt q_next = a * q + q_prev;
    if (q_next * q_next > limit) {
      return ContinuedFraction::truncated(0, std::move(terms));
    }
    terms.push_back(std::move(a));
    q_prev = std::move(q);
    q = std::move(q_next);
    num = std::move(den);
    den = std::move(r);
  }
  return ContinuedFraction::finite(0, std::move(terms));
}

BigRational BirkhoffSums::T(std::size_t n) const {
  BigRational v(T_num.at(n), den);
  v.canonicalize();
  return v;
}

namespace {

// Per-term numerator over den: den/2 - X_l * den / scale, written so that it
// stays integral: for rationals den = 2q, for fixed point den = 2^(bits+1).
struct TermSource {
  BigInt scale;
  BigInt step;
  BigInt den;
  BigInt half;  // den / 2
  BigInt x_factor;  // den / scale
  BigInt shift;  // extra subtraction per term (starred sums)
};

template <typename Visit>
void walk_terms(const TermSource& src, std::size_t N, Visit&& visit) {
  BigInt X = 0;
  BigInt term;
  for (std::size_t l = 0; l < N; ++l) {
    term = src.half - src.shift - X * src.x_factor;
    visit(l, term);
    X += src.step;
    if (X >= src.scale) X -= src.scale;
  }
}

TermSource source_for(const Alpha& alpha) {
  TermSource s;
  s.scale = alpha.x_scale();
  s.step = alpha.x_step();
  s.den = 2 * s.scale;
  s.half = s.scale;
  s.x_factor = 2;
  s.shift = 0;
  return s;
}

BigRational alpha_error_per_T(const Alpha& alpha, std::size_t N) {
  // {l alpha} is off by at most l * err / scale, so every T_n with n < N is
  // within sum_{l<N} l * err / scale.
  if (alpha.x_err_ulp() == 0) return BigRational(0);
  const BigInt n = BigInt(static_cast<unsigned long>(N));
  BigRational e(alpha.x_err_ulp() * n * (n - 1) / 2 + alpha.x_err_ulp(), alpha.x_scale());
  e.canonicalize();
  return e;
}

}  // namespace

BirkhoffSums birkhoff_sums(const Alpha& alpha, std::size_t N) {
  if (N < 1) throw ValidationError("birkhoff_sums needs N >= 1");
  const TermSource src = source_for(alpha);
  BirkhoffSums out;
  out.N = N;
  out.den = src.den;
  out.T_num.reserve(N);
  BigInt running = 0, total = 0;
  walk_terms(src, N, [&](std::size_t, const BigInt& term) {
    running += term;
    total += running;
    out.T_num.push_back(running);
  });
  out.E = BigRational(total, src.den * BigInt(static_cast<unsigned long>(N)));
  out.E.canonicalize();
  out.err = alpha_error_per_T(alpha, N);
  return out;
}

BirkhoffSums starred_sums(const BigInt& p, const BigInt& q) {
  if (q < 1) throw ValidationError("starred_sums needs q >= 1");
  if (gcd(p, q) != 1) throw ValidationError("starred_sums needs gcd(p, q) = 1");
  if (!fits_u64(q)) throw ValidationError("starred_sums needs q < 2^64");
  TermSource src;
  src.scale = q;
  src.step = floor_mod(p, q);
  src.den = 2 * q;
  src.half = q;
  src.x_factor = 2;
  src.shift = 1;  // the -1/(2q) per term
  const std::size_t N = static_cast<std::size_t>(to_u64(q));
  BirkhoffSums out;
  out.N = N;
  out.den = src.den;
  out.T_num.reserve(N);
  BigInt running = 0, total = 0;
  walk_terms(src, N, [&](std::size_t, const BigInt& term) {
    running += term;
    total += running;
    out.T_num.push_back(running);
  });
  out.E = BigRational(total, src.den * q);
  out.E.canonicalize();
  out.err = 0;
  return out;
}

BirkhoffMoments birkhoff_moments(const Alpha& alpha, std::size_t N) {
  if (N < 1) throw ValidationError("birkhoff_moments needs N >= 1");
  const TermSource src = source_for(alpha);
  BigInt running = 0, s1 = 0, s2 = 0;
  walk_terms(src, N, [&](std::size_t, const BigInt& term) {
    running += term;
    s1 += running;
    mpz_addmul(s2.get_mpz_t(), running.get_mpz_t(), running.get_mpz_t());
  });
  BirkhoffMoments m;
  m.N = N;
  m.sum_T = BigRational(s1, src.den);
  m.sum_T.canonicalize();
  m.sum_T2 = BigRational(s2, src.den * src.den);
  m.sum_T2.canonicalize();
  m.err = alpha_error_per_T(alpha, N);
  return m;
}

}  // namespace latdisc
