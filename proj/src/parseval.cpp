#include "latdisc/parseval.hpp"

#include <cmath>
#include <complex>

#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"

namespace latdisc {

namespace {

using u128 = unsigned __int128;
using ld = long double;

constexpr std::uint64_t kExactTerms = 2000;
constexpr std::uint64_t kEnumerateLimit = 20000000;
constexpr ld kTwoPow128 = 340282366920938463463374607431768211456.0L;
// relative slack per rounded long double operation, generously
constexpr ld kRel = 1.0L / 4611686018427387904.0L;  // 2^-62

double down(ld x) {
  const double d = static_cast<double>(x);
  return static_cast<ld>(d) <= x ? d : next_down(d);
}
double up(ld x) {
  const double d = static_cast<double>(x);
  return static_cast<ld>(d) >= x ? d : next_up(d);
}

// Running sum of nonnegative term bounds with a final widening that covers
// rounding in every term and addition.
class BoundSum {
 public:
  void add(ld lo, ld hi) {
    lo_ += lo;
    hi_ += hi;
    ++n_;
  }
  void add_exact_hi(ld hi) { hi_ += hi; }
  Interval finish() const {
    const ld slack = static_cast<ld>(n_ + 16) * kRel;
    return {down(lo_ * (1 - slack)), up(hi_ * (1 + slack))};
  }

 private:
  ld lo_ = 0, hi_ = 0;
  std::uint64_t n_ = 0;
};

// ||m alpha|| as long double bounds.
class CircleDist {
 public:
  explicit CircleDist(const Alpha& a) {
    if (a.is_rational() && fits_u64(a.x_scale()) && a.x_scale() < (BigInt(1) << 62)) {
      small_rational_ = true;
      q_ = to_u64(a.x_scale());
      p_ = to_u64(a.x_step());
    } else {
      a128_ = a.frac128();
      err_ = static_cast<ld>(a.frac128_err());
    }
  }

  bool small_rational() const { return small_rational_; }
  std::uint64_t q() const { return q_; }

  // residue distance d with ||m alpha|| = d / q, small rationals only
  std::uint64_t residue(std::uint64_t m) const {
    const std::uint64_t r = static_cast<std::uint64_t>((static_cast<u128>(m % q_) * p_) % q_);
    return std::min(r, q_ - r);
  }

  // false when ||m alpha|| is exactly zero
  bool bounds(std::uint64_t m, ld& lo, ld& hi) const {
    if (small_rational_) {
      const std::uint64_t d = residue(m);
      if (d == 0) return false;
      const ld v = static_cast<ld>(d) / static_cast<ld>(q_);
      lo = v * (1 - kRel);
      hi = v * (1 + kRel);
      return true;
    }
    const u128 x = static_cast<u128>(m) * a128_;
    const u128 d = x <= ~x ? x : (~x + 1);
    const ld e = static_cast<ld>(m) * err_;
    if (d == 0 && e == 0) return false;
    const ld v = static_cast<ld>(d);
    lo = (v - e) / kTwoPow128 * (1 - kRel);
    hi = (v + e) / kTwoPow128 * (1 + kRel);
    if (!(lo > 0)) {
      throw PrecisionExhausted("||m alpha|| at m=" + std::to_string(m) + " is not resolved at 128 bits");
    }
    return true;
  }

  // sin(pi c {m alpha}), not certified
  ld sin_pi_mult(u128 c, std::uint64_t m) const {
    constexpr ld pi = 3.141592653589793238462643383279502884L;
    if (small_rational_) {
      const u128 r = (static_cast<u128>(m % q_) * p_) % q_;
      const u128 k = (c % (2 * static_cast<u128>(q_))) * r % (2 * static_cast<u128>(q_));
      return std::sin(pi * static_cast<ld>(k) / static_cast<ld>(q_));
    }
    const u128 half = (static_cast<u128>(m) * a128_) >> 1;
    return std::sin(2 * pi * (static_cast<ld>(c * half) / kTwoPow128));
  }

  // m alpha is congruent to 0 or 1/2 mod 1
  bool half_integer(std::uint64_t m) const {
    if (small_rational_) return (2 * static_cast<u128>(residue(m))) % q_ == 0;
    return std::fabs(sin_pi_mult(2, m)) < 1e-30L;
  }

 private:
  bool small_rational_ = false;
  std::uint64_t q_ = 1, p_ = 0;
  u128 a128_ = 0;
  ld err_ = 0;
};

Interval weight_factor(Weight w) {
  const Interval pi4 = pi4_interval();
  switch (w) {
    case Weight::Unit:
      return Interval::point(1.0);
    case Weight::Quarter:
      return reciprocal_pos({4 * pi4.lo, 4 * pi4.hi});
    case Weight::Half:
      return reciprocal_pos({2 * pi4.lo, 2 * pi4.hi});
    case Weight::Eighth:
      return reciprocal_pos({8 * pi4.lo, 8 * pi4.hi});
    case Weight::LinearPi2:
      return reciprocal_pos(pi2_interval());
  }
  return Interval::point(1.0);
}

[[noreturn]] void zero_dist(std::uint64_t m) {
  throw ValidationError("||m alpha|| = 0 at m=" + std::to_string(m) + "; the Diophantine sum diverges");
}

// sum 1/(m^2 ||m alpha||^p) over [from, to], p = 2 or 1, without pi factors.
Interval core_sum(const CircleDist& cd, std::uint64_t from, std::uint64_t to, bool linear, bool skip = false) {
  BoundSum s;
  for (std::uint64_t m = from; m <= to; ++m) {
    ld lo, hi;
    if (!cd.bounds(m, lo, hi)) {
      if (skip) continue;
      zero_dist(m);
    }
    const ld m2 = static_cast<ld>(m) * static_cast<ld>(m);
    if (linear) {
      s.add(1 / (m2 * hi), 1 / (m2 * lo));
    } else {
      s.add(1 / (m2 * hi * hi), 1 / (m2 * lo * lo));
    }
  }
  return s.finish();
}

BigRational exact_core_sum(const CircleDist& cd, std::uint64_t from, std::uint64_t to, bool linear, bool skip) {
  BigRational s = 0;
  const BigInt q = from_u64(cd.q());
  for (std::uint64_t m = from; m <= to; ++m) {
    const std::uint64_t d = cd.residue(m);
    if (d == 0) {
      if (skip) continue;
      zero_dist(m);
    }
    const BigInt M = from_u64(m), D = from_u64(d);
    BigRational t = linear ? BigRational(q, M * M * D) : BigRational(q * q, M * M * D * D);
    t.canonicalize();
    s += t;
  }
  return s;
}

Interval decimal(double x) { return Interval::around(x); }

Interval zeta3_over_16pi4N(std::uint64_t N) {
  const Interval pi4 = pi4_interval();
  const Interval den = mul_nonneg({16 * pi4.lo, 16 * pi4.hi}, to_interval(from_u64(N)));
  return mul_nonneg(zeta3_interval(), reciprocal_pos(den));
}

// sum_{k=k0}^{k1} (a_{k+1} + 2)^3 q_k, exactly
BigInt cube_sum(const KChoice& c, std::size_t k0, std::size_t k1) {
  BigInt s = 0;
  for (std::size_t k = k0; k <= k1 && k < c.K; ++k) {
    const BigInt t = c.a[k] + 2;
    s += t * t * t * c.q[k];
  }
  return s;
}

// sum_{k=0}^{K-1} a_{k+1} / (den q_k), exactly
BigRational a_over_q(const KChoice& c, long den) {
  BigRational s = 0;
  for (std::size_t k = 0; k < c.K; ++k) {
    BigRational t(c.a[k], c.q[k] * den);
    t.canonicalize();
    s += t;
  }
  return s;
}

std::uint64_t to_count(const BigInt& z, const char* what) {
  if (!fits_u64(z)) throw ValidationError(std::string(what) + " too large");
  return to_u64(z);
}

struct TailSum {
  Interval value;  // sum over [from, to] of 1/(m^2 ||m alpha||^2), no pi factor
  bool enumerated = true;
};

// [from, to] with to < q_K, where every m has ||m alpha|| >= ||q_{K-1} alpha|| >= 1/(q_K + q_{K-1}).
TailSum spaced_tail(const CircleDist& cd, std::uint64_t from, std::uint64_t to, const BigInt& qK,
                    const BigInt& qK1) {
  TailSum out;
  if (to < from) {
    out.value = Interval::point(0.0);
    return out;
  }
  if (to - from + 1 <= kEnumerateLimit) {
    out.value = core_sum(cd, from, to, false);
    return out;
  }
  const std::uint64_t cut = from + kEnumerateLimit;
  const Interval head = core_sum(cd, from, cut - 1, false);
  // the j-th closest point to 0 on either side sits at distance >= j delta
  const Interval span = to_interval(BigInt(qK + qK1));
  const Interval c = to_interval(from_u64(cut));
  const Interval ratio = mul_nonneg(span, reciprocal_pos(c));
  const Interval bound = mul_nonneg(mul_nonneg(ratio, ratio), mul_nonneg(pi2_interval(), reciprocal_pos(Interval::point(3.0))));
  out.value = {head.lo, (head + bound).hi};
  out.enumerated = false;
  return out;
}

Interval scale_rational(const Interval& x, const BigRational& f) { return mul_nonneg(x, to_interval(f)); }

}  // namespace

Interval circle_dist(const Alpha& alpha, std::uint64_t m) {
  CircleDist cd(alpha);
  ld lo, hi;
  if (!cd.bounds(m, lo, hi)) return Interval::point(0.0);
  return {down(lo), up(hi)};
}

DiophSum dioph_sum(const Alpha& alpha, std::uint64_t m_to, Weight w, std::uint64_t m_from, bool skip_undefined) {
  if (m_from < 1) throw ValidationError("Diophantine sums start at m >= 1");
  DiophSum out;
  const bool linear = w == Weight::LinearPi2;
  if (m_to < m_from) {
    out.value = Interval::point(0.0);
    if (alpha.is_rational()) out.exact_core = BigRational(0);
    return out;
  }
  CircleDist cd(alpha);
  Interval core;
  if (cd.small_rational() && m_to - m_from < kExactTerms) {
    out.exact_core = exact_core_sum(cd, m_from, m_to, linear, skip_undefined);
    core = to_interval(*out.exact_core);
  } else {
    core = core_sum(cd, m_from, m_to, linear, skip_undefined);
  }
  out.value = mul_nonneg(core, weight_factor(w));
  return out;
}

KChoice choose_K(const Alpha& alpha, std::uint64_t N) {
  if (N < 1) throw ValidationError("N must be >= 1");
  const ContinuedFraction& cf = alpha.cf();
  KChoice c;
  c.q.push_back(1);
  BigInt q_prev = 0;
  const BigInt target = from_u64(N);
  for (std::size_t k = 1;; ++k) {
    if (!cf.has(k)) {
      if (cf.is_truncated()) {
        throw PrecisionExhausted("expansion ends at k=" + std::to_string(k - 1) + " before q_K >= N");
      }
      throw ValidationError("no K with q_K >= N: the expansion ends with q = " + c.q.back().get_str());
    }
    const BigInt a = cf.quotient(k);
    const BigInt q = a * c.q.back() + q_prev;
    q_prev = c.q.back();
    c.a.push_back(a);
    c.q.push_back(q);
    if (q >= target) {
      c.K = k;
      break;
    }
  }
  if (c.q.back() == target && cf.has(c.K + 1)) c.alternative = c.K + 1;
  return c;
}

AuxBoundsReport lemma1_bounds(const Alpha& alpha, std::size_t K, std::uint64_t n, std::uint64_t N,
                           std::optional<std::uint64_t> m_max) {
  if (K < 1) throw ValidationError("K must be >= 1");
  auto conv = convergents(alpha.cf(), K);
  KChoice c;
  c.K = K;
  for (auto& x : conv) c.q.push_back(x.q);
  for (std::size_t k = 1; k <= K; ++k) c.a.push_back(alpha.cf().quotient(k));
  const std::uint64_t qK = to_count(c.q[K], "q_K");
  if (from_u64(N) < c.q[K - 1]) throw ValidationError("(iii) needs N >= q_{K-1}");
  CircleDist cd(alpha);
  AuxBoundsReport rep;

  // (i)
  rep.i.lhs = dioph_sum(alpha, qK - 1, Weight::LinearPi2).value;
  rep.i.rhs = to_interval(a_over_q(c, 2)) + decimal(3.12);

  // (ii)
  const Interval two_pi2 = mul_nonneg(Interval::point(2.0), pi2_interval());
  if (n == 0) {
    rep.ii.lhs = Interval::point(0.0);
  } else {
    const std::uint64_t mm = m_max ? *m_max : std::max<std::uint64_t>(qK * n, 1000000) * 8;
    if (mm > 4000000000ULL) throw ValidationError("(ii) truncation point too large to enumerate");
    rep.m_max = mm;
    BoundSum s;
    const ld n2 = static_cast<ld>(n) * static_cast<ld>(n);
    for (std::uint64_t m = qK; m <= mm; ++m) {
      ld lo, hi;
      const ld m2 = static_cast<ld>(m) * static_cast<ld>(m);
      if (!cd.bounds(m, lo, hi)) {
        s.add(n2 / m2, n2 / m2);
        continue;
      }
      s.add(std::min(1 / (4 * hi * hi), n2) / m2, std::min(1 / (4 * lo * lo), n2) / m2);
    }
    // sum_{m > m_max} n^2/m^2 <= n^2/(m_max - 1)
    s.add_exact_hi(n2 / static_cast<ld>(mm - 1) * (1 + kRel));
    rep.ii.lhs = mul_nonneg(s.finish(), reciprocal_pos(two_pi2));
  }
  const BigRational r1(from_u64(n), c.q[K]);
  const BigRational r2 = r1 * r1;
  rep.ii.rhs = mul_nonneg(decimal(1.12), to_interval(r1)) + mul_nonneg(decimal(0.61), to_interval(r2));

  // (iii)
  {
    BoundSum s;
    const ld NN = static_cast<ld>(N);
    for (std::uint64_t m = 1; m < qK; ++m) {
      ld lo, hi;
      if (!cd.bounds(m, lo, hi)) zero_dist(m);
      ld lo2 = 0, hi2 = 0;
      const bool nz = cd.bounds(2 * m, lo2, hi2);
      const ld m2 = static_cast<ld>(m) * static_cast<ld>(m);
      const ld f_hi = nz ? std::min<ld>(1 / (4 * NN * lo2), 1) : 1;
      const ld f_lo = nz ? std::min<ld>(1 / (4 * NN * hi2), 1) : 1;
      s.add(f_lo / (m2 * hi * hi), f_hi / (m2 * lo * lo));
    }
    rep.iii.lhs = mul_nonneg(s.finish(), weight_factor(Weight::Quarter));
  }
  rep.iii.rhs = mul_nonneg(zeta3_over_16pi4N(N), to_interval(cube_sum(c, 0, K - 1))) + decimal(0.07);

  for (BoundCheck* b : {&rep.i, &rep.ii, &rep.iii}) b->holds = b->lhs.hi <= b->rhs.lo;
  return rep;
}

namespace {

struct Range {
  std::uint64_t from, to;  // inclusive; empty when to < from
};

Range tail_range(const Alpha& alpha, std::size_t K) {
  auto conv = convergents(alpha.cf(), K);
  const std::uint64_t qK = to_count(conv[K].q, "q_K");
  const std::uint64_t qK1 = to_count(conv[K - 1].q, "q_{K-1}");
  return {qK1, qK - 1};
}

Interval xi_eval(const Alpha& alpha, std::uint64_t N, std::size_t K, Variant v, bool direct) {
  if (N < 1 || K < 1) throw ValidationError("xi needs N >= 1 and K >= 1");
  const Range r = tail_range(alpha, K);
  if (r.to < r.from) return Interval::point(0.0);
  const std::uint64_t terms = r.to - r.from + 1;
  if (direct && static_cast<long double>(terms) * N > 1e9L) {
    throw ValidationError("direct xi evaluation exceeds 10^9 terms");
  }
  CircleDist cd(alpha);
  const ld NN = static_cast<ld>(N);
  BoundSum s;
  for (std::uint64_t m = r.from; m <= r.to; ++m) {
    ld lo, hi;
    if (!cd.bounds(m, lo, hi)) zero_dist(m);
    ld avg;  // (1/N) sum_n sin^2(c_n m pi alpha)
    if (direct) {
      ld acc = 0;
      for (std::uint64_t n = 0; n < N; ++n) {
        const u128 c = v == Variant::S ? 2 * static_cast<u128>(n) + 1 : static_cast<u128>(n) + 1;
        const ld sn = cd.sin_pi_mult(c, m);
        acc += sn * sn;
      }
      avg = acc / NN;
    } else if (v == Variant::S) {
      // 1/2 - sin(4N x)/(4N sin 2x), x = m pi alpha
      if (cd.half_integer(m)) {
        avg = 1;  // m alpha = 1/2 mod 1: every sin^2 equals 1
      } else {
        avg = 0.5L - cd.sin_pi_mult(4 * static_cast<u128>(N), m) / (4 * NN * cd.sin_pi_mult(2, m));
      }
    } else {
      // 1/2 + 1/(4N) - sin((2N+1) y)/(4N sin y), y = m pi alpha
      avg = 0.5L + 1 / (4 * NN) -
            cd.sin_pi_mult(2 * static_cast<u128>(N) + 1, m) / (4 * NN * cd.sin_pi_mult(1, m));
    }
    const ld m2 = static_cast<ld>(m) * static_cast<ld>(m);
    s.add(avg / (m2 * hi * hi), avg / (m2 * lo * lo));
  }
  Interval core = s.finish();
  // trigonometric evaluation is not certified; allow 1e-12 relative
  core = {next_down(core.lo * (1 - 1e-12)), next_up(core.hi * (1 + 1e-12))};
  return mul_nonneg(core, weight_factor(Weight::Half));
}

Enclosure enclose(const Alpha& alpha, std::uint64_t N, Variant v) {
  const KChoice c = choose_K(alpha, N);
  const std::size_t K = c.K;
  Enclosure e;
  e.K = K;
  e.q_prev = c.q[K - 1];
  e.q_K = c.q[K];
  const std::uint64_t qK = to_count(c.q[K], "q_K");
  const std::uint64_t qK1 = to_count(c.q[K - 1], "q_{K-1}");
  CircleDist cd(alpha);
  const Interval quarter = weight_factor(Weight::Quarter);

  const Interval main = qK1 >= 2 ? dioph_sum(alpha, qK1 - 1, Weight::Quarter).value : Interval::point(0.0);
  const TailSum tail = spaced_tail(cd, qK1, qK - 1, c.q[K], c.q[K - 1]);
  e.tail_enumerated = tail.enumerated;
  e.tail_sum = mul_nonneg(tail.value, quarter);

  const Interval zN = zeta3_over_16pi4N(N);
  const BigInt aK2 = c.a[K - 1] + 2;
  const Interval r_local = mul_nonneg(zN, to_interval(BigInt(aK2 * aK2 * aK2 * c.q[K - 1])));
  const Interval cubes = K >= 2 ? mul_nonneg(zN, to_interval(cube_sum(c, 0, K - 2))) : Interval::point(0.0);
  const Interval xi_cap{0.0, next_up(2 * e.tail_sum.hi)};

  Interval total;
  if (v == Variant::S) {
    e.main_sum = main;
    const Interval r = r_local + decimal(0.07);
    e.xi = intersect(xi_cap, {e.tail_sum.lo - r.hi, e.tail_sum.hi + r.hi});
    e.budget = to_interval(a_over_q(c, 2)) + cubes + decimal(6.28);
    total = e.main_sum + e.xi;
  } else {
    // averaging sin^2((n+1) y) over n < N leaves 1/2 + 1/(4N) plus an oscillating part
    BigRational f = BigRational(2 * from_u64(N) + 1, 2 * from_u64(N));
    f.canonicalize();
    e.main_sum = scale_rational(main, f);
    const Interval t = scale_rational(e.tail_sum, f);
    e.xi = intersect(xi_cap, {t.lo - r_local.hi, t.hi + r_local.hi});
    e.budget = to_interval(a_over_q(c, 8)) + cubes + decimal(2.78);

    const BirkhoffMoments mo = birkhoff_moments(alpha, N);
    BigRational tb = (mo.sum_T2 + mo.sum_T / 2) / from_u64(N);
    // |T^2 - T~^2| <= 2 |T~| err + err^2 with |T~| <= N
    const BigRational slack = mo.err * (2 * from_u64(N) + mo.err + BigRational(1, 2));
    const Interval tbi = to_interval(tb);
    const Interval si = to_interval(slack);
    e.t_block = {next_down(tbi.lo - si.hi), next_up(tbi.hi + si.hi)};
    total = e.t_block + e.main_sum + e.xi;
  }
  if (e.xi.lo > e.xi.hi) {
    throw InvariantViolation("xi brackets are disjoint at N=" + std::to_string(N));
  }
  e.lo = std::max(0.0, next_down(total.lo - e.budget.hi));
  e.hi = next_up(total.hi + e.budget.hi);
  return e;
}

}  // namespace

Interval xi_direct(const Alpha& alpha, std::uint64_t N, std::size_t K, Variant v) {
  return xi_eval(alpha, N, K, v, true);
}

Interval xi_closed_form(const Alpha& alpha, std::uint64_t N, std::size_t K, Variant v) {
  return xi_eval(alpha, N, K, v, false);
}

Enclosure prop1_enclosure_S(const Alpha& alpha, std::uint64_t N) { return enclose(alpha, N, Variant::S); }
Enclosure prop1_enclosure_L(const Alpha& alpha, std::uint64_t N) { return enclose(alpha, N, Variant::L); }

Prop2Ratios prop2_ratios(const Alpha& alpha, std::size_t K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  auto conv = convergents(alpha.cf(), K);
  const BigInt& q = conv[K].q;
  if (q > 20000000) throw ValidationError("q_K too large to materialize");
  const std::size_t N = static_cast<std::size_t>(to_u64(q));
  const CFStats st = cf_stats(alpha.cf(), K);
  Prop2Ratios r;
  const BigRational dS = d2_exact_fast(build_S(alpha, N)).d2_squared;
  const BigRational dL = d2_exact_fast(build_L(alpha, N)).d2_squared;
  r.ratio_S = BigRational(dS / st.sum_a2).get_d();
  r.ratio_L = BigRational(dL / BigRational(st.sum_a2 + st.alt_sum * st.alt_sum)).get_d();
  return r;
}

VarianceCheck variance_check(const Alpha& alpha, std::uint64_t N, double c, double d) {
  const KChoice k = choose_K(alpha, N);
  for (std::size_t i = 1; i <= k.K; ++i) {
    if (k.a[i - 1].get_d() > c * std::pow(static_cast<double>(i), d)) {
      throw ValidationError("a_" + std::to_string(i) + " exceeds c k^d");
    }
  }
  const BirkhoffMoments mo = birkhoff_moments(alpha, N);
  const BigInt n = from_u64(N);
  const BigRational E = mo.sum_T / n;
  const BigRational var = mo.sum_T2 / n - E * E;
  VarianceCheck out;
  out.K = k.K;
  out.lhs = var.get_d();
  const std::uint64_t qK = to_count(k.q[k.K], "q_K");
  out.rhs = dioph_sum(alpha, qK - 1, Weight::Eighth).value;
  out.residual = out.lhs - out.rhs.mid();
  return out;
}

ENCheck en_check(const Alpha& alpha, std::size_t K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  auto conv = convergents(alpha.cf(), K);
  if (conv[K].q > 50000000) throw ValidationError("q_K too large for en_check");
  const std::size_t N = static_cast<std::size_t>(to_u64(conv[K].q));
  const BirkhoffMoments mo = birkhoff_moments(alpha, N);
  ENCheck out;
  out.E = mo.sum_T / from_u64(N);
  out.main = BigRational(cf_stats(alpha.cf(), K).alt_sum, 12);
  out.main.canonicalize();
  out.residual = BigRational(out.E - out.main).get_d();
  out.err = mo.err.get_d();
  return out;
}

double trig_identity_residual(std::uint64_t N, double x) {
  if (N < 1) throw ValidationError("N must be >= 1");
  ld acc = 0;
  const ld X = x;
  for (std::uint64_t n = 0; n < N; ++n) {
    const ld s = std::sin((2 * static_cast<ld>(n) + 1) * X);
    acc += s * s;
  }
  const ld lhs = acc / static_cast<ld>(N);
  const ld rhs = 0.5L - std::sin(4 * static_cast<ld>(N) * X) / (4 * static_cast<ld>(N) * std::sin(2 * X));
  return static_cast<double>(std::fabs(lhs - rhs));
}

double finite_fourier_residual(std::uint64_t q, std::uint64_t m) {
  if (q < 1 || m % q == 0) throw ValidationError("finite Fourier identity needs q not dividing m");
  const ld pi = 3.141592653589793238462643383279502884L;
  const ld Q = static_cast<ld>(q);
  std::complex<ld> lhs = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    const ld f = 0.5L - 1 / (2 * Q) - static_cast<ld>(x) / Q;
    const ld ang = -2 * pi * static_cast<ld>((static_cast<u128>(m) * x) % q) / Q;
    lhs += f * std::complex<ld>(std::cos(ang), std::sin(ang));
  }
  const ld a = -2 * pi * static_cast<ld>(m % q) / Q;
  const std::complex<ld> rhs = 1.0L / (1.0L - std::complex<ld>(std::cos(a), std::sin(a)));
  return static_cast<double>(std::abs(lhs - rhs));
}

}  // namespace latdisc
