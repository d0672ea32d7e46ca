#include "latdisc/metric_stats.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/parallel.hpp"
#include "latdisc/rng.hpp"

namespace latdisc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kFivePi3 = 5 * kPi * kPi * kPi;

BigInt random_bits(std::mt19937_64& rng, unsigned bits) {
  BigInt z = 0;
  const unsigned words = (bits + 63) / 64;
  for (unsigned w = 0; w < words; ++w) {
    z <<= 64;
    z += from_u64(rng());
  }
  const unsigned extra = words * 64 - bits;
  if (extra) z >>= extra;
  return z;
}

// floor((2^(U/2^B) - 1) 2^B)
BigInt gauss_mantissa(const BigInt& U, unsigned bits) {
  mpfr_t u;
  mpfr_init2(u, bits + 64);
  mpfr_set_z(u, U.get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(u, u, bits, MPFR_RNDN);
  mpfr_exp2(u, u, MPFR_RNDD);
  mpfr_sub_ui(u, u, 1, MPFR_RNDD);
  mpfr_mul_2ui(u, u, bits, MPFR_RNDD);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), u, MPFR_RNDD);
  mpfr_clear(u);
  if (out < 0) out = 0;
  const BigInt top = BigInt(1) << bits;
  if (out >= top) out = top - 1;
  return out;
}

double normalized(double d2sq, std::uint64_t N) {
  const double l = std::log(static_cast<double>(N));
  return kFivePi3 * d2sq / (l * l);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

EmpiricalDistribution finish(SweepResult& r) {
  std::vector<double> xs;
  xs.reserve(r.items.size());
  for (const auto& it : r.items) xs.push_back(it.stat);
  return EmpiricalDistribution::from(std::move(xs));
}

}  // namespace

double levy_density(double x) {
  if (x <= 0) return 0.0;
  return std::exp(-1 / (2 * x)) / (std::sqrt(2 * kPi) * std::pow(x, 1.5));
}

double levy_cdf(double t) {
  if (t <= 0) return 0.0;
  if (std::isinf(t)) return 1.0;
  return std::erfc(1 / std::sqrt(2 * t));
}

EmpiricalDistribution EmpiricalDistribution::from(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return {std::move(xs)};
}

double EmpiricalDistribution::cdf(double t) const {
  if (samples.empty()) return 0.0;
  const auto it = std::upper_bound(samples.begin(), samples.end(), t);
  return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

double kolmogorov_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf) {
  const std::size_t n = emp.n();
  if (n == 0) throw ValidationError("empirical distribution is empty");
  const double nn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double F = cdf(emp.samples[i - 1]);
    d = std::max({d, std::fabs(static_cast<double>(i) / nn - F), std::fabs(static_cast<double>(i - 1) / nn - F)});
  }
  return d;
}

FareySequence::FareySequence(std::uint64_t Q) : Q_(Q), d_(Q) {
  if (Q < 1) throw ValidationError("Q must be >= 1");
}

bool FareySequence::next(Fraction& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    out = {0, 1};
    return true;
  }
  out = {c_, d_};
  if (c_ == 1 && d_ == 1) {
    done_ = true;
    return true;
  }
  const std::uint64_t k = (Q_ + b_) / d_;
  const std::uint64_t e = k * c_ - a_, f = k * d_ - b_;
  a_ = c_;
  b_ = d_;
  c_ = e;
  d_ = f;
  return true;
}

std::vector<Fraction> farey_enumerate(std::uint64_t Q) {
  std::vector<Fraction> out;
  FareySequence seq(Q);
  Fraction f;
  while (seq.next(f)) out.push_back(f);
  return out;
}

std::uint64_t farey_count(std::uint64_t Q) {
  std::vector<std::uint64_t> phi(Q + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t i = 2; i <= Q; ++i)
    if (phi[i] == i)
      for (std::uint64_t j = i; j <= Q; j += i) phi[j] -= phi[j] / i;
  std::uint64_t s = 1;
  for (std::uint64_t q = 1; q <= Q; ++q) s += phi[q];
  return s;
}

std::vector<Fraction> farey_sample(std::uint64_t Q, std::size_t M, std::uint64_t seed) {
  if (Q < 1) throw ValidationError("Q must be >= 1");
  std::vector<Fraction> out;
  out.reserve(M);
  for (std::size_t i = 0; i < M; ++i) {
    auto rng = substream(seed, i);
    for (;;) {
      const std::uint64_t q = 1 + rng() % Q;
      const std::uint64_t p = 1 + rng() % Q;
      if (p <= q && gcd_u64(p, q) == 1) {
        out.push_back({p, q});
        break;
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> quotients_of(const Fraction& f) {
  if (f.q == 0 || f.p > f.q) throw ValidationError("expected p/q in [0, 1]");
  std::vector<std::uint64_t> a;
  std::uint64_t p = f.p, q = f.q;
  // p/q = [0; a_1, ...]: first step inverts
  while (p != 0) {
    a.push_back(q / p);
    const std::uint64_t r = q % p;
    q = p;
    p = r;
  }
  return a;
}

Fraction reverse_quotients(const Fraction& f) {
  auto a = quotients_of(f);
  if (a.empty()) return {0, 1};
  if (a.size() % 2 == 1 && a.back() > 1) {
    --a.back();
    a.push_back(1);
  }
  // evaluate [0; a_r, ..., a_1] from the innermost term a_1 outward
  std::uint64_t p_num = 0, p_den = 1;
  for (const std::uint64_t ak : a) {
    const std::uint64_t num = p_den;
    p_den = ak * p_den + p_num;
    p_num = num;
  }
  return {p_num, p_den};
}

TailCount pq_tail_check(std::uint64_t Q, std::size_t k, std::uint64_t t) {
  if (Q > 3000) throw ValidationError("Q too large for full enumeration (max 3000)");
  if (k < 1 || t < 1) throw ValidationError("k and t must be positive");
  TailCount out;
  FareySequence seq(Q);
  Fraction f;
  while (seq.next(f)) {
    const auto a = quotients_of(f);
    if (a.size() >= k && a[k - 1] >= t) ++out.count;
  }
  out.bound = 2.0 * static_cast<double>(Q) * static_cast<double>(Q) / static_cast<double>(t);
  // the bound is compared in exact integers: count * t <= 2 Q^2
  out.holds = static_cast<unsigned __int128>(out.count) * t <= 2 * static_cast<unsigned __int128>(Q) * Q;
  return out;
}

IrrationalSample sample_irrational(Measure m, unsigned bits, std::uint64_t seed, std::uint64_t index,
                                   std::uint64_t attempt) {
  if (bits < 128) throw ValidationError("sampling needs at least 128 bits");
  for (std::uint64_t a = attempt;; ++a) {
    auto rng = substream(seed, index, a);
    const BigInt U = random_bits(rng, bits);
    BigInt mant = m == Measure::Lebesgue ? U : gauss_mantissa(U, bits);
    if (mant == 0) continue;
    ContinuedFraction cf = truncated_cf_of_dyadic(mant, bits);
    return IrrationalSample{std::move(mant), bits, std::move(cf), a - attempt + 1};
  }
}

std::size_t K_N(const ContinuedFraction& cf, std::uint64_t N) {
  if (N < 1) throw ValidationError("N must be >= 1");
  const BigInt target = from_u64(N);
  BigInt q_prev = 1, q = cf.has(1) ? cf.quotient(1) : BigInt(0);
  if (!cf.has(1)) {
    if (cf.is_truncated()) throw PrecisionExhausted("expansion too short for K_N");
    throw ValidationError("expansion too short for K_N");
  }
  std::size_t K = 1;
  // invariant: q = q_K, q_prev = q_{K-1}
  while (q < target) {
    if (!cf.has(K + 1)) {
      if (cf.is_truncated()) throw PrecisionExhausted("expansion ends before q_K >= N");
      throw ValidationError("expansion ends before q_K >= N");
    }
    BigInt next = cf.quotient(K + 1) * q + q_prev;
    q_prev = std::move(q);
    q = std::move(next);
    ++K;
  }
  return K;
}

double samur_stat(const ContinuedFraction& cf, std::size_t K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  const CFStats st = cf_stats(cf, K);
  const double l2 = std::log(2.0);
  const double KK = static_cast<double>(K);
  return 2 * l2 * l2 / kPi * st.sum_a2.get_d() / (KK * KK);
}

Statistic lattice_statistic(const Alpha& alpha, std::uint64_t N, Estimator e, Variant v) {
  if (N < 2) throw ValidationError("N must be >= 2 (log N = 0 otherwise)");
  Statistic s;
  switch (e) {
    case Estimator::Exact: {
      const auto P = v == Variant::S ? build_S(alpha, N) : build_L(alpha, N);
      s.value = normalized(d2_exact_fast(P).squared(), N);
      break;
    }
    case Estimator::Prop1Mid: {
      const Enclosure enc = v == Variant::S ? prop1_enclosure_S(alpha, N) : prop1_enclosure_L(alpha, N);
      s.value = normalized(enc.mid(), N);
      s.enclosure_width = normalized(enc.hi - enc.lo, N);
      break;
    }
    case Estimator::SamurStat:
      s.value = samur_stat(alpha.cf(), K_N(alpha.cf(), N));
      break;
  }
  return s;
}

SweepResult theorem6_experiment(const SweepConfig& cfg) {
  if (cfg.Q < 2) throw ValidationError("Q must be >= 2");
  std::vector<Fraction> fr;
  if (cfg.mode == SweepConfig::Mode::FareyFull) {
    fr = farey_enumerate(cfg.Q);
  } else if (cfg.mode == SweepConfig::Mode::FareySample) {
    fr = farey_sample(cfg.Q, cfg.M, cfg.seed);
  } else {
    throw ValidationError("theorem6_experiment needs a Farey mode");
  }
  SweepResult r;
  std::vector<Fraction> kept;
  for (const auto& f : fr) {
    if (f.q < 2) {
      ++r.excluded;
    } else {
      kept.push_back(f);
    }
  }
  r.items.resize(kept.size());
  parallel_for(kept.size(), cfg.threads, [&](std::size_t i) {
    const Fraction f = kept[i];
    const Alpha a = Alpha::rational(from_u64(f.p), from_u64(f.q));
    SweepItem& it = r.items[i];
    it.id = i;
    it.q_or_seed = std::to_string(f.p) + "/" + std::to_string(f.q);
    it.estimator = cfg.estimator;
    if (cfg.estimator == Estimator::SamurStat) {
      it.stat = samur_stat(a.cf(), a.cf().length().value());
    } else {
      const Statistic s = lattice_statistic(a, f.q, cfg.estimator, cfg.variant);
      it.stat = s.value;
      it.enclosure_width = s.enclosure_width;
    }
  });
  r.dist = finish(r);
  if (r.dist.n() > 0) r.ks = kolmogorov_distance(r.dist, levy_cdf);
  return r;
}

SweepResult theorem4_experiment(const SweepConfig& cfg) {
  if (cfg.mode != SweepConfig::Mode::Irrational) throw ValidationError("theorem4_experiment needs irrational mode");
  if (cfg.M < 1) throw ValidationError("M must be >= 1");
  SweepResult r;
  r.items.resize(cfg.M);
  std::vector<std::uint64_t> redraws(cfg.M, 0);
  parallel_for(cfg.M, cfg.threads, [&](std::size_t i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      if (attempt > 64) throw PrecisionExhausted("sample " + std::to_string(i) + " kept exhausting precision");
      const IrrationalSample s = sample_irrational(cfg.measure, cfg.bits, cfg.seed, i, attempt);
      try {
        const Statistic st = lattice_statistic(s.alpha(), cfg.N, cfg.estimator, cfg.variant);
        SweepItem& it = r.items[i];
        it.id = i;
        it.q_or_seed = std::to_string(i);
        it.stat = st.value;
        it.estimator = cfg.estimator;
        it.enclosure_width = st.enclosure_width;
        redraws[i] = attempt;
        return;
      } catch (const PrecisionExhausted&) {
      }
    }
  });
  for (auto v : redraws) r.resampled += v;
  r.dist = finish(r);
  r.ks = kolmogorov_distance(r.dist, levy_cdf);
  return r;
}

TrimmedSumReport trimmed_sum_diag(Measure m, std::size_t K, std::size_t M, std::uint64_t seed, unsigned threads) {
  if (K < 2 || M < 1) throw ValidationError("trimmed sums need K >= 2 and M >= 1");
  const unsigned bits = static_cast<unsigned>(4 * K + 256);
  std::vector<double> vals(M);
  parallel_for(M, threads, [&](std::size_t i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const IrrationalSample s = sample_irrational(m, bits, seed, i, attempt);
      if (!s.cf.has(K)) continue;
      BigInt sum = 0, mx = 0;
      for (std::size_t k = 1; k <= K; ++k) {
        const BigInt a = s.cf.quotient(k);
        sum += a;
        if (a > mx) mx = a;
      }
      const double KK = static_cast<double>(K);
      vals[i] = BigInt(sum - mx).get_d() / (KK * std::log(KK));
      return;
    }
  });
  TrimmedSumReport rep;
  rep.mean = std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(M);
  rep.target = 1 / std::log(2.0);
  rep.pre_asymptotic = K < 100;
  return rep;
}

KendallTrend kendall_trend(const std::vector<double>& ys) {
  const std::size_t n = ys.size();
  if (n < 3) throw ValidationError("Kendall trend needs at least 3 values");
  long long s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += (ys[j] > ys[i]) - (ys[j] < ys[i]);
  const double nn = static_cast<double>(n);
  KendallTrend k;
  k.tau = static_cast<double>(s) / (nn * (nn - 1) / 2);
  const double var = 2 * (2 * nn + 5) / (9 * nn * (nn - 1));
  k.z = k.tau / std::sqrt(var);
  k.p_value = std::erfc(std::fabs(k.z) / std::sqrt(2.0));
  return k;
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::Exact:
      return "exact";
    case Estimator::Prop1Mid:
      return "prop1_mid";
    case Estimator::SamurStat:
      return "samur_stat";
  }
  return "?";
}

std::string to_string(Measure m) { return m == Measure::Lebesgue ? "lebesgue" : "gauss"; }

}  // namespace latdisc
