#pragma once

// Distributional experiments over Farey fractions and random reals, and the
// statistics used to compare them with the Levy law.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latdisc/alpha.hpp"
#include "latdisc/parseval.hpp"

namespace latdisc {

/// Standard Levy law: density e^{-1/(2x)} / (sqrt(2 pi) x^{3/2}) on (0, inf).
double levy_density(double x);
double levy_cdf(double t);

struct EmpiricalDistribution {
  std::vector<double> samples;  // ascending

  static EmpiricalDistribution from(std::vector<double> xs);
  std::size_t n() const { return samples.size(); }
  double cdf(double t) const;
};

double kolmogorov_distance(const EmpiricalDistribution& emp, const std::function<double(double)>& cdf);

struct Fraction {
  std::uint64_t p = 0, q = 1;
  bool operator==(const Fraction&) const = default;
};

/// Next-term iteration over F_Q in increasing order.
class FareySequence {
 public:
  explicit FareySequence(std::uint64_t Q);
  bool next(Fraction& out);

 private:
  std::uint64_t Q_, a_ = 0, b_ = 1, c_ = 1, d_;
  bool started_ = false, done_ = false;
};

std::vector<Fraction> farey_enumerate(std::uint64_t Q);
/// 1 + sum_{q<=Q} phi(q)
std::uint64_t farey_count(std::uint64_t Q);

/// Uniform over the reduced p/q with 1 <= p <= q <= Q: p and q uniform in
/// [1, Q], kept when p <= q and gcd(p, q) = 1.
std::vector<Fraction> farey_sample(std::uint64_t Q, std::size_t M, std::uint64_t seed);

/// Partial quotients of p/q in the canonical expansion (last term > 1 unless p/q = 1).
std::vector<std::uint64_t> quotients_of(const Fraction& f);
/// [0; a_1, ..., a_r] -> [0; a_r, ..., a_1] = q_{r-1} / q_r, using the
/// expansion of even length r (1/1 = [0; 1] is the one exception).
Fraction reverse_quotients(const Fraction& f);

struct TailCount {
  std::uint64_t count = 0;
  double bound = 0.0;  // 2 Q^2 / t
  bool holds = false;
};
/// Number of p/q in F_Q whose expansion has a_k >= t.
TailCount pq_tail_check(std::uint64_t Q, std::size_t k, std::uint64_t t);

enum class Measure { Lebesgue, Gauss };

struct IrrationalSample {
  BigInt mantissa;  // alpha = mantissa / 2^bits, in (0, 1)
  unsigned bits = 0;
  ContinuedFraction cf;  // truncated where q_k^2 > 2^(bits-64)
  std::uint64_t attempts = 1;

  Alpha alpha() const { return Alpha::dyadic(mantissa, bits); }
};

/// Sample number `index` of the stream `seed`. Zero draws are redrawn.
IrrationalSample sample_irrational(Measure m, unsigned bits, std::uint64_t seed, std::uint64_t index = 0,
                                   std::uint64_t attempt = 0);

enum class Estimator { Exact, Prop1Mid, SamurStat };

struct SweepConfig {
  enum class Mode { FareyFull, FareySample, Irrational };
  Mode mode = Mode::FareyFull;
  std::uint64_t Q = 100;
  std::size_t M = 1000;
  std::uint64_t seed = 1;
  std::uint64_t N = 1000000;
  Measure measure = Measure::Lebesgue;
  Estimator estimator = Estimator::Exact;
  Variant variant = Variant::S;
  unsigned bits = 256;
  unsigned threads = 1;
};

struct SweepItem {
  std::uint64_t id = 0;
  std::string q_or_seed;  // "p/q" for Farey items, the sample's stream index otherwise
  double stat = 0.0;
  Estimator estimator = Estimator::Exact;
  double enclosure_width = 0.0;  // prop1_mid only
};

struct SweepResult {
  std::vector<SweepItem> items;
  EmpiricalDistribution dist;
  double ks = 0.0;
  std::uint64_t resampled = 0;
  std::uint64_t excluded = 0;  // q = 1 entries
};

/// 5 pi^3 D2^2(S(p/q, q)) / log^2 q over F_Q (or a sample), q >= 2.
SweepResult theorem6_experiment(const SweepConfig& cfg);
/// 5 pi^3 D2^2(S(alpha, N)) / log^2 N over random alpha, by the configured estimator.
SweepResult theorem4_experiment(const SweepConfig& cfg);

/// The K with q_{K-1} < N <= q_K, at least 1.
std::size_t K_N(const ContinuedFraction& cf, std::uint64_t N);

struct Statistic {
  double value = 0.0;
  double enclosure_width = 0.0;
};
/// One sample of the normalized statistic. N >= 2.
Statistic lattice_statistic(const Alpha& alpha, std::uint64_t N, Estimator e, Variant v = Variant::S);
/// (2 log^2 2 / pi) K^-2 sum_{k<=K} a_k^2
double samur_stat(const ContinuedFraction& cf, std::size_t K);

struct TrimmedSumReport {
  double mean = 0.0;
  double target = 0.0;  // 1 / log 2
  bool pre_asymptotic = false;
};
/// Mean of (sum_{k<=K} a_k - max a_k) / (K log K) over M samples.
TrimmedSumReport trimmed_sum_diag(Measure m, std::size_t K, std::size_t M, std::uint64_t seed, unsigned threads = 1);

struct KendallTrend {
  double tau = 0.0;
  double z = 0.0;
  double p_value = 1.0;  // two-sided, normal approximation
};
/// Kendall tau of the sequence against its index.
KendallTrend kendall_trend(const std::vector<double>& ys);

std::string to_string(Estimator e);
std::string to_string(Measure m);

}  // namespace latdisc
