#pragma once

// Continued fractions: finite, eventually periodic, rule-generated and
// precision-bounded expansions, with exact convergents and the partial
// quotient statistics that control lattice discrepancy.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latdisc/arith.hpp"

namespace latdisc {

struct FiniteBody {
  std::vector<BigInt> terms;  // a_1 .. a_r
};

struct PeriodicBody {
  std::vector<BigInt> preperiod;  // a_1 .. a_r
  std::vector<BigInt> period;     // a_{r+1} .. a_{r+p}, nonempty
};

struct RuleBody {
  std::string name;
  std::function<BigInt(std::size_t)> term;  // k >= 1  ->  a_k >= 1
};

/// Known-correct prefix of an expansion that continues beyond what the
/// underlying value resolves.
struct TruncatedBody {
  std::vector<BigInt> terms;
  bool precision_exhausted = true;
};

/// alpha = [a0; a1, a2, ...]. Immutable after construction.
class ContinuedFraction {
 public:
  using Body = std::variant<FiniteBody, PeriodicBody, RuleBody, TruncatedBody>;

  static ContinuedFraction finite(BigInt a0, std::vector<BigInt> terms);
  static ContinuedFraction periodic(BigInt a0, std::vector<BigInt> preperiod, std::vector<BigInt> period);
  static ContinuedFraction rule(BigInt a0, std::string name, std::function<BigInt(std::size_t)> term);
  static ContinuedFraction truncated(BigInt a0, std::vector<BigInt> terms);

  const BigInt& a0() const { return a0_; }
  const Body& body() const { return body_; }

  bool is_finite() const { return std::holds_alternative<FiniteBody>(body_); }
  bool is_periodic() const { return std::holds_alternative<PeriodicBody>(body_); }
  bool is_rule() const { return std::holds_alternative<RuleBody>(body_); }
  bool is_truncated() const { return std::holds_alternative<TruncatedBody>(body_); }

  /// Number of available partial quotients a_1.. ; nullopt for infinite
  /// (periodic or rule) expansions.
  std::optional<std::size_t> length() const;
  bool has(std::size_t k) const;

  /// a_k for k >= 1. Throws ValidationError past the end of a finite
  /// expansion and PrecisionExhausted past a truncated one.
  BigInt quotient(std::size_t k) const;
  /// a_1 .. a_K.
  std::vector<BigInt> prefix(std::size_t K) const;

  /// "[a0;a1,a2,...]"; periods print as "overline(...)", infinite rule and
  /// truncated expansions end in ",..." after max_terms quotients.
  std::string render(std::size_t max_terms = 24) const;

 private:
  ContinuedFraction(BigInt a0, Body body) : a0_(std::move(a0)), body_(std::move(body)) {}

  BigInt a0_;
  Body body_;
};

struct Convergent {
  std::size_t k = 0;
  BigInt p;
  BigInt q;
};

struct CFStats {
  std::size_t K = 0;
  BigInt sum_a;    // sum a_k
  BigInt sum_a2;   // sum a_k^2
  BigInt alt_sum;  // sum (-1)^k a_k
  BigInt max_a;
};

/// (P + sqrt(D)) / Q with D > 0 not a square and Q | D - P^2.
struct QuadraticSurd {
  BigInt P;
  BigInt D;
  BigInt Q;

  /// Validates and rescales to satisfy Q | D - P^2 without changing the value.
  static QuadraticSurd make(BigInt P, BigInt D, BigInt Q);
  double value() const;
  bool operator==(const QuadraticSurd&) const = default;
};

bool is_perfect_square(const BigInt& n);

/// Canonical expansion of p/q: last quotient >= 2 unless r = 1.
ContinuedFraction cf_of_rational(const BigInt& p, const BigInt& q);
/// The other expansion of a rational: last quotient a_r split into (a_r - 1, 1),
/// or a trailing 1 folded back into its predecessor.
ContinuedFraction alternate_expansion(const ContinuedFraction& cf);
/// Exact value of a finite expansion.
BigRational value_of(const ContinuedFraction& cf);

ContinuedFraction cf_of_surd(const QuadraticSurd& s);

/// euler_e, tan_one, pow2_spikes, constant(c).
ContinuedFraction cf_rule(const std::string& name);

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t K);

CFStats cf_stats(const ContinuedFraction& cf, std::size_t K);

struct OptimalityStats {
  double mean_sq = 0.0;   // K^-1 sum a_k^2
  double alt_norm = 0.0;  // K^-1/2 |sum (-1)^k a_k|
};
OptimalityStats optimality_stats(const ContinuedFraction& cf, std::size_t K);

}  // namespace latdisc
