#include "latdisc/cf.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace latdisc {

namespace {

void require_positive_terms(const std::vector<BigInt>& terms, const char* what) {
  for (const auto& a : terms) {
    if (a < 1) throw ValidationError(std::string(what) + ": partial quotients must be >= 1");
  }
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt isqrt(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_power_of_two(std::size_t k) { return k != 0 && (k & (k - 1)) == 0; }

void append_terms(std::ostringstream& os, const std::vector<BigInt>& terms, bool& first) {
  for (const auto& a : terms) {
    if (!first) os << ',';
    os << a.get_str();
    first = false;
  }
}

}  // namespace

ContinuedFraction ContinuedFraction::finite(BigInt a0, std::vector<BigInt> terms) {
  require_positive_terms(terms, "finite expansion");
  return ContinuedFraction(std::move(a0), FiniteBody{std::move(terms)});
}

ContinuedFraction ContinuedFraction::periodic(BigInt a0, std::vector<BigInt> preperiod, std::vector<BigInt> period) {
  if (period.empty()) throw ValidationError("periodic expansion needs a nonempty period");
  require_positive_terms(preperiod, "preperiod");
  require_positive_terms(period, "period");
  return ContinuedFraction(std::move(a0), PeriodicBody{std::move(preperiod), std::move(period)});
}

ContinuedFraction ContinuedFraction::rule(BigInt a0, std::string name, std::function<BigInt(std::size_t)> term) {
  if (!term) throw ValidationError("rule expansion needs a term function");
  return ContinuedFraction(std::move(a0), RuleBody{std::move(name), std::move(term)});
}

ContinuedFraction ContinuedFraction::truncated(BigInt a0, std::vector<BigInt> terms) {
  require_positive_terms(terms, "truncated expansion");
  return ContinuedFraction(std::move(a0), TruncatedBody{std::move(terms), true});
}

std::optional<std::size_t> ContinuedFraction::length() const {
  if (const auto* f = std::get_if<FiniteBody>(&body_)) return f->terms.size();
  if (const auto* t = std::get_if<TruncatedBody>(&body_)) return t->terms.size();
  return std::nullopt;
}

bool ContinuedFraction::has(std::size_t k) const {
  const auto len = length();
  return !len || k <= *len;
}

BigInt ContinuedFraction::quotient(std::size_t k) const {
  if (k == 0) return a0_;
  return std::visit(
      [&](const auto& b) -> BigInt {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, FiniteBody>) {
          if (k > b.terms.size()) {
            throw ValidationError("index " + std::to_string(k) + " exceeds finite expansion of length " +
                                  std::to_string(b.terms.size()));
          }
          return b.terms[k - 1];
        } else if constexpr (std::is_same_v<T, TruncatedBody>) {
          if (k > b.terms.size()) {
            throw PrecisionExhausted("index " + std::to_string(k) + " beyond resolved prefix of length " +
                                     std::to_string(b.terms.size()));
          }
          return b.terms[k - 1];
        } else if constexpr (std::is_same_v<T, PeriodicBody>) {
          if (k <= b.preperiod.size()) return b.preperiod[k - 1];
          return b.period[(k - 1 - b.preperiod.size()) % b.period.size()];
        } else {
          return b.term(k);
        }
      },
      body_);
}

std::vector<BigInt> ContinuedFraction::prefix(std::size_t K) const {
  std::vector<BigInt> out;
  out.reserve(K);
  for (std::size_t k = 1; k <= K; ++k) out.push_back(quotient(k));
  return out;
}

std::string ContinuedFraction::render(std::size_t max_terms) const {
  std::ostringstream os;
  os << '[' << a0_.get_str() << ';';
  bool first = true;
  if (const auto* f = std::get_if<FiniteBody>(&body_)) {
    append_terms(os, f->terms, first);
  } else if (const auto* p = std::get_if<PeriodicBody>(&body_)) {
    append_terms(os, p->preperiod, first);
    if (!first) os << ',';
    os << "overline(";
    first = true;
    append_terms(os, p->period, first);
    os << ')';
  } else if (const auto* t = std::get_if<TruncatedBody>(&body_)) {
    const std::size_t shown = std::min(max_terms, t->terms.size());
    append_terms(os, std::vector<BigInt>(t->terms.begin(), t->terms.begin() + static_cast<std::ptrdiff_t>(shown)), first);
    os << (first ? "..." : ",...");
  } else {
    append_terms(os, prefix(max_terms), first);
    os << (first ? "..." : ",...");
  }
  os << ']';
  return os.str();
}

QuadraticSurd QuadraticSurd::make(BigInt P, BigInt D, BigInt Q) {
  if (Q == 0) throw ValidationError("surd denominator Q must be nonzero");
  if (D <= 0) throw ValidationError("surd radicand D must be positive");
  if (is_perfect_square(D)) throw ValidationError("surd radicand D must not be a perfect square");
  BigInt rem = D - P * P;
  if (rem % Q != 0) {
    const BigInt absq = abs(Q);
    P *= absq;
    D *= Q * Q;
    Q *= absq;
  }
  return QuadraticSurd{std::move(P), std::move(D), std::move(Q)};
}

double QuadraticSurd::value() const { return (P.get_d() + std::sqrt(D.get_d())) / Q.get_d(); }

bool is_perfect_square(const BigInt& n) { return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

ContinuedFraction cf_of_rational(const BigInt& p, const BigInt& q) {
  if (q < 1) throw ValidationError("denominator must be >= 1");
  BigInt a0 = floor_div(p, q);
  BigInt num = q;
  BigInt den = p - a0 * q;  // remainder in [0, q)
  std::vector<BigInt> terms;
  while (den != 0) {
    BigInt a = floor_div(num, den);
    BigInt r = num - a * den;
    terms.push_back(std::move(a));
    num = std::move(den);
    den = std::move(r);
  }
  return ContinuedFraction::finite(std::move(a0), std::move(terms));
}

ContinuedFraction alternate_expansion(const ContinuedFraction& cf) {
  const auto* f = std::get_if<FiniteBody>(&cf.body());
  if (!f) throw ValidationError("alternate expansion exists only for finite continued fractions");
  std::vector<BigInt> t = f->terms;
  BigInt a0 = cf.a0();
  if (t.empty()) {
    return ContinuedFraction::finite(a0 - 1, {BigInt(1)});
  }
  if (t.back() == 1) {
    t.pop_back();
    if (t.empty()) return ContinuedFraction::finite(a0 + 1, {});
    t.back() += 1;
  } else {
    t.back() -= 1;
    t.emplace_back(1);
  }
  return ContinuedFraction::finite(std::move(a0), std::move(t));
}

BigRational value_of(const ContinuedFraction& cf) {
  const auto* f = std::get_if<FiniteBody>(&cf.body());
  if (!f) throw ValidationError("exact value requires a finite continued fraction");
  // Fold the convergent recursion forward; p_r / q_r is the value.
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = cf.a0(), q = 1;
  for (const auto& a : f->terms) {
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
  }
  BigRational v(p, q);
  v.canonicalize();
  return v;
}

ContinuedFraction cf_of_surd(const QuadraticSurd& input) {
  const QuadraticSurd s = QuadraticSurd::make(input.P, input.D, input.Q);
  const BigInt root = isqrt(s.D);
  // floor((P + sqrt D) / Q): for Q > 0 the irrational part can be replaced by
  // floor(sqrt D); for Q < 0 by floor(sqrt D) + 1 on the negated numerator.
  auto floor_step = [&](const BigInt& P, const BigInt& Q) {
    if (Q > 0) return floor_div(P + root, Q);
    return floor_div(-P - root - 1, -Q);
  };

  BigInt P = s.P, Q = s.Q;
  const BigInt a0 = floor_step(P, Q);
  auto advance = [&](const BigInt& a) {
    BigInt P_next = a * Q - P;
    BigInt Q_next = (s.D - P_next * P_next) / Q;
    P = std::move(P_next);
    Q = std::move(Q_next);
  };
  advance(a0);

  std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
  std::vector<BigInt> quotients;
  const BigInt bound = 2 * s.D + 16;
  for (BigInt steps = 0;; ++steps) {
    if (steps > bound) throw InvariantViolation("surd expansion failed to become periodic within 2D steps");
    auto key = std::make_pair(P, Q);
    if (auto it = seen.find(key); it != seen.end()) {
      const std::size_t start = it->second;
      std::vector<BigInt> pre(quotients.begin(), quotients.begin() + static_cast<std::ptrdiff_t>(start));
      std::vector<BigInt> per(quotients.begin() + static_cast<std::ptrdiff_t>(start), quotients.end());
      return ContinuedFraction::periodic(a0, std::move(pre), std::move(per));
    }
    seen.emplace(std::move(key), quotients.size());
    BigInt a = floor_step(P, Q);
    advance(a);
    quotients.push_back(std::move(a));
  }
}

ContinuedFraction cf_rule(const std::string& name) {
  if (name == "euler_e") {
    return ContinuedFraction::rule(2, name, [](std::size_t k) -> BigInt {
      if (k % 3 == 2) return BigInt(static_cast<unsigned long>(2 * ((k + 1) / 3)));
      return BigInt(1);
    });
  }
  if (name == "tan_one") {
    return ContinuedFraction::rule(1, name, [](std::size_t k) -> BigInt {
      if (k % 2 == 1) return BigInt(static_cast<unsigned long>(k));
      return BigInt(1);
    });
  }
  if (name == "pow2_spikes") {
    return ContinuedFraction::rule(0, name, [](std::size_t k) -> BigInt {
      return BigInt(static_cast<unsigned long>(is_power_of_two(k) ? k : 1));
    });
  }
  // constant(c)
  if (name.rfind("constant(", 0) == 0 && name.size() > 10 && name.back() == ')') {
    const std::string digits = name.substr(9, name.size() - 10);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
      throw ValidationError("constant rule needs a positive integer: " + name);
    }
    BigInt c(digits);
    if (c < 1) throw ValidationError("constant rule needs c >= 1: " + name);
    return ContinuedFraction::rule(0, name, [c](std::size_t) { return c; });
  }
  throw ValidationError("unknown continued fraction rule: " + name);
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, std::size_t K) {
  std::vector<Convergent> out;
  out.reserve(K + 1);
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = cf.a0(), q = 1;
  out.push_back({0, p, q});
  for (std::size_t k = 1; k <= K; ++k) {
    const BigInt a = cf.quotient(k);
    BigInt p_next = a * p + p_prev;
    BigInt q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({k, p, q});
  }
  return out;
}

CFStats cf_stats(const ContinuedFraction& cf, std::size_t K) {
  if (K < 1) throw ValidationError("cf_stats needs K >= 1");
  CFStats s;
  s.K = K;
  for (std::size_t k = 1; k <= K; ++k) {
    const BigInt a = cf.quotient(k);
    s.sum_a += a;
    s.sum_a2 += a * a;
    if (k % 2 == 0) {
      s.alt_sum += a;
    } else {
      s.alt_sum -= a;
    }
    if (a > s.max_a) s.max_a = a;
  }
  return s;
}

OptimalityStats optimality_stats(const ContinuedFraction& cf, std::size_t K) {
  const CFStats s = cf_stats(cf, K);
  BigRational mean_sq(s.sum_a2, BigInt(static_cast<unsigned long>(K)));
  mean_sq.canonicalize();
  OptimalityStats out;
  out.mean_sq = mean_sq.get_d();
  out.alt_norm = BigInt(abs(s.alt_sum)).get_d() / std::sqrt(static_cast<double>(K));
  return out;
}

}  // namespace latdisc
