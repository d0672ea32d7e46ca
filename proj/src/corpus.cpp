#include "latdisc/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>

#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"
#include "latdisc/metric_stats.hpp"
#include "latdisc/parallel.hpp"
#include "latdisc/parseval.hpp"
#include "latdisc/rng.hpp"

namespace latdisc {

namespace {

std::string hex_of(const BigInt& z) { return z.get_str(16); }

struct Limits {
  std::size_t enclosure_K;
  std::uint64_t enclosure_cap;
  std::size_t period_K;
  std::uint64_t period_cap;
  std::size_t aux_K;
  std::uint64_t aux_cap;
  std::vector<std::uint64_t> tail_Q;
};

Limits limits_for(CorpusSize s) {
  if (s == CorpusSize::Small) return {8, 2000, 12, 100000, 6, 1000, {50}};
  return {14, 1000000, 20, 10000000, 12, 100000, {50, 200, 1000}};
}

bool certainly_contains(const Enclosure& e, const BigRational& exact, const BigRational& slack) {
  // compare exactly against the outward-rounded double endpoints
  const BigRational lo = BigRational(e.lo) - slack, hi = BigRational(e.hi) + slack;
  return exact >= lo && exact <= hi;
}

}  // namespace

std::vector<CorpusEntry> corpus_alphas(CorpusSize size, std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  auto add_surd = [&](long P, long D, long Q) {
    out.push_back({"surd:" + std::to_string(P) + "," + std::to_string(D) + "," + std::to_string(Q),
                   Alpha::from_cf(cf_of_surd(QuadraticSurd::make(P, D, Q)))});
  };
  add_surd(-1, 5, 2);
  add_surd(-1, 2, 1);
  add_surd(-1, 3, 1);
  out.push_back({"rule:euler_e", Alpha::from_cf(cf_rule("euler_e"))});
  out.push_back({"rule:tan_one", Alpha::from_cf(cf_rule("tan_one"))});

  const std::size_t n_rat = size == CorpusSize::Small ? 3 : 20;
  const std::size_t n_bits = size == CorpusSize::Small ? 2 : 20;
  auto rng = substream(seed, 0);
  std::set<std::pair<long, long>> seen;
  while (seen.size() < n_rat) {
    const long q = 2 + static_cast<long>(rng() % 499);
    const long p = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q - 1));
    if (std::gcd(p, q) != 1 || !seen.insert({p, q}).second) continue;
    out.push_back({std::to_string(p) + "/" + std::to_string(q), Alpha::rational(p, q)});
  }
  for (std::size_t i = 0; i < n_bits; ++i) {
    const IrrationalSample s = sample_irrational(Measure::Lebesgue, 256, seed, 1000 + i);
    out.push_back({"bits:" + hex_of(s.mantissa) + "@256", s.alpha()});
  }
  return out;
}

std::vector<std::uint64_t> corpus_N(const Alpha& alpha, std::size_t K_max, std::uint64_t cap) {
  std::set<std::uint64_t> Ns;
  const ContinuedFraction& cf = alpha.cf();
  BigInt q_prev = 1, q_prev2 = 0;
  for (std::size_t K = 1; K <= K_max && cf.has(K); ++K) {
    const BigInt q = cf.quotient(K) * q_prev + q_prev2;
    if (q > cap) break;
    const std::uint64_t a = to_u64(q_prev), b = to_u64(q);
    for (std::uint64_t N : {a, a + 1, (a + b) / 2, b})
      if (N >= 1 && N <= b) Ns.insert(N);
    q_prev2 = q_prev;
    q_prev = q;
  }
  return {Ns.begin(), Ns.end()};
}

BoundsReport check_bounds(CorpusSize size, unsigned threads, std::uint64_t seed) {
  const Limits lim = limits_for(size);
  const auto corpus = corpus_alphas(size, seed);

  struct Job {
    std::size_t entry;
    std::uint64_t N;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::uint64_t N : corpus_N(corpus[i].alpha, lim.enclosure_K, lim.enclosure_cap)) jobs.push_back({i, N});

  std::vector<std::vector<std::string>> found(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    const CorpusEntry& c = corpus[jobs[j].entry];
    const std::uint64_t N = jobs[j].N;
    for (Variant v : {Variant::S, Variant::L}) {
      const LatticePointSet P = v == Variant::S ? build_S(c.alpha, N) : build_L(c.alpha, N);
      const BigRational exact = d2_exact_fast(P).d2_squared;
      const Enclosure e = v == Variant::S ? prop1_enclosure_S(c.alpha, N) : prop1_enclosure_L(c.alpha, N);
      if (!certainly_contains(e, exact, P.d2sq_error())) {
        found[j].push_back(std::string("enclosure ") + (v == Variant::S ? "S" : "L") + " alpha=" + c.label +
                           " N=" + std::to_string(N) + " exact=" + format_double(exact.get_d()) + " not in [" +
                           format_double(e.lo) + ", " + format_double(e.hi) + "]");
      }
    }
  });

  BoundsReport rep;
  for (auto& f : found)
    for (auto& s : f) rep.violations.push_back(std::move(s));
  rep.enclosure_checks = 2 * jobs.size();

  const Interval pi4_90 = mul_nonneg(pi4_interval(), reciprocal_pos(Interval::point(90.0)));
  std::mutex mu;
  parallel_for(corpus.size(), threads, [&](std::size_t i) {
    const CorpusEntry& c = corpus[i];
    std::vector<std::string> bad;
    std::size_t n_period = 0, n_aux = 0;
    const ContinuedFraction& cf = c.alpha.cf();
    BigInt q_prev = 1, q_prev2 = 0;
    for (std::size_t K = 1; K <= lim.period_K && cf.has(K); ++K) {
      const BigInt q = cf.quotient(K) * q_prev + q_prev2;
      q_prev2 = q_prev;
      q_prev = q;
      if (q > lim.period_cap) break;
      const CFStats st = cf_stats(cf, K);
      const Interval s = dioph_sum(c.alpha, to_u64(q) - 1, Weight::Unit).value;
      const Interval main = mul_nonneg(pi4_90, to_interval(st.sum_a2));
      const double dev = std::max(s.hi - main.lo, main.hi - s.lo);
      const Interval bound = mul_nonneg(Interval::point(152.0), to_interval(st.sum_a));
      ++n_period;
      if (!(dev <= bound.lo)) bad.push_back("sum over a period alpha=" + c.label + " K=" + std::to_string(K));

      if (K <= lim.aux_K && q <= lim.aux_cap) {
        const std::uint64_t qK = to_u64(q);
        std::vector<std::uint64_t> ns = {0, 1};
        if (qK * (qK / 2) <= 1000000) ns.push_back(qK / 2);
        if (qK * qK <= 1000000) ns.push_back(qK);
        for (const std::uint64_t nn : ns) {
          const std::uint64_t m_max = std::max<std::uint64_t>(64 * qK * std::max<std::uint64_t>(nn, 1), 20000);
          const AuxBoundsReport r = lemma1_bounds(c.alpha, K, nn, qK, m_max);
          n_aux += 3;
          if (!r.i.holds) bad.push_back("auxiliary (i) alpha=" + c.label + " K=" + std::to_string(K));
          if (!r.ii.holds)
            bad.push_back("auxiliary (ii) alpha=" + c.label + " K=" + std::to_string(K) + " n=" + std::to_string(nn));
          if (!r.iii.holds) bad.push_back("auxiliary (iii) alpha=" + c.label + " K=" + std::to_string(K));
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    rep.period_checks += n_period;
    rep.aux_checks += n_aux;
    for (auto& s : bad) rep.violations.push_back(std::move(s));
  });

  for (std::uint64_t Q : lim.tail_Q) {
    for (std::size_t k = 1; k <= 10; ++k) {
      for (std::uint64_t t : {2u, 5u, 10u, 50u}) {
        ++rep.tail_checks;
        if (!pq_tail_check(Q, k, t).holds) {
          rep.violations.push_back("tail count Q=" + std::to_string(Q) + " k=" + std::to_string(k) +
                                   " t=" + std::to_string(t));
        }
      }
    }
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  rep.checks = rep.enclosure_checks + rep.period_checks + rep.aux_checks + rep.tail_checks;
  return rep;
}

}  // namespace latdisc
