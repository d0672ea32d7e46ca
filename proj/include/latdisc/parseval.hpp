#pragma once

// Fourier-side description of D2^2 for L(alpha, N) and S(alpha, N):
// Diophantine sums, the auxiliary inequalities they obey, the remainders
// xi_S and xi_L, and certified enclosures built from the partial quotients.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latdisc/alpha.hpp"

namespace latdisc {

enum class Weight {
  Unit,       // 1 / (m^2 ||m alpha||^2)
  Quarter,    // 1 / (4 pi^4 m^2 ||m alpha||^2)
  Half,       // 1 / (2 pi^4 m^2 ||m alpha||^2)
  Eighth,     // 1 / (8 pi^4 m^2 ||m alpha||^2)
  LinearPi2,  // 1 / (pi^2 m^2 ||m alpha||)
};

struct DiophSum {
  Interval value;
  /// The sum without its pi factor, when computed in exact rational arithmetic.
  std::optional<BigRational> exact_core;
};

/// sum_{m=m_from}^{m_to} weight(m). Exact core for rational alpha and short
/// ranges; otherwise certified from the 128-bit fractional part. Terms with
/// ||m alpha|| = 0 throw unless skip_undefined is set.
DiophSum dioph_sum(const Alpha& alpha, std::uint64_t m_to, Weight w, std::uint64_t m_from = 1,
                   bool skip_undefined = false);

/// ||m alpha|| as a certified interval; exactly 0 when m alpha is an integer.
Interval circle_dist(const Alpha& alpha, std::uint64_t m);

/// The smallest K >= 1 with q_K >= N, and the convergent denominators
/// q_0 .. q_K. Throws ValidationError if the expansion ends first.
struct KChoice {
  std::size_t K = 0;
  std::vector<BigInt> q;   // q_0 .. q_K
  std::vector<BigInt> a;   // a_1 .. a_K, stored at index k-1
  /// The other admissible index when N == q_K (then K+1 also works).
  std::optional<std::size_t> alternative;
};
KChoice choose_K(const Alpha& alpha, std::uint64_t N);

struct BoundCheck {
  Interval lhs;
  Interval rhs;
  bool holds = false;  // lhs.hi <= rhs.lo
};

struct AuxBoundsReport {
  BoundCheck i;
  BoundCheck ii;
  BoundCheck iii;
  std::uint64_t m_max = 0;  // truncation point of the series in (ii)
};

/// Both sides of the three auxiliary inequalities at index K, with n for
/// (ii) and N >= q_{K-1} for (iii).
AuxBoundsReport lemma1_bounds(const Alpha& alpha, std::size_t K, std::uint64_t n, std::uint64_t N,
                           std::optional<std::uint64_t> m_max = std::nullopt);

enum class Variant { S, L };

/// (1/N) sum_{n<N} sum_{m=q_{K-1}}^{q_K-1} sin^2(c_n m pi alpha) / (2 pi^4 m^2 ||m alpha||^2),
/// c_n = 2n+1 for S and n+1 for L.
Interval xi_direct(const Alpha& alpha, std::uint64_t N, std::size_t K, Variant v);
/// The same quantity summed in closed form over n.
Interval xi_closed_form(const Alpha& alpha, std::uint64_t N, std::size_t K, Variant v);

struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t K = 0;
  BigInt q_prev;  // q_{K-1}
  BigInt q_K;
  Interval main_sum;  // sum_{m<q_{K-1}} 1/(4 pi^4 m^2 ||m alpha||^2), scaled for L
  Interval tail_sum;  // sum_{q_{K-1}<=m<q_K} of the same weight
  Interval xi;        // bracket for xi_S or xi_L
  Interval t_block;   // (1/N) sum (T_n^2 + T_n/2), L only
  Interval budget;    // the symmetric error allowance
  bool tail_enumerated = true;  // false when the tail was bounded by spacing

  double mid() const { return 0.5 * (lo + hi); }
  double half_width() const { return 0.5 * (hi - lo); }
};

Enclosure prop1_enclosure_S(const Alpha& alpha, std::uint64_t N);
Enclosure prop1_enclosure_L(const Alpha& alpha, std::uint64_t N);

struct Prop2Ratios {
  double ratio_S = 0.0;
  double ratio_L = 0.0;
};
/// D2^2(S(alpha,q_K)) / sum a_k^2 and D2^2(L(alpha,q_K)) / (sum a_k^2 + (sum (-1)^k a_k)^2).
Prop2Ratios prop2_ratios(const Alpha& alpha, std::size_t K);

struct VarianceCheck {
  double lhs = 0.0;  // (1/N) sum (T_n - E_N)^2
  Interval rhs;      // sum_{m<q_K} 1/(8 pi^4 m^2 ||m alpha||^2)
  double residual = 0.0;
  std::size_t K = 0;
};
/// Requires a_k <= c k^d on a_1..a_K.
VarianceCheck variance_check(const Alpha& alpha, std::uint64_t N, double c = 4.0, double d = 1.0);

struct ENCheck {
  BigRational E;     // E_{q_K}, exact in the representation
  BigRational main;  // (1/12) sum (-1)^k a_k
  double residual = 0.0;
  double err = 0.0;  // representation error bound on E
};
ENCheck en_check(const Alpha& alpha, std::size_t K);

/// |(1/N) sum_{n<N} sin^2((2n+1)x) - (1/2 - sin(4Nx)/(4N sin 2x))|.
double trig_identity_residual(std::uint64_t N, double x);
/// |sum_{x<q} (1/2 - 1/(2q) - x/q) e^{-2 pi i m x/q} - 1/(1 - e^{-2 pi i m/q})| for q not dividing m.
double finite_fourier_residual(std::uint64_t q, std::uint64_t m);

}  // namespace latdisc
