#pragma once

// Constants attached to eventually periodic expansions and the numerical
// study of D2^2 growth for quadratic irrationals.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "latdisc/alpha.hpp"
#include "latdisc/parseval.hpp"

namespace latdisc {

/// (1/p) sum_{k=1}^p (-1)^{r+k} a_{r+k} for even period length p, else 0.
BigRational a_constant(const ContinuedFraction& cf);

struct LambdaConstant {
  BigInt m00, m01, m10, m11;  // product of [[0,1],[1,a]] over one period
  BigInt trace;
  BigInt det;
  double eta = 0.0;     // (trace + sqrt(trace^2 - 4 det)) / 2
  double Lambda = 0.0;  // log(eta) / p
  std::size_t period = 0;
};
LambdaConstant lambda_constant(const ContinuedFraction& cf);

/// A^2 / (144 Lambda^2)
double log_squared_target(const ContinuedFraction& cf);

/// n points from lo to hi, geometrically spaced and rounded to distinct integers.
std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, std::size_t n);

struct BeckEstimate {
  double c_hat = 0.0;
  double stderr_ = 0.0;
  double intercept = 0.0;
  std::vector<std::uint64_t> M;
  std::vector<double> sums;  // sum_{m<=M} 1/(4 pi^4 m^2 ||m alpha||^2)
};

/// Least-squares slope of the sum against log M. For rational alpha the
/// undefined terms (q | m) are left out.
BeckEstimate beck_constant_estimate(const Alpha& alpha, const std::vector<std::uint64_t>& grid);

struct ResidualRow {
  std::size_t K = 0;
  BigInt N;  // q_K
  BigRational d2_squared;
  double log_N = 0.0;
  double residual = 0.0;  // D2^2 - c log N for S, D2^2 - fitted model for L
};

struct ResidualTable {
  Variant variant = Variant::S;
  double c = 0.0;  // the constant used for S residuals
  std::vector<ResidualRow> rows;
  // L only: D2^2 = beta log^2 N + gamma log N + delta
  double beta = 0.0, gamma = 0.0, delta = 0.0;
  double beta_stderr = 0.0;
  double target_beta = 0.0;  // A^2 / (144 Lambda^2)
};

/// Exact D2^2 at N = q_K for K in [K_from, K_to]. c is used for S residuals.
ResidualTable theorem2_residuals(const Alpha& alpha, std::size_t K_from, std::size_t K_to, Variant v,
                                 double c = 0.0);

}  // namespace latdisc
