#include "latdisc/quadratic.hpp"

#include <array>
#include <cmath>

#include "latdisc/discrepancy.hpp"
#include "latdisc/lattice.hpp"

namespace latdisc {

namespace {

const PeriodicBody& periodic_body(const ContinuedFraction& cf) {
  if (!cf.is_periodic()) throw ValidationError("expected an eventually periodic expansion");
  return std::get<PeriodicBody>(cf.body());
}

// Solves the normal equations for y ~ X b with X of width W; returns b and
// the coefficient standard errors.
template <std::size_t W>
std::pair<std::array<double, W>, std::array<double, W>> least_squares(const std::vector<std::array<double, W>>& X,
                                                                       const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n <= W) throw ValidationError("not enough points for the fit");
  std::array<std::array<double, 2 * W>, W> A{};
  std::array<double, W> rhs{};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < W; ++r) {
      rhs[r] += X[i][r] * y[i];
      for (std::size_t c = 0; c < W; ++c) A[r][c] += X[i][r] * X[i][c];
    }
  }
  for (std::size_t r = 0; r < W; ++r) A[r][W + r] = 1.0;
  // Gauss-Jordan with partial pivoting, carrying the inverse along
  for (std::size_t c = 0; c < W; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < W; ++r)
      if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
    if (A[piv][c] == 0.0) throw ValidationError("degenerate design matrix");
    std::swap(A[c], A[piv]);
    const double d = A[c][c];
    for (auto& v : A[c]) v /= d;
    for (std::size_t r = 0; r < W; ++r) {
      if (r == c) continue;
      const double f = A[r][c];
      for (std::size_t k = 0; k < 2 * W; ++k) A[r][k] -= f * A[c][k];
    }
  }
  std::array<double, W> b{}, se{};
  for (std::size_t r = 0; r < W; ++r)
    for (std::size_t c = 0; c < W; ++c) b[r] += A[r][W + c] * rhs[c];
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t r = 0; r < W; ++r) fit += X[i][r] * b[r];
    ssr += (y[i] - fit) * (y[i] - fit);
  }
  const double s2 = ssr / static_cast<double>(n - W);
  for (std::size_t r = 0; r < W; ++r) se[r] = std::sqrt(s2 * A[r][W + r]);
  return {b, se};
}

}  // namespace

BigRational a_constant(const ContinuedFraction& cf) {
  const PeriodicBody& b = periodic_body(cf);
  const std::size_t r = b.preperiod.size(), p = b.period.size();
  if (p % 2 == 1) return 0;
  BigInt s = 0;
  for (std::size_t k = 1; k <= p; ++k) {
    if ((r + k) % 2 == 0) {
      s += b.period[k - 1];
    } else {
      s -= b.period[k - 1];
    }
  }
  BigRational out(s, from_u64(p));
  out.canonicalize();
  return out;
}

LambdaConstant lambda_constant(const ContinuedFraction& cf) {
  const PeriodicBody& b = periodic_body(cf);
  LambdaConstant L;
  L.period = b.period.size();
  L.m00 = 1;
  L.m01 = 0;
  L.m10 = 0;
  L.m11 = 1;
  for (const BigInt& a : b.period) {
    // right-multiply by [[0,1],[1,a]]
    BigInt n00 = L.m01, n01 = L.m00 + a * L.m01;
    BigInt n10 = L.m11, n11 = L.m10 + a * L.m11;
    L.m00 = std::move(n00);
    L.m01 = std::move(n01);
    L.m10 = std::move(n10);
    L.m11 = std::move(n11);
  }
  L.trace = L.m00 + L.m11;
  L.det = L.m00 * L.m11 - L.m01 * L.m10;
  const BigInt disc = L.trace * L.trace - 4 * L.det;
  // for large entries work with log(tr) + log((1 + sqrt(1 - 4 det/tr^2))/2)
  const double t = L.trace.get_d();
  if (std::isfinite(t) && t < 1e150) {
    L.eta = (t + std::sqrt(disc.get_d())) / 2;
    L.Lambda = std::log(L.eta) / static_cast<double>(L.period);
  } else {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, L.trace.get_mpz_t());
    const double rel = BigRational(4 * L.det, L.trace * L.trace).get_d();
    const double log_eta = std::log(mant) + static_cast<double>(exp) * std::log(2.0) + std::log((1 + std::sqrt(1 - rel)) / 2);
    L.eta = HUGE_VAL;
    L.Lambda = log_eta / static_cast<double>(L.period);
  }
  return L;
}

double log_squared_target(const ContinuedFraction& cf) {
  const double A = a_constant(cf).get_d();
  const double Lam = lambda_constant(cf).Lambda;
  return A * A / (144 * Lam * Lam);
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, std::size_t n) {
  if (lo < 1 || hi <= lo || n < 2) throw ValidationError("grid needs 1 <= lo < hi and at least two points");
  std::vector<std::uint64_t> out;
  const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    std::uint64_t v = i + 1 == n ? hi : static_cast<std::uint64_t>(std::llround(x));
    if (!out.empty() && v <= out.back()) v = out.back() + 1;
    out.push_back(v);
  }
  return out;
}

BeckEstimate beck_constant_estimate(const Alpha& alpha, const std::vector<std::uint64_t>& grid) {
  if (grid.size() < 4) throw ValidationError("grid too small: need at least 4 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) throw ValidationError("grid must be increasing and >= 1");
  }
  BeckEstimate est;
  est.M = grid;
  double acc = 0.0;
  std::uint64_t done = 0;
  std::vector<std::array<double, 2>> X;
  for (const std::uint64_t M : grid) {
    acc += dioph_sum(alpha, M, Weight::Quarter, done + 1, true).value.mid();
    done = M;
    est.sums.push_back(acc);
    X.push_back({1.0, std::log(static_cast<double>(M))});
  }
  auto [b, se] = least_squares<2>(X, est.sums);
  est.intercept = b[0];
  est.c_hat = b[1];
  est.stderr_ = se[1];
  return est;
}

ResidualTable theorem2_residuals(const Alpha& alpha, std::size_t K_from, std::size_t K_to, Variant v, double c) {
  if (K_from < 1 || K_to < K_from) throw ValidationError("bad K range");
  ResidualTable tab;
  tab.variant = v;
  tab.c = c;
  auto conv = convergents(alpha.cf(), K_to);
  for (std::size_t K = K_from; K <= K_to; ++K) {
    if (conv[K].q > 20000000) throw ValidationError("q_K beyond the instance-size guard");
    const std::size_t N = static_cast<std::size_t>(to_u64(conv[K].q));
    ResidualRow row;
    row.K = K;
    row.N = conv[K].q;
    row.d2_squared = d2_exact_fast(v == Variant::S ? build_S(alpha, N) : build_L(alpha, N)).d2_squared;
    row.log_N = std::log(static_cast<double>(N));
    row.residual = row.d2_squared.get_d() - c * row.log_N;
    tab.rows.push_back(std::move(row));
  }
  if (v == Variant::L) {
    if (alpha.cf().is_periodic()) tab.target_beta = log_squared_target(alpha.cf());
    if (tab.rows.size() > 3) {
      std::vector<std::array<double, 3>> X;
      std::vector<double> y;
      for (const auto& r : tab.rows) {
        X.push_back({r.log_N * r.log_N, r.log_N, 1.0});
        y.push_back(r.d2_squared.get_d());
      }
      auto [b, se] = least_squares<3>(X, y);
      tab.beta = b[0];
      tab.gamma = b[1];
      tab.delta = b[2];
      tab.beta_stderr = se[0];
      for (auto& r : tab.rows) r.residual = r.d2_squared.get_d() - (b[0] * r.log_N * r.log_N + b[1] * r.log_N + b[2]);
    }
  }
  return tab;
}

}  // namespace latdisc
