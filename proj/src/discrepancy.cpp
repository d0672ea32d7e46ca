#include "latdisc/discrepancy.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace latdisc {

// With a_i = Dx - X_i, b_i = Dy - Y_i (x_i = X_i/Dx, y_i = Y_i/Dy):
//   S1 = sum_{i,j} min(a_i,a_j) min(b_i,b_j)
//   S2 = sum_i (Dx^2 - X_i^2)(Dy^2 - Y_i^2)
//   D2^2 = (18 Dx Dy S1 - 9 n S2 + 2 n^2 Dx^2 Dy^2) / (18 Dx^2 Dy^2)

namespace {

using u128 = unsigned __int128;

class LimbView {
 public:
  LimbView(const CoordArray& c, std::size_t i) {
    mpz_roinit_n(z_, reinterpret_cast<const mp_limb_t*>(c.row(i)), static_cast<mp_size_t>(c.limbs()));
  }
  mpz_srcptr get() const { return z_; }

 private:
  mpz_t z_;
};

// Unsigned accumulator of fixed width built on mpn.
class MpnAcc {
 public:
  explicit MpnAcc(std::size_t limbs) : d_(limbs, 0) {}
  void addmul(const std::uint64_t* row, std::size_t n, std::uint64_t w) {
    const mp_limb_t c = mpn_addmul_1(d_.data(), reinterpret_cast<const mp_limb_t*>(row), static_cast<mp_size_t>(n), w);
    if (c) mpn_add_1(d_.data() + n, d_.data() + n, static_cast<mp_size_t>(d_.size() - n), c);
  }
  // adds row * w * 2^64
  void addmul_shifted(const std::uint64_t* row, std::size_t n, std::uint64_t w) {
    const mp_limb_t c = mpn_addmul_1(d_.data() + 1, reinterpret_cast<const mp_limb_t*>(row), static_cast<mp_size_t>(n), w);
    if (c) mpn_add_1(d_.data() + n + 1, d_.data() + n + 1, static_cast<mp_size_t>(d_.size() - n - 1), c);
  }
  BigInt value() const {
    BigInt z;
    mpz_import(z.get_mpz_t(), d_.size(), -1, sizeof(mp_limb_t), 0, 0, d_.data());
    return z;
  }

 private:
  std::vector<mp_limb_t> d_;
};

BigInt from_u128_value(u128 v) { return from_u128(v); }

BigRational finish(const BigInt& S1, const BigInt& S2, std::size_t n_pts, const BigInt& Dx, const BigInt& Dy) {
  const BigInt n = from_u64(n_pts);
  const BigInt DxDy = Dx * Dy;
  const BigInt D2 = DxDy * DxDy;
  BigInt num = 18 * DxDy * S1 - 9 * n * S2 + 2 * n * n * D2;
  BigRational r(num, 18 * D2);
  r.canonicalize();
  return r;
}

void require_nonempty(const PointSet& P) {
  if (P.size() == 0) throw ValidationError("discrepancy of an empty point set");
  if (P.y.size() != P.x.size()) throw InvariantViolation("point set axes differ in length");
}

// S2 from per-point moments.
BigInt s2_moments(const PointSet& P) {
  const std::size_t n = P.size();
  BigInt sx2 = 0, sy2 = 0, sxy2 = 0, t;
  for (std::size_t i = 0; i < n; ++i) {
    LimbView X(P.x, i), Y(P.y, i);
    mpz_addmul(sx2.get_mpz_t(), X.get(), X.get());
    mpz_addmul(sy2.get_mpz_t(), Y.get(), Y.get());
    mpz_mul(t.get_mpz_t(), X.get(), Y.get());
    mpz_addmul(sxy2.get_mpz_t(), t.get_mpz_t(), t.get_mpz_t());
  }
  const BigInt& Dx = P.x.scale();
  const BigInt& Dy = P.y.scale();
  const BigInt Dx2 = Dx * Dx, Dy2 = Dy * Dy;
  return from_u64(n) * Dx2 * Dy2 - Dx2 * sy2 - Dy2 * sx2 + sxy2;
}

// sum_i a_i b_i
BigInt diagonal(const PointSet& P) {
  const std::size_t n = P.size();
  BigInt sx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    LimbView X(P.x, i), Y(P.y, i);
    mpz_add(sx.get_mpz_t(), sx.get_mpz_t(), X.get());
    mpz_add(sy.get_mpz_t(), sy.get_mpz_t(), Y.get());
    mpz_addmul(sxy.get_mpz_t(), X.get(), Y.get());
  }
  const BigInt& Dx = P.x.scale();
  const BigInt& Dy = P.y.scale();
  return from_u64(n) * Dx * Dy - Dx * sy - Dy * sx + sxy;
}

std::vector<std::size_t> order_by(const CoordArray& c) {
  const std::size_t n = c.size();
  std::vector<std::uint64_t> tops(n);
  for (std::size_t i = 0; i < n; ++i) tops[i] = c.top(i);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    if (tops[i] != tops[j]) return tops[i] < tops[j];
    const int cmp = c.compare(i, j);
    return cmp != 0 ? cmp < 0 : i < j;
  });
  return idx;
}

// Ranks of y among the distinct values, 1-based.
std::vector<std::size_t> y_ranks(const CoordArray& y, std::size_t& distinct) {
  const std::size_t n = y.size();
  std::vector<std::size_t> rank(n);
  const auto order = order_by(y);
  std::size_t r = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || y.compare(order[k - 1], order[k]) != 0) ++r;
    rank[order[k]] = r;
  }
  distinct = r;
  return rank;
}

template <typename T>
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : t_(n + 1, T(0)) {}
  void add(std::size_t i, const T& v) {
    for (; i < t_.size(); i += i & (~i + 1)) t_[i] += v;
  }
  T prefix(std::size_t i) const {
    T s(0);
    for (; i > 0; i -= i & (~i + 1)) s += t_[i];
    return s;
  }

 private:
  std::vector<T> t_;
};

bool narrow_y(const PointSet& P) {
  if (P.y.limbs() != 1 || !fits_u64(P.y.scale())) return false;
  const u128 bound = static_cast<u128>(to_u64(P.y.scale())) * P.size();
  return bound < (static_cast<u128>(1) << 62);
}

// sum_{i<j in x-order} min(a_i,a_j) min(b_i,b_j), small integer y.
BigInt off_diagonal_narrow(const PointSet& P) {
  const std::size_t n = P.size();
  const std::uint64_t Dy = to_u64(P.y.scale());
  const auto order = order_by(P.x);
  std::vector<std::size_t> rank;
  std::size_t size;
  if (Dy <= 4 * static_cast<std::uint64_t>(n) + 64) {
    rank.resize(n);
    for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<std::size_t>(P.y.row(i)[0]) + 1;
    size = static_cast<std::size_t>(Dy);
  } else {
    rank = y_ranks(P.y, size);
  }
  Fenwick<std::uint64_t> count(size), sum_b(size);
  std::uint64_t total_b = 0;
  u128 sum_w = 0;
  const std::size_t xl = P.x.limbs();
  MpnAcc xw(xl + 3);
  for (const std::size_t j : order) {
    const std::size_t r = rank[j];
    const std::uint64_t b = Dy - P.y.row(j)[0];
    const std::uint64_t le = count.prefix(r);
    const std::uint64_t gt_b = total_b - sum_b.prefix(r);
    const std::uint64_t w = b * le + gt_b;
    sum_w += w;
    xw.addmul(P.x.row(j), xl, w);
    count.add(r, 1);
    sum_b.add(r, b);
    total_b += b;
  }
  // sum a_j w_j = Dx sum w_j - sum X_j w_j
  return P.x.scale() * from_u128_value(sum_w) - xw.value();
}

BigInt off_diagonal_wide(const PointSet& P) {
  const auto order = order_by(P.x);
  std::size_t size;
  const auto rank = y_ranks(P.y, size);
  Fenwick<long> count(size);
  Fenwick<BigInt> sum_b(size);
  BigInt total_b = 0, T = 0;
  const BigInt& Dx = P.x.scale();
  const BigInt& Dy = P.y.scale();
  for (const std::size_t j : order) {
    const std::size_t r = rank[j];
    const BigInt b = Dy - P.y.value(j);
    const BigInt a = Dx - P.x.value(j);
    const BigInt w = b * count.prefix(r) + (total_b - sum_b.prefix(r));
    T += a * w;
    count.add(r, 1);
    sum_b.add(r, b);
    total_b += b;
  }
  return T;
}

}  // namespace

double DiscrepancyValue::d2() const { return std::sqrt(squared()); }

DiscrepancyValue d2_exact_fast(const PointSet& P) {
  require_nonempty(P);
  const BigInt off = narrow_y(P) ? off_diagonal_narrow(P) : off_diagonal_wide(P);
  const BigInt S1 = 2 * off + diagonal(P);
  return {finish(S1, s2_moments(P), P.size(), P.x.scale(), P.y.scale())};
}

DiscrepancyValue d2_exact_quadratic(const PointSet& P) {
  require_nonempty(P);
  const std::size_t n = P.size();
  const BigInt& Dx = P.x.scale();
  const BigInt& Dy = P.y.scale();
  BigInt S1 = 0, S2 = 0;
  if (narrow_y(P)) {
    // sum_{i,j} (Dx - max X) min b = Dx sum min b - sum max X min b, with
    // each unordered pair counted twice
    const std::size_t xl = P.x.limbs();
    const std::uint64_t dy = to_u64(Dy);
    // the weight each row picks up as the larger x of a pair; at most 2 n dy
    std::vector<u128> w(n, 0);
    u128 sum_min_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bi = dy - P.y.row(i)[0];
      const std::uint64_t ti = P.x.top(i);
      sum_min_b += bi;
      w[i] += bi;
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint64_t bj = dy - P.y.row(j)[0];
        const std::uint64_t m = 2 * (bi < bj ? bi : bj);
        const std::uint64_t tj = P.x.top(j);
        const bool i_max = ti != tj ? ti > tj : P.x.compare(i, j) >= 0;
        sum_min_b += m;
        w[i_max ? i : j] += m;
      }
    }
    MpnAcc xb(xl + 5);
    for (std::size_t i = 0; i < n; ++i) {
      xb.addmul(P.x.row(i), xl, static_cast<std::uint64_t>(w[i]));
      if (const std::uint64_t hi = static_cast<std::uint64_t>(w[i] >> 64)) xb.addmul_shifted(P.x.row(i), xl, hi);
    }
    S1 = Dx * from_u128_value(sum_min_b) - xb.value();
  } else {
    std::vector<BigInt> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = Dx - P.x.value(i);
      b[i] = Dy - P.y.value(i);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) S1 += std::min(a[i], a[j]) * std::min(b[i], b[j]);
  }
  const BigInt Dx2 = Dx * Dx, Dy2 = Dy * Dy;
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt X = P.x.value(i), Y = P.y.value(i);
    S2 += (Dx2 - X * X) * (Dy2 - Y * Y);
  }
  return {finish(S1, S2, n, Dx, Dy)};
}

double d2(const PointSet& P) { return d2_exact_fast(P).d2(); }

}  // namespace latdisc
