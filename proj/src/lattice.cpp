#include "latdisc/lattice.hpp"

#include <gmp.h>

#include <vector>

namespace latdisc {

static_assert(sizeof(mp_limb_t) == sizeof(std::uint64_t));

namespace {

std::vector<mp_limb_t> limbs_of(const BigInt& v, std::size_t width) {
  std::vector<mp_limb_t> out(width, 0);
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(mp_limb_t), 0, 0, v.get_mpz_t());
  return out;
}

LatticePointSet build(const Alpha& alpha, std::size_t N, bool sym) {
  if (N < 1) throw ValidationError("lattice size N must be >= 1");
  LatticePointSet out;
  out.N = N;
  out.symmetrized = sym;
  out.points = PointSet(alpha.x_scale(), from_u64(N));
  const std::size_t total = sym ? 2 * N : N;
  out.points.x.reserve(total);
  out.points.y.reserve(total);

  const std::size_t L = out.points.x.limbs();
  const auto scale = limbs_of(alpha.x_scale(), L + 1);
  const auto step = limbs_of(alpha.x_step(), L + 1);
  std::vector<mp_limb_t> cur(L + 1, 0);
  for (std::size_t n = 0; n < N; ++n) {
    out.points.x.push_row(reinterpret_cast<const std::uint64_t*>(cur.data()));
    out.points.y.push_u64(n);
    mpn_add_n(cur.data(), cur.data(), step.data(), L + 1);
    if (mpn_cmp(cur.data(), scale.data(), L + 1) >= 0) mpn_sub_n(cur.data(), cur.data(), scale.data(), L + 1);
  }
  if (sym) {
    std::vector<mp_limb_t> x(L + 1, 0), refl(L + 1, 0);
    for (std::size_t n = 0; n < N; ++n) {
      const std::uint64_t* row = out.points.x.row(n);
      std::copy(row, row + L, x.begin());
      x[L] = 0;
      if (mpn_zero_p(x.data(), L + 1)) {
        refl = x;
      } else {
        mpn_sub_n(refl.data(), scale.data(), x.data(), L + 1);
      }
      out.points.x.push_row(reinterpret_cast<const std::uint64_t*>(refl.data()));
      out.points.y.push_u64(n);
    }
  }
  if (alpha.x_err_ulp() == 0) {
    out.x_err = 0;
  } else {
    out.x_err = BigRational(alpha.x_err_ulp() * from_u64(N - 1), alpha.x_scale());
    out.x_err.canonicalize();
  }
  return out;
}

}  // namespace

BigRational LatticePointSet::d2sq_error() const {
  const BigInt n = from_u64(size());
  return BigRational(5 * n * n) * x_err;
}

LatticePointSet build_L(const Alpha& alpha, std::size_t N) { return build(alpha, N, false); }
LatticePointSet build_S(const Alpha& alpha, std::size_t N) { return build(alpha, N, true); }

void write_csv_exact(std::ostream& out, const LatticePointSet& P) {
  out << "n,x_num,x_den_or_scale,y_num,y_den\n";
  const std::string xs = P.points.x.scale().get_str();
  for (std::size_t i = 0; i < P.size(); ++i) {
    out << P.n_of(i) << ',' << P.points.x.value(i).get_str() << ',' << xs << ',' << P.n_of(i) << ',' << P.N
        << '\n';
  }
}

void write_csv_float(std::ostream& out, const LatticePointSet& P) {
  out << "x,y\n";
  for (std::size_t i = 0; i < P.size(); ++i) {
    out << format_double(P.points.x.fraction(i).get_d()) << ','
        << format_double(static_cast<double>(P.n_of(i)) / static_cast<double>(P.N)) << '\n';
  }
}

}  // namespace latdisc
