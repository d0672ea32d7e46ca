#include "latdisc/alpha.hpp"

namespace latdisc {

Alpha Alpha::rational(const BigInt& p, const BigInt& q) {
  if (q < 1) throw ValidationError("rational alpha needs q >= 1");
  BigRational v(p, q);
  v.canonicalize();
  Alpha a(cf_of_rational(v.get_num(), v.get_den()));
  a.kind_ = Kind::Rational;
  a.scale_ = v.get_den();
  mpz_fdiv_r(a.step_.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  a.err_ = 0;
  a.init_128();
  return a;
}

Alpha Alpha::from_cf(ContinuedFraction cf, unsigned bits) {
  if (cf.is_finite()) {
    // Keep the supplied expansion (it may be the alternate one).
    const BigRational v = value_of(cf);
    Alpha a(std::move(cf));
    a.kind_ = Kind::Rational;
    a.scale_ = v.get_den();
    mpz_fdiv_r(a.step_.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    a.err_ = 0;
    a.init_128();
    return a;
  }
  FixedPointReal x = eval_alpha(cf, bits);
  Alpha a(std::move(cf));
  a.kind_ = Kind::FixedPoint;
  a.scale_ = x.scale();
  a.step_ = x.mantissa;
  a.err_ = x.err_ulp;
  a.fixed_ = std::move(x);
  a.init_128();
  return a;
}

Alpha Alpha::dyadic(const BigInt& mantissa, unsigned bits) {
  FixedPointReal x;
  x.bits = bits;
  x.mantissa = mantissa;
  x.err_ulp = 0;
  if (mantissa < 0 || mantissa >= x.scale()) throw ValidationError("dyadic mantissa must lie in [0, 2^bits)");
  Alpha a(truncated_cf_of_dyadic(mantissa, bits));
  a.kind_ = Kind::FixedPoint;
  a.scale_ = x.scale();
  a.step_ = x.mantissa;
  a.err_ = 0;
  a.fixed_ = std::move(x);
  a.init_128();
  return a;
}

BigRational Alpha::frac_exact() const {
  BigRational v(step_, scale_);
  v.canonicalize();
  return v;
}

double Alpha::to_double() const { return frac_exact().get_d(); }

void Alpha::init_128() {
  // floor(step * 2^128 / scale)
  BigInt shifted = step_;
  mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), 128);
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), shifted.get_mpz_t(), scale_.get_mpz_t());
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, q.get_mpz_t());
  frac128_ = (static_cast<unsigned __int128>(limbs[1]) << 64) | limbs[0];
  // err_ * 2^128 / scale ulps of the stored value, plus one of truncation.
  BigRational e(err_, scale_);
  e *= BigRational(BigInt(1) << 128);
  frac128_err_ = next_up(e.get_d() + (r == 0 && err_ == 0 ? 0.0 : 1.0));
}

}  // namespace latdisc
