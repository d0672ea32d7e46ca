#include "latdisc/points.hpp"

#include <gmp.h>

namespace latdisc {

CoordArray::CoordArray(BigInt scale) : scale_(std::move(scale)) {
  if (scale_ < 1) throw ValidationError("coordinate scale must be positive");
  const std::size_t bits = bit_length(BigInt(scale_ - 1));
  limbs_ = bits == 0 ? 1 : (bits + 63) / 64;
}

void CoordArray::push(const BigInt& v) {
  if (v < 0 || v >= scale_) throw ValidationError("coordinate outside [0,1)");
  const std::size_t at = data_.size();
  data_.resize(at + limbs_, 0);
  std::size_t count = 0;
  mpz_export(data_.data() + at, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
}

void CoordArray::push_u64(std::uint64_t v) {
  if (scale_ <= from_u64(v)) throw ValidationError("coordinate outside [0,1)");
  const std::size_t at = data_.size();
  data_.resize(at + limbs_, 0);
  data_[at] = v;
}

void CoordArray::push_row(const std::uint64_t* row) { data_.insert(data_.end(), row, row + limbs_); }

BigInt CoordArray::value(std::size_t i) const {
  BigInt z;
  mpz_import(z.get_mpz_t(), limbs_, -1, sizeof(std::uint64_t), 0, 0, row(i));
  return z;
}

BigRational CoordArray::fraction(std::size_t i) const {
  BigRational r(value(i), scale_);
  r.canonicalize();
  return r;
}

int CoordArray::compare(std::size_t i, std::size_t j) const {
  const std::uint64_t* a = row(i);
  const std::uint64_t* b = row(j);
  for (std::size_t k = limbs_; k-- > 0;) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

PointSet PointSet::from_rationals(const std::vector<std::pair<BigRational, BigRational>>& pts) {
  BigInt dx = 1, dy = 1;
  for (const auto& [x, y] : pts) {
    if (x < 0 || x >= 1 || y < 0 || y >= 1) throw ValidationError("coordinates must lie in [0,1)");
    dx = lcm(dx, x.get_den());
    dy = lcm(dy, y.get_den());
  }
  PointSet out(dx, dy);
  out.x.reserve(pts.size());
  out.y.reserve(pts.size());
  for (const auto& [x, y] : pts) {
    out.x.push(BigInt(x.get_num() * (dx / x.get_den())));
    out.y.push(BigInt(y.get_num() * (dy / y.get_den())));
  }
  return out;
}

}  // namespace latdisc
