#pragma once

// Point multisets in [0,1)^2 with exact coordinates. Each axis stores
// integer numerators below a common scale, packed into fixed-width rows of
// 64-bit limbs so that million-point sets avoid per-point allocations.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "latdisc/arith.hpp"

namespace latdisc {

class CoordArray {
 public:
  CoordArray() : CoordArray(BigInt(1)) {}
  explicit CoordArray(BigInt scale);

  const BigInt& scale() const { return scale_; }
  std::size_t limbs() const { return limbs_; }
  std::size_t size() const { return limbs_ ? data_.size() / limbs_ : 0; }
  void reserve(std::size_t n) { data_.reserve(n * limbs_); }

  /// Requires 0 <= v < scale().
  void push(const BigInt& v);
  void push_u64(std::uint64_t v);
  /// Appends a row of limbs() limbs, least significant first.
  void push_row(const std::uint64_t* row);

  const std::uint64_t* row(std::size_t i) const { return data_.data() + i * limbs_; }
  std::uint64_t top(std::size_t i) const { return data_[i * limbs_ + limbs_ - 1]; }
  BigInt value(std::size_t i) const;
  BigRational fraction(std::size_t i) const;
  /// -1, 0, 1 as value(i) <, ==, > value(j).
  int compare(std::size_t i, std::size_t j) const;

 private:
  BigInt scale_;
  std::size_t limbs_ = 1;
  std::vector<std::uint64_t> data_;
};

struct PointSet {
  CoordArray x;
  CoordArray y;

  PointSet() = default;
  PointSet(BigInt x_scale, BigInt y_scale) : x(std::move(x_scale)), y(std::move(y_scale)) {}

  std::size_t size() const { return x.size(); }

  /// Puts rational coordinates in [0,1) over the least common denominators.
  static PointSet from_rationals(const std::vector<std::pair<BigRational, BigRational>>& pts);
};

}  // namespace latdisc
