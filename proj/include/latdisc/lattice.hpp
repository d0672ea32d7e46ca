#pragma once

// The lattices L(alpha, N) = {({n alpha}, n/N)} and their symmetrizations
// S(alpha, N), which add the reflected points ({-n alpha}, n/N).

#include <cstddef>
#include <ostream>

#include "latdisc/alpha.hpp"
#include "latdisc/points.hpp"

namespace latdisc {

struct LatticePointSet {
  std::size_t N = 0;
  bool symmetrized = false;
  /// Points in n-order: n = 0..N-1, then (for S) the reflections in the same order.
  PointSet points;
  /// Bound on |x_stored - x_true| over all points; zero when alpha is exact.
  BigRational x_err;

  std::size_t size() const { return points.size(); }
  std::size_t n_of(std::size_t i) const { return i % N; }

  /// Bound on |D2^2(stored) - D2^2(true)| from the coordinate error: 5 |P|^2 x_err.
  BigRational d2sq_error() const;
};

LatticePointSet build_L(const Alpha& alpha, std::size_t N);
LatticePointSet build_S(const Alpha& alpha, std::size_t N);

/// "n,x_num,x_scale,y_num,y_den" rows.
void write_csv_exact(std::ostream& out, const LatticePointSet& P);
/// "x,y" rows in floating point.
void write_csv_float(std::ostream& out, const LatticePointSet& P);

}  // namespace latdisc
