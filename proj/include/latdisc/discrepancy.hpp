#pragma once

// Exact L2 discrepancy of point multisets in [0,1)^2:
//   D2^2(P) = int_0^1 int_0^1 (B(x,y) - |P| x y)^2 dx dy,
// with B(x,y) the number of points in [0,x) x [0,y).

#include <string>

#include "latdisc/lattice.hpp"
#include "latdisc/points.hpp"

namespace latdisc {

struct DiscrepancyValue {
  BigRational d2_squared;

  double squared() const { return d2_squared.get_d(); }
  double d2() const;
};

/// Pairwise sum over all i, j; O(|P|^2).
DiscrepancyValue d2_exact_quadratic(const PointSet& P);
/// Sort by x and sweep a Fenwick tree over y; O(|P| log |P|).
DiscrepancyValue d2_exact_fast(const PointSet& P);
double d2(const PointSet& P);

inline DiscrepancyValue d2_exact_quadratic(const LatticePointSet& P) { return d2_exact_quadratic(P.points); }
inline DiscrepancyValue d2_exact_fast(const LatticePointSet& P) { return d2_exact_fast(P.points); }
inline double d2(const LatticePointSet& P) { return d2(P.points); }

}  // namespace latdisc
