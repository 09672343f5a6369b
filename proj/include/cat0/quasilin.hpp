#pragma once

#include "cat0/space.hpp"

namespace cat0 {

/// Quasilinearization pairing of two oriented pairs:
///   <ab, cd> = (d²(a,d) + d²(b,c) - d²(a,c) - d²(b,d)) / 2.
/// The grouping below makes antisymmetry in each argument and symmetry
/// between arguments hold bitwise.
inline double quasilin(const Space& space, const Point& a, const Point& b, const Point& c,
                       const Point& d) {
    const double ad = dist2(space, a, d);
    const double bc = dist2(space, b, c);
    const double ac = dist2(space, a, c);
    const double bd = dist2(space, b, d);
    return 0.5 * ((ad + bc) - (ac + bd));
}

inline double quasilin(const Space& space, const OrientedPair& ab, const OrientedPair& cd) {
    return quasilin(space, ab.tail, ab.head, cd.tail, cd.head);
}

/// Cauchy-Schwarz gap d(a,b) d(c,d) - <ab, cd>. Nonnegative for every
/// quadruple exactly when the space satisfies the Cauchy-Schwarz inequality;
/// a negative value is a violation witness.
inline double cs_gap(const Space& space, const Point& a, const Point& b, const Point& c,
                     const Point& d) {
    return dist(space, a, b) * dist(space, c, d) - quasilin(space, a, b, c, d);
}

inline double cs_gap(const Space& space, const OrientedPair& ab, const OrientedPair& cd) {
    return cs_gap(space, ab.tail, ab.head, cd.tail, cd.head);
}

/// Residual of the CAT(0) comparison inequality at (x, y, z, lambda):
///   lambda d²(x,z) + (1-lambda) d²(y,z) - lambda(1-lambda) d²(x,y)
///     - d²(lambda x (+) (1-lambda) y, z).
/// Nonnegative in every CAT(0) space; identically zero in Euclidean space.
inline double cat0_residual(const Space& space, const Point& x, const Point& y, const Point& z,
                            double lambda) {
    const Point m = combine(space, lambda, x, y);
    return lambda * dist2(space, x, z) + (1.0 - lambda) * dist2(space, y, z) -
           lambda * (1.0 - lambda) * dist2(space, x, y) - dist2(space, m, z);
}

/// Residual of the pairing-scaling inequality along a geodesic: with
/// z = lambda x (+) (1-lambda) y,
///   lambda <xy, zw> - <zy, zw>  >=  0
/// in every CAT(0) space (zero in Euclidean space), for all w.
inline double scaling_residual(const Space& space, const Point& x, const Point& y, double lambda,
                               const Point& w) {
    const Point z = combine(space, lambda, x, y);
    return lambda * quasilin(space, x, y, z, w) - quasilin(space, z, y, z, w);
}

}  // namespace cat0
