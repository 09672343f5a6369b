#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "cat0/convex.hpp"
#include "cat0/space.hpp"

namespace cat0 {

/// Outcome of a metric-projection solve.
struct ProjectionResult {
    Point point;            // nearest point found
    double distance = 0.0;  // dist(x, point)
    int iterations = 0;
    double residual = 0.0;  // bound on remaining suboptimality (length units)
};

namespace detail {

// One-dimensional minimizer for phi on [0,1], phi strictly convex.
// Golden-section bracketing down to `width_tol`, then a value-only parabolic
// vertex ladder: golden section alone cannot place the minimizer of a smooth
// objective better than ~sqrt(eps) relative, while a wide-baseline parabolic
// fit recovers it to ~eps when the objective is (near-)quadratic. Candidates
// only ever replace the incumbent when phi actually decreases.
struct LineSearchResult {
    double lambda = 0.0;
    int iterations = 0;
    double width = 0.0;  // final bracket width
};

inline LineSearchResult minimize_unit_interval(const std::function<double(double)>& phi,
                                               double width_tol = 1e-12, int max_iter = 200) {
    const double inv_gr = 0.6180339887498949;  // 1/golden ratio
    double a = 0.0, b = 1.0;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = phi(c), fd = phi(d);
    LineSearchResult res;
    while (b - a > width_tol && res.iterations < max_iter) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_gr * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_gr * (b - a);
            fd = phi(d);
        }
        ++res.iterations;
    }
    double best = 0.5 * (a + b);
    double fbest = phi(best);

    const auto consider = [&](double lam) {
        const double f = phi(lam);
        if (f < fbest) {
            fbest = f;
            best = lam;
        }
    };
    consider(0.0);
    consider(1.0);

    // Vertex candidates are accepted within a noise-sized slack: near the
    // minimum the true improvement sits below evaluation roundoff, and a
    // strict-decrease rule would pin the result at the comparison noise
    // floor. A candidate whose fit is biased (wide baseline on a curved
    // objective) fails the slack test and is dropped.
    for (const double h : {2.5e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double lo = std::max(0.0, best - h), hi = std::min(1.0, best + h);
        if (hi - lo < 0.25 * h) continue;
        const double mid = 0.5 * (lo + hi), delta = 0.5 * (hi - lo);
        const double flo = phi(lo), fmid = phi(mid), fhi = phi(hi);
        const double denom = flo - 2.0 * fmid + fhi;
        // the fitted curvature must stand well above evaluation roundoff,
        // otherwise the vertex is noise
        const double eval_noise = 1e-15 * (std::abs(flo) + std::abs(fmid) + std::abs(fhi)) + 1e-30;
        if (!(denom > 1e3 * eval_noise)) continue;
        const double vertex = std::clamp(mid + 0.5 * (flo - fhi) / denom * delta, 0.0, 1.0);
        const double fv = phi(vertex);
        if (fv <= fbest + 1e-10 * (1.0 + std::abs(fbest))) {
            best = vertex;
            if (fv < fbest) fbest = fv;
        }
    }
    res.lambda = best;
    res.width = b - a;
    return res;
}

}  // namespace detail

/// Nearest point of the geodesic segment [a, b], by strictly convex
/// one-dimensional search over the combination parameter.
inline ProjectionResult project_segment(const Space& space, const ConvexSet& set, const Point& x) {
    if (set.kind != ConvexSet::Kind::segment)
        throw std::invalid_argument("project_segment: set is not a segment");
    if (contains_sphere_factor(space))
        throw std::invalid_argument("project_segment: sphere model not supported");
    validate_point(space, x);

    const double seg_len = dist(space, set.a, set.b);
    if (seg_len == 0.0) {
        ProjectionResult r;
        r.point = set.a;
        r.distance = dist(space, x, set.a);
        return r;
    }
    const auto phi = [&](double lam) { return dist2(space, x, combine(space, lam, set.a, set.b)); };
    const auto ls = detail::minimize_unit_interval(phi);
    ProjectionResult r;
    r.point = combine(space, ls.lambda, set.a, set.b);
    r.distance = dist(space, x, r.point);
    r.iterations = ls.iterations;
    r.residual = ls.width * seg_len;
    return r;
}

/// Nearest point of the closed ball: x itself inside, otherwise the point of
/// [center, x] at distance radius from the center.
inline ProjectionResult project_ball(const Space& space, const ConvexSet& set, const Point& x) {
    if (set.kind != ConvexSet::Kind::ball)
        throw std::invalid_argument("project_ball: set is not a ball");
    if (contains_sphere_factor(space))
        throw std::invalid_argument("project_ball: sphere model not supported");
    validate_point(space, x);

    ProjectionResult r;
    const double d = dist(space, x, set.center);
    if (d <= set.radius) {
        r.point = x;
        r.distance = 0.0;
        return r;
    }
    // combine(lambda, x, center) sits at lambda*d from the center
    r.point = combine(space, set.radius / d, x, set.center);
    r.distance = dist(space, x, r.point);
    r.iterations = 1;
    return r;
}

/// Gate point of a connected subtree: the vertex of the subtree nearest to x
/// (or x itself when x already lies in the subtree). Every path from x into
/// the subtree passes through it.
inline ProjectionResult project_subtree(const Space& space, const ConvexSet& set, const Point& x) {
    if (set.kind != ConvexSet::Kind::subtree)
        throw std::invalid_argument("project_subtree: set is not a subtree");
    if (space.model != Model::tree)
        throw std::invalid_argument("project_subtree: requires a tree space");
    validate_point(space, x);

    const Point xc = canonicalize_tree_point(space, x);
    ProjectionResult r;
    if (detail::subtree_distance(space, set.vertices, xc) == 0.0) {
        r.point = xc;
        r.distance = 0.0;
        return r;
    }
    double best = std::numeric_limits<double>::infinity();
    int best_v = set.vertices.front();
    for (const int v : set.vertices) {
        const double d = detail::tree_dist(space.tree, xc, tree_vertex_point(v));
        if (d < best) {
            best = d;
            best_v = v;
        }
    }
    r.point = tree_vertex_point(best_v);
    r.distance = best;
    r.iterations = 1;
    return r;
}

/// Nearest point of an intersection of Euclidean halfspaces: closed form for
/// a single row, Dykstra's alternating scheme otherwise.
inline ProjectionResult project_halfspaces(const Space& space, const ConvexSet& set,
                                           const Point& x) {
    if (set.kind != ConvexSet::Kind::halfspaces)
        throw std::invalid_argument("project_halfspaces: set is not a halfspace intersection");
    if (space.model != Model::euclidean)
        throw std::invalid_argument("project_halfspaces: requires the euclidean model");
    validate_point(space, x);

    ProjectionResult r;
    if (set.rows.size() == 1) {
        r.point = euclidean_point(detail::project_row(set.rows[0], x.coords));
        r.distance = dist(space, x, r.point);
        r.iterations = 1;
        return r;
    }
    const auto dy = detail::dykstra(set.rows, x.coords, 10000, 1e-10);
    r.point = euclidean_point(dy.point);
    r.distance = dist(space, x, r.point);
    r.iterations = dy.sweeps;
    r.residual = dy.displacement;
    return r;
}

/// Dispatch over the set variant.
inline ProjectionResult project(const Space& space, const ConvexSet& set, const Point& x) {
    switch (set.kind) {
        case ConvexSet::Kind::segment: return project_segment(space, set, x);
        case ConvexSet::Kind::ball: return project_ball(space, set, x);
        case ConvexSet::Kind::subtree: return project_subtree(space, set, x);
        case ConvexSet::Kind::halfspaces: return project_halfspaces(space, set, x);
    }
    throw std::logic_error("project: unreachable");
}

/// Membership functional: zero inside the set, a distance-like positive
/// excess outside (segment: distance to the projected point; ball: radial
/// excess; subtree: gate distance; halfspaces: worst normalized row slack).
inline double set_distance(const Space& space, const ConvexSet& set, const Point& p) {
    validate_point(space, p);
    switch (set.kind) {
        case ConvexSet::Kind::segment: return project_segment(space, set, p).distance;
        case ConvexSet::Kind::ball:
            return std::max(0.0, dist(space, p, set.center) - set.radius);
        case ConvexSet::Kind::subtree:
            return detail::subtree_distance(space, set.vertices,
                                            canonicalize_tree_point(space, p));
        case ConvexSet::Kind::halfspaces: {
            double worst = 0.0;
            for (const auto& h : set.rows) worst = std::max(worst, detail::row_slack(h, p.coords));
            return worst;
        }
    }
    throw std::logic_error("set_distance: unreachable");
}

inline bool contains(const Space& space, const ConvexSet& set, const Point& p, double tol) {
    return set_distance(space, set, p) <= tol;
}

}  // namespace cat0
