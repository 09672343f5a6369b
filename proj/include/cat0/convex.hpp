#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

#include "cat0/quasilin.hpp"
#include "cat0/rng.hpp"
#include "cat0/sampling.hpp"
#include "cat0/space.hpp"

namespace cat0 {

/// Description of a convex subset. Segments and balls make sense in every
/// CAT(0) model, subtrees require the tree model, halfspace intersections the
/// Euclidean model. The sphere control is rejected: nearest points there need
/// not be unique.
struct ConvexSet {
    enum class Kind { segment, ball, subtree, halfspaces };

    struct Halfspace {
        std::vector<double> normal;  // nonzero
        double offset = 0.0;         // constraint normal . y <= offset
    };

    Kind kind = Kind::ball;
    Point a, b;                   // segment endpoints
    Point center;                 // ball
    double radius = 0.0;          // ball
    std::vector<int> vertices;    // subtree (sorted, unique)
    std::vector<Halfspace> rows;  // halfspace intersection

    friend bool operator==(const ConvexSet& l, const ConvexSet& r) {
        if (l.kind != r.kind) return false;
        switch (l.kind) {
            case Kind::segment: return l.a == r.a && l.b == r.b;
            case Kind::ball: return l.center == r.center && l.radius == r.radius;
            case Kind::subtree: return l.vertices == r.vertices;
            case Kind::halfspaces: {
                if (l.rows.size() != r.rows.size()) return false;
                for (std::size_t i = 0; i < l.rows.size(); ++i)
                    if (l.rows[i].normal != r.rows[i].normal || l.rows[i].offset != r.rows[i].offset)
                        return false;
                return true;
            }
        }
        return false;
    }
};

inline const char* set_kind_name(ConvexSet::Kind k) {
    switch (k) {
        case ConvexSet::Kind::segment: return "segment";
        case ConvexSet::Kind::ball: return "ball";
        case ConvexSet::Kind::subtree: return "subtree";
        case ConvexSet::Kind::halfspaces: return "halfspaces";
    }
    return "?";
}

namespace detail {

inline void reject_sphere_set(const Space& space) {
    if (contains_sphere_factor(space))
        throw std::invalid_argument("convex sets are not supported on sphere models");
}

inline double row_slack(const ConvexSet::Halfspace& h, const std::vector<double>& y) {
    double dot = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < h.normal.size(); ++i) {
        dot += h.normal[i] * y[i];
        n2 += h.normal[i] * h.normal[i];
    }
    return (dot - h.offset) / std::sqrt(n2);
}

// nearest point of the single halfspace, exact
inline std::vector<double> project_row(const ConvexSet::Halfspace& h, std::vector<double> y) {
    double dot = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < h.normal.size(); ++i) {
        dot += h.normal[i] * y[i];
        n2 += h.normal[i] * h.normal[i];
    }
    const double excess = dot - h.offset;
    if (excess > 0.0) {
        const double step = excess / n2;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * h.normal[i];
    }
    return y;
}

struct DykstraResult {
    std::vector<double> point;
    int sweeps = 0;
    double displacement = 0.0;  // last full-sweep movement
};

inline DykstraResult dykstra(const std::vector<ConvexSet::Halfspace>& rows, std::vector<double> x,
                             int max_sweeps, double stop_tol) {
    std::vector<std::vector<double>> corr(rows.size(), std::vector<double>(x.size(), 0.0));
    DykstraResult res;
    res.point = std::move(x);
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        const std::vector<double> before = res.point;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<double> w(res.point.size());
            for (std::size_t k = 0; k < w.size(); ++k) w[k] = res.point[k] + corr[i][k];
            std::vector<double> next = project_row(rows[i], w);
            for (std::size_t k = 0; k < w.size(); ++k) corr[i][k] = w[k] - next[k];
            res.point = std::move(next);
        }
        double disp2 = 0.0;
        for (std::size_t k = 0; k < res.point.size(); ++k) {
            const double d = res.point[k] - before[k];
            disp2 += d * d;
        }
        res.sweeps = sweep;
        res.displacement = std::sqrt(disp2);
        if (res.displacement <= stop_tol) break;
    }
    return res;
}

}  // namespace detail

inline ConvexSet make_segment(const Space& space, Point a, Point b) {
    detail::reject_sphere_set(space);
    validate_point(space, a);
    validate_point(space, b);
    ConvexSet s;
    s.kind = ConvexSet::Kind::segment;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
}

inline ConvexSet make_ball(const Space& space, Point center, double radius) {
    detail::reject_sphere_set(space);
    validate_point(space, center);
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be > 0");
    ConvexSet s;
    s.kind = ConvexSet::Kind::ball;
    s.center = std::move(center);
    s.radius = radius;
    return s;
}

inline ConvexSet make_subtree(const Space& space, std::vector<int> vertices) {
    if (space.model != Model::tree)
        throw std::invalid_argument("subtree: requires a tree space");
    if (vertices.empty()) throw std::invalid_argument("subtree: vertex set must be nonempty");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (const int v : vertices)
        if (v < 0 || v >= space.tree.n_vertices)
            throw std::invalid_argument("subtree: vertex out of range");

    // induced subgraph must be connected
    const std::set<int> members(vertices.begin(), vertices.end());
    std::vector<int> stack{vertices.front()};
    std::set<int> seen{vertices.front()};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const int ei : space.tree.incident[v]) {
            const auto& e = space.tree.edges[ei];
            const int w = e.tail == v ? e.head : e.tail;
            if (members.count(w) && !seen.count(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
        }
    }
    if (seen.size() != members.size())
        throw std::invalid_argument("subtree: vertex set induces a disconnected subgraph");

    ConvexSet s;
    s.kind = ConvexSet::Kind::subtree;
    s.vertices = std::move(vertices);
    return s;
}

inline ConvexSet make_halfspaces(const Space& space, std::vector<ConvexSet::Halfspace> rows) {
    if (space.model != Model::euclidean)
        throw std::invalid_argument("halfspaces: requires the euclidean model");
    if (rows.empty()) throw std::invalid_argument("halfspaces: need at least one row");
    for (const auto& h : rows) {
        if (static_cast<int>(h.normal.size()) != space.dim)
            throw std::invalid_argument("halfspaces: normal dimension mismatch");
        double n2 = 0.0;
        for (const double c : h.normal) n2 += c * c;
        if (!(n2 > 0.0)) throw std::invalid_argument("halfspaces: normal must be nonzero");
        if (!std::isfinite(h.offset)) throw std::invalid_argument("halfspaces: non-finite offset");
    }

    // feasibility pass: project the origin; if the capped iteration still
    // violates a row the intersection is treated as empty
    const auto feas = detail::dykstra(rows, std::vector<double>(space.dim, 0.0), 2000, 1e-12);
    for (const auto& h : rows)
        if (detail::row_slack(h, feas.point) > 1e-6)
            throw std::invalid_argument("halfspaces: intersection appears empty (feasibility pass failed)");

    ConvexSet s;
    s.kind = ConvexSet::Kind::halfspaces;
    s.rows = std::move(rows);
    return s;
}

namespace detail {

// distance from a canonical tree point to the induced subtree
inline double subtree_distance(const Space& space, const std::vector<int>& vertices,
                               const Point& pc) {
    const auto& t = space.tree;
    const std::set<int> members(vertices.begin(), vertices.end());
    if (pc.tree_is_vertex && members.count(pc.tree_vertex)) return 0.0;
    if (!pc.tree_is_vertex) {
        const auto& e = t.edges[pc.tree_edge];
        if (members.count(e.tail) && members.count(e.head)) return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const int v : vertices)
        best = std::min(best, tree_dist(t, pc, tree_vertex_point(v)));
    return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// sampling in the set
// ---------------------------------------------------------------------------

inline std::vector<Point> sample_in_set(const Space& space, const ConvexSet& set, int n,
                                        SampleSeed seed) {
    if (n < 0) throw std::invalid_argument("sample_in_set: n must be >= 0");
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));
    switch (set.kind) {
        case ConvexSet::Kind::segment: {
            for (int i = 0; i < n; ++i) out.push_back(combine(space, rng.uniform01(), set.a, set.b));
            break;
        }
        case ConvexSet::Kind::ball: {
            for (int i = 0; i < n; ++i) {
                const Point dir = sample_point(space, rng);
                const double frac = rng.uniform01();
                const double d = dist(space, set.center, dir);
                if (d == 0.0) {
                    out.push_back(set.center);
                    continue;
                }
                const double target = frac * std::min(set.radius, d);  // distance from center
                // combine(lambda, center, dir) sits at (1-lambda) d from center
                out.push_back(combine(space, 1.0 - target / d, set.center, dir));
            }
            break;
        }
        case ConvexSet::Kind::subtree: {
            const auto& t = space.tree;
            const std::set<int> members(set.vertices.begin(), set.vertices.end());
            std::vector<int> inner_edges;
            double total = 0.0;
            for (std::size_t i = 0; i < t.edges.size(); ++i)
                if (members.count(t.edges[i].tail) && members.count(t.edges[i].head)) {
                    inner_edges.push_back(static_cast<int>(i));
                    total += t.edges[i].length;
                }
            for (int i = 0; i < n; ++i) {
                if (inner_edges.empty()) {
                    out.push_back(tree_vertex_point(set.vertices.front()));
                    continue;
                }
                double s = rng.uniform01() * total;
                Point p = tree_vertex_point(set.vertices.front());
                for (std::size_t k = 0; k < inner_edges.size(); ++k) {
                    const double len = t.edges[inner_edges[k]].length;
                    if (s <= len || k + 1 == inner_edges.size()) {
                        p = tree_edge_point(inner_edges[k], std::min(s, len));
                        break;
                    }
                    s -= len;
                }
                out.push_back(canonicalize_tree_point(space, p));
            }
            break;
        }
        case ConvexSet::Kind::halfspaces: {
            long long proposals = 0;
            while (static_cast<int>(out.size()) < n) {
                std::vector<double> y(space.dim);
                for (double& c : y) c = rng.uniform(space.box_lo, space.box_hi);
                ++proposals;
                bool ok = true;
                for (const auto& h : set.rows)
                    if (detail::row_slack(h, y) > 0.0) {
                        ok = false;
                        break;
                    }
                if (ok) out.push_back(euclidean_point(std::move(y)));
                if (proposals == 1000000 &&
                    out.size() < static_cast<std::size_t>(0.001 * static_cast<double>(proposals)))
                    throw std::runtime_error(
                        "sample_in_set: rejection sampling starved (acceptance < 0.1% after " +
                        std::to_string(proposals) + " proposals)");
                if (proposals >= 100000000)
                    throw std::runtime_error("sample_in_set: rejection sampling exceeded proposal cap");
            }
            break;
        }
    }
    return out;
}

}  // namespace cat0
