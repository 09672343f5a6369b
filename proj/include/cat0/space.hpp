#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cat0/point.hpp"

namespace cat0 {

inline constexpr double kPointTol = 1e-9;  // model invariant tolerance

/// Finite weighted tree: connected, acyclic, strictly positive edge lengths.
/// Vertex-to-vertex distances are precomputed at construction.
struct TreeDesc {
    struct Edge {
        int tail = 0;
        int head = 0;
        double length = 0.0;
    };

    int n_vertices = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> incident;        // vertex -> edge indices
    std::vector<std::vector<double>> vertex_dist;  // symmetric, zero diagonal

    double total_length() const {
        double s = 0.0;
        for (const auto& e : edges) s += e.length;
        return s;
    }
};

struct Space {
    Model model = Model::euclidean;

    int dim = 0;                                // euclidean / hyperboloid / sphere
    double box_lo = -5.0, box_hi = 5.0;         // sampling box (euclidean / hyperboloid tangent)
    TreeDesc tree;                              // tree
    std::vector<Space> factors;                 // product

    friend bool operator==(const Space&, const Space&);
};

inline bool operator==(const Space& a, const Space& b) {
    if (a.model != b.model) return false;
    switch (a.model) {
        case Model::euclidean:
        case Model::hyperboloid:
            return a.dim == b.dim && a.box_lo == b.box_lo && a.box_hi == b.box_hi;
        case Model::sphere:
            return a.dim == b.dim;
        case Model::tree: {
            if (a.tree.n_vertices != b.tree.n_vertices ||
                a.tree.edges.size() != b.tree.edges.size())
                return false;
            for (std::size_t i = 0; i < a.tree.edges.size(); ++i) {
                const auto& ea = a.tree.edges[i];
                const auto& eb = b.tree.edges[i];
                if (ea.tail != eb.tail || ea.head != eb.head || ea.length != eb.length)
                    return false;
            }
            return true;
        }
        case Model::product:
            return a.factors == b.factors;
    }
    return false;
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

inline Space make_euclidean(int dim, double box_lo = -5.0, double box_hi = 5.0) {
    if (dim < 1) throw std::invalid_argument("euclidean: dimension must be >= 1");
    if (!(box_lo < box_hi)) throw std::invalid_argument("euclidean: empty sampling box");
    Space s;
    s.model = Model::euclidean;
    s.dim = dim;
    s.box_lo = box_lo;
    s.box_hi = box_hi;
    return s;
}

inline Space make_hyperboloid(int dim, double box_lo = -5.0, double box_hi = 5.0) {
    if (dim < 1) throw std::invalid_argument("hyperboloid: dimension must be >= 1");
    if (!(box_lo < box_hi)) throw std::invalid_argument("hyperboloid: empty sampling box");
    Space s;
    s.model = Model::hyperboloid;
    s.dim = dim;
    s.box_lo = box_lo;
    s.box_hi = box_hi;
    return s;
}

inline Space make_sphere(int dim) {
    if (dim < 1) throw std::invalid_argument("sphere: dimension must be >= 1");
    Space s;
    s.model = Model::sphere;
    s.dim = dim;
    return s;
}

namespace detail {

// union-find for cycle detection
inline int uf_find(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace detail

inline Space make_tree(int n_vertices, std::vector<TreeDesc::Edge> edges) {
    if (n_vertices < 1) throw std::invalid_argument("tree: need at least one vertex");
    for (const auto& e : edges) {
        if (e.tail < 0 || e.tail >= n_vertices || e.head < 0 || e.head >= n_vertices)
            throw std::invalid_argument("tree: edge endpoint out of range");
        if (!(e.length > 0.0) || !std::isfinite(e.length))
            throw std::invalid_argument("tree: edge length must be > 0");
    }
    std::vector<int> parent(n_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& e : edges) {
        const int a = detail::uf_find(parent, e.tail);
        const int b = detail::uf_find(parent, e.head);
        if (a == b) throw std::invalid_argument("tree: cycle detected");
        parent[a] = b;
    }
    if (static_cast<int>(edges.size()) != n_vertices - 1)
        throw std::invalid_argument("tree: disconnected (edge count != vertex count - 1)");

    Space s;
    s.model = Model::tree;
    s.tree.n_vertices = n_vertices;
    s.tree.edges = std::move(edges);
    s.tree.incident.assign(n_vertices, {});
    for (std::size_t i = 0; i < s.tree.edges.size(); ++i) {
        s.tree.incident[s.tree.edges[i].tail].push_back(static_cast<int>(i));
        s.tree.incident[s.tree.edges[i].head].push_back(static_cast<int>(i));
    }

    // all-pairs vertex distances by walking the tree from each root
    auto& table = s.tree.vertex_dist;
    table.assign(n_vertices, std::vector<double>(n_vertices, 0.0));
    for (int root = 0; root < n_vertices; ++root) {
        std::vector<int> stack{root};
        std::vector<char> seen(n_vertices, 0);
        seen[root] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const int ei : s.tree.incident[v]) {
                const auto& e = s.tree.edges[ei];
                const int w = e.tail == v ? e.head : e.tail;
                if (seen[w]) continue;
                seen[w] = 1;
                table[root][w] = table[root][v] + e.length;
                stack.push_back(w);
            }
        }
    }
    // force bitwise symmetry (per-root accumulation order differs)
    for (int i = 0; i < n_vertices; ++i)
        for (int j = i + 1; j < n_vertices; ++j) table[j][i] = table[i][j];
    return s;
}

inline bool contains_sphere_factor(const Space& s) {
    if (s.model == Model::sphere) return true;
    for (const auto& f : s.factors)
        if (contains_sphere_factor(f)) return true;
    return false;
}

inline Space make_product(std::vector<Space> factors) {
    if (factors.size() < 2) throw std::invalid_argument("product: need at least 2 factors");
    for (const auto& f : factors)
        if (contains_sphere_factor(f))
            throw std::invalid_argument("product: sphere factors are not allowed");
    Space s;
    s.model = Model::product;
    s.factors = std::move(factors);
    return s;
}

/// Unit tripod: center vertex 0 joined to leaves 1, 2, 3 by unit edges.
inline Space make_tripod() {
    return make_tree(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
}

// ---------------------------------------------------------------------------
// point validation
// ---------------------------------------------------------------------------

namespace detail {

inline double minkowski(const std::vector<double>& p, const std::vector<double>& q) {
    double s = -p[0] * q[0];
    for (std::size_t i = 1; i < p.size(); ++i) s += p[i] * q[i];
    return s;
}

inline double euclid_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace detail

inline void validate_point(const Space& space, const Point& p) {
    if (p.model != space.model)
        throw std::invalid_argument(std::string("point model '") + model_name(p.model) +
                                    "' does not match space model '" +
                                    model_name(space.model) + "'");
    switch (space.model) {
        case Model::euclidean: {
            if (static_cast<int>(p.coords.size()) != space.dim)
                throw std::invalid_argument("euclidean point: wrong dimension");
            for (const double x : p.coords)
                if (!std::isfinite(x)) throw std::invalid_argument("euclidean point: non-finite coordinate");
            break;
        }
        case Model::hyperboloid: {
            if (static_cast<int>(p.coords.size()) != space.dim + 1)
                throw std::invalid_argument("hyperboloid point: ambient tuple must have length dim+1");
            for (const double x : p.coords)
                if (!std::isfinite(x)) throw std::invalid_argument("hyperboloid point: non-finite coordinate");
            if (!(p.coords[0] > 0.0))
                throw std::invalid_argument("hyperboloid point: first coordinate must be positive");
            const double q = detail::minkowski(p.coords, p.coords);
            if (std::abs(q + 1.0) > kPointTol * (1.0 + std::abs(q)))
                throw std::invalid_argument("hyperboloid point: Minkowski form must equal -1");
            break;
        }
        case Model::sphere: {
            if (static_cast<int>(p.coords.size()) != space.dim + 1)
                throw std::invalid_argument("sphere point: ambient tuple must have length dim+1");
            const double n = detail::euclid_norm(p.coords);
            if (std::abs(n - 1.0) > kPointTol)
                throw std::invalid_argument("sphere point: must have unit norm");
            break;
        }
        case Model::tree: {
            if (p.tree_is_vertex) {
                if (p.tree_vertex < 0 || p.tree_vertex >= space.tree.n_vertices)
                    throw std::invalid_argument("tree point: vertex out of range");
            } else {
                if (p.tree_edge < 0 || p.tree_edge >= static_cast<int>(space.tree.edges.size()))
                    throw std::invalid_argument("tree point: unknown edge reference");
                const double len = space.tree.edges[p.tree_edge].length;
                if (!(p.tree_offset >= 0.0 && p.tree_offset <= len))
                    throw std::invalid_argument("tree point: offset outside [0, edge length]");
            }
            break;
        }
        case Model::product: {
            if (p.factors.size() != space.factors.size())
                throw std::invalid_argument("product point: factor count mismatch");
            for (std::size_t i = 0; i < p.factors.size(); ++i)
                validate_point(space.factors[i], p.factors[i]);
            break;
        }
    }
}

/// Tree points with offset 0 (resp. full edge length) collapse to the tail
/// (resp. head) vertex form; interior points pass through. Idempotent.
inline Point canonicalize_tree_point(const Space& space, const Point& p) {
    if (space.model != Model::tree)
        throw std::invalid_argument("canonicalize_tree_point: not a tree space");
    validate_point(space, p);
    if (p.tree_is_vertex) return p;
    const auto& e = space.tree.edges[p.tree_edge];
    if (p.tree_offset == 0.0) return tree_vertex_point(e.tail);
    if (p.tree_offset == e.length) return tree_vertex_point(e.head);
    return p;
}

// ---------------------------------------------------------------------------
// metric
// ---------------------------------------------------------------------------

namespace detail {

// distance once both tree points are canonical
inline double tree_dist(const TreeDesc& t, const Point& x, const Point& y) {
    if (x.tree_is_vertex && y.tree_is_vertex)
        return t.vertex_dist[x.tree_vertex][y.tree_vertex];
    if (!x.tree_is_vertex && !y.tree_is_vertex && x.tree_edge == y.tree_edge)
        return std::abs(x.tree_offset - y.tree_offset);

    // route through edge endpoints; each route is (offset sum) + table entry,
    // keeping evaluation bitwise symmetric in (x, y)
    struct End {
        int vertex;
        double cost;
    };
    const auto ends = [&](const Point& p, End out[2]) -> int {
        if (p.tree_is_vertex) {
            out[0] = {p.tree_vertex, 0.0};
            return 1;
        }
        const auto& e = t.edges[p.tree_edge];
        out[0] = {e.tail, p.tree_offset};
        out[1] = {e.head, e.length - p.tree_offset};
        return 2;
    };

    End ex[2], ey[2];
    const int nx = ends(x, ex), ny = ends(y, ey);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double route = (ex[i].cost + ey[j].cost) + t.vertex_dist[ex[i].vertex][ey[j].vertex];
            best = std::min(best, route);
        }
    return best;
}

}  // namespace detail

inline double dist(const Space& space, const Point& x, const Point& y) {
    validate_point(space, x);
    validate_point(space, y);
    switch (space.model) {
        case Model::euclidean: {
            double s = 0.0;
            for (int i = 0; i < space.dim; ++i) {
                const double d = x.coords[i] - y.coords[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Model::hyperboloid: {
            // arccosh(-<x,y>_M) evaluated through the half-chord form
            // 2 asinh(|x-y|_M / 2), which keeps full accuracy near x = y
            double s = -(x.coords[0] - y.coords[0]) * (x.coords[0] - y.coords[0]);
            for (std::size_t i = 1; i < x.coords.size(); ++i) {
                const double d = x.coords[i] - y.coords[i];
                s += d * d;
            }
            s = std::max(0.0, s);
            return 2.0 * std::asinh(0.5 * std::sqrt(s));
        }
        case Model::sphere: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.coords.size(); ++i) {
                const double d = x.coords[i] - y.coords[i];
                s += d * d;
            }
            return 2.0 * std::asin(std::min(1.0, 0.5 * std::sqrt(s)));
        }
        case Model::tree:
            return detail::tree_dist(space.tree, canonicalize_tree_point(space, x),
                                     canonicalize_tree_point(space, y));
        case Model::product: {
            double s = 0.0;
            for (std::size_t i = 0; i < space.factors.size(); ++i) {
                const double d = dist(space.factors[i], x.factors[i], y.factors[i]);
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    throw std::logic_error("dist: unreachable");
}

/// Squared distance. Euclidean and product models compute the square
/// natively (no sqrt round-trip), so squared-distance identities built from
/// rational coordinates stay exact.
inline double dist2(const Space& space, const Point& x, const Point& y) {
    switch (space.model) {
        case Model::euclidean: {
            validate_point(space, x);
            validate_point(space, y);
            double s = 0.0;
            for (int i = 0; i < space.dim; ++i) {
                const double d = x.coords[i] - y.coords[i];
                s += d * d;
            }
            return s;
        }
        case Model::product: {
            validate_point(space, x);
            validate_point(space, y);
            double s = 0.0;
            for (std::size_t i = 0; i < space.factors.size(); ++i)
                s += dist2(space.factors[i], x.factors[i], y.factors[i]);
            return s;
        }
        default: {
            const double d = dist(space, x, y);
            return d * d;
        }
    }
}

// ---------------------------------------------------------------------------
// geodesic combination: combine(lambda, x, y) is the point z on [x, y] with
// d(z, x) = (1-lambda) d(x, y) and d(z, y) = lambda d(x, y)
// ---------------------------------------------------------------------------

namespace detail {

inline Point hyperboloid_normalize(Point p) {
    const double q = minkowski(p.coords, p.coords);
    const double scale = 1.0 / std::sqrt(-q);
    for (double& c : p.coords) c *= scale;
    if (p.coords[0] < 0.0)
        for (double& c : p.coords) c = -c;
    return p;
}

inline Point tree_combine(const Space& space, double lambda, const Point& xin, const Point& yin) {
    const auto& t = space.tree;
    const Point x = canonicalize_tree_point(space, xin);
    const Point y = canonicalize_tree_point(space, yin);
    const double total = tree_dist(t, x, y);
    if (total == 0.0) return x;
    const double target = (1.0 - lambda) * total;  // arclength from x

    if (!x.tree_is_vertex && !y.tree_is_vertex && x.tree_edge == y.tree_edge) {
        const double dir = y.tree_offset >= x.tree_offset ? 1.0 : -1.0;
        return canonicalize_tree_point(space, tree_edge_point(x.tree_edge, x.tree_offset + dir * target));
    }

    // pick the exit/entry endpoints realizing the shortest route
    struct End {
        int vertex;
        double cost;
    };
    const auto ends = [&](const Point& p, End out[2]) -> int {
        if (p.tree_is_vertex) {
            out[0] = {p.tree_vertex, 0.0};
            return 1;
        }
        const auto& e = t.edges[p.tree_edge];
        out[0] = {e.tail, p.tree_offset};
        out[1] = {e.head, e.length - p.tree_offset};
        return 2;
    };
    End ex[2], ey[2];
    const int nx = ends(x, ex), ny = ends(y, ey);
    int bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            const double route = (ex[i].cost + ey[j].cost) + t.vertex_dist[ex[i].vertex][ey[j].vertex];
            if (route < best) {
                best = route;
                bi = i;
                bj = j;
            }
        }
    const int exit_v = ex[bi].vertex, entry_v = ey[bj].vertex;

    double remaining = target;

    // leg 1: x to its exit vertex
    if (!x.tree_is_vertex) {
        const double leg = ex[bi].cost;
        if (remaining <= leg) {
            const auto& e = t.edges[x.tree_edge];
            const double off = exit_v == e.tail ? x.tree_offset - remaining : x.tree_offset + remaining;
            return canonicalize_tree_point(space, tree_edge_point(x.tree_edge, off));
        }
        remaining -= leg;
    }

    // vertex path exit_v -> entry_v (parents from a walk rooted at entry_v)
    std::vector<int> parent_edge(t.n_vertices, -1), parent_vertex(t.n_vertices, -1);
    {
        std::vector<int> stack{entry_v};
        std::vector<char> seen(t.n_vertices, 0);
        seen[entry_v] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const int ei : t.incident[v]) {
                const auto& e = t.edges[ei];
                const int w = e.tail == v ? e.head : e.tail;
                if (seen[w]) continue;
                seen[w] = 1;
                parent_vertex[w] = v;
                parent_edge[w] = ei;
                stack.push_back(w);
            }
        }
    }

    int v = exit_v;
    while (v != entry_v) {
        const int ei = parent_edge[v];
        const auto& e = t.edges[ei];
        const int next = parent_vertex[v];
        if (remaining <= e.length) {
            const double off = v == e.tail ? remaining : e.length - remaining;
            return canonicalize_tree_point(space, tree_edge_point(ei, off));
        }
        remaining -= e.length;
        v = next;
    }

    // leg 3: entry vertex into y's edge
    if (!y.tree_is_vertex) {
        const auto& e = t.edges[y.tree_edge];
        const double leg = ey[bj].cost;
        if (remaining <= leg) {
            const double off = entry_v == e.tail ? remaining : e.length - remaining;
            return canonicalize_tree_point(space, tree_edge_point(y.tree_edge, off));
        }
    }
    return y;  // fell off the far end by roundoff
}

}  // namespace detail

inline Point combine(const Space& space, double lambda, const Point& x, const Point& y) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("combine: lambda must lie in [0, 1]");
    validate_point(space, x);
    validate_point(space, y);
    if (lambda == 1.0) return x;
    if (lambda == 0.0) return y;

    switch (space.model) {
        case Model::euclidean: {
            Point z = x;
            for (int i = 0; i < space.dim; ++i)
                z.coords[i] = lambda * x.coords[i] + (1.0 - lambda) * y.coords[i];
            return z;
        }
        case Model::hyperboloid: {
            const double d = dist(space, x, y);
            if (d == 0.0) return x;
            const double sx = std::sinh(lambda * d), sy = std::sinh((1.0 - lambda) * d);
            const double sd = std::sinh(d);
            Point z = x;
            for (std::size_t i = 0; i < x.coords.size(); ++i)
                z.coords[i] = (sx * x.coords[i] + sy * y.coords[i]) / sd;
            return detail::hyperboloid_normalize(std::move(z));
        }
        case Model::sphere: {
            const double d = dist(space, x, y);
            if (d == 0.0) return x;
            constexpr double pi = 3.14159265358979323846;
            if (!(d < pi - 1e-12))
                throw std::invalid_argument("combine: sphere points are antipodal or farther; geodesic not unique");
            const double sx = std::sin(lambda * d), sy = std::sin((1.0 - lambda) * d);
            const double sd = std::sin(d);
            Point z = x;
            double norm2 = 0.0;
            for (std::size_t i = 0; i < x.coords.size(); ++i) {
                z.coords[i] = (sx * x.coords[i] + sy * y.coords[i]) / sd;
                norm2 += z.coords[i] * z.coords[i];
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& c : z.coords) c *= inv;
            return z;
        }
        case Model::tree:
            return detail::tree_combine(space, lambda, x, y);
        case Model::product: {
            Point z;
            z.model = Model::product;
            z.factors.reserve(space.factors.size());
            for (std::size_t i = 0; i < space.factors.size(); ++i)
                z.factors.push_back(combine(space.factors[i], lambda, x.factors[i], y.factors[i]));
            return z;
        }
    }
    throw std::logic_error("combine: unreachable");
}

}  // namespace cat0
