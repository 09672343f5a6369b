#pragma once

#include <cmath>

#include "cat0/rng.hpp"
#include "cat0/space.hpp"

namespace cat0 {

/// Draws one random point of the model, consuming a deterministic number of
/// Rng values per model so streams stay reproducible. Distributions favor
/// coverage over uniformity: euclidean draws from the space's box, the
/// hyperboloid maps a tangent-box sample through the exponential map at the
/// base point, trees spread mass uniformly over total edge length, spheres
/// normalize a Gaussian direction.
inline Point sample_point(const Space& space, Rng& rng) {
    switch (space.model) {
        case Model::euclidean: {
            std::vector<double> c(space.dim);
            for (double& x : c) x = rng.uniform(space.box_lo, space.box_hi);
            return euclidean_point(std::move(c));
        }
        case Model::hyperboloid: {
            std::vector<double> w(space.dim);
            double norm2 = 0.0;
            for (double& x : w) {
                x = rng.uniform(space.box_lo, space.box_hi);
                norm2 += x * x;
            }
            const double r = std::sqrt(norm2);
            std::vector<double> p(space.dim + 1, 0.0);
            if (r == 0.0) {
                p[0] = 1.0;
                return hyperboloid_point(std::move(p));
            }
            const double ch = std::cosh(r), sh = std::sinh(r);
            p[0] = ch;
            for (int i = 0; i < space.dim; ++i) p[i + 1] = sh * (w[i] / r);
            Point q = hyperboloid_point(std::move(p));
            return detail::hyperboloid_normalize(std::move(q));
        }
        case Model::sphere: {
            std::vector<double> c(space.dim + 1);
            double norm2 = 0.0;
            do {
                norm2 = 0.0;
                for (double& x : c) {
                    x = rng.gaussian();
                    norm2 += x * x;
                }
            } while (norm2 == 0.0);
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : c) x *= inv;
            return sphere_point(std::move(c));
        }
        case Model::tree: {
            const double total = space.tree.total_length();
            double s = rng.uniform01() * total;
            for (std::size_t i = 0; i < space.tree.edges.size(); ++i) {
                const double len = space.tree.edges[i].length;
                if (s <= len || i + 1 == space.tree.edges.size())
                    return canonicalize_tree_point(
                        space, tree_edge_point(static_cast<int>(i), std::min(s, len)));
                s -= len;
            }
            return tree_vertex_point(0);  // single-vertex tree
        }
        case Model::product: {
            std::vector<Point> fs;
            fs.reserve(space.factors.size());
            for (const auto& f : space.factors) fs.push_back(sample_point(f, rng));
            return product_point(std::move(fs));
        }
    }
    throw std::logic_error("sample_point: unreachable");
}

inline Point sample_point(const Space& space, SampleSeed seed) {
    Rng rng(seed);
    return sample_point(space, rng);
}

}  // namespace cat0
