#pragma once

#include <string>
#include <vector>

namespace cat0 {

enum class Model { euclidean, hyperboloid, tree, product, sphere };

inline const char* model_name(Model m) {
    switch (m) {
        case Model::euclidean: return "euclidean";
        case Model::hyperboloid: return "hyperboloid";
        case Model::tree: return "tree";
        case Model::product: return "product";
        case Model::sphere: return "sphere";
    }
    return "?";
}

/// A point of one concrete model space, tagged by the model it lives in.
/// euclidean/sphere use `coords` (ambient tuple), hyperboloid uses an ambient
/// tuple of length dim+1, tree points are either a vertex or an
/// (edge, offset-from-tail) position, product points hold one point per factor.
struct Point {
    Model model = Model::euclidean;

    std::vector<double> coords;  // euclidean / hyperboloid / sphere

    bool tree_is_vertex = false;  // tree
    int tree_vertex = -1;
    int tree_edge = -1;
    double tree_offset = 0.0;

    std::vector<Point> factors;  // product

    friend bool operator==(const Point&, const Point&) = default;
};

inline Point euclidean_point(std::vector<double> coords) {
    Point p;
    p.model = Model::euclidean;
    p.coords = std::move(coords);
    return p;
}

inline Point hyperboloid_point(std::vector<double> ambient) {
    Point p;
    p.model = Model::hyperboloid;
    p.coords = std::move(ambient);
    return p;
}

inline Point sphere_point(std::vector<double> ambient) {
    Point p;
    p.model = Model::sphere;
    p.coords = std::move(ambient);
    return p;
}

inline Point tree_vertex_point(int vertex) {
    Point p;
    p.model = Model::tree;
    p.tree_is_vertex = true;
    p.tree_vertex = vertex;
    return p;
}

inline Point tree_edge_point(int edge, double offset) {
    Point p;
    p.model = Model::tree;
    p.tree_is_vertex = false;
    p.tree_edge = edge;
    p.tree_offset = offset;
    return p;
}

inline Point product_point(std::vector<Point> factors) {
    Point p;
    p.model = Model::product;
    p.factors = std::move(factors);
    return p;
}

/// An ordered pair of points, the "vector" from tail to head.
struct OrientedPair {
    Point tail;
    Point head;
};

}  // namespace cat0
