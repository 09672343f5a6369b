#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cat0/certify.hpp"
#include "cat0/convex.hpp"
#include "cat0/space.hpp"

namespace cat0 {

using nlohmann::json;

/// Parse/validation failure, carrying the JSON path of the offending field.
class scene_error : public std::runtime_error {
public:
    scene_error(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// One parsed problem instance: a space, an optional convex set, named
/// points, and optional run options. Options left absent fall back to
/// command-line flags or defaults.
struct Scene {
    Space space;
    std::optional<ConvexSet> set;
    std::map<std::string, Point> points;

    std::optional<double> tol;
    std::optional<long long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> nmax;

    friend bool operator==(const Scene& a, const Scene& b) {
        return a.space == b.space && a.set == b.set && a.points == b.points && a.tol == b.tol &&
               a.samples == b.samples && a.seed == b.seed && a.nmax == b.nmax;
    }
};

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> number_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw scene_error(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw scene_error(path, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace detail

inline Point point_from_json(const Space& space, const json& j, const std::string& path) {
    Point p;
    switch (space.model) {
        case Model::euclidean:
            p = euclidean_point(detail::number_array(j, path));
            break;
        case Model::hyperboloid:
            p = hyperboloid_point(detail::number_array(j, path));
            break;
        case Model::sphere:
            p = sphere_point(detail::number_array(j, path));
            break;
        case Model::tree: {
            if (!j.is_object()) throw scene_error(path, "expected {\"vertex\": id} or {\"edge\": [u,v], \"offset\": t}");
            if (j.contains("vertex")) {
                if (!j["vertex"].is_number_integer()) throw scene_error(path + ".vertex", "expected an integer");
                p = tree_vertex_point(j["vertex"].get<int>());
            } else if (j.contains("edge")) {
                const auto& je = j["edge"];
                if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
                    !je[1].is_number_integer())
                    throw scene_error(path + ".edge", "expected a pair of vertex ids");
                if (!j.contains("offset") || !j["offset"].is_number())
                    throw scene_error(path + ".offset", "expected a number");
                const int u = je[0].get<int>(), v = je[1].get<int>();
                const double off = j["offset"].get<double>();
                int edge = -1;
                bool flipped = false;
                for (std::size_t i = 0; i < space.tree.edges.size(); ++i) {
                    const auto& e = space.tree.edges[i];
                    if (e.tail == u && e.head == v) {
                        edge = static_cast<int>(i);
                        break;
                    }
                    if (e.tail == v && e.head == u) {
                        edge = static_cast<int>(i);
                        flipped = true;
                        break;
                    }
                }
                if (edge < 0) throw scene_error(path + ".edge", "no such edge in the tree");
                const double len = space.tree.edges[edge].length;
                if (!(off >= 0.0 && off <= len))
                    throw scene_error(path + ".offset", "outside [0, edge length]");
                p = tree_edge_point(edge, flipped ? len - off : off);
            } else {
                throw scene_error(path, "expected {\"vertex\": id} or {\"edge\": [u,v], \"offset\": t}");
            }
            break;
        }
        case Model::product: {
            if (!j.is_array() || j.size() != space.factors.size())
                throw scene_error(path, "expected one encoded point per product factor");
            std::vector<Point> fs;
            fs.reserve(space.factors.size());
            for (std::size_t i = 0; i < space.factors.size(); ++i)
                fs.push_back(point_from_json(space.factors[i], j[i], path + "[" + std::to_string(i) + "]"));
            p = product_point(std::move(fs));
            break;
        }
    }
    try {
        validate_point(space, p);
    } catch (const std::invalid_argument& e) {
        throw scene_error(path, e.what());
    }
    return p;
}

inline json point_to_json(const Space& space, const Point& p) {
    switch (space.model) {
        case Model::euclidean:
        case Model::hyperboloid:
        case Model::sphere:
            return json(p.coords);
        case Model::tree: {
            json j = json::object();
            if (p.tree_is_vertex) {
                j["vertex"] = p.tree_vertex;
            } else {
                const auto& e = space.tree.edges[p.tree_edge];
                j["edge"] = json::array({e.tail, e.head});
                j["offset"] = p.tree_offset;
            }
            return j;
        }
        case Model::product: {
            json j = json::array();
            for (std::size_t i = 0; i < space.factors.size(); ++i)
                j.push_back(point_to_json(space.factors[i], p.factors[i]));
            return j;
        }
    }
    throw std::logic_error("point_to_json: unreachable");
}

// ---------------------------------------------------------------------------
// space stanza
// ---------------------------------------------------------------------------

inline Space space_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
        throw scene_error(path + ".model", "expected a model name");
    const std::string model = j["model"].get<std::string>();

    const auto read_dim = [&]() {
        if (!j.contains("dim") || !j["dim"].is_number_integer())
            throw scene_error(path + ".dim", "expected an integer dimension");
        return j["dim"].get<int>();
    };
    const auto read_box = [&](double& lo, double& hi) {
        if (!j.contains("box")) return;
        const auto b = detail::number_array(j["box"], path + ".box");
        if (b.size() != 2) throw scene_error(path + ".box", "expected [lo, hi]");
        lo = b[0];
        hi = b[1];
    };

    try {
        if (model == "euclidean") {
            double lo = -5.0, hi = 5.0;
            read_box(lo, hi);
            return make_euclidean(read_dim(), lo, hi);
        }
        if (model == "hyperboloid") {
            double lo = -5.0, hi = 5.0;
            read_box(lo, hi);
            return make_hyperboloid(read_dim(), lo, hi);
        }
        if (model == "sphere") return make_sphere(read_dim());
        if (model == "tree") {
            if (!j.contains("vertices") || !j["vertices"].is_number_integer())
                throw scene_error(path + ".vertices", "expected an integer vertex count");
            if (!j.contains("edges") || !j["edges"].is_array())
                throw scene_error(path + ".edges", "expected an array of [u, v, length]");
            std::vector<TreeDesc::Edge> edges;
            for (const auto& je : j["edges"]) {
                if (!je.is_array() || je.size() != 3)
                    throw scene_error(path + ".edges", "expected entries [u, v, length]");
                edges.push_back({je[0].get<int>(), je[1].get<int>(), je[2].get<double>()});
            }
            return make_tree(j["vertices"].get<int>(), std::move(edges));
        }
        if (model == "product") {
            if (!j.contains("factors") || !j["factors"].is_array())
                throw scene_error(path + ".factors", "expected an array of factor spaces");
            std::vector<Space> fs;
            for (std::size_t i = 0; i < j["factors"].size(); ++i)
                fs.push_back(space_from_json(j["factors"][i],
                                             path + ".factors[" + std::to_string(i) + "]"));
            return make_product(std::move(fs));
        }
    } catch (const scene_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw scene_error(path, e.what());
    }
    throw scene_error(path + ".model", "unknown model '" + model + "'");
}

inline json space_to_json(const Space& s) {
    json j = json::object();
    j["model"] = model_name(s.model);
    switch (s.model) {
        case Model::euclidean:
        case Model::hyperboloid:
            j["dim"] = s.dim;
            j["box"] = json::array({s.box_lo, s.box_hi});
            break;
        case Model::sphere:
            j["dim"] = s.dim;
            break;
        case Model::tree: {
            j["vertices"] = s.tree.n_vertices;
            json edges = json::array();
            for (const auto& e : s.tree.edges) edges.push_back(json::array({e.tail, e.head, e.length}));
            j["edges"] = std::move(edges);
            break;
        }
        case Model::product: {
            json fs = json::array();
            for (const auto& f : s.factors) fs.push_back(space_to_json(f));
            j["factors"] = std::move(fs);
            break;
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// set stanza
// ---------------------------------------------------------------------------

inline ConvexSet set_from_json(const Space& space, const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw scene_error(path + ".kind", "expected a set kind");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "segment") {
            if (!j.contains("a") || !j.contains("b"))
                throw scene_error(path, "segment needs endpoints \"a\" and \"b\"");
            return make_segment(space, point_from_json(space, j["a"], path + ".a"),
                                point_from_json(space, j["b"], path + ".b"));
        }
        if (kind == "ball") {
            if (!j.contains("center")) throw scene_error(path + ".center", "missing ball center");
            if (!j.contains("radius") || !j["radius"].is_number())
                throw scene_error(path + ".radius", "expected a number");
            const double r = j["radius"].get<double>();
            if (!(r > 0.0)) throw scene_error(path + ".radius", "must be > 0");
            return make_ball(space, point_from_json(space, j["center"], path + ".center"), r);
        }
        if (kind == "subtree") {
            if (!j.contains("vertices") || !j["vertices"].is_array())
                throw scene_error(path + ".vertices", "expected an array of vertex ids");
            std::vector<int> vs;
            for (const auto& v : j["vertices"]) {
                if (!v.is_number_integer())
                    throw scene_error(path + ".vertices", "expected integer vertex ids");
                vs.push_back(v.get<int>());
            }
            return make_subtree(space, std::move(vs));
        }
        if (kind == "halfspaces") {
            if (!j.contains("rows") || !j["rows"].is_array())
                throw scene_error(path + ".rows", "expected an array of rows");
            std::vector<ConvexSet::Halfspace> rows;
            for (std::size_t i = 0; i < j["rows"].size(); ++i) {
                const auto& jr = j["rows"][i];
                const std::string rp = path + ".rows[" + std::to_string(i) + "]";
                if (!jr.is_object() || !jr.contains("normal") || !jr.contains("offset") ||
                    !jr["offset"].is_number())
                    throw scene_error(rp, "expected {\"normal\": [...], \"offset\": b}");
                rows.push_back(
                    {detail::number_array(jr["normal"], rp + ".normal"), jr["offset"].get<double>()});
            }
            return make_halfspaces(space, std::move(rows));
        }
    } catch (const scene_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw scene_error(path, e.what());
    }
    throw scene_error(path + ".kind", "unknown set kind '" + kind + "'");
}

inline json set_to_json(const Space& space, const ConvexSet& s) {
    json j = json::object();
    j["kind"] = set_kind_name(s.kind);
    switch (s.kind) {
        case ConvexSet::Kind::segment:
            j["a"] = point_to_json(space, s.a);
            j["b"] = point_to_json(space, s.b);
            break;
        case ConvexSet::Kind::ball:
            j["center"] = point_to_json(space, s.center);
            j["radius"] = s.radius;
            break;
        case ConvexSet::Kind::subtree:
            j["vertices"] = json(s.vertices);
            break;
        case ConvexSet::Kind::halfspaces: {
            json rows = json::array();
            for (const auto& h : s.rows) {
                json r = json::object();
                r["normal"] = json(h.normal);
                r["offset"] = h.offset;
                rows.push_back(std::move(r));
            }
            j["rows"] = std::move(rows);
            break;
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// scene
// ---------------------------------------------------------------------------

inline Scene scene_from_json(const json& j) {
    if (!j.is_object()) throw scene_error("$", "scene must be a JSON object");
    if (!j.contains("space")) throw scene_error("space", "missing space stanza");
    Scene scene;
    scene.space = space_from_json(j["space"], "space");
    if (j.contains("set")) scene.set = set_from_json(scene.space, j["set"], "set");
    if (j.contains("points")) {
        if (!j["points"].is_object()) throw scene_error("points", "expected an object of named points");
        for (const auto& [name, jp] : j["points"].items())
            scene.points.emplace(name, point_from_json(scene.space, jp, "points." + name));
    }
    if (j.contains("options")) {
        const auto& jo = j["options"];
        if (!jo.is_object()) throw scene_error("options", "expected an object");
        if (jo.contains("tol")) {
            if (!jo["tol"].is_number() || !(jo["tol"].get<double>() > 0.0))
                throw scene_error("options.tol", "must be a positive number");
            scene.tol = jo["tol"].get<double>();
        }
        if (jo.contains("samples")) {
            if (!jo["samples"].is_number_integer() || jo["samples"].get<long long>() < 1)
                throw scene_error("options.samples", "must be a positive integer");
            scene.samples = jo["samples"].get<long long>();
        }
        if (jo.contains("seed")) {
            if (!jo["seed"].is_number_integer())
                throw scene_error("options.seed", "must be an integer");
            scene.seed = jo["seed"].get<std::uint64_t>();
        }
        if (jo.contains("nmax")) {
            if (!jo["nmax"].is_number_integer() || jo["nmax"].get<int>() < 2)
                throw scene_error("options.nmax", "must be an integer >= 2");
            scene.nmax = jo["nmax"].get<int>();
        }
    }
    return scene;
}

inline Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw scene_error("$", std::string("malformed JSON: ") + e.what());
    }
    return scene_from_json(j);
}

inline json scene_to_json(const Scene& scene) {
    json j = json::object();
    j["space"] = space_to_json(scene.space);
    if (scene.set) j["set"] = set_to_json(scene.space, *scene.set);
    if (!scene.points.empty()) {
        json pts = json::object();
        for (const auto& [name, p] : scene.points) pts[name] = point_to_json(scene.space, p);
        j["points"] = std::move(pts);
    }
    json opts = json::object();
    if (scene.tol) opts["tol"] = *scene.tol;
    if (scene.samples) opts["samples"] = *scene.samples;
    if (scene.seed) opts["seed"] = *scene.seed;
    if (scene.nmax) opts["nmax"] = *scene.nmax;
    if (!opts.empty()) j["options"] = std::move(opts);
    return j;
}

inline std::string serialize_scene(const Scene& scene) { return scene_to_json(scene).dump(); }

/// FNV-1a hash of the canonical serialized scene, as a 16-hex-digit string.
inline std::string scene_digest(const Scene& scene) {
    const std::string s = serialize_scene(scene);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline json witness_to_json(const Space& space, const Witness& w) {
    json j = json::object();
    if (!w.points.empty()) {
        json pts = json::object();
        for (const auto& [name, p] : w.points) pts[name] = point_to_json(space, p);
        j["points"] = std::move(pts);
    }
    if (!w.scalars.empty()) {
        json sc = json::object();
        for (const auto& [name, v] : w.scalars) sc[name] = v;
        j["scalars"] = std::move(sc);
    }
    return j;
}

inline json certificate_to_json(const Space& space, const CertificateReport& rep) {
    json j = json::object();
    j["name"] = rep.name;
    j["verdict"] = rep.pass ? "pass" : "fail";
    j["extremal_residual"] = rep.extremal;
    j["samples"] = rep.samples;
    j["seed"] = json::object({{"seed", rep.seed.seed}, {"stream", rep.seed.stream}});
    j["tolerance"] = rep.tolerance;
    j["witness"] = witness_to_json(space, rep.witness);
    return j;
}

}  // namespace cat0
