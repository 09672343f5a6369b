// cat0 -- command line front end: reads a JSON scene, runs one certification
// or projection command, prints a JSON report on stdout.
//
// Exit status: 0 all verdicts pass, 1 at least one fail verdict, 2 input or
// usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cat0/cat0.hpp"

namespace {

struct Flags {
    std::string scene_path;
    std::optional<double> tol;
    std::optional<long long> samples;
    std::optional<std::uint64_t> seed;
    std::optional<int> nmax;
};

struct Effective {
    double tol = 1e-7;
    long long samples = 1000;
    std::uint64_t seed = 1;
    int nmax = 100;
};

Effective resolve_options(const cat0::Scene& scene, const Flags& flags) {
    Effective e;
    if (scene.tol) e.tol = *scene.tol;
    if (scene.samples) e.samples = *scene.samples;
    if (scene.seed) e.seed = *scene.seed;
    if (scene.nmax) e.nmax = *scene.nmax;
    if (flags.tol) e.tol = *flags.tol;
    if (flags.samples) e.samples = *flags.samples;
    if (flags.seed) e.seed = *flags.seed;
    if (flags.nmax) e.nmax = *flags.nmax;
    return e;
}

cat0::Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cat0::scene_error("$", "cannot open scene file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return cat0::parse_scene(ss.str());
}

const cat0::Point& named_point(const cat0::Scene& scene, const std::string& name) {
    const auto it = scene.points.find(name);
    if (it == scene.points.end())
        throw cat0::scene_error("points." + name, "required by this command but missing");
    return it->second;
}

const cat0::ConvexSet& required_set(const cat0::Scene& scene) {
    if (!scene.set) throw cat0::scene_error("set", "required by this command but missing");
    return *scene.set;
}

cat0::json report_skeleton(const std::string& command, const cat0::Scene& scene) {
    cat0::json j = cat0::json::object();
    j["command"] = command;
    j["scene_digest"] = cat0::scene_digest(scene);
    j["certificates"] = cat0::json::array();
    return j;
}

int finish(cat0::json& report, bool all_pass) {
    report["overall"] = all_pass ? "pass" : "fail";
    std::cout << report.dump() << "\n";
    return all_pass ? 0 : 1;
}

int run_qlin(const cat0::Scene& scene) {
    cat0::json rep = report_skeleton("qlin", scene);
    const auto& a = named_point(scene, "a");
    const auto& b = named_point(scene, "b");
    const auto& c = named_point(scene, "c");
    const auto& d = named_point(scene, "d");
    cat0::json out = cat0::json::object();
    out["value"] = cat0::quasilin(scene.space, a, b, c, d);
    rep["output"] = std::move(out);
    return finish(rep, true);
}

int run_project(const cat0::Scene& scene) {
    cat0::json rep = report_skeleton("project", scene);
    const auto res = cat0::project(scene.space, required_set(scene), named_point(scene, "x"));
    cat0::json out = cat0::json::object();
    out["point"] = cat0::point_to_json(scene.space, res.point);
    out["distance"] = res.distance;
    out["iterations"] = res.iterations;
    out["residual"] = res.residual;
    rep["output"] = std::move(out);
    return finish(rep, true);
}

int run_certify_vi(const cat0::Scene& scene, const Effective& opt) {
    cat0::json rep = report_skeleton("certify-vi", scene);
    const auto& set = required_set(scene);
    const auto& x = named_point(scene, "x");
    const cat0::Point u = scene.points.count("u")
                              ? scene.points.at("u")
                              : cat0::project(scene.space, set, x).point;
    const auto cert = cat0::vi_certificate(scene.space, set, x, u,
                                           static_cast<int>(opt.samples),
                                           cat0::SampleSeed{opt.seed, 0}, opt.tol);
    rep["certificates"].push_back(cat0::certificate_to_json(scene.space, cert));
    return finish(rep, cert.pass);
}

int run_certify_props(const cat0::Scene& scene, const Effective& opt) {
    cat0::json rep = report_skeleton("certify-props", scene);
    const auto map = cat0::MapUnderTest::projection_of(scene.space, required_set(scene));
    const auto reports = cat0::map_property_report(map, static_cast<int>(opt.samples),
                                                   cat0::SampleSeed{opt.seed, 0}, opt.tol);
    for (const auto* cert :
         {&reports.nonexpansive, &reports.monotone, &reports.firmly_nonexpansive})
        rep["certificates"].push_back(cat0::certificate_to_json(scene.space, *cert));
    return finish(rep, reports.all_pass());
}

int run_boundary_check(const cat0::Scene& scene, const Effective& opt) {
    cat0::json rep = report_skeleton("boundary-check", scene);
    const auto cert = cat0::boundary_escape_check(scene.space, required_set(scene),
                                                  named_point(scene, "x"), opt.nmax, opt.tol);
    rep["certificates"].push_back(cat0::certificate_to_json(scene.space, cert));
    return finish(rep, cert.pass);
}

int run_cat0_check(const cat0::Scene& scene, const Effective& opt) {
    cat0::json rep = report_skeleton("cat0-check", scene);
    const auto res = cat0::cat0_certify(scene.space, static_cast<int>(opt.samples),
                                        cat0::SampleSeed{opt.seed, 0}, opt.tol);
    rep["certificates"].push_back(cat0::certificate_to_json(scene.space, res.cs_gap));
    rep["certificates"].push_back(cat0::certificate_to_json(scene.space, res.comparison));
    return finish(rep, res.pass());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cat0 -- CAT(0) geometry toolkit: quasilinearization, metric projection, "
                 "and sampled certificates over concrete model spaces"};
    app.require_subcommand(1);

    Flags flags;
    std::string command;
    for (const auto& [name, help] :
         std::vector<std::pair<std::string, std::string>>{
             {"qlin", "evaluate the quasilinearization pairing of points a,b,c,d"},
             {"project", "project point x onto the scene's convex set"},
             {"certify-vi", "variational-inequality certificate for u (or the computed projection)"},
             {"certify-props", "nonexpansive/monotone/firmly-nonexpansive certificates for the projection"},
             {"boundary-check", "escape-point certificate: geodesic points short of the projection stay outside"},
             {"cat0-check", "sampled Cauchy-Schwarz and comparison-inequality certification of the space"}}) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--scene", flags.scene_path, "scene JSON file")->required();
        sub->add_option("--tol", flags.tol, "certificate tolerance (overrides scene)");
        sub->add_option("--samples", flags.samples, "sample count (overrides scene)");
        sub->add_option("--seed", flags.seed, "random seed (overrides scene)");
        sub->add_option("--nmax", flags.nmax, "escape-point count (overrides scene)");
        sub->callback([&command, name = name]() { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        const cat0::Scene scene = load_scene(flags.scene_path);
        const Effective opt = resolve_options(scene, flags);
        if (command == "qlin") return run_qlin(scene);
        if (command == "project") return run_project(scene);
        if (command == "certify-vi") return run_certify_vi(scene, opt);
        if (command == "certify-props") return run_certify_props(scene, opt);
        if (command == "boundary-check") return run_boundary_check(scene, opt);
        if (command == "cat0-check") return run_cat0_check(scene, opt);
        std::cerr << "error: unknown command\n";
        return 2;
    } catch (const cat0::scene_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
