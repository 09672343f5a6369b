// Acceptance suite: end-to-end checks of the toolkit at desk scale. Each
// criterion prints exactly one [PASS]/[FAIL] line; the process exits nonzero
// if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cat0/cat0.hpp"

using namespace cat0;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double env9(double scale) { return 1e-9 * (1.0 + std::abs(scale)); }

std::vector<std::pair<std::string, Space>> cat0_model_roster() {
    return {{"euclidean2", make_euclidean(2)},
            {"hyperboloid2", make_hyperboloid(2)},
            {"tripod", make_tripod()},
            {"product", make_product({make_euclidean(1), make_tripod()})}};
}

// --------------------------------------------------------------------------
// 1. Euclidean identity suite
// --------------------------------------------------------------------------
void criterion1() {
    const auto t0 = Clock::now();
    bool ok = true;
    double worst = 0.0;
    for (const int dim : {2, 5}) {
        const auto s = make_euclidean(dim);
        Rng rng(1001, static_cast<std::uint64_t>(dim));
        for (int i = 0; i < 100000; ++i) {
            const Point x = sample_point(s, rng), y = sample_point(s, rng),
                        z = sample_point(s, rng), w = sample_point(s, rng);
            const double lambda = rng.uniform01();

            const double c = cat0_residual(s, x, y, z, lambda);
            const double cscale = dist2(s, x, z) + dist2(s, y, z) + dist2(s, x, y);
            if (std::abs(c) > env9(cscale)) ok = false;
            worst = std::max(worst, std::abs(c) / env9(cscale));

            const double l = scaling_residual(s, x, y, lambda, w);
            const double lscale = dist2(s, x, y) + dist2(s, x, w) + dist2(s, y, w);
            if (std::abs(l) > env9(lscale)) ok = false;
            worst = std::max(worst, std::abs(l) / env9(lscale));
        }
    }
    const double secs = seconds_since(t0);
    ok = ok && secs <= 5.0;
    std::ostringstream d;
    d << "dims 2,5 x 1e5; worst residual at " << worst << " of envelope; " << secs << " s";
    report(1, "Euclidean comparison and scaling identities", ok, d.str());
}

// --------------------------------------------------------------------------
// 2. CAT(0) certification across models, sphere control fails
// --------------------------------------------------------------------------
void criterion2() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream d;
    for (const auto& [name, s] : cat0_model_roster()) {
        const auto res = cat0_certify(s, 100000, SampleSeed{2025, 0}, 1e-9);
        if (!res.pass()) ok = false;
        d << name << " gap " << res.cs_gap.extremal << ", cmp " << res.comparison.extremal
          << "; ";
    }
    const auto sres = cat0_certify(make_sphere(2), 10000, SampleSeed{2025, 1}, 1e-9);
    if (sres.pass() || sres.cs_gap.extremal > -1e-3) ok = false;
    d << "sphere gap " << sres.cs_gap.extremal;
    const double secs = seconds_since(t0);
    ok = ok && secs <= 30.0;
    d << "; " << secs << " s";
    report(2, "cat0_certify passes on CAT(0) models, fails on sphere", ok, d.str());
}

// --------------------------------------------------------------------------
// 3. quasilinearization algebra
// --------------------------------------------------------------------------
void criterion3() {
    bool ok = true;
    double worst = 0.0;
    const auto models = [] {
        auto ms = cat0_model_roster();
        ms.emplace_back("euclidean5", make_euclidean(5));
        ms.emplace_back("sphere2", make_sphere(2));
        return ms;
    }();
    for (const auto& [name, s] : models) {
        Rng rng(3003, 0);
        for (int i = 0; i < 100000; ++i) {
            const Point a = sample_point(s, rng), b = sample_point(s, rng),
                        c = sample_point(s, rng), d = sample_point(s, rng),
                        e = sample_point(s, rng);
            const double d2ab = dist2(s, a, b);
            const double quad = std::abs(quasilin(s, a, b, a, b) - d2ab);
            if (quad > env9(d2ab)) ok = false;

            const double q = quasilin(s, a, b, c, d);
            if (quasilin(s, b, a, c, d) != -q) ok = false;
            if (quasilin(s, c, d, a, b) != q) ok = false;

            const double tele = std::abs(q - (quasilin(s, a, b, c, e) + quasilin(s, a, b, e, d)));
            const double scale = d2ab + dist2(s, c, d) + dist2(s, c, e) + dist2(s, e, d);
            if (tele > env9(scale)) ok = false;
            worst = std::max(worst, std::max(quad / env9(d2ab), tele / env9(scale)));
        }
    }
    std::ostringstream d;
    d << "1e5 tuples per model; worst at " << worst << " of envelope";
    report(3, "pairing algebra: quadratic, antisymmetry, symmetry, telescoping", ok, d.str());
}

// --------------------------------------------------------------------------
// 4. projection oracle equivalence
// --------------------------------------------------------------------------
Point clamp_projection_oracle(const Point& x, const Point& a, const Point& b) {
    const std::size_t n = x.coords.size();
    double e2 = 0.0, t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = b.coords[i] - a.coords[i];
        e2 += e * e;
        t += (x.coords[i] - a.coords[i]) * e;
    }
    double lam = e2 > 0.0 ? std::min(1.0, std::max(0.0, t / e2)) : 0.0;
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = a.coords[i] + lam * (b.coords[i] - a.coords[i]);
    return euclidean_point(std::move(p));
}

void criterion4() {
    const auto s = make_euclidean(2);
    Rng rng(4004, 0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Point a = sample_point(s, rng), b = sample_point(s, rng), x = sample_point(s, rng);
        const auto seg = make_segment(s, a, b);
        const Point got = project_segment(s, seg, x).point;
        worst = std::max(worst, dist(s, got, clamp_projection_oracle(x, a, b)));
    }
    bool ok = worst <= 1e-8;

    const auto quadrant = make_halfspaces(s, {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}});
    const auto q = project_halfspaces(s, quadrant, euclidean_point({1, 1})).point;
    const double qerr = std::max(std::abs(q.coords[0]), std::abs(q.coords[1]));
    ok = ok && qerr <= 1e-9;

    std::ostringstream d;
    d << "1e4 segment instances, worst point error " << worst << "; quadrant error " << qerr;
    report(4, "segment solver matches the clamped closed form; Dykstra corner exact", ok, d.str());
}

// --------------------------------------------------------------------------
// 5 & 6. projection characterization, forward and converse
// --------------------------------------------------------------------------
struct RandomCase {
    std::string name;
    Space space;
    ConvexSet set;
    Point x;
};

std::vector<RandomCase> random_cases(int count) {
    std::vector<RandomCase> cases;
    Rng rng(5005, 0);
    const auto e2 = make_euclidean(2);
    const auto e5 = make_euclidean(5);
    const auto h2 = make_hyperboloid(2);
    const auto tp = make_tripod();
    const auto pr = make_product({make_euclidean(1), make_tripod()});
    int i = 0;
    while (static_cast<int>(cases.size()) < count) {
        switch (i++ % 10) {
            case 0:
                cases.push_back({"euclid2 ball", e2,
                                 make_ball(e2, sample_point(e2, rng), rng.uniform(0.3, 2.0)),
                                 sample_point(e2, rng)});
                break;
            case 1:
                cases.push_back({"euclid2 segment", e2,
                                 make_segment(e2, sample_point(e2, rng), sample_point(e2, rng)),
                                 sample_point(e2, rng)});
                break;
            case 2: {
                // halfplane through a random interior point with a random normal
                std::vector<double> n = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
                if (std::abs(n[0]) + std::abs(n[1]) < 0.1) n = {1.0, 0.0};
                const auto p = sample_point(e2, rng);
                const double off = n[0] * p.coords[0] + n[1] * p.coords[1];
                cases.push_back({"euclid2 halfplane", e2, make_halfspaces(e2, {{n, off}}),
                                 sample_point(e2, rng)});
                break;
            }
            case 3:
                cases.push_back({"euclid2 quadrant", e2,
                                 make_halfspaces(e2, {{{1.0, 0.0}, rng.uniform(-1.0, 1.0)},
                                                      {{0.0, 1.0}, rng.uniform(-1.0, 1.0)}}),
                                 sample_point(e2, rng)});
                break;
            case 4:
                cases.push_back({"euclid5 ball", e5,
                                 make_ball(e5, sample_point(e5, rng), rng.uniform(0.5, 3.0)),
                                 sample_point(e5, rng)});
                break;
            case 5:
                cases.push_back({"hyper2 ball", h2,
                                 make_ball(h2, sample_point(h2, rng), rng.uniform(0.3, 2.0)),
                                 sample_point(h2, rng)});
                break;
            case 6:
                cases.push_back({"hyper2 segment", h2,
                                 make_segment(h2, sample_point(h2, rng), sample_point(h2, rng)),
                                 sample_point(h2, rng)});
                break;
            case 7:
                cases.push_back({"tripod subtree", tp, make_subtree(tp, {0, 1 + static_cast<int>(rng.below(3))}),
                                 sample_point(tp, rng)});
                break;
            case 8:
                cases.push_back({"tripod segment", tp,
                                 make_segment(tp, sample_point(tp, rng), sample_point(tp, rng)),
                                 sample_point(tp, rng)});
                break;
            case 9:
                cases.push_back({"product ball", pr,
                                 make_ball(pr, sample_point(pr, rng), rng.uniform(0.3, 2.0)),
                                 sample_point(pr, rng)});
                break;
        }
    }
    return cases;
}

void criteria5and6() {
    const auto t0 = Clock::now();
    const auto cases = random_cases(100);

    bool ok5 = true;
    std::string worst5;
    double worst5_val = std::numeric_limits<double>::infinity();
    int idx = 0;

    bool ok6 = true;
    int converse_tested = 0;

    for (const auto& c : cases) {
        const Point u = project(c.space, c.set, c.x).point;
        const SampleSeed seed{6006, static_cast<std::uint64_t>(idx)};
        const auto vi = vi_certificate(c.space, c.set, c.x, u, 1000, seed, 1e-7);
        if (!vi.pass) ok5 = false;
        if (vi.extremal < worst5_val) {
            worst5_val = vi.extremal;
            worst5 = c.name;
        }

        // converse: a VI pass at 1e-9 must imply distance minimality at 1e-7
        // on the same sample set
        if (vi.extremal >= -1e-9) {
            const auto dc = distance_certificate(c.space, c.set, c.x, u, 1000, seed, 1e-7);
            if (!dc.pass) ok6 = false;
            ++converse_tested;
        }
        ++idx;
    }
    const double secs = seconds_since(t0);
    ok5 = ok5 && secs <= 20.0;
    {
        std::ostringstream d;
        d << "100 cases x 1e3 samples; most negative residual " << worst5_val << " (" << worst5
          << "); " << secs << " s";
        report(5, "forward: vi_certificate passes for computed projections", ok5, d.str());
    }

    // hand-valued false candidate on the ball scene
    const auto s = make_euclidean(2);
    const auto ball = make_ball(s, euclidean_point({0, 0}), 1.0);
    const Point x = euclidean_point({3, 0});
    const Point u_false = euclidean_point({0, 1});
    const auto bad = vi_certificate(s, ball, x, u_false, 1000, SampleSeed{6006, 1000}, 1e-7);
    const double hand = quasilin(s, x, u_false, u_false, euclidean_point({1, 0}));
    const bool hand_ok = !bad.pass && std::abs(hand - (-4.0)) <= 1e-9;
    ok6 = ok6 && hand_ok && converse_tested > 0;
    {
        std::ostringstream d;
        d << converse_tested << " paired cases; false-candidate witness residual " << hand;
        report(6, "converse: distance certificate follows the VI; -4 hand witness", ok6, d.str());
    }
}

// --------------------------------------------------------------------------
// 7. projection operator properties
// --------------------------------------------------------------------------
void criterion7() {
    bool ok = true;
    std::ostringstream d;
    const auto e2 = make_euclidean(2);
    const auto tp = make_tripod();
    const std::vector<std::pair<std::string, MapUnderTest>> maps = {
        {"ball", MapUnderTest::projection_of(e2, make_ball(e2, euclidean_point({0.5, -0.5}), 1.5))},
        {"segment", MapUnderTest::projection_of(
                        e2, make_segment(e2, euclidean_point({-2, 0}), euclidean_point({1, 2})))},
        {"subtree", MapUnderTest::projection_of(tp, make_subtree(tp, {0, 3}))},
        {"halfspaces", MapUnderTest::projection_of(
                           e2, make_halfspaces(e2, {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 0.0}}))},
    };
    for (const auto& [name, map] : maps) {
        const auto rep = map_property_report(map, 1000, SampleSeed{7007, 0}, 1e-7);
        if (!rep.all_pass()) ok = false;
        d << name << " [" << rep.nonexpansive.extremal << ", " << rep.monotone.extremal << ", "
          << rep.firmly_nonexpansive.extremal << "]; ";
    }
    report(7, "projections are nonexpansive, monotone, firmly nonexpansive", ok, d.str());
}

// --------------------------------------------------------------------------
// 8. escape points
// --------------------------------------------------------------------------
void criterion8() {
    bool ok = true;
    std::ostringstream d;

    struct EscapeCase {
        std::string name;
        Space space;
        ConvexSet set;
        Point x;
    };
    const auto e2 = make_euclidean(2);
    const auto tp = make_tripod();
    const std::vector<EscapeCase> cases = {
        {"ball", e2, make_ball(e2, euclidean_point({0, 0}), 1.0), euclidean_point({3, 0})},
        {"halfplane", e2, make_halfspaces(e2, {{{0.0, 1.0}, 0.0}}), euclidean_point({0, 2})},
        {"segment", e2, make_segment(e2, euclidean_point({-1, 0}), euclidean_point({1, 0})),
         euclidean_point({0, 2})},
        {"subtree", tp, make_subtree(tp, {0, 1}), tree_vertex_point(2)},
    };
    for (const auto& c : cases) {
        const auto rep = boundary_escape_check(c.space, c.set, c.x, 100, 1e-9);
        if (!rep.pass) ok = false;

        // direct check of the distance identity for every n
        const Point u = project(c.space, c.set, c.x).point;
        const double dxu = dist(c.space, c.x, u);
        double worst_id = 0.0;
        for (int n = 2; n <= 100; ++n) {
            const Point zn = combine(c.space, 1.0 / n, c.x, u);
            worst_id = std::max(worst_id, std::abs(dist(c.space, zn, u) - dxu / n));
        }
        if (worst_id > 1e-9 * (1.0 + dxu)) ok = false;
        d << c.name << " clearance " << rep.extremal << ", id err " << worst_id << "; ";
    }
    report(8, "escape points stay outside C with the exact geodesic spacing", ok, d.str());
}

// --------------------------------------------------------------------------
// 9. tripod hand values
// --------------------------------------------------------------------------
void criterion9() {
    const auto tp = make_tripod();
    const double res =
        cat0_residual(tp, tree_vertex_point(1), tree_vertex_point(2), tree_vertex_point(3), 0.5);
    bool ok = std::abs(res - 2.0) <= 1e-12;

    const auto sub = make_subtree(tp, {0, 1});
    const auto gate = project_subtree(tp, sub, tree_vertex_point(2));
    ok = ok && gate.point == tree_vertex_point(0) && std::abs(gate.distance - 1.0) <= 1e-12;

    std::ostringstream d;
    d << "comparison residual " << res << "; gate distance " << gate.distance;
    report(9, "tripod hand values reproduce to 1e-12", ok, d.str());
}

// --------------------------------------------------------------------------
// 10. CLI golden corpus
// --------------------------------------------------------------------------
struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_cli(const std::string& cmdline) {
    RunResult r;
    FILE* pipe = popen((cmdline + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

void criterion10() {
    const char* cli = std::getenv("CAT0_CLI");
    if (!cli || !fs::exists(cli)) {
        report(10, "CLI golden corpus", false, "CAT0_CLI not set or binary missing");
        return;
    }

    const fs::path dir = fs::temp_directory_path() / "cat0_golden";
    fs::create_directories(dir);
    const auto write = [&](const char* name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const std::string ball_scene = write("ball.json", R"({
        "space": {"model": "euclidean", "dim": 2},
        "set": {"kind": "ball", "center": [0, 0], "radius": 1},
        "points": {"x": [3, 0]},
        "options": {"seed": 7, "samples": 1000}
    })");
    const std::string claim_scene = write("claim.json", R"({
        "space": {"model": "euclidean", "dim": 2},
        "set": {"kind": "ball", "center": [0, 0], "radius": 1},
        "points": {"x": [3, 0], "u": [0, 1]},
        "options": {"seed": 7, "samples": 1000}
    })");
    const std::string sphere_scene = write("sphere.json", R"({
        "space": {"model": "sphere", "dim": 2},
        "options": {"seed": 7, "samples": 10000}
    })");

    const std::vector<std::pair<std::string, int>> invocations = {
        {std::string(cli) + " project --scene " + ball_scene, 0},
        {std::string(cli) + " certify-vi --scene " + claim_scene, 1},
        {std::string(cli) + " cat0-check --scene " + sphere_scene, 1},
    };

    bool ok = true;
    std::ostringstream d;
    int k = 0;
    for (const auto& [cmd, want_status] : invocations) {
        const RunResult r1 = run_cli(cmd);
        const RunResult r2 = run_cli(cmd);
        if (r1.status != want_status || r2.status != want_status) ok = false;
        if (r1.output.empty() || r1.output != r2.output) ok = false;
        d << "cmd" << k++ << " status " << r1.status << " bytes " << r1.output.size()
          << (r1.output == r2.output ? " stable" : " UNSTABLE") << "; ";
    }
    report(10, "CLI golden corpus: byte-identical reports, statuses {0,1,1}", ok, d.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criteria5and6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
