#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cat0/projection.hpp"
#include "cat0/quasilin.hpp"

namespace cat0 {

/// Inputs achieving the extremal residual of a sampled certificate,
/// sufficient to re-evaluate it.
struct Witness {
    std::vector<std::pair<std::string, Point>> points;
    std::vector<std::pair<std::string, double>> scalars;

    void add(std::string name, Point p) { points.emplace_back(std::move(name), std::move(p)); }
    void add(std::string name, double v) { scalars.emplace_back(std::move(name), v); }
};

/// Outcome of one sampled certificate. Verdict is pass exactly when the
/// extremal (most negative) residual stays above -tolerance; the witness
/// re-evaluates to the reported residual.
struct CertificateReport {
    std::string name;
    bool pass = false;
    double extremal = 0.0;
    Witness witness;
    long long samples = 0;
    SampleSeed seed;
    double tolerance = 0.0;
};

// ---------------------------------------------------------------------------
// projection characterization certificates
// ---------------------------------------------------------------------------

/// Samples y in C and checks the variational inequality <xu, uy> >= 0 that
/// characterizes u as the metric projection of x onto C.
inline CertificateReport vi_certificate(const Space& space, const ConvexSet& set, const Point& x,
                                        const Point& u, int n, SampleSeed seed, double tol) {
    if (n < 1) throw std::invalid_argument("vi_certificate: need n >= 1 samples");
    validate_point(space, x);
    if (!contains(space, set, u, 1e-8))
        throw std::invalid_argument("vi_certificate: candidate u does not lie in the set");

    const auto ys = sample_in_set(space, set, n, seed);
    CertificateReport rep;
    rep.name = "vi";
    rep.samples = n;
    rep.seed = seed;
    rep.tolerance = tol;
    rep.extremal = std::numeric_limits<double>::infinity();
    const Point* wy = nullptr;
    for (const auto& y : ys) {
        const double r = quasilin(space, x, u, u, y);
        if (r < rep.extremal) {
            rep.extremal = r;
            wy = &y;
        }
    }
    rep.pass = rep.extremal >= -tol;
    rep.witness.add("x", x);
    rep.witness.add("u", u);
    if (wy) rep.witness.add("y", *wy);
    return rep;
}

/// Samples y in C and checks minimality of d(x, u): residual d(x,y) - d(x,u).
inline CertificateReport distance_certificate(const Space& space, const ConvexSet& set,
                                              const Point& x, const Point& u, int n,
                                              SampleSeed seed, double tol) {
    if (n < 1) throw std::invalid_argument("distance_certificate: need n >= 1 samples");
    validate_point(space, x);
    if (!contains(space, set, u, 1e-8))
        throw std::invalid_argument("distance_certificate: candidate u does not lie in the set");

    const auto ys = sample_in_set(space, set, n, seed);
    const double du = dist(space, x, u);
    CertificateReport rep;
    rep.name = "distance";
    rep.samples = n;
    rep.seed = seed;
    rep.tolerance = tol;
    rep.extremal = std::numeric_limits<double>::infinity();
    const Point* wy = nullptr;
    for (const auto& y : ys) {
        const double r = dist(space, x, y) - du;
        if (r < rep.extremal) {
            rep.extremal = r;
            wy = &y;
        }
    }
    rep.pass = rep.extremal >= -tol;
    rep.witness.add("x", x);
    rep.witness.add("u", u);
    if (wy) rep.witness.add("y", *wy);
    return rep;
}

// ---------------------------------------------------------------------------
// operator property certificates
// ---------------------------------------------------------------------------

/// The operator whose nonexpansiveness / monotonicity / firm nonexpansiveness
/// is certified: a metric projection, or the identity / constant controls.
struct MapUnderTest {
    enum class Kind { projection, identity, constant };

    Space space;
    Kind kind = Kind::identity;
    std::optional<ConvexSet> set;  // projection
    Point constant_point;          // constant

    Point apply(const Point& p) const {
        switch (kind) {
            case Kind::projection: return project(space, *set, p).point;
            case Kind::identity: return p;
            case Kind::constant: return constant_point;
        }
        throw std::logic_error("MapUnderTest: unreachable");
    }

    static MapUnderTest projection_of(Space space, ConvexSet set) {
        MapUnderTest m;
        m.space = std::move(space);
        m.kind = Kind::projection;
        m.set = std::move(set);
        return m;
    }
    static MapUnderTest identity(Space space) {
        MapUnderTest m;
        m.space = std::move(space);
        m.kind = Kind::identity;
        return m;
    }
    static MapUnderTest constant(Space space, Point p) {
        MapUnderTest m;
        m.space = std::move(space);
        m.kind = Kind::constant;
        m.constant_point = std::move(p);
        return m;
    }
};

/// One certificate per operator property, over the same sampled pairs:
///   nonexpansive        d(x,y) - d(Tx,Ty)        >= 0
///   monotone            <xy, TxTy>               >= 0
///   firmly nonexpansive <xy, TxTy> - d²(Tx,Ty)   >= 0
struct MapPropertyReports {
    CertificateReport nonexpansive;
    CertificateReport monotone;
    CertificateReport firmly_nonexpansive;

    bool all_pass() const {
        return nonexpansive.pass && monotone.pass && firmly_nonexpansive.pass;
    }
};

inline MapPropertyReports map_property_report(const MapUnderTest& map, int n, SampleSeed seed,
                                              double tol) {
    if (n < 1) throw std::invalid_argument("map_property_report: need n >= 1 pairs");
    Rng rng(seed);
    MapPropertyReports out;
    for (CertificateReport* rep :
         {&out.nonexpansive, &out.monotone, &out.firmly_nonexpansive}) {
        rep->samples = n;
        rep->seed = seed;
        rep->tolerance = tol;
        rep->extremal = std::numeric_limits<double>::infinity();
    }
    out.nonexpansive.name = "nonexpansive";
    out.monotone.name = "monotone";
    out.firmly_nonexpansive.name = "firmly_nonexpansive";

    for (int i = 0; i < n; ++i) {
        const Point x = sample_point(map.space, rng);
        const Point y = sample_point(map.space, rng);
        const Point tx = map.apply(x);
        const Point ty = map.apply(y);
        const double pairing = quasilin(map.space, x, y, tx, ty);
        const double r_ne = dist(map.space, x, y) - dist(map.space, tx, ty);
        const double r_mono = pairing;
        const double r_firm = pairing - dist2(map.space, tx, ty);
        const auto note = [&](CertificateReport& rep, double r) {
            if (r < rep.extremal) {
                rep.extremal = r;
                rep.witness = Witness{};
                rep.witness.add("x", x);
                rep.witness.add("y", y);
                rep.witness.add("Tx", tx);
                rep.witness.add("Ty", ty);
            }
        };
        note(out.nonexpansive, r_ne);
        note(out.monotone, r_mono);
        note(out.firmly_nonexpansive, r_firm);
    }
    for (CertificateReport* rep : {&out.nonexpansive, &out.monotone, &out.firmly_nonexpansive})
        rep->pass = rep->extremal >= -tol;
    return out;
}

// ---------------------------------------------------------------------------
// boundary escape certificate
// ---------------------------------------------------------------------------

/// For x outside C with u its projection, the points z_n = (1/n) x (+)
/// (1-1/n) u are strictly closer to x than u, so every one must stay outside
/// C — the sampled embodiment of "projections land on the boundary".
/// Checks n = 2..n_max: z_n outside C (membership tolerance `tol`) and
/// d(z_n, u) = d(x, u)/n within 1e-9 (1 + d(x,u)).
inline CertificateReport boundary_escape_check(const Space& space, const ConvexSet& set,
                                               const Point& x, int n_max, double tol) {
    if (n_max < 2) throw std::invalid_argument("boundary_escape_check: need n_max >= 2");
    validate_point(space, x);
    if (contains(space, set, x, tol))
        throw std::invalid_argument("boundary_escape_check: x already lies in the set");

    const Point u = project(space, set, x).point;
    const double dxu = dist(space, x, u);
    const double identity_envelope = 1e-9 * (1.0 + dxu);

    CertificateReport rep;
    rep.name = "boundary_escape";
    rep.samples = n_max - 1;
    rep.tolerance = 0.0;
    rep.extremal = std::numeric_limits<double>::infinity();
    int worst_n = 2;
    Point worst_z = x;
    for (int n = 2; n <= n_max; ++n) {
        const Point zn = combine(space, 1.0 / n, x, u);
        const double clearance = set_distance(space, set, zn) - tol;
        const double identity_slack =
            identity_envelope - std::abs(dist(space, zn, u) - dxu / n);
        const double r = std::min(clearance, identity_slack);
        if (r < rep.extremal) {
            rep.extremal = r;
            worst_n = n;
            worst_z = zn;
        }
    }
    rep.pass = rep.extremal >= 0.0;
    rep.witness.add("x", x);
    rep.witness.add("u", u);
    rep.witness.add("z_n", worst_z);
    rep.witness.add("n", static_cast<double>(worst_n));
    return rep;
}

// ---------------------------------------------------------------------------
// space-level CAT(0) certification
// ---------------------------------------------------------------------------

/// Randomized CAT(0) certification: most negative Cauchy-Schwarz gap over n
/// quadruples and most negative comparison residual over n (x,y,z,lambda)
/// tuples. Both must stay above -tol for a pass; on a positively curved
/// control a negative witness is expected.
struct Cat0CertifyResult {
    CertificateReport cs_gap;
    CertificateReport comparison;

    bool pass() const { return cs_gap.pass && comparison.pass; }
};

inline Cat0CertifyResult cat0_certify(const Space& space, int n, SampleSeed seed, double tol) {
    if (n < 1) throw std::invalid_argument("cat0_certify: need n >= 1 samples");
    Cat0CertifyResult out;

    {
        Rng rng(seed.seed, seed.stream);
        CertificateReport& rep = out.cs_gap;
        rep.name = "cs_gap";
        rep.samples = n;
        rep.seed = seed;
        rep.tolerance = tol;
        rep.extremal = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const Point a = sample_point(space, rng);
            const Point b = sample_point(space, rng);
            const Point c = sample_point(space, rng);
            const Point d = sample_point(space, rng);
            const double g = cs_gap(space, a, b, c, d);
            if (g < rep.extremal) {
                rep.extremal = g;
                rep.witness = Witness{};
                rep.witness.add("a", a);
                rep.witness.add("b", b);
                rep.witness.add("c", c);
                rep.witness.add("d", d);
            }
        }
        rep.pass = rep.extremal >= -tol;
    }
    {
        Rng rng(seed.seed, seed.stream + 1);
        CertificateReport& rep = out.comparison;
        rep.name = "comparison";
        rep.samples = n;
        rep.seed = seed;
        rep.tolerance = tol;
        rep.extremal = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const Point x = sample_point(space, rng);
            const Point y = sample_point(space, rng);
            const Point z = sample_point(space, rng);
            const double lambda = rng.uniform01();
            double r;
            try {
                r = cat0_residual(space, x, y, z, lambda);
            } catch (const std::invalid_argument&) {
                continue;  // sphere control: antipodal-or-farther pair, geodesic not unique
            }
            if (r < rep.extremal) {
                rep.extremal = r;
                rep.witness = Witness{};
                rep.witness.add("x", x);
                rep.witness.add("y", y);
                rep.witness.add("z", z);
                rep.witness.add("lambda", lambda);
            }
        }
        rep.pass = rep.extremal >= -tol;
    }
    return out;
}

}  // namespace cat0
