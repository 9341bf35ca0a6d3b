// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sgeom/catenary.hpp"
#include "sgeom/cli.hpp"
#include "sgeom/ruled.hpp"
#include "sgeom/shapes.hpp"
#include "sgeom/variational.hpp"

using namespace sgeom;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

/// max over the grid of |singular_residual|
double grid_residual(const ParamSurface& surf, Metric m, const Direction& v, double alpha, int n) {
    double worst = 0.0;
    const Rect& d = surf.domain();
    for (double s : linspace(d.s.lo, d.s.hi, n))
        for (double t : linspace(d.t.lo, d.t.hi, n)) worst = std::max(worst, std::fabs(singular_residual(m, surf, s, t, v, alpha)));
    return worst;
}

Outcome catenary_ground_truth() {
    const CatenaryPolyline c = integrate_catenary({0.0, 0.0, 1.0, 0.0}, 1.0, 2.0, 1e-3);
    const CatenaryState& end = c.states.back();
    const double err = std::hypot(end.u - std::asinh(2.0), end.y - std::sqrt(5.0));
    return {err <= 1e-8 && !c.left_halfspace, fmt("endpoint error %.2e", err)};
}

Outcome catenary_cylinders() {
    const Metric E = Metric::euclidean();
    const Direction v = Direction::make(E, {0.0, 0.0, 1.0});
    double worst = 0.0;
    for (double alpha : {-2.0, -1.0, 1.0, 2.0, 3.0}) {
        const CatenaryPolyline c = integrate_catenary({0.0, 0.0, 2.0, 0.0}, alpha, 1.0, 1e-3);
        if (c.left_halfspace) return {false, fmt("alpha %g left the halfspace", alpha)};
        const ParamSurface cyl = catenary_cylinder(c, v.unit(), {0.0, 1.0, 0.0});
        worst = std::max(worst, grid_residual(cyl, E, v, alpha, 50));
    }
    return {worst <= 1e-5, fmt("max residual %.2e over alpha in {-2,-1,1,2,3}", worst)};
}

double frame_defect(const RuledSurface& rs, std::span<const double> ss) {
    double worst = 0.0;
    for (double s : ss) {
        const RuledFrame f = frame(rs, s);
        const CurveJet g = rs.base(s), w = rs.director(s);
        Vec3 base_defect, director_defect;
        if (rs.director_class == DirectorClass::EuclidStandard) {
            base_defect = g.d1 - f.wxwp * f.P;
            director_defect = w.d2 + w.p - f.wxwp * f.Q;
        } else {
            const double d = f.delta;
            base_defect = g.d1 + f.wxwp * (d * f.P);
            director_defect = w.d2 + (w.p + f.wxwp * f.Q) * d;
        }
        worst = std::max({worst, base_defect.coord_norm(), director_defect.coord_norm()});
    }
    return worst;
}

Outcome frame_identities() {
    double worst = 0.0;
    int count = 0;
    const std::vector<std::pair<DirectorClass, int>> classes = {
        {DirectorClass::EuclidStandard, 1}, {DirectorClass::LorentzNondegenerate, 1}, {DirectorClass::LorentzNondegenerate, -1}};
    for (const auto& [cls, delta] : classes) {
        const Metric m = cls == DirectorClass::EuclidStandard ? Metric::euclidean() : Metric::lorentzian();
        for (int k = 0; k < 100; ++k) {
            std::mt19937_64 rng(1000 + k + 7919 * delta);
            const Direction v = random_direction(rng, m);
            const RuledSurface rs = random_normalized_surface(rng, {cls, delta, {-1.0, 1.0}}, v);
            std::uniform_real_distribution<double> u(rs.s_range.lo, rs.s_range.hi);
            std::vector<double> ss(100);
            for (double& s : ss) s = u(rng);
            worst = std::max(worst, frame_defect(rs, ss));
            ++count;
        }
    }
    return {worst <= 1e-8, fmt("max defect %.2e over %g surfaces x 100 s", worst, count)};
}

Outcome coefficient_oracle() {
    double worst = 0.0;
    const std::vector<double> ts = linspace(-1.0, 1.0, 21);
    {
        const RuledSurface h = helicoid(1.5, {0.5, 2.5});
        const Direction v = Direction::make(Metric::euclidean(), {0.0, 0.0, 1.0});
        for (double s : linspace(0.6, 2.4, 10)) worst = std::max(worst, residual_polynomial_consistency(h, s, v, 1.3, ts));
    }
    struct Case {
        DirectorClass cls;
        int delta;
    };
    for (const Case c : {Case{DirectorClass::EuclidStandard, 1}, Case{DirectorClass::LorentzNondegenerate, 1},
                         Case{DirectorClass::LorentzNondegenerate, -1}, Case{DirectorClass::LorentzLightlike, 0}}) {
        const Metric m = c.cls == DirectorClass::EuclidStandard ? Metric::euclidean() : Metric::lorentzian();
        for (int k = 0; k < 50; ++k) {
            std::mt19937_64 rng(500 + k + 31 * (c.delta + 2) + 97 * static_cast<int>(c.cls));
            const Direction v = random_direction(rng, m);
            const double alpha = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
            const RuledSurface rs = random_normalized_surface(rng, {c.cls, c.delta, {-1.0, 1.0}}, v);
            for (double s : linspace(rs.s_range.lo, rs.s_range.hi, 5))
                worst = std::max(worst, residual_polynomial_consistency(rs, s, v, alpha, ts));
        }
    }
    return {worst <= 1e-8, fmt("max discrepancy %.2e (helicoid + 4 classes x 50 surfaces)", worst)};
}

Outcome sweeps() {
    const std::vector<std::vector<std::string>> runs = {
        {"sg", "sweep", "--metric", "euclid", "--n", "200", "--samples", "10", "--seed", "42"},
        {"sg", "sweep", "--metric", "lorentz", "--class", "delta-plus", "--n", "100", "--samples", "10", "--seed", "7"},
        {"sg", "sweep", "--metric", "lorentz", "--class", "delta-minus", "--n", "100", "--samples", "10", "--seed", "7"},
        {"sg", "sweep", "--metric", "lorentz", "--class", "lightlike", "--n", "100", "--samples", "10", "--seed", "7"}};
    std::string codes;
    bool ok = true;
    for (const auto& args : runs) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        ok = ok && code == 0;
        codes += std::to_string(code);
    }
    return {ok, "exit codes " + codes};
}

Outcome helicoid_values() {
    const Direction v = Direction::make(Metric::euclidean(), {0.0, 0.0, 1.0});
    double worst = 0.0;
    for (double c : {0.5, 1.0, 2.0}) {
        const RuledSurface h = helicoid(c, {0.5, 2.5});
        for (double alpha : {0.0, 1.0, 2.0})
            for (double s : linspace(0.5, 2.5, 5)) {
                const CoefficientVector a = coefficients(h, s, v, alpha);
                const double expect[4] = {0.0, -alpha * c * c, 0.0, -alpha};
                for (int i = 0; i < 4; ++i) worst = std::max(worst, std::fabs(a.A[i] - expect[i]));
            }
    }
    return {worst <= 1e-9, fmt("max error %.2e", worst)};
}

Outcome proposition_one() {
    const Metric L = Metric::lorentzian();
    double worst = 0.0;
    for (int delta : {1, -1})
        for (int k = 0; k < 20; ++k) {
            std::mt19937_64 rng(300 + k + 50 * delta);
            const RawRuledData raw = random_lorentz_raw_data(rng, delta);
            const RuledSurface rs = normalize_lorentz(raw.base, raw.director, raw.s_range, delta);
            for (double s : linspace(raw.s_range.lo, raw.s_range.hi, 201)) {
                const CurveJet g = rs.base(s), w = rs.director(s);
                worst = std::max({worst, std::fabs(L.inner(g.d1, w.p)), std::fabs(L.inner(g.d1, w.d1))});
            }
        }
    return {worst <= 1e-8, fmt("max |<g',w>|, |<g',w'>| = %.2e over 40 inputs", worst)};
}

double q_prime(const RuledSurface& rs, double s) {
    const double h = 1e-3;
    auto q = [&](double x) { return frame(rs, x).Q; };
    return (q(s - 2 * h) - 8 * q(s - h) + 8 * q(s + h) - q(s + 2 * h)) / (12 * h);
}

Outcome lightlike_identities() {
    const Metric L = Metric::lorentzian();
    double cross_defect = 0.0, form_defect = 0.0;
    for (int k = 0; k < 20; ++k) {
        std::mt19937_64 rng(900 + k);
        const Direction v = random_direction(rng, L);
        const RuledSurface rs = random_normalized_surface(rng, {DirectorClass::LorentzLightlike, 0, {-1.0, 1.0}}, v);
        std::uniform_real_distribution<double> us(rs.s_range.lo + 0.01, rs.s_range.hi - 0.01), ut(-0.2, 1.0);
        for (int n = 0; n < 20; ++n) {
            const double s = us(rng), t = ut(rng);
            const CurveJet w = rs.director(s);
            cross_defect = std::max(cross_defect, (L.cross(w.p, w.d1) + w.d1).max_abs());
            const double Q = frame(rs, s).Q, Qp = q_prime(rs, s);
            const Jet2 j = rs.jet(s, t);
            form_defect = std::max(form_defect, std::fabs(L.inner(j.Xs, j.Xs) - (1 + 2 * Q * t)));
            form_defect = std::max(form_defect, std::fabs(triple(j.Xs, j.Xt, j.Xss) - (Qp / Q + Qp * t)));
        }
    }
    return {cross_defect <= 1e-12 && form_defect <= 1e-8,
            fmt("w x w' + w' = %.2e, E and (Xs,Xt,Xss) defect %.2e", cross_defect, form_defect)};
}

Outcome variational_keystone() {
    double worst_rel = 0.0;
    for (int f = 0; f < 3; ++f) {
        std::mt19937_64 rng(40 + f);
        std::uniform_real_distribution<double> u(0.5, 1.5);
        HeightField h(17, 13, {{-1.0, 1.0}, {0.0, 1.0}});
        for (double& z : h.z) z = u(rng);
        const double alpha = std::uniform_real_distribution<double>(-1.0, 2.0)(rng);
        const std::vector<double> g = interior_gradient(h, alpha);
        for (int k = 0; k < 10; ++k) {
            const int i = std::uniform_int_distribution<int>(1, h.nu - 2)(rng);
            const int j = std::uniform_int_distribution<int>(1, h.nv - 2)(rng);
            const double step = 1e-5, z0 = h.at(i, j);
            h.at(i, j) = z0 + step;
            const double ep = height_energy(h, alpha);
            h.at(i, j) = z0 - step;
            const double em = height_energy(h, alpha);
            h.at(i, j) = z0;
            const double fd = (ep - em) / (2 * step), an = g[static_cast<std::size_t>(i) * h.nv + j];
            worst_rel = std::max(worst_rel, std::fabs(fd - an) / std::max(std::fabs(fd), 1e-300));
        }
    }
    const HeightField noisy = noisy_heights(64, 0.01, 2024);
    const double before = max_abs_interior(noisy, height_residual(noisy, 1.0));
    const DescentResult r = descend(noisy, 1.0, 2000, 0.1);
    const double after = max_abs_interior(r.field, height_residual(r.field, 1.0));
    const double gain = before / after;
    return {worst_rel <= 1e-6 && gain >= 10.0,
            fmt("gradient rel err %.2e; residual %.3g -> %.3g", worst_rel, before, after)};
}

Outcome curvature_sanity() {
    std::mt19937_64 rng(77);
    double h_err = 0.0, jet_err = 0.0;
    auto check = [&](const Shape& shape, Metric m) {
        const ParamSurface ex = shape.exact(), fd = shape.finite_difference();
        const Rect& d = shape.domain;
        const double margin = 2.5 * fd.step();
        std::uniform_real_distribution<double> us(d.s.lo + margin, d.s.hi - margin), ut(d.t.lo + margin, d.t.hi - margin);
        for (int k = 0; k < 20; ++k) {
            const double s = us(rng), t = ut(rng);
            const Jet2 a = ex.jet(s, t), b = fd.jet(s, t);
            h_err = std::max(h_err, std::fabs(std::fabs(mean_curvature(m, a)) - 1.0));
            for (const auto& [x, y] : {std::pair{a.X, b.X}, {a.Xs, b.Xs}, {a.Xt, b.Xt}, {a.Xss, b.Xss}, {a.Xst, b.Xst}, {a.Xtt, b.Xtt}})
                jet_err = std::max(jet_err, (x - y).max_abs());
        }
    };
    check(sphere_shape(), Metric::euclidean());
    check(hyperboloid_shape(), Metric::lorentzian());
    return {h_err <= 1e-6 && jet_err <= 1e-7, fmt("||H|-1| %.2e, fd jet error %.2e", h_err, jet_err)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "catenary ground truth", 1.0, catenary_ground_truth},
        {2, "alpha-catenary cylinders solve the singular minimal equation", 5.0, catenary_cylinders},
        {3, "frame identities", 10.0, frame_identities},
        {4, "coefficient-oracle equivalence", 30.0, coefficient_oracle},
        {5, "falsification sweeps", 120.0, sweeps},
        {6, "helicoid hand values", 1.0, helicoid_values},
        {7, "Lorentzian base reparametrization", 5.0, proposition_one},
        {8, "lightlike reference identities", 2.0, lightlike_identities},
        {9, "variational keystone", 60.0, variational_keystone},
        {10, "curvature sanity", 2.0, curvature_sanity},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = o.ok && secs < c.budget_s;
        failed += ok ? 0 : 1;
        std::printf("[%s] criterion %d: %s | %s | %.3f s (budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
