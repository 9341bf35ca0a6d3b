#include "sgeom/surface.hpp"

#include <cmath>
#include <sstream>

namespace sgeom {

ParamSurface ParamSurface::exact(Rect domain, JetFn jets) {
    ParamSurface out;
    out.domain_ = domain;
    out.source_ = JetSource::Exact;
    out.jets_ = std::move(jets);
    return out;
}

ParamSurface ParamSurface::finite_difference(Rect domain, PointFn points, double h) {
    ParamSurface out;
    out.domain_ = domain;
    out.source_ = JetSource::FiniteDifference;
    out.points_ = std::move(points);
    out.h_ = h > 0.0 ? h : 1e-4 * domain.diameter();
    return out;
}

namespace {

[[noreturn]] void out_of_domain(double s, double t) {
    std::ostringstream os;
    os << "(" << s << ", " << t << ") outside the surface domain";
    throw Error(ErrorCode::OutOfDomain, os.str());
}

constexpr double kD1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};      // / 12h
constexpr double kD2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};  // / 12h^2

}  // namespace

Jet2 ParamSurface::jet(double s, double t) const {
    if (!domain_.contains(s, t)) out_of_domain(s, t);
    if (source_ == JetSource::Exact) return jets_(s, t);

    const double h = h_;
    if (s - 2 * h < domain_.s.lo || s + 2 * h > domain_.s.hi || t - 2 * h < domain_.t.lo ||
        t + 2 * h > domain_.t.hi)
        out_of_domain(s, t);

    Vec3 at[5][5];
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) at[i][k] = points_(s + (i - 2) * h, t + (k - 2) * h);

    Jet2 j{};
    j.X = at[2][2];
    for (int i = 0; i < 5; ++i) {
        j.Xs += at[i][2] * kD1[i];
        j.Xt += at[2][i] * kD1[i];
        j.Xss += at[i][2] * kD2[i];
        j.Xtt += at[2][i] * kD2[i];
        for (int k = 0; k < 5; ++k)
            if (i != 2 && k != 2) j.Xst += at[i][k] * (kD1[i] * kD1[k]);
    }
    j.Xs = j.Xs / (12 * h);
    j.Xt = j.Xt / (12 * h);
    j.Xss = j.Xss / (12 * h * h);
    j.Xtt = j.Xtt / (12 * h * h);
    j.Xst = j.Xst / (144 * h * h);
    return j;
}

Vec3 ParamSurface::point(double s, double t) const {
    if (!domain_.contains(s, t)) out_of_domain(s, t);
    return source_ == JetSource::Exact ? jets_(s, t).X : points_(s, t);
}

FundamentalForms fundamental_forms(Metric m, const Jet2& j) {
    FundamentalForms ff;
    ff.E = m.inner(j.Xs, j.Xs);
    ff.F = m.inner(j.Xs, j.Xt);
    ff.G = m.inner(j.Xt, j.Xt);
    ff.W2 = ff.E * ff.G - ff.F * ff.F;
    if (!(std::fabs(ff.W2) >= 1e-14 * (ff.E * ff.E + ff.G * ff.G + 1.0)))
        throw Error(ErrorCode::DegenerateMetric, "|EG - F^2| below the regularity floor");
    const double w = std::sqrt(std::fabs(ff.W2));
    ff.e = triple(j.Xs, j.Xt, j.Xss) / w;
    ff.f = triple(j.Xs, j.Xt, j.Xst) / w;
    ff.g = triple(j.Xs, j.Xt, j.Xtt) / w;
    // <Xs x Xt, Xs x Xt>_L = -(EG - F^2)
    ff.eps = m.is_lorentzian() ? (ff.W2 > 0.0 ? -1 : 1) : 1;
    return ff;
}

Vec3 unit_normal(Metric m, const Jet2& j) {
    fundamental_forms(m, j);
    const Vec3 c = m.cross(j.Xs, j.Xt);
    return c / m.norm(c);
}

namespace {

void require_spacelike(Metric m, const FundamentalForms& ff) {
    if (m.is_lorentzian() && ff.eps != -1)
        throw Error(ErrorCode::NotSpacelike, "surface is not spacelike at the evaluated point");
}

double curvature_combination(const Jet2& j, const FundamentalForms& ff) {
    return ff.G * triple(j.Xs, j.Xt, j.Xss) - 2.0 * ff.F * triple(j.Xs, j.Xt, j.Xst) +
           ff.E * triple(j.Xs, j.Xt, j.Xtt);
}

double height(Metric m, const Vec3& X, const Vec3& v) { return m.inner(X, v); }

void require_halfspace(Metric m, double xv) {
    if (m.is_lorentzian() ? xv == 0.0 : !(xv > 0.0))
        throw Error(ErrorCode::HalfspaceViolation, "point outside the halfspace <X,v> > 0");
}

}  // namespace

double mean_curvature(Metric m, const Jet2& j) {
    const FundamentalForms ff = fundamental_forms(m, j);
    if (!m.is_lorentzian()) return (ff.G * ff.e - 2 * ff.F * ff.f + ff.E * ff.g) / (2 * ff.W2);
    require_spacelike(m, ff);
    return -0.5 * curvature_combination(j, ff) / std::pow(std::fabs(ff.W2), 1.5);
}

Direction Direction::make(Metric m, const Vec3& v) {
    if (m.is_lorentzian()) {
        if (causal_character(v) != CausalCharacter::Timelike)
            throw Error(ErrorCode::NotTimelike, "direction v must be timelike in L^3");
    } else if (v == Vec3{}) {
        throw Error(ErrorCode::ZeroDirection, "direction v must be nonzero");
    }
    return Direction(m, v / m.norm(v), v);
}

double residual_numerator(Metric m, const Jet2& j, const Vec3& v, double alpha) {
    const double E = m.inner(j.Xs, j.Xs);
    const double F = m.inner(j.Xs, j.Xt);
    const double G = m.inner(j.Xt, j.Xt);
    const double W2 = E * G - F * F;
    const double eps = m.is_lorentzian() ? (W2 > 0.0 ? -1.0 : 1.0) : 1.0;
    const double S = G * triple(j.Xs, j.Xt, j.Xss) - 2 * F * triple(j.Xs, j.Xt, j.Xst) +
                     E * triple(j.Xs, j.Xt, j.Xtt);
    return m.inner(j.X, v) * S - eps * alpha * W2 * triple(j.Xs, j.Xt, v);
}

double singular_residual(Metric m, const Jet2& j, const Direction& v, double alpha) {
    const FundamentalForms ff = fundamental_forms(m, j);
    require_spacelike(m, ff);
    const double xv = height(m, j.X, v.unit());
    require_halfspace(m, xv);
    return curvature_combination(j, ff) - ff.eps * alpha * ff.W2 / xv * triple(j.Xs, j.Xt, v.unit());
}

double singular_residual(Metric m, const ParamSurface& surf, double s, double t, const Direction& v,
                         double alpha) {
    return singular_residual(m, surf.jet(s, t), v, alpha);
}

namespace {

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

double grid_node(const Interval& r, int i, int n) { return i == n - 1 ? r.hi : r.lo + i * (r.length() / (n - 1)); }

double energy_density(Metric m, const Vec3& X, const Vec3& Xs, const Vec3& Xt, const Vec3& v,
                      double alpha) {
    const double E = m.inner(Xs, Xs), F = m.inner(Xs, Xt), G = m.inner(Xt, Xt);
    const double W2 = E * G - F * F;
    if (m.is_lorentzian() && !(W2 > 0.0))
        throw Error(ErrorCode::NotSpacelike, "energy needs a spacelike surface");
    if (!(std::fabs(W2) >= 1e-14 * (E * E + G * G + 1.0)))
        throw Error(ErrorCode::DegenerateMetric, "|EG - F^2| below the regularity floor");
    const double xv = m.inner(X, v);
    if (!(xv > 0.0)) throw Error(ErrorCode::HalfspaceViolation, "point outside the halfspace <X,v> > 0");
    return std::pow(xv, alpha) * std::sqrt(std::fabs(W2));
}

void check_grid(Grid g) {
    if (g.ns < 2 || g.nt < 2) throw Error(ErrorCode::InvalidArgument, "quadrature grid needs >= 2 nodes per side");
}

template <class F>
double trapezoid(const Rect& d, Grid g, const F& integrand) {
    check_grid(g);
    const double ds = d.s.length() / (g.ns - 1);
    const double dt = d.t.length() / (g.nt - 1);
    double sum = 0.0;
    for (int i = 0; i < g.ns; ++i)
        for (int k = 0; k < g.nt; ++k)
            sum += trapezoid_weight(i, g.ns) * trapezoid_weight(k, g.nt) *
                   integrand(grid_node(d.s, i, g.ns), grid_node(d.t, k, g.nt));
    return sum * ds * dt;
}

}  // namespace

double potential_energy(Metric m, const ParamSurface& surf, const Direction& v, double alpha, Grid grid) {
    return trapezoid(surf.domain(), grid, [&](double s, double t) {
        const Jet2 j = surf.jet(s, t);
        return energy_density(m, j.X, j.Xs, j.Xt, v.unit(), alpha);
    });
}

double first_variation(Metric m, const ParamSurface& surf, const Direction& v, double alpha,
                       const Bump& bump, double h, Grid grid) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "variation step must be positive");
    const double hb = 1e-3 * surf.domain().diameter();

    auto perturbed = [&](double sign) {
        return trapezoid(surf.domain(), grid, [&](double s, double t) {
            const Jet2 j = surf.jet(s, t);
            fundamental_forms(m, j);
            const Vec3 c = m.cross(j.Xs, j.Xt);
            const Vec3 cs = m.cross(j.Xss, j.Xt) + m.cross(j.Xs, j.Xst);
            const Vec3 ct = m.cross(j.Xst, j.Xt) + m.cross(j.Xs, j.Xtt);
            const double q = m.inner(c, c);
            const double n = std::sqrt(std::fabs(q));
            const double sg = q < 0.0 ? -1.0 : 1.0;
            const Vec3 N = c / n;
            const Vec3 Ns = cs / n - c * (sg * m.inner(c, cs) / (n * n * n));
            const Vec3 Nt = ct / n - c * (sg * m.inner(c, ct) / (n * n * n));

            const double phi = bump(s, t);
            double phi_s = 0.0, phi_t = 0.0;
            for (int i = 0; i < 5; ++i) {
                if (i == 2) continue;
                phi_s += kD1[i] * bump(s + (i - 2) * hb, t);
                phi_t += kD1[i] * bump(s, t + (i - 2) * hb);
            }
            phi_s /= 12 * hb;
            phi_t /= 12 * hb;

            const double k = sign * h;
            const Vec3 X = j.X + N * (k * phi);
            const Vec3 Xs = j.Xs + (N * phi_s + Ns * phi) * k;
            const Vec3 Xt = j.Xt + (N * phi_t + Nt * phi) * k;
            return energy_density(m, X, Xs, Xt, v.unit(), alpha);
        });
    };
    return (perturbed(1.0) - perturbed(-1.0)) / (2.0 * h);
}

}  // namespace sgeom
