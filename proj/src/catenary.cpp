#include "sgeom/catenary.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>

namespace sgeom {

CatenaryRate catenary_rhs(const CatenaryState& state, double alpha) {
    if (!(state.y > kCatenaryHeightFloor))
        throw Error(ErrorCode::HalfspaceViolation, "catenary height reached the floor");
    const double c = std::cos(state.theta);
    return {c, std::sin(state.theta), alpha * c / state.y};
}

namespace {

CatenaryState rk4(const CatenaryState& x, double alpha, double h) {
    auto shift = [&](const CatenaryRate& k, double w) {
        return CatenaryState{x.s + w, x.u + w * k.du, x.y + w * k.dy, x.theta + w * k.dtheta};
    };
    const CatenaryRate k1 = catenary_rhs(x, alpha);
    const CatenaryRate k2 = catenary_rhs(shift(k1, 0.5 * h), alpha);
    const CatenaryRate k3 = catenary_rhs(shift(k2, 0.5 * h), alpha);
    const CatenaryRate k4 = catenary_rhs(shift(k3, h), alpha);
    CatenaryState out{x.s + h, x.u + h / 6 * (k1.du + 2 * (k2.du + k3.du) + k4.du),
                      x.y + h / 6 * (k1.dy + 2 * (k2.dy + k3.dy) + k4.dy),
                      x.theta + h / 6 * (k1.dtheta + 2 * (k2.dtheta + k3.dtheta) + k4.dtheta)};
    if (!(out.y > kCatenaryHeightFloor))
        throw Error(ErrorCode::HalfspaceViolation, "catenary height reached the floor");
    return out;
}

}  // namespace

CatenaryPolyline integrate_catenary(const CatenaryState& start, double alpha, double length, double step) {
    if (!(step > 0.0) || !(length >= 0.0) || !std::isfinite(length))
        throw Error(ErrorCode::InvalidArgument, "integration needs step > 0 and length >= 0");
    if (!(start.y > kCatenaryHeightFloor))
        throw Error(ErrorCode::HalfspaceViolation, "start point must lie in the upper halfplane");

    const auto n = static_cast<long>(std::ceil(length / step - 1e-9));
    const double h = n > 0 ? length / static_cast<double>(n) : 0.0;

    CatenaryPolyline out;
    out.alpha = alpha;
    out.states.reserve(static_cast<std::size_t>(n) + 1);
    out.states.push_back(start);
    for (long k = 0; k < n; ++k) {
        try {
            CatenaryState next = rk4(out.states.back(), alpha, h);
            next.s = start.s + static_cast<double>(k + 1) * h;
            out.states.push_back(next);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::HalfspaceViolation) throw;
            out.left_halfspace = true;
            break;
        }
    }
    return out;
}

namespace {

/// Height miss y(u = target) - target_y, or nothing when the shot turns back,
/// leaves the halfplane or runs out of arclength.
std::optional<double> shoot(PlanarPoint p0, PlanarPoint p1, double alpha, double theta0, double step) {
    const double max_length = 20.0 * std::hypot(p1.u - p0.u, p1.y - p0.y) + 10.0;
    CatenaryState x{0.0, p0.u, p0.y, theta0};
    try {
        while (x.s < max_length) {
            const CatenaryState next = rk4(x, alpha, step);
            if (next.u >= p1.u) {
                // Newton on the partial step length, u' = cos(theta)
                double tau = step * (p1.u - x.u) / (next.u - x.u);
                CatenaryState hit = rk4(x, alpha, tau);
                for (int it = 0; it < 6; ++it) {
                    const double c = std::cos(hit.theta);
                    if (!(c > 0.0)) return std::nullopt;
                    tau -= (hit.u - p1.u) / c;
                    hit = rk4(x, alpha, tau);
                }
                return hit.y - p1.y;
            }
            if (!(std::cos(next.theta) > 0.0)) return std::nullopt;
            x = next;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::HalfspaceViolation) throw;
    }
    return std::nullopt;
}

}  // namespace

double solve_catenary_bvp(PlanarPoint p0, PlanarPoint p1, double alpha, double tol, double step) {
    if (!(p0.y > 0.0) || !(p1.y > 0.0))
        throw Error(ErrorCode::HalfspaceViolation, "boundary points must lie in the upper halfplane");
    if (!(p0.u < p1.u)) throw Error(ErrorCode::InvalidArgument, "boundary points need p0.u < p1.u");
    if (!(tol > 0.0) || !(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol and step must be positive");

    constexpr int kScan = 64;
    constexpr double pi = std::numbers::pi;
    std::optional<double> misses[kScan];
    double angles[kScan];
    for (int i = 0; i < kScan; ++i) {
        angles[i] = -pi / 2 + pi * (i + 0.5) / kScan;
        misses[i] = shoot(p0, p1, alpha, angles[i], step);
    }

    int best = -1;
    for (int i = 0; i + 1 < kScan; ++i) {
        if (!misses[i] || !misses[i + 1]) continue;
        if (*misses[i] == 0.0) return angles[i];
        if ((*misses[i] < 0.0) != (*misses[i + 1] < 0.0)) {
            const double mid = std::fabs(angles[i] + angles[i + 1]);
            if (best < 0 || mid < std::fabs(angles[best] + angles[best + 1])) best = i;
        }
    }
    if (best < 0) throw Error(ErrorCode::NoSolution, "no initial angle brackets the target point");

    double lo = angles[best], hi = angles[best + 1];
    double f_lo = *misses[best];
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const std::optional<double> f = shoot(p0, p1, alpha, mid, step);
        if (!f) throw Error(ErrorCode::NoSolution, "shot inside the bracket failed");
        if (std::fabs(*f) <= tol) return mid;
        if ((*f < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = *f;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return mid;
}

ParamSurface catenary_cylinder(const CatenaryPolyline& curve, const Vec3& v, const Vec3& ruling, Metric m,
                               Interval ruling_range) {
    if (curve.states.size() < 2) throw Error(ErrorCode::InvalidArgument, "cylinder needs a polyline with >= 2 states");
    if (m.norm(v) == 0.0 || m.norm(ruling) == 0.0) throw Error(ErrorCode::ZeroDirection, "v and ruling must be nonzero");
    const Vec3 vu = v / m.norm(v);
    const Vec3 r = ruling / m.norm(ruling);
    if (std::fabs(m.inner(r, vu)) > 1e-10) throw Error(ErrorCode::NotOrthogonal, "ruling must be orthogonal to v");
    Vec3 e = m.cross(r, vu);
    e = e / m.norm(e);

    std::vector<double> knots;
    std::vector<CurveJet> jets;
    for (const CatenaryState& st : curve.states) {
        const double c = std::cos(st.theta), sn = std::sin(st.theta);
        const double kappa = curve.alpha * c / st.y;
        knots.push_back(st.s);
        jets.push_back({{st.u, st.y, 0.0}, {c, sn, 0.0}, {-kappa * sn, kappa * c, 0.0}});
    }
    const Curve planar = TabulatedCurve(std::move(knots), std::move(jets)).as_curve();
    const Interval s_range{curve.states.front().s, curve.states.back().s};

    return ParamSurface::exact({s_range, ruling_range}, [planar, e, vu, r](double s, double t) {
        const CurveJet c = planar(s);
        Jet2 j;
        j.X = e * c.p.x + vu * c.p.y + r * t;
        j.Xs = e * c.d1.x + vu * c.d1.y;
        j.Xt = r;
        j.Xss = e * c.d2.x + vu * c.d2.y;
        j.Xst = Vec3{};
        j.Xtt = Vec3{};
        return j;
    });
}

void write_catenary_csv(std::ostream& os, const CatenaryPolyline& curve) {
    os << (curve.left_halfspace ? "s,u,y,theta,left_halfspace\n" : "s,u,y,theta\n");
    os << std::setprecision(17);
    for (std::size_t i = 0; i < curve.states.size(); ++i) {
        const CatenaryState& st = curve.states[i];
        os << st.s << ',' << st.u << ',' << st.y << ',' << st.theta;
        if (curve.left_halfspace) os << ',' << (i + 1 == curve.states.size() ? 1 : 0);
        os << '\n';
    }
}

}  // namespace sgeom
