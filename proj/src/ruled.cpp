#include "sgeom/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace sgeom {

const char* to_string(DirectorClass c) noexcept {
    switch (c) {
        case DirectorClass::EuclidStandard: return "euclid-standard";
        case DirectorClass::LorentzNondegenerate: return "lorentz-nondegenerate";
        case DirectorClass::LorentzLightlike: return "lorentz-lightlike";
    }
    return "unknown";
}

Jet2 RuledSurface::jet(double s, double t) const {
    const CurveJet g = base(s);
    const CurveJet w = director(s);
    return {g.p + w.p * t, g.d1 + w.d1 * t, w.p, g.d2 + w.d2 * t, w.d1, Vec3{}};
}

ParamSurface RuledSurface::surface(Interval t_range) const {
    RuledSurface copy = *this;
    return ParamSurface::exact({s_range, t_range}, [copy](double s, double t) { return copy.jet(s, t); });
}

RuledSurface make_cylinder(Curve base, const Vec3& direction, Metric m, Interval s_range) {
    if (direction == Vec3{}) throw Error(ErrorCode::ZeroDirection, "cylinder direction must be nonzero");
    RuledSurface rs;
    rs.base = std::move(base);
    rs.director = [direction](double) { return CurveJet{direction, Vec3{}, Vec3{}}; };
    rs.s_range = s_range;
    rs.metric = m;
    rs.director_class = m.is_lorentzian() ? DirectorClass::LorentzNondegenerate : DirectorClass::EuclidStandard;
    rs.delta = 1;
    rs.normalized = false;
    return rs;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    if (count == 1) out.push_back(0.5 * (lo + hi));
    for (int i = 0; i < count && count > 1; ++i)
        out.push_back(i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1));
    return out;
}

namespace {

constexpr int kCheckSamples = 65;

[[noreturn]] void fail(ErrorCode code, const std::string& what, double s, double value) {
    std::ostringstream os;
    os << what << " at s = " << s << " (deviation " << value << ")";
    throw Error(code, os.str());
}

/// Arclength reparametrization of a curve family by the speed of `director`.
class ArclengthMap {
public:
    ArclengthMap(Curve director, Metric m, Interval range, int panels = 512)
        : director_(std::move(director)), metric_(m), lo_(range.lo), panel_(range.length() / panels) {
        cumulative_.push_back(0.0);
        for (int k = 0; k < panels; ++k)
            cumulative_.push_back(cumulative_.back() + arc(lo_ + k * panel_, lo_ + (k + 1) * panel_));
    }

    double total() const { return cumulative_.back(); }

    /// Original parameter s(sigma), by Newton from the tabulated arclength.
    double parameter(double sigma) const {
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), sigma);
        std::size_t k = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
        k = std::min(k, cumulative_.size() - 2);
        const double s0 = lo_ + k * panel_;
        const double span = cumulative_[k + 1] - cumulative_[k];
        double s = s0 + panel_ * (sigma - cumulative_[k]) / span;
        for (int it_n = 0; it_n < 8; ++it_n) {
            const double f = cumulative_[k] + arc(s0, s) - sigma;
            s -= f / speed(s);
            if (std::fabs(f) < 1e-15 * (1.0 + std::fabs(sigma))) break;
        }
        return s;
    }

    /// Jet of curve c after the change of parameter.
    CurveJet reparametrize(const Curve& c, double sigma) const {
        const double s = parameter(sigma);
        const CurveJet w = director_(s);
        const double sp = 1.0 / speed_from(w);
        const double spp = -metric_.inner(w.d1, w.d2) * sp * sp * sp * sp;
        const CurveJet j = c(s);
        return {j.p, j.d1 * sp, j.d2 * (sp * sp) + j.d1 * spp};
    }

private:
    double speed_from(const CurveJet& w) const { return std::sqrt(std::fabs(metric_.inner(w.d1, w.d1))); }
    double speed(double s) const { return speed_from(director_(s)); }
    double arc(double a, double b) const {
        return gauss_legendre([this](double s) { return speed(s); }, a, b, 1);
    }

    Curve director_;
    Metric metric_;
    double lo_;
    double panel_;
    std::vector<double> cumulative_;
};

double fd4(const std::function<double(double)>& f, double s, double h) {
    return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
}

}  // namespace

RuledSurface normalize_euclidean(const Curve& raw_base, const Curve& raw_director, Interval s_range) {
    const Metric E3 = Metric::euclidean();
    for (double s : linspace(s_range.lo, s_range.hi, kCheckSamples)) {
        const double speed = raw_director(s).d1.coord_norm();
        if (speed < 1e-8) fail(ErrorCode::CylindricalInput, "director derivative vanishes", s, speed);
    }

    auto map = std::make_shared<const ArclengthMap>(raw_director, E3, s_range);
    const Interval range{0.0, map->total()};

    Curve w = [map, raw_director](double sigma) { return map->reparametrize(raw_director, sigma); };
    Curve g1 = [map, raw_base](double sigma) { return map->reparametrize(raw_base, sigma); };

    // lambda' = -(<g1'',w'> + <g1',w''>) because <w',w'> = 1 after reparametrization
    auto lambda_d1 = [w, g1](double sigma) {
        const CurveJet a = g1(sigma), b = w(sigma);
        return -(a.d2.x * b.d1.x + a.d2.y * b.d1.y + a.d2.z * b.d1.z) -
               (a.d1.x * b.d2.x + a.d1.y * b.d2.y + a.d1.z * b.d2.z);
    };
    const double fd_step = 1e-3 * range.length();

    RuledSurface rs;
    rs.base = [w, g1, lambda_d1, fd_step](double sigma) {
        const Metric m = Metric::euclidean();
        const CurveJet a = g1(sigma), b = w(sigma);
        const double lambda = -m.inner(a.d1, b.d1);
        const double l1 = lambda_d1(sigma);
        const double l2 = fd4(lambda_d1, sigma, fd_step);
        return CurveJet{a.p + b.p * lambda, a.d1 + b.p * l1 + b.d1 * lambda,
                        a.d2 + b.p * l2 + b.d1 * (2 * l1) + b.d2 * lambda};
    };
    rs.director = w;
    rs.s_range = range;
    rs.metric = E3;
    rs.director_class = DirectorClass::EuclidStandard;
    rs.delta = 1;
    rs.normalized = true;

    for (double s : linspace(range.lo, range.hi, kCheckSamples)) {
        const CurveJet g = rs.base(s), d = rs.director(s);
        const double dev[4] = {E3.inner(g.d1, d.p), E3.inner(g.d1, d.d1), E3.inner(d.p, d.p) - 1.0,
                               E3.inner(d.d1, d.d1) - 1.0};
        for (double x : dev)
            if (!(std::fabs(x) <= 1e-9))
                fail(ErrorCode::NotNormalized, "normalization relations do not hold", s, x);
    }
    return rs;
}

namespace {

struct LorentzBaseOde {
    Curve g1, w;
    int delta;

    struct Coeffs {
        CurveJet g, d;
        double f1, f2, f3;
    };

    Coeffs coeffs(double s) const {
        const Metric L = Metric::lorentzian();
        const CurveJet g = g1(s), d = w(s);
        return {g, d, L.inner(g.p, d.p), L.inner(g.d1, d.d1), L.inner(g.p, d.d1)};
    }

    /// (y1', y2') from the algebraic form of the system.
    std::array<double, 2> rate(const Coeffs& c, double y1, double y2) const {
        if (!(std::fabs(c.f3) >= 1e-10)) throw Error(ErrorCode::OdeBreakdown, "<g1,w'> vanishes");
        const double y1p = -(c.f2 * y1 + delta * y2) / c.f3;
        return {y1p, -c.f1 * y1p};
    }

    std::array<double, 2> second(const Coeffs& c, double y1, double, std::array<double, 2> yp) const {
        const Metric L = Metric::lorentzian();
        const double f1p = L.inner(c.g.d1, c.d.p) + c.f3;
        const double f2p = L.inner(c.g.d2, c.d.d1) + L.inner(c.g.d1, c.d.d2);
        const double f3p = c.f2 + L.inner(c.g.p, c.d.d2);
        const double y1pp = -(f2p * y1 + c.f2 * yp[0] + delta * yp[1] + f3p * yp[0]) / c.f3;
        return {y1pp, -f1p * yp[0] - c.f1 * y1pp};
    }
};

}  // namespace

RuledSurface normalize_lorentz(const Curve& raw_base, const Curve& raw_director, Interval s_range, int delta) {
    if (delta != 1 && delta != -1) throw Error(ErrorCode::InvalidArgument, "delta must be +1 or -1");
    const Metric L = Metric::lorentzian();
    for (double s : linspace(s_range.lo, s_range.hi, kCheckSamples)) {
        const CurveJet g = raw_base(s), d = raw_director(s);
        if (!(L.inner(g.d1, g.d1) > 0.0)) fail(ErrorCode::NonSpacelikeInput, "base is not spacelike", s, L.inner(g.d1, g.d1));
        const double dev[3] = {L.inner(d.p, d.p) - 1.0, L.inner(g.d1, d.p), L.inner(d.d1, d.d1) - delta};
        for (double x : dev)
            if (!(std::fabs(x) <= 1e-9)) fail(ErrorCode::NonSpacelikeInput, "input relations do not hold", s, x);
    }

    auto ode = std::make_shared<const LorentzBaseOde>(LorentzBaseOde{raw_base, raw_director, delta});

    constexpr int kSteps = 2048;
    const double h = s_range.length() / kSteps;
    std::vector<double> knots;
    std::vector<CurveJet> jets;
    std::array<double, 2> y{1.0, 0.0};
    auto record = [&](double s) {
        const auto c = ode->coeffs(s);
        const auto yp = ode->rate(c, y[0], y[1]);
        const auto ypp = ode->second(c, y[0], y[1], yp);
        knots.push_back(s);
        jets.push_back({{y[0], y[1], 0.0}, {yp[0], yp[1], 0.0}, {ypp[0], ypp[1], 0.0}});
    };
    auto rhs = [&](double s, const std::array<double, 2>& yy) { return ode->rate(ode->coeffs(s), yy[0], yy[1]); };
    record(s_range.lo);
    for (int k = 0; k < kSteps; ++k) {
        const double s = s_range.lo + k * h;
        y = rk4_step(rhs, s, y, h);
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || std::fabs(y[0]) + std::fabs(y[1]) > 1e12)
            throw Error(ErrorCode::OdeBreakdown, "reparametrization ODE blew up");
        record(k + 1 == kSteps ? s_range.hi : s + h);
    }
    const Curve ys = TabulatedCurve(std::move(knots), std::move(jets)).as_curve();

    RuledSurface rs;
    rs.base = [ode, ys](double s) {
        const auto c = ode->coeffs(s);
        const Vec3 yv = ys(s).p;
        const auto yp = ode->rate(c, yv.x, yv.y);
        const auto ypp = ode->second(c, yv.x, yv.y, yp);
        const CurveJet& g = c.g;
        const CurveJet& d = c.d;
        return CurveJet{g.p * yv.x + d.p * yv.y, g.p * yp[0] + g.d1 * yv.x + d.p * yp[1] + d.d1 * yv.y,
                        g.p * ypp[0] + g.d1 * (2 * yp[0]) + g.d2 * yv.x + d.p * ypp[1] + d.d1 * (2 * yp[1]) +
                            d.d2 * yv.y};
    };
    rs.director = raw_director;
    rs.s_range = s_range;
    rs.metric = L;
    rs.director_class = DirectorClass::LorentzNondegenerate;
    rs.delta = delta;
    rs.normalized = true;

    for (double s : linspace(s_range.lo, s_range.hi, kCheckSamples)) {
        const CurveJet g = rs.base(s), d = rs.director(s);
        const double dev[2] = {L.inner(g.d1, d.p), L.inner(g.d1, d.d1)};
        for (double x : dev)
            if (!(std::fabs(x) <= 1e-8)) fail(ErrorCode::OdeBreakdown, "reparametrized base misses the relations", s, x);
    }
    return rs;
}

namespace {

void check_relations(const RuledSurface& rs, double s, const CurveJet& g, const CurveJet& w) {
    if (!rs.normalized) throw Error(ErrorCode::NotNormalized, "surface is not in normalized form");
    const Metric m = rs.metric;
    const double tol = 1e-6;
    auto need = [&](double dev) {
        if (!(std::fabs(dev) <= tol)) fail(ErrorCode::NotNormalized, "normalization relation violated", s, dev);
    };
    need(m.inner(g.d1, w.p));
    need(m.inner(w.p, w.p) - 1.0);
    if (rs.director_class == DirectorClass::LorentzLightlike) {
        // |g'| grows like 1 / |Q|, so a vanishing Q shows up here first
        const double Q = m.inner(g.d1, w.d1);
        if (!(std::fabs(Q) >= 1e-10)) fail(ErrorCode::ZeroQ, "Q = <g',w'> vanishes", s, Q);
        need(m.inner(g.d1, g.d1) - 1.0);
        need(m.inner(w.d1, w.d1));
        if (!(w.d1.max_abs() > 1e-8)) fail(ErrorCode::NotNormalized, "lightlike director derivative vanishes", s, 0.0);
    } else {
        need(m.inner(g.d1, w.d1));
        need(m.inner(w.d1, w.d1) - rs.delta);
    }
}

}  // namespace

RuledFrame frame(const RuledSurface& rs, double s) {
    const CurveJet g = rs.base(s);
    const CurveJet w = rs.director(s);
    check_relations(rs, s, g, w);
    const Metric m = rs.metric;

    RuledFrame f;
    f.w = w.p;
    f.wp = w.d1;
    f.wxwp = m.cross(w.p, w.d1);
    switch (rs.director_class) {
        case DirectorClass::EuclidStandard:
            f.P = triple(w.p, w.d1, g.d1);
            f.Q = triple(w.p, w.d1, w.d2);
            f.delta = 1;
            break;
        case DirectorClass::LorentzNondegenerate:
            f.P = triple(g.d1, w.p, w.d1);
            f.Q = triple(w.p, w.d1, w.d2);
            f.delta = rs.delta;
            break;
        case DirectorClass::LorentzLightlike:
            f.P = 0.0;
            f.Q = m.inner(g.d1, w.d1);
            f.delta = 0;
            break;
    }
    return f;
}

double CoefficientVector::max_abs() const {
    double out = 0.0;
    for (double a : A) out = std::max(out, std::fabs(a));
    return out;
}

double CoefficientVector::evaluate(double t) const {
    double acc = 0.0;
    for (auto it = A.rbegin(); it != A.rend(); ++it) acc = acc * t + *it;
    return acc;
}

CoefficientVector coefficients(const RuledSurface& rs, double s, const Direction& v_dir, double alpha) {
    const RuledFrame fr = frame(rs, s);
    const CurveJet g = rs.base(s);
    const CurveJet w = rs.director(s);
    const Metric m = rs.metric;
    const Vec3& v = v_dir.unit();

    const double gv = m.inner(g.p, v);
    const double wv = m.inner(w.p, v);
    const double wpv = m.inner(w.d1, v);
    const double P = fr.P, Q = fr.Q;

    CoefficientVector out;
    out.s = s;
    out.director_class = rs.director_class;

    switch (rs.director_class) {
        case DirectorClass::EuclidStandard: {
            const double Pp = triple(w.p, w.d2, g.d1) + triple(w.p, w.d1, g.d2);
            const double tau = triple(w.p, w.d1, v);
            out.A = {alpha * P * P * P * wpv + P * P * Q * gv,
                     -alpha * P * P * tau + P * P * Q * wv + Pp * gv,
                     alpha * P * wpv + Q * gv + Pp * wv,
                     -alpha * tau + Q * wv};
            break;
        }
        case DirectorClass::LorentzNondegenerate: {
            const double d = rs.delta;
            const double Pp = triple(g.d2, w.p, w.d1) + triple(g.d1, w.p, w.d2);
            const double tau = triple(w.p, w.d1, v);
            out.A = {-alpha * P * P * P * wpv + P * P * Q * gv,
                     alpha * d * P * P * tau + P * P * Q * wv - Pp * gv,
                     alpha * P * wpv - Q * gv - Pp * wv,
                     -alpha * d * tau - Q * wv};
            break;
        }
        case DirectorClass::LorentzLightlike: {
            const double Qp = m.inner(g.d2, w.d1) + m.inner(g.d1, w.d2);
            const double tau = triple(g.d1, w.p, v);
            const double gpv = m.inner(g.d1, v);
            out.A = {Qp / Q * gv + alpha * tau,
                     Qp / Q * wv + Qp * gv + alpha * Q * (gpv + 3 * tau),
                     Qp * wv + 2 * alpha * Q * Q * (gpv + tau)};
            break;
        }
    }
    return out;
}

int coefficient_oracle_sign(DirectorClass c) noexcept {
    return c == DirectorClass::EuclidStandard ? -1 : 1;
}

double residual_polynomial_consistency(const RuledSurface& rs, double s, const Direction& v, double alpha,
                                       std::span<const double> t_samples) {
    const CoefficientVector cv = coefficients(rs, s, v, alpha);
    const Metric m = rs.metric;
    const int sign = coefficient_oracle_sign(rs.director_class);
    double worst = 0.0;
    int used = 0;
    for (double t : t_samples) {
        const Jet2 j = rs.jet(s, t);
        const double xv = m.inner(j.X, v.unit());
        if (m.is_lorentzian()) {
            const double E = m.inner(j.Xs, j.Xs), F = m.inner(j.Xs, j.Xt), G = m.inner(j.Xt, j.Xt);
            const double W2 = E * G - F * F;
            if (!(W2 > 1e-14 * (E * E + G * G + 1.0)) || !(std::fabs(xv) > 1e-12)) continue;
        } else if (!(xv > 0.0)) {
            continue;
        }
        ++used;
        worst = std::max(worst, std::fabs(cv.evaluate(t) - sign * residual_numerator(m, j, v.unit(), alpha)));
    }
    if (used < 4) fail(ErrorCode::InvalidArgument, "fewer than 4 admissible t samples", s, used);
    return worst;
}

RuledSurface helicoid(double pitch, Interval s_range, Metric m) {
    RuledSurface rs;
    rs.base = [pitch](double s) { return CurveJet{{0.0, 0.0, pitch * s}, {0.0, 0.0, pitch}, Vec3{}}; };
    rs.director = [](double s) {
        const double c = std::cos(s), sn = std::sin(s);
        return CurveJet{{c, sn, 0.0}, {-sn, c, 0.0}, {-c, -sn, 0.0}};
    };
    rs.s_range = s_range;
    rs.metric = m;
    rs.director_class = m.is_lorentzian() ? DirectorClass::LorentzNondegenerate : DirectorClass::EuclidStandard;
    rs.delta = 1;
    rs.normalized = true;
    return rs;
}

RuledSurface lightlike_surface(std::function<ScalarJet(double)> q, Interval s_range, const Vec3& base0) {
    auto velocity = [q](double s) {
        const ScalarJet Q = q(s);
        const Vec3 a{0.0, 1.0, 1.0};
        const Vec3 b{-s, 0.5 * (1.0 - s * s), -0.5 * (1.0 + s * s)};
        const Vec3 bp{-1.0, -s, -s};
        const Vec3 d1 = a / (2.0 * Q.value) + b * Q.value;
        const Vec3 d2 = a * (-Q.d1 / (2.0 * Q.value * Q.value)) + b * Q.d1 + bp * Q.value;
        return std::pair{d1, d2};
    };

    // positions by cumulative Gauss-Legendre quadrature of g'
    const double panel = 0.05;
    const int n = std::max(1, static_cast<int>(std::ceil(s_range.length() / panel)));
    auto cumulative = std::make_shared<std::vector<Vec3>>();
    cumulative->push_back(base0);
    auto speed = [velocity](double s) { return velocity(s).first; };
    for (int k = 0; k < n; ++k)
        cumulative->push_back(cumulative->back() +
                              gauss_legendre(speed, s_range.lo + k * panel, s_range.lo + (k + 1) * panel, 1));

    RuledSurface rs;
    const double lo = s_range.lo;
    rs.base = [velocity, speed, cumulative, lo, panel, n](double s) {
        const int k = std::clamp(static_cast<int>(std::floor((s - lo) / panel)), 0, n);
        const double knot = lo + k * panel;
        const int pieces = std::max(1, static_cast<int>(std::ceil(std::fabs(s - knot) / panel)));
        const Vec3 p = (*cumulative)[static_cast<std::size_t>(k)] + gauss_legendre(speed, knot, s, pieces);
        const auto [d1, d2] = velocity(s);
        return CurveJet{p, d1, d2};
    };
    rs.director = [](double s) { return CurveJet{{1.0, s, s}, {0.0, 1.0, 1.0}, Vec3{}}; };
    rs.s_range = s_range;
    rs.metric = Metric::lorentzian();
    rs.director_class = DirectorClass::LorentzLightlike;
    rs.delta = 0;
    rs.normalized = true;
    return rs;
}

RuledSurface lightlike_reference() {
    return lightlike_surface([](double s) { return ScalarJet{1.0 + 0.25 * s, 0.25}; }, {0.0, 1.5},
                             Vec3{0.0, 0.0, -3.0});
}

}  // namespace sgeom
