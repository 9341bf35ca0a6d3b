#include <cmath>
#include <algorithm>
#include <memory>
#include <numbers>

#include "sgeom/ruled.hpp"

namespace sgeom {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// c0 + sum_k a_k cos(k s) + b_k sin(k s), k = 1..3.
struct Fourier {
    double c0 = 0.0;
    double a[3] = {};
    double b[3] = {};

    static Fourier random(Rng& rng, double c_lo, double c_hi, double amplitude) {
        Fourier f;
        f.c0 = uniform(rng, c_lo, c_hi);
        for (int k = 0; k < 3; ++k) {
            f.a[k] = uniform(rng, -amplitude, amplitude) / (k + 1);
            f.b[k] = uniform(rng, -amplitude, amplitude) / (k + 1);
        }
        return f;
    }

    ScalarJet operator()(double s) const {
        ScalarJet out{c0, 0.0};
        for (int k = 0; k < 3; ++k) {
            const double w = k + 1.0;
            out.value += a[k] * std::cos(w * s) + b[k] * std::sin(w * s);
            out.d1 += w * (-a[k] * std::sin(w * s) + b[k] * std::cos(w * s));
        }
        return out;
    }
};

/// sign * exp(Fourier), never zero.
struct PositiveFn {
    Fourier log_part;
    double sign = 1.0;

    ScalarJet operator()(double s) const {
        const ScalarJet g = log_part(s);
        const double e = sign * std::exp(g.value);
        return {e, e * g.d1};
    }
};

/// sign * (c + d1 sin(s + p1) + d2 sin(2 s + p2)) with |P| confined to a band.
struct BandedFn {
    double sign = 1.0, c = 0.3, d1 = 0.0, d2 = 0.0, p1 = 0.0, p2 = 0.0;

    ScalarJet operator()(double s) const {
        return {sign * (c + d1 * std::sin(s + p1) + d2 * std::sin(2 * s + p2)),
                sign * (d1 * std::cos(s + p1) + 2 * d2 * std::cos(2 * s + p2))};
    }
};

double random_sign(Rng& rng) { return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0; }

Vec3 to_vec(const double* p) { return {p[0], p[1], p[2]}; }

/// Proper orthochronous Lorentz transformation: rotation about z, then boosts along x and y.
struct RandomLorentz {
    double phi, bx, by;

    static RandomLorentz random(Rng& rng, double rapidity) {
        return {uniform(rng, 0.0, 2 * std::numbers::pi), uniform(rng, -rapidity, rapidity),
                uniform(rng, -rapidity, rapidity)};
    }

    Vec3 operator()(const Vec3& v) const {
        Vec3 a{v.x, v.y * std::cosh(by) + v.z * std::sinh(by), v.y * std::sinh(by) + v.z * std::cosh(by)};
        Vec3 b{a.x * std::cosh(bx) + a.z * std::sinh(bx), a.y, a.x * std::sinh(bx) + a.z * std::cosh(bx)};
        return {b.x * std::cos(phi) - b.y * std::sin(phi), b.x * std::sin(phi) + b.y * std::cos(phi), b.z};
    }
};

Vec3 random_unit_euclidean(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        const Vec3 v{n(rng), n(rng), n(rng)};
        const double len = v.coord_norm();
        if (len > 1e-3) return v / len;
    }
}

/// Director and base of a surface built from its invariants:
///   w' = T, T' = accel(s, w, T), g' = base(s, w, T, T').first
/// `base` also returns g''. States are stored on a coarse grid and every
/// query integrates from the nearest stored state below it, so the jets
/// satisfy the defining equations up to rounding (no interpolation).
class DirectorFlow {
public:
    using Accel = std::function<Vec3(double, const Vec3&, const Vec3&)>;
    using BaseJet = std::function<std::pair<Vec3, Vec3>(double, const Vec3&, const Vec3&, const Vec3&)>;

    DirectorFlow(Metric m, int delta, Vec3 w0, Vec3 T0, Interval range, Accel accel, BaseJet base)
        : accel_(std::move(accel)), base_(std::move(base)), range_(range) {
        const double norm_w = std::sqrt(m.inner(w0, w0));
        w0 = w0 / norm_w;
        T0 = T0 - w0 * m.inner(T0, w0);
        T0 = T0 / std::sqrt(delta * m.inner(T0, T0));
        State y{w0.x, w0.y, w0.z, T0.x, T0.y, T0.z, 0.0, 0.0, 0.0};
        const double H = range.length() / kKnots;
        states_.push_back(y);
        for (int k = 0; k < kKnots; ++k) {
            y = advance(range.lo + k * H, y, H);
            states_.push_back(y);
        }
    }

    CurveJet director(double s) const {
        const Eval e = eval(s);
        return {e.w, e.T, e.Tp};
    }

    CurveJet base(double s) const {
        const Eval e = eval(s);
        const auto [gp, gpp] = base_(s, e.w, e.T, e.Tp);
        return {e.g, gp, gpp};
    }

    Interval range() const { return range_; }

private:
    using State = std::array<double, 9>;
    static constexpr int kKnots = 1000;
    static constexpr int kSubsteps = 2;

    struct Eval {
        Vec3 w, T, Tp, g;
    };

    State rhs(double s, const State& y) const {
        const Vec3 w = to_vec(&y[0]), T = to_vec(&y[3]);
        const Vec3 Tp = accel_(s, w, T);
        const Vec3 gp = base_(s, w, T, Tp).first;
        return {T.x, T.y, T.z, Tp.x, Tp.y, Tp.z, gp.x, gp.y, gp.z};
    }

    State advance(double s, State y, double span) const {
        const int n = std::max(1, static_cast<int>(std::ceil(std::fabs(span) * kKnots * kSubsteps / range_.length())));
        const double h = span / n;
        auto f = [this](double x, const State& st) { return rhs(x, st); };
        for (int i = 0; i < n; ++i) y = rk4_step(f, s + i * h, y, h);
        return y;
    }

    Eval eval(double s) const {
        const double H = range_.length() / kKnots;
        const int k = std::clamp(static_cast<int>(std::floor((s - range_.lo) / H)), 0, kKnots - 1);
        const double sk = range_.lo + k * H;
        const State y = s == sk ? states_[k] : advance(sk, states_[k], s - sk);
        const Vec3 w = to_vec(&y[0]), T = to_vec(&y[3]);
        return {w, T, accel_(s, w, T), to_vec(&y[6])};
    }

    Accel accel_;
    BaseJet base_;
    Interval range_;
    std::vector<State> states_;
};

/// Lowest <X, v> over the ruling box, sampled along s.
double lowest_height(Metric m, const DirectorFlow& flow, const Vec3& v, Interval t_box) {
    double lowest = INFINITY;
    for (double s : linspace(flow.range().lo, flow.range().hi, 201)) {
        const Vec3 g = flow.base(s).p, w = flow.director(s).p;
        for (double t : {t_box.lo, t_box.hi}) lowest = std::min(lowest, m.inner(g + w * t, v));
    }
    return lowest;
}

}  // namespace

Direction random_direction(std::mt19937_64& rng, Metric m) {
    if (!m.is_lorentzian()) return Direction::make(m, random_unit_euclidean(rng));
    const double eta = uniform(rng, 0.0, 1.0);
    const double phi = uniform(rng, 0.0, 2 * std::numbers::pi);
    const double sign = random_sign(rng);
    return Direction::make(m, {std::sinh(eta) * std::cos(phi), std::sinh(eta) * std::sin(phi), sign * std::cosh(eta)});
}

RuledSurface random_normalized_surface(std::mt19937_64& rng, const RandomSurfaceSpec& spec, const Direction& v) {
    if (spec.director_class == DirectorClass::LorentzLightlike) {
        PositiveFn q{Fourier::random(rng, std::log(0.3), std::log(1.5), 0.15), random_sign(rng)};
        const Interval range{0.0, 1.5};
        RuledSurface rs = lightlike_surface(q, range, Vec3{});
        // lift the whole base: <X,v> is affine in the base offset
        double lowest = INFINITY;
        for (double s : linspace(range.lo, range.hi, 61))
            for (double t : {spec.t_box.lo, spec.t_box.hi})
                lowest = std::min(lowest, Metric::lorentzian().inner(rs.jet(s, t).X, v.unit()));
        const Vec3 shift = v.unit() * (std::max(0.0, 1.0 - lowest) / Metric::lorentzian().inner(v.unit(), v.unit()));
        return lightlike_surface(q, range, shift);
    }

    const bool lorentz = spec.director_class == DirectorClass::LorentzNondegenerate;
    const Metric m = lorentz ? Metric::lorentzian() : Metric::euclidean();
    const int delta = lorentz ? spec.delta : 1;
    if (delta != 1 && delta != -1) throw Error(ErrorCode::ConfigError, "delta must be +1 or -1");
    const Interval range{0.0, 2.0};

    const Fourier Q = Fourier::random(rng, -1.0, 1.0, 0.5);
    std::function<ScalarJet(double)> P;
    if (lorentz && delta == 1) {
        BandedFn b;
        b.sign = random_sign(rng);
        b.c = uniform(rng, 0.2, 0.35);
        b.d1 = uniform(rng, -0.05, 0.05);
        b.d2 = uniform(rng, -0.03, 0.03);
        b.p1 = uniform(rng, 0.0, 2 * std::numbers::pi);
        b.p2 = uniform(rng, 0.0, 2 * std::numbers::pi);
        P = b;
    } else {
        P = PositiveFn{Fourier::random(rng, std::log(0.4), std::log(1.5), 0.15), random_sign(rng)};
    }

    Vec3 w0, T0;
    if (lorentz) {
        const RandomLorentz lt = RandomLorentz::random(rng, 0.6);
        w0 = lt({1.0, 0.0, 0.0});
        T0 = lt(delta == 1 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0});
    } else {
        w0 = random_unit_euclidean(rng);
        T0 = random_unit_euclidean(rng);
        T0 = T0 - w0 * m.inner(T0, w0);
    }

    const double d = delta;
    auto accel = [m, lorentz, d, Q](double s, const Vec3& w, const Vec3& T) {
        const double q = Q(s).value;
        return lorentz ? (w + m.cross(w, T) * q) * (-d) : w * -1.0 + m.cross(w, T) * q;
    };
    auto base_jet = [m, lorentz, d, P](double s, const Vec3& w, const Vec3& T, const Vec3& Tp) {
        const ScalarJet p = P(s);
        const double k = lorentz ? -d : 1.0;
        return std::pair{m.cross(w, T) * (k * p.value), (m.cross(w, T) * p.d1 + m.cross(w, Tp) * p.value) * k};
    };
    auto flow = std::make_shared<const DirectorFlow>(m, delta, w0, T0, range, accel, base_jet);
    const Vec3 vu = v.unit();
    const Vec3 shift = vu * (std::max(0.0, 1.0 - lowest_height(m, *flow, vu, spec.t_box)) / m.inner(vu, vu));

    RuledSurface rs;
    rs.base = [flow, shift](double s) {
        CurveJet j = flow->base(s);
        j.p += shift;
        return j;
    };
    rs.director = [flow](double s) { return flow->director(s); };
    rs.s_range = range;
    rs.metric = m;
    rs.director_class = spec.director_class;
    rs.delta = delta;
    rs.normalized = true;
    return rs;
}

RawRuledData random_lorentz_raw_data(std::mt19937_64& rng, int delta) {
    if (delta != 1 && delta != -1) throw Error(ErrorCode::ConfigError, "delta must be +1 or -1");
    const Metric L = Metric::lorentzian();
    const Interval range{0.0, 1.0};
    const double d = delta;

    const Fourier Q = Fourier::random(rng, -1.0, 1.0, 0.5);
    // g1' = a w' + b w x w' is spacelike when |a| > |b| (delta = +1) or |b| > |a| (delta = -1)
    const PositiveFn big{Fourier::random(rng, std::log(0.6), std::log(1.2), 0.1), random_sign(rng)};
    const Fourier small = Fourier::random(rng, -0.2, 0.2, 0.1);
    auto a_fn = [=](double s) { return delta == 1 ? big(s) : small(s); };
    auto b_fn = [=](double s) { return delta == 1 ? small(s) : big(s); };

    const RandomLorentz lt = RandomLorentz::random(rng, 0.5);
    const Vec3 w0 = lt({1.0, 0.0, 0.0});
    const Vec3 T0 = lt(delta == 1 ? Vec3{0.0, 1.0, 0.0} : Vec3{0.0, 0.0, 1.0});

    auto accel = [L, d, Q](double s, const Vec3& w, const Vec3& T) { return (w + L.cross(w, T) * Q(s).value) * (-d); };
    auto base_jet = [L, a_fn, b_fn](double s, const Vec3& w, const Vec3& T, const Vec3& Tp) {
        const ScalarJet a = a_fn(s), b = b_fn(s);
        const Vec3 n = L.cross(w, T);
        return std::pair{T * a.value + n * b.value, T * a.d1 + Tp * a.value + n * b.d1 + L.cross(w, Tp) * b.value};
    };
    auto flow = std::make_shared<const DirectorFlow>(L, delta, w0, T0, range, accel, base_jet);
    std::vector<CurveJet> gs, ws;
    for (double s : linspace(range.lo, range.hi, 201)) gs.push_back(flow->base(s)), ws.push_back(flow->director(s));

    // place g1 so that f3 = <g1, w'> stays away from zero
    for (int attempt = 0; attempt < 200; ++attempt) {
        const Vec3 offset = random_unit_euclidean(rng) * uniform(rng, 1.0, 3.0);
        double lowest = INFINITY;
        for (std::size_t k = 0; k < gs.size(); ++k) lowest = std::min(lowest, std::fabs(L.inner(gs[k].p + offset, ws[k].d1)));
        if (lowest >= 0.3) {
            auto base = [flow, offset](double s) {
                CurveJet j = flow->base(s);
                j.p += offset;
                return j;
            };
            return {base, [flow](double s) { return flow->director(s); }, range};
        }
    }
    throw Error(ErrorCode::ConfigError, "could not place an admissible raw base");
}

}  // namespace sgeom
