#pragma once

#include <functional>

#include "sgeom/curve.hpp"
#include "sgeom/vec3.hpp"

namespace sgeom {

/// Value and partial derivatives of an immersion X(s, t) at one parameter point.
struct Jet2 {
    Vec3 X, Xs, Xt, Xss, Xst, Xtt;
};

struct Rect {
    Interval s;
    Interval t;

    bool contains(double ss, double tt) const { return s.contains(ss) && t.contains(tt); }
    double diameter() const { return std::hypot(s.length(), t.length()); }
};

enum class JetSource { Exact, FiniteDifference };

/// A parametric surface over a rectangle, queried through its 2-jets.
///
/// Exact surfaces forward to a jet evaluator; finite-difference surfaces build
/// jets from a point evaluator with 5-point central stencils, and need the
/// stencil (margin 2h) to stay inside the domain.
class ParamSurface {
public:
    using JetFn = std::function<Jet2(double, double)>;
    using PointFn = std::function<Vec3(double, double)>;

    static ParamSurface exact(Rect domain, JetFn jets);
    /// h <= 0 selects the default step 1e-4 * domain diameter.
    static ParamSurface finite_difference(Rect domain, PointFn points, double h = 0.0);

    Jet2 jet(double s, double t) const;
    Vec3 point(double s, double t) const;

    const Rect& domain() const { return domain_; }
    JetSource source() const { return source_; }
    double step() const { return h_; }

private:
    ParamSurface() = default;

    Rect domain_;
    JetSource source_ = JetSource::Exact;
    JetFn jets_;
    PointFn points_;
    double h_ = 0.0;
};

struct FundamentalForms {
    double E = 0, F = 0, G = 0;
    double e = 0, f = 0, g = 0;
    double W2 = 0;  ///< EG - F^2
    int eps = 1;    ///< <N,N>; always +1 in R^3, -1 for spacelike surfaces of L^3
};

/// Throws DegenerateMetric when |EG - F^2| < 1e-14 (E^2 + G^2 + 1).
FundamentalForms fundamental_forms(Metric m, const Jet2& j);

/// N = Xs x Xt / |Xs x Xt| in the metric; no global orientation is attempted.
Vec3 unit_normal(Metric m, const Jet2& j);

/// R^3: H = (Ge - 2Ff + Eg) / (2(EG - F^2)).
/// L^3: H = -(G(Xs,Xt,Xss) - 2F(Xs,Xt,Xst) + E(Xs,Xt,Xtt)) / (2 |EG - F^2|^{3/2});
///      requires a spacelike surface (NotSpacelike otherwise).
/// With N outward on the unit sphere the Euclidean value is -1.
double mean_curvature(Metric m, const Jet2& j);

/// The fixed direction v of the energy. Normalized at construction: unit in
/// R^3, unit timelike in L^3. The caller's vector is kept for reporting.
class Direction {
public:
    static Direction make(Metric m, const Vec3& v);

    const Vec3& unit() const { return unit_; }
    const Vec3& original() const { return original_; }
    Metric metric() const { return metric_; }

private:
    Direction(Metric m, Vec3 unit, Vec3 original) : metric_(m), unit_(unit), original_(original) {}

    Metric metric_;
    Vec3 unit_;
    Vec3 original_;
};

/// Polynomial-cleared residual
///   <X,v> [G(Xs,Xt,Xss) - 2F(Xs,Xt,Xst) + E(Xs,Xt,Xtt)] - eps alpha (EG - F^2)(Xs,Xt,v)
/// with eps = 1 in R^3 and eps = -sign(EG - F^2) in L^3. No preconditions are
/// checked; this is the brute-force side of coefficient consistency checks.
double residual_numerator(Metric m, const Jet2& j, const Vec3& v, double alpha);

/// LHS - RHS of the singular minimal / maximal condition written with
/// determinants (vanishes iff 2H = alpha <N,v>/<X,v>):
///   G(Xs,Xt,Xss) - 2F(Xs,Xt,Xst) + E(Xs,Xt,Xtt) - eps alpha (EG-F^2)/<X,v> (Xs,Xt,v)
/// Errors: HalfspaceViolation (<X,v> <= 0 in R^3, <X,v> == 0 in L^3),
/// DegenerateMetric, NotSpacelike (L^3).
double singular_residual(Metric m, const Jet2& j, const Direction& v, double alpha);
double singular_residual(Metric m, const ParamSurface& surf, double s, double t, const Direction& v,
                         double alpha);

struct Grid {
    int ns = 64;
    int nt = 64;
};

/// Composite trapezoid of <X,v>^alpha sqrt|EG-F^2| over the surface domain
/// (grid counts nodes per direction).
double potential_energy(Metric m, const ParamSurface& surf, const Direction& v, double alpha,
                        Grid grid = {});

using Bump = std::function<double(double, double)>;

/// (E(X + h phi N) - E(X - h phi N)) / 2h with the perturbed first fundamental
/// forms computed from the 2-jets of X (N_s, N_t via the Weingarten terms).
double first_variation(Metric m, const ParamSurface& surf, const Direction& v, double alpha,
                       const Bump& bump, double h = 1e-4, Grid grid = {});

}  // namespace sgeom
