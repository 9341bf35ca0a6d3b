#pragma once

#include <iosfwd>
#include <vector>

#include "sgeom/surface.hpp"

namespace sgeom {

/// Planar alpha-catenary problem with v = (0, 1): position (u, y), tangent
/// angle theta, arclength s. The height y must stay positive.
struct CatenaryState {
    double s = 0.0;
    double u = 0.0;
    double y = 1.0;
    double theta = 0.0;
};

struct CatenaryRate {
    double du;
    double dy;
    double dtheta;
};

inline constexpr double kCatenaryHeightFloor = 1e-12;

/// u' = cos(theta), y' = sin(theta), theta' = alpha cos(theta) / y.
CatenaryRate catenary_rhs(const CatenaryState& state, double alpha);

struct CatenaryPolyline {
    double alpha = 0.0;
    std::vector<CatenaryState> states;
    bool left_halfspace = false;  ///< integration stopped early at the height floor
};

/// Fixed-step RK4 over `length` of arclength; the step is shrunk so that it
/// divides the length. A halfspace exit is flagged, not thrown.
CatenaryPolyline integrate_catenary(const CatenaryState& start, double alpha, double length, double step);

struct PlanarPoint {
    double u;
    double y;
};

/// Initial angle theta0 in (-pi/2, pi/2) of the alpha-catenary from p0 that
/// passes through p1. Scans 64 angles for a sign change of the height miss at
/// u = p1.u, keeps the bracket nearest 0 and bisects until |miss| <= tol.
/// Throws NoSolution when no bracket exists.
double solve_catenary_bvp(PlanarPoint p0, PlanarPoint p1, double alpha, double tol = 1e-10,
                          double step = 1e-3);

/// Cylinder X(s, t) = u(s) e + y(s) v + t r over the planar curve, where
/// e = r x v. Jets come from the quintic Hermite interpolant of the polyline
/// (positions, unit tangents and curvature normals at the knots).
ParamSurface catenary_cylinder(const CatenaryPolyline& curve, const Vec3& v, const Vec3& ruling,
                               Metric m = Metric::euclidean(), Interval ruling_range = {-1.0, 1.0});

/// CSV with header `s,u,y,theta` (and a trailing `left_halfspace` column when
/// the integration stopped early).
void write_catenary_csv(std::ostream& os, const CatenaryPolyline& curve);

}  // namespace sgeom
