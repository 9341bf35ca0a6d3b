#pragma once

#include <string>

#include "sgeom/surface.hpp"

namespace sgeom {

/// A closed-form surface carrying both its jets and its points, so the same
/// shape can be sampled with exact or finite-difference jets.
struct Shape {
    Rect domain;
    ParamSurface::JetFn jets;
    ParamSurface::PointFn points;

    ParamSurface exact() const { return ParamSurface::exact(domain, jets); }
    ParamSurface finite_difference(double h = 0.0) const { return ParamSurface::finite_difference(domain, points, h); }
};

/// X = (s, t, height).
Shape plane_shape(double height = 1.0, Rect domain = {{0.0, 1.0}, {0.0, 1.0}});

/// X = (cos s cos t, sin s cos t, sin t); the default patch lies in z > 0.
Shape sphere_shape(Rect domain = {{0.0, 6.0}, {0.2, 1.2}});

/// Graph X = (s, t, sqrt(1 + s^2 + t^2)) of the upper unit hyperboloid of L^3.
Shape hyperboloid_shape(Rect domain = {{-1.0, 1.0}, {-1.0, 1.0}});

/// X = (t cos s, t sin s, c s).
Shape helicoid_shape(double pitch = 1.0, Rect domain = {{0.5, 2.5}, {-1.0, 1.0}});

}  // namespace sgeom
