#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sgeom/surface.hpp"

namespace sgeom {

/// Heights z(i, j) of the graph (x_i, y_j, z) over a window, x_i and y_j
/// equispaced with the window corners as end nodes. Row major in i.
struct HeightField {
    int nu = 0;
    int nv = 0;
    Rect window;
    std::vector<double> z;

    HeightField() = default;
    HeightField(int nu, int nv, Rect window, double fill = 1.0);

    double& at(int i, int j) { return z[static_cast<std::size_t>(i) * nv + j]; }
    double at(int i, int j) const { return z[static_cast<std::size_t>(i) * nv + j]; }
    double dx() const { return window.s.length() / (nu - 1); }
    double dy() const { return window.t.length() / (nv - 1); }
    double x(int i) const { return i + 1 == nu ? window.s.hi : window.s.lo + i * dx(); }
    double y(int j) const { return j + 1 == nv ? window.t.hi : window.t.lo + j * dy(); }
    bool interior(int i, int j) const { return i > 0 && j > 0 && i + 1 < nu && j + 1 < nv; }
};

/// Trapezoid rule for the integral of z^alpha sqrt(1 + z_x^2 + z_y^2). At each
/// node the area factor is the mean over the quadrants inside the grid of
/// sqrt(1 + gx^2 + gy^2), with gx, gy the one-sided differences towards the
/// quadrant. The symmetric average is second-order accurate and, unlike
/// node-centred central differences, does not decouple odd and even nodes.
/// Throws HalfspaceViolation unless z > 0 everywhere; needs nu, nv >= 3.
double height_energy(const HeightField& h, double alpha);

/// d height_energy / d z(i, j) for interior nodes (zero on the boundary),
/// differentiated through the quadrature stencil.
std::vector<double> interior_gradient(const HeightField& h, double alpha);

inline constexpr double kHeightFloor = 1e-9;

struct DescentResult {
    HeightField field;
    std::vector<double> energy;  ///< energy before step 0 and after every step
};

/// Projected gradient descent z <- max(floor, z - rate grad) on interior nodes.
/// Throws Diverged when the energy stays above its running minimum for 5
/// consecutive steps (in particular after 5 consecutive increases) or turns
/// non-finite.
DescentResult descend(HeightField h, double alpha, int steps, double rate);

/// Residual of the singular minimal condition with v = (0, 0, 1) at interior
/// nodes, using derivatives of the not-a-knot bicubic interpolant of the
/// grid. Boundary entries are 0.
std::vector<double> height_residual(const HeightField& h, double alpha);
double max_abs_interior(const HeightField& h, const std::vector<double>& values);

/// Fixtures over the window [-1, 1] x [0, 1] with the boundary trace of the
/// catenary cylinder z = cosh x.
HeightField catenary_heights(int n);
/// Interior replaced by the mean of the boundary trace.
HeightField flat_heights(int n);
/// z (1 + noise) on interior nodes, noise uniform in [-amplitude, amplitude].
HeightField noisy_heights(int n, double amplitude, std::uint64_t seed);

/// CSV `i,j,x,y,z`, one row per node.
void write_height_csv(std::ostream& os, const HeightField& h);
/// Throws InvalidArgument for malformed or incomplete grids.
HeightField read_height_csv(std::istream& is);
/// CSV `step,energy`.
void write_energy_csv(std::ostream& os, const std::vector<double>& energy);

}  // namespace sgeom
