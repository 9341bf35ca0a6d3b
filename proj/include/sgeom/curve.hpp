#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sgeom/vec3.hpp"

namespace sgeom {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const { return hi - lo; }
    bool contains(double s) const { return s >= lo && s <= hi; }
    double at(double fraction) const { return lo + fraction * (hi - lo); }
};

/// Value and first two derivatives of a space curve at one parameter.
struct CurveJet {
    Vec3 p;
    Vec3 d1;
    Vec3 d2;
};

using Curve = std::function<CurveJet(double)>;

/// C^2 piecewise quintic Hermite interpolant through knots carrying value,
/// first and second derivative. Knots must be strictly increasing.
///
/// Evaluation outside [front, back] extrapolates with the end polynomial.
class TabulatedCurve {
public:
    TabulatedCurve(std::vector<double> knots, std::vector<CurveJet> jets);

    CurveJet operator()(double s) const;

    Interval range() const { return {knots_.front(), knots_.back()}; }
    std::span<const double> knots() const { return knots_; }
    std::span<const CurveJet> jets() const { return jets_; }

    /// Wraps this table in a cheaply copyable Curve.
    Curve as_curve() const;

private:
    std::vector<double> knots_;
    std::vector<CurveJet> jets_;
};

/// Composite 8-point Gauss-Legendre rule of f over [a, b] with `pieces` panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int pieces = 1);
Vec3 gauss_legendre(const std::function<Vec3(double)>& f, double a, double b, int pieces = 1);

/// One classical fourth-order Runge-Kutta step of y' = f(s, y).
template <std::size_t N, class F>
std::array<double, N> rk4_step(const F& f, double s, const std::array<double, N>& y, double h) {
    auto axpy = [](const std::array<double, N>& a, const std::array<double, N>& b, double k) {
        std::array<double, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + k * b[i];
        return r;
    };
    const auto k1 = f(s, y);
    const auto k2 = f(s + 0.5 * h, axpy(y, k1, 0.5 * h));
    const auto k3 = f(s + 0.5 * h, axpy(y, k2, 0.5 * h));
    const auto k4 = f(s + h, axpy(y, k3, h));
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    return out;
}

}  // namespace sgeom
