#pragma once

#include <random>
#include <span>
#include <vector>

#include "sgeom/surface.hpp"

namespace sgeom {

/// How the rulings of a normalized ruled surface are set up.
///
///  - EuclidStandard: <g',w> = <g',w'> = 0, <w,w> = <w',w'> = 1 in R^3.
///  - LorentzNondegenerate: the same in L^3 except <w',w'>_L = delta = +-1.
///  - LorentzLightlike: <g',g'>_L = 1, <g',w>_L = 0, <w,w>_L = 1, w' lightlike.
enum class DirectorClass { EuclidStandard, LorentzNondegenerate, LorentzLightlike };

const char* to_string(DirectorClass c) noexcept;

/// X(s, t) = base(s) + t director(s).
struct RuledSurface {
    Curve base;
    Curve director;
    Interval s_range;
    Metric metric;
    DirectorClass director_class = DirectorClass::EuclidStandard;
    int delta = 1;            ///< <w',w'> for the nondegenerate classes, 0 for lightlike
    bool normalized = false;  ///< false for cylinders and raw data

    Jet2 jet(double s, double t) const;
    ParamSurface surface(Interval t_range) const;
};

/// Constant director; w' = 0 everywhere. Throws ZeroDirection.
RuledSurface make_cylinder(Curve base, const Vec3& direction, Metric m, Interval s_range);

/// Reparametrizes by arclength of the (unit) director and shifts the base to
/// the striction curve g = g1 - <g1',w'>/<w',w'> w, then verifies the four
/// normalization relations to 1e-9. Throws CylindricalInput when min |w'| <
/// 1e-8 and NotNormalized when the relations cannot be met (the base shift
/// alone keeps <g',w> = 0 only when <g1',w'>/<w',w'> is constant along s).
RuledSurface normalize_euclidean(const Curve& raw_base, const Curve& raw_director, Interval s_range);

/// Base change g = y1 g1 + y2 w in L^3 with (y1, y2) solving
///   f1 y1' + y2' = 0,  f2 y1 + f3 y1' + delta y2 = 0,  (y1, y2)(s0) = (1, 0)
/// for f1 = <g1,w>, f2 = <g1',w'>, f3 = <g1,w'>, integrated with RK4.
/// Throws NonSpacelikeInput when g1' or w is not spacelike or the
/// preconditions fail, and ODEBreakdown when f3 vanishes or the solution
/// blows up.
RuledSurface normalize_lorentz(const Curve& raw_base, const Curve& raw_director, Interval s_range, int delta);

struct RuledFrame {
    Vec3 w, wp, wxwp;
    double P = 0.0;  ///< (w,w',g') in R^3, (g',w,w') in L^3; unused (0) for lightlike directors
    double Q = 0.0;  ///< (w,w',w'') for nondegenerate directors, <g',w'>_L for lightlike ones
    int delta = 1;   ///< 0 marks the lightlike class
};

/// Throws NotNormalized for surfaces outside their class relations and ZeroQ
/// when |Q| < 1e-10 for a lightlike director.
RuledFrame frame(const RuledSurface& rs, double s);

struct CoefficientVector {
    std::vector<double> A;  ///< 4 entries (A0..A3), 3 for lightlike directors
    double s = 0.0;
    DirectorClass director_class = DirectorClass::EuclidStandard;

    double max_abs() const;
    double evaluate(double t) const;
};

/// Closed-form coefficients of the residual polynomial sum A_n t^n.
/// P' and Q' come from the product rule on the 2-jets of base and director.
/// Throws NotNormalized; ZeroQ when |Q| < 1e-10 for a lightlike director.
CoefficientVector coefficients(const RuledSurface& rs, double s, const Direction& v, double alpha);

/// sum A_n t^n == sign * residual_numerator(X(s, t)); the sign depends only on
/// the class (-1 in R^3, +1 for both L^3 classes).
int coefficient_oracle_sign(DirectorClass c) noexcept;

/// max over admissible t of |sum A_n t^n - sign * residual_numerator|. Samples
/// outside the halfspace (R^3) or where the surface is not spacelike or
/// <X,v>_L vanishes (L^3) are skipped; at least 4 must remain.
double residual_polynomial_consistency(const RuledSurface& rs, double s, const Direction& v, double alpha,
                                       std::span<const double> t_samples);

/// `count` equispaced samples over [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

/// Helicoid g = (0, 0, c s), w = (cos s, sin s, 0). Normalized in R^3 (P = c,
/// Q = 0) and LorentzNondegenerate with delta = +1 in L^3.
RuledSurface helicoid(double pitch, Interval s_range, Metric m = Metric::euclidean());

/// Lightlike-director surface with w = (1, s, s) and
/// g' = (0,1,1)/(2Q) + Q (-s, (1 - s^2)/2, -(1 + s^2)/2), the general unit
/// spacelike field orthogonal to w with <g',w'>_L = Q. `q` is Q with its
/// derivative; g(s0) = base0.
struct ScalarJet {
    double value;
    double d1;
};
RuledSurface lightlike_surface(std::function<ScalarJet(double)> q, Interval s_range, const Vec3& base0);

/// Reference member of the lightlike class, Q(s) = 1 + s/4 on [0, 1.5].
RuledSurface lightlike_reference();

// Random normalized surfaces ------------------------------------------------

/// Uniform unit vector in R^3; unit timelike vector (future or past) in L^3.
Direction random_direction(std::mt19937_64& rng, Metric m);

struct RandomSurfaceSpec {
    DirectorClass director_class = DirectorClass::EuclidStandard;
    int delta = 1;
    Interval t_box{-1.0, 1.0};  ///< translated so <X,v> >= 1 over s_range x t_box
};

/// A normalized non-cylindrical ruled surface of the requested class with
/// random smooth invariants, built directly in normalized form: the director
/// solves w'' = -w + Q w x w' (R^3) or w'' = -delta (w + Q w x w') (L^3), the
/// base solves g' = P w x w' (resp. -delta P w x w'). For delta = +1 the
/// spacelike part of the surface is |t| > |P|, so P stays below 0.45.
RuledSurface random_normalized_surface(std::mt19937_64& rng, const RandomSurfaceSpec& spec, const Direction& v);

/// Raw Lorentzian data admissible for normalize_lorentz: spacelike unit w with
/// <w',w'> = delta and spacelike g1 with <g1',w> = 0 and <g1,w'> bounded away
/// from zero on the range.
struct RawRuledData {
    Curve base;
    Curve director;
    Interval s_range;
};
RawRuledData random_lorentz_raw_data(std::mt19937_64& rng, int delta);

}  // namespace sgeom
