#pragma once

#include <cmath>
#include <ostream>

#include "sgeom/error.hpp"

namespace sgeom {

/// A point or vector of R^3 / L^3. Components are always finite.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
            throw Error(ErrorCode::InvalidArgument, "Vec3 components must be finite");
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
    Vec3 operator/(double k) const { return {x / k, y / k, z / k}; }
    Vec3& operator+=(const Vec3& o) { return *this = *this + o; }
    Vec3& operator-=(const Vec3& o) { return *this = *this - o; }
    Vec3& operator*=(double k) { return *this = *this * k; }

    bool operator==(const Vec3&) const = default;

    /// Max-norm, metric independent.
    double max_abs() const { return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z))); }
    /// Euclidean length of the coordinate triple (used for tolerances, not geometry).
    double coord_norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator*(double k, const Vec3& v) { return v * k; }

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << '(' << v.x << ", " << v.y << ", " << v.z << ')';
}

enum class Signature { Euclidean, Lorentzian };

/// (u, v, w) = det[u; v; w]. Signature free.
inline double triple(const Vec3& u, const Vec3& v, const Vec3& w) {
    return u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x);
}

/// Inner product and cross product of R^3 (dx^2+dy^2+dz^2) or L^3 (dx^2+dy^2-dz^2).
///
/// The cross product is the unique vector with inner(cross(u, v), w) = (u, v, w)
/// for all w, so in L^3 it is the Euclidean cross product with its z component
/// negated.
class Metric {
public:
    constexpr explicit Metric(Signature s = Signature::Euclidean) : signature_(s) {}

    static constexpr Metric euclidean() { return Metric(Signature::Euclidean); }
    static constexpr Metric lorentzian() { return Metric(Signature::Lorentzian); }

    constexpr Signature signature() const { return signature_; }
    constexpr bool is_lorentzian() const { return signature_ == Signature::Lorentzian; }

    double inner(const Vec3& u, const Vec3& v) const {
        const double zz = u.z * v.z;
        return u.x * v.x + u.y * v.y + (is_lorentzian() ? -zz : zz);
    }

    Vec3 cross(const Vec3& u, const Vec3& v) const {
        const double cz = u.x * v.y - u.y * v.x;
        return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, is_lorentzian() ? -cz : cz};
    }

    /// sqrt(|<v,v>|)
    double norm(const Vec3& v) const { return std::sqrt(std::fabs(inner(v, v))); }

    bool operator==(const Metric&) const = default;

private:
    Signature signature_;
};

inline double inner(Metric m, const Vec3& u, const Vec3& v) { return m.inner(u, v); }
inline Vec3 cross(Metric m, const Vec3& u, const Vec3& v) { return m.cross(u, v); }

const char* to_string(Signature s) noexcept;

enum class CausalCharacter { Spacelike, Timelike, Lightlike };

const char* to_string(CausalCharacter c) noexcept;

/// Exact classification by the sign of <v,v>_L; the zero vector is spacelike.
CausalCharacter causal_character(const Vec3& v);

/// Classification for computed vectors: lightlike when |<v,v>_L| <= eps * |v|_inf^2.
CausalCharacter causal_character_tol(const Vec3& v, double eps = 1e-10);

/// True iff <u,v>_L < 0. Throws NotTimelike unless both arguments are timelike.
bool same_timelike_cone(const Vec3& u, const Vec3& v);

/// theta >= 0 with <u,v>_L = -|u|_L |v|_L cosh(theta).
double hyperbolic_angle(const Vec3& u, const Vec3& v);

}  // namespace sgeom
