#include "sgeom/vec3.hpp"

#include <algorithm>

namespace sgeom {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotTimelike: return "NotTimelike";
        case ErrorCode::DifferentCones: return "DifferentCones";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::DegenerateMetric: return "DegenerateMetric";
        case ErrorCode::NotSpacelike: return "NotSpacelike";
        case ErrorCode::HalfspaceViolation: return "HalfspaceViolation";
        case ErrorCode::ZeroDirection: return "ZeroDirection";
        case ErrorCode::CylindricalInput: return "CylindricalInput";
        case ErrorCode::NonSpacelikeInput: return "NonSpacelikeInput";
        case ErrorCode::OdeBreakdown: return "ODEBreakdown";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ZeroQ: return "ZeroQ";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::Diverged: return "Diverged";
    }
    return "Unknown";
}

const char* to_string(Signature s) noexcept {
    return s == Signature::Lorentzian ? "lorentzian" : "euclidean";
}

const char* to_string(CausalCharacter c) noexcept {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        case CausalCharacter::Lightlike: return "lightlike";
    }
    return "unknown";
}

CausalCharacter causal_character(const Vec3& v) {
    const double q = Metric::lorentzian().inner(v, v);
    if (q > 0.0 || v == Vec3{}) return CausalCharacter::Spacelike;
    if (q < 0.0) return CausalCharacter::Timelike;
    return CausalCharacter::Lightlike;
}

CausalCharacter causal_character_tol(const Vec3& v, double eps) {
    if (v == Vec3{}) return CausalCharacter::Spacelike;
    const double q = Metric::lorentzian().inner(v, v);
    const double scale = v.max_abs();
    if (std::fabs(q) <= eps * scale * scale) return CausalCharacter::Lightlike;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

namespace {

void require_timelike(const Vec3& v, const char* name) {
    if (causal_character(v) != CausalCharacter::Timelike)
        throw Error(ErrorCode::NotTimelike, std::string(name) + " is not timelike");
}

}  // namespace

bool same_timelike_cone(const Vec3& u, const Vec3& v) {
    require_timelike(u, "u");
    require_timelike(v, "v");
    return Metric::lorentzian().inner(u, v) < 0.0;
}

double hyperbolic_angle(const Vec3& u, const Vec3& v) {
    if (!same_timelike_cone(u, v))
        throw Error(ErrorCode::DifferentCones, "hyperbolic angle needs vectors in one timelike cone");
    const Metric L = Metric::lorentzian();
    const double c = -L.inner(u, v) / (L.norm(u) * L.norm(v));
    // reverse Cauchy-Schwarz gives c >= 1; rounding can dip just below
    return std::acosh(std::max(1.0, c));
}

}  // namespace sgeom
