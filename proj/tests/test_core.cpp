#include <cmath>
#include <random>

#include "doctest.h"
#include "sgeom/vec3.hpp"

using namespace sgeom;

namespace {

const Vec3 e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};

Vec3 random_vec(std::mt19937_64& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng)};
}

bool same(const Vec3& a, const Vec3& b, double tol = 1e-15) { return (a - b).max_abs() <= tol; }

}  // namespace

TEST_SUITE("core") {

TEST_CASE("cross product examples") {
    CHECK(Metric::euclidean().cross(e1, e2) == Vec3{0, 0, 1});
    CHECK(Metric::lorentzian().cross(e1, e2) == Vec3{0, 0, -1});
    const Vec3 u{0.3, -1.2, 2.5};
    for (Metric m : {Metric::euclidean(), Metric::lorentzian()}) CHECK(m.cross(u, u) == Vec3{0, 0, 0});
}

TEST_CASE("Lorentzian cross product solves its defining system") {
    // x with <x, w>_L = det(u, v, w) for w = e1, e2, e3
    const Metric L = Metric::lorentzian();
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        const Vec3 u = random_vec(rng), v = random_vec(rng);
        const Vec3 x{triple(u, v, e1), triple(u, v, e2), -triple(u, v, e3)};
        CHECK(same(L.cross(u, v), x, 1e-13));
    }
}

TEST_CASE("triple product examples") {
    CHECK(triple(e1, e2, e3) == 1.0);
    CHECK(triple(e1, e1, e3) == 0.0);
    CHECK(triple(e2, e1, e3) == -1.0);
}

TEST_CASE("causal character") {
    CHECK(causal_character({1, 0, 0}) == CausalCharacter::Spacelike);
    CHECK(causal_character({0, 0, 1}) == CausalCharacter::Timelike);
    CHECK(causal_character({1, 0, 1}) == CausalCharacter::Lightlike);
    CHECK(causal_character({0, 0, 0}) == CausalCharacter::Spacelike);
    const Vec3 near{1.0, 0.0, 1.0 + 1e-13};
    CHECK(causal_character(near) == CausalCharacter::Timelike);
    CHECK(causal_character_tol(near) == CausalCharacter::Lightlike);
    CHECK(causal_character_tol({1, 0, 1.1}) == CausalCharacter::Timelike);
}

TEST_CASE("timelike cones") {
    CHECK(same_timelike_cone({0, 0, 1}, {0, 0, 2}));
    CHECK_FALSE(same_timelike_cone({0, 0, 1}, {0, 0, -1}));
    try {
        same_timelike_cone({0, 0, 1}, {1, 0, 0});
        FAIL("expected NotTimelike");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotTimelike);
    }
}

TEST_CASE("hyperbolic angle") {
    CHECK(hyperbolic_angle(e3, e3) == doctest::Approx(0.0));
    CHECK(hyperbolic_angle(e3, {std::sinh(1.0), 0, std::cosh(1.0)}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hyperbolic_angle({0, 0, 2}, {0, 0, 3}) == doctest::Approx(0.0));
    try {
        hyperbolic_angle(e3, -e3);
        FAIL("expected DifferentCones");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DifferentCones);
    }
    CHECK_THROWS_AS(hyperbolic_angle(e1, e3), Error);
}

TEST_CASE("cross product identity on random triples") {
    std::mt19937_64 rng(11);
    for (Metric m : {Metric::euclidean(), Metric::lorentzian()}) {
        for (int k = 0; k < 1000; ++k) {
            const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
            const double scale = 1.0 + u.coord_norm() * v.coord_norm() * w.coord_norm();
            CHECK(std::fabs(m.inner(m.cross(u, v), w) - triple(u, v, w)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("cross product is bilinear and antisymmetric") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> k(-3, 3);
    for (Metric m : {Metric::euclidean(), Metric::lorentzian()}) {
        for (int n = 0; n < 200; ++n) {
            const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
            const double a = k(rng), b = k(rng);
            CHECK(same(m.cross(u, v), -m.cross(v, u)));
            CHECK(same(m.cross(a * u + b * w, v), a * m.cross(u, v) + b * m.cross(w, v), 1e-12));
        }
    }
}

TEST_CASE("orthogonal complement of a timelike vector is spacelike") {
    const Metric L = Metric::lorentzian();
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> k(-3, 3);
    int checked = 0;
    while (checked < 200) {
        Vec3 v = random_vec(rng);
        if (causal_character(v) != CausalCharacter::Timelike) continue;
        // v x_L r is L-orthogonal to v for every r
        const Vec3 a = L.cross(v, e1), b = L.cross(v, e2);
        const Vec3 w = k(rng) * a + k(rng) * b;
        if (w.max_abs() < 1e-6) continue;
        CHECK(std::fabs(L.inner(w, v)) <= 1e-12 * (1 + w.coord_norm() * v.coord_norm()));
        CHECK(causal_character(w) == CausalCharacter::Spacelike);
        ++checked;
    }
}

TEST_CASE("hyperbolic angle is scale invariant") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> pos(0.1, 5.0), r(-1.5, 1.5);
    for (int n = 0; n < 100; ++n) {
        const Vec3 u{r(rng), r(rng), 2.0 + pos(rng)}, v{r(rng), r(rng), 2.0 + pos(rng)};
        const double theta = hyperbolic_angle(u, v);
        CHECK(theta >= 0.0);
        CHECK(hyperbolic_angle(pos(rng) * u, pos(rng) * v) == doctest::Approx(theta).epsilon(1e-9));
    }
}

TEST_CASE("Vec3 rejects non-finite components") {
    CHECK_THROWS_AS(Vec3(NAN, 0, 0), Error);
    CHECK_THROWS_AS(Vec3(0, INFINITY, 0), Error);
}

}
