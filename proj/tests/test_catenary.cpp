#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "sgeom/catenary.hpp"

using namespace sgeom;
using std::numbers::pi;

namespace {

double endpoint_error(double step) {
    const CatenaryPolyline c = integrate_catenary({0, 0, 1, 0}, 1.0, 2.0, step);
    const CatenaryState& end = c.states.back();
    return std::hypot(end.u - std::asinh(2.0), end.y - std::sqrt(5.0));
}

double max_cylinder_residual(const CatenaryPolyline& c, double alpha) {
    const Metric m = Metric::euclidean();
    const Direction v = Direction::make(m, {0, 0, 1});
    const ParamSurface cyl = catenary_cylinder(c, {0, 0, 1}, {0, 1, 0});
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j)
            worst = std::fmax(worst, std::fabs(singular_residual(m, cyl, cyl.domain().s.at(i / 49.0),
                                                                   cyl.domain().t.at(j / 49.0), v, alpha)));
    return worst;
}

}  // namespace

TEST_SUITE("catenary") {

TEST_CASE("right-hand side") {
    CHECK(catenary_rhs({0, 0, 1, 0.3}, 0.0).dtheta == 0.0);
    CHECK(catenary_rhs({0, 0, 1, 0}, 1.0).dtheta == 1.0);
    CHECK(std::fabs(catenary_rhs({0, 0, 2, pi / 2}, 1.0).dtheta) <= 1e-16);
    const CatenaryRate r = catenary_rhs({0, 0, 1, 0.4}, 2.0);
    CHECK(r.du == doctest::Approx(std::cos(0.4)));
    CHECK(r.dy == doctest::Approx(std::sin(0.4)));
    try {
        catenary_rhs({0, 0, 1e-13, 0}, 1.0);
        FAIL("expected HalfspaceViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HalfspaceViolation);
    }
}

TEST_CASE("closed-form catenary") {
    CHECK(endpoint_error(1e-3) <= 1e-8);
    const CatenaryPolyline c = integrate_catenary({0, 0, 1, 0}, 1.0, 2.0, 1e-3);
    CHECK(c.states.size() == 2001);
    CHECK_FALSE(c.left_halfspace);
    CHECK(c.states.back().s == doctest::Approx(2.0));
}

TEST_CASE("fourth-order convergence") {
    const double e0 = endpoint_error(0.1), e1 = endpoint_error(0.05), e2 = endpoint_error(0.025);
    CHECK(e0 / e1 >= 12.0);
    CHECK(e1 / e2 >= 12.0);
}

TEST_CASE("straight line for alpha = 0") {
    const CatenaryPolyline c = integrate_catenary({0, 0, 1, pi / 4}, 0.0, 3.0, 1e-2);
    for (const CatenaryState& st : c.states) {
        CHECK(st.theta == doctest::Approx(pi / 4));
        CHECK(st.u == doctest::Approx(st.s * std::cos(pi / 4)));
        CHECK(st.y == doctest::Approx(1 + st.s * std::sin(pi / 4)));
    }
    CHECK(c.states.back().s == doctest::Approx(3.0));
}

TEST_CASE("negative alpha bends towards the axis") {
    const CatenaryPolyline c = integrate_catenary({0, 0, 1, 0}, -1.0, 5.0, 1e-3);
    CHECK(c.left_halfspace);
    CHECK(c.states.back().s < 5.0);
    for (const CatenaryState& st : c.states) {
        CHECK(st.y > 0.0);
        CHECK(st.theta <= 0.0);
    }
    // half-step re-integration agrees along the common prefix
    const CatenaryPolyline a = integrate_catenary({0, 0, 1, 0}, -1.0, 0.8, 1e-3);
    const CatenaryPolyline b = integrate_catenary({0, 0, 1, 0}, -1.0, 0.8, 5e-4);
    REQUIRE_FALSE(a.left_halfspace);
    CHECK(std::fabs(a.states.back().y - b.states.back().y) <= 1e-8);
    CHECK(std::fabs(a.states.back().u - b.states.back().u) <= 1e-8);
    CHECK(std::fabs(a.states.back().theta - b.states.back().theta) <= 1e-8);
}

TEST_CASE("first integral and pointwise identity") {
    // y^alpha cos(theta) is constant along every alpha-catenary
    for (double alpha : {-2.0, -1.0, 0.5, 1.0, 2.0, 3.0}) {
        const CatenaryPolyline c = integrate_catenary({0, 0, 2, 0.2}, alpha, 1.0, 1e-3);
        REQUIRE_FALSE(c.left_halfspace);
        const double I0 = std::pow(c.states.front().y, alpha) * std::cos(c.states.front().theta);
        double drift = 0.0, identity = 0.0;
        for (const CatenaryState& st : c.states) {
            drift = std::fmax(drift, std::fabs(std::pow(st.y, alpha) * std::cos(st.theta) - I0));
            identity = std::fmax(identity, std::fabs(catenary_rhs(st, alpha).dtheta * st.y - alpha * std::cos(st.theta)));
        }
        CHECK(drift <= 1e-9 * std::fmax(1.0, std::fabs(I0)));
        CHECK(identity <= 1e-9);
    }
}

TEST_CASE("invalid integration requests") {
    CHECK_THROWS_AS(integrate_catenary({0, 0, 1, 0}, 1.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(integrate_catenary({0, 0, -1, 0}, 1.0, 1.0, 1e-3), Error);
}

TEST_CASE("boundary-value problem") {
    CHECK(std::fabs(solve_catenary_bvp({0, 1}, {std::asinh(2.0), std::sqrt(5.0)}, 1.0)) <= 1e-6);
    CHECK(solve_catenary_bvp({0, 1}, {1, 2}, 0.0) == doctest::Approx(pi / 4).epsilon(1e-8));
    try {
        solve_catenary_bvp({0, 1}, {3, 0.05}, 1.0);
        FAIL("expected NoSolution");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSolution);
    }
}

TEST_CASE("boundary-value solution hits the target") {
    const PlanarPoint p1{1.0, 2.0};
    for (double alpha : {-1.0, 1.0, 2.0}) {
        const double theta0 = solve_catenary_bvp({0, 1}, p1, alpha);
        const CatenaryPolyline c = integrate_catenary({0, 0, 1, theta0}, alpha, 4.0, 1e-3);
        // locate the crossing of u = p1.u by linear interpolation between states
        for (std::size_t k = 1; k < c.states.size(); ++k) {
            const CatenaryState &a = c.states[k - 1], &b = c.states[k];
            if (a.u <= p1.u && b.u >= p1.u) {
                const double f = (p1.u - a.u) / (b.u - a.u);
                CHECK(a.y + f * (b.y - a.y) == doctest::Approx(p1.y).epsilon(1e-6));
                break;
            }
        }
    }
}

TEST_CASE("catenary cylinders solve the singular minimal equation") {
    CHECK(max_cylinder_residual(integrate_catenary({0, 0, 1, 0}, 1.0, 2.0, 1e-3), 1.0) <= 1e-6);
    CHECK(max_cylinder_residual(integrate_catenary({0, 0, 1, 0}, 2.0, 1.0, 1e-3), 2.0) <= 1e-5);
    for (double alpha : {-2.0, -1.0, 1.0, 2.0, 3.0})
        CHECK(max_cylinder_residual(integrate_catenary({0, 0, 2, 0}, alpha, 1.0, 1e-3), alpha) <= 1e-5);
    // a vertical line spans a plane parallel to v
    const CatenaryPolyline line = integrate_catenary({0, 0, 1, pi / 2}, 0.0, 1.0, 1e-2);
    for (double alpha : {-1.0, 0.5, 2.5}) CHECK(max_cylinder_residual(line, alpha) <= 1e-12);
}

TEST_CASE("cylinder geometry") {
    const CatenaryPolyline c = integrate_catenary({0, 0, 1, 0}, 1.0, 2.0, 1e-3);
    const ParamSurface cyl = catenary_cylinder(c, {0, 0, 1}, {0, 1, 0});
    for (double s : {0.0, 0.7, 1.9}) {
        const Jet2 j = cyl.jet(s, 0.3);
        CHECK(j.Xt.z == 0.0);
        CHECK((j.X - Vec3{std::asinh(s), 0.3, std::sqrt(1 + s * s)}).max_abs() <= 1e-9);
    }
    try {
        catenary_cylinder(c, {0, 0, 1}, {0, 0.6, 0.8});
        FAIL("expected NotOrthogonal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotOrthogonal);
    }
}

TEST_CASE("csv export") {
    std::ostringstream os;
    write_catenary_csv(os, integrate_catenary({0, 0, 1, 0}, 1.0, 0.01, 1e-3));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "s,u,y,theta");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 11);

    std::ostringstream flagged;
    write_catenary_csv(flagged, integrate_catenary({0, 0, 1, 0}, -1.0, 5.0, 1e-2));
    CHECK(flagged.str().rfind("s,u,y,theta,left_halfspace\n", 0) == 0);
}

}
