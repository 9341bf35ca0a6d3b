#include "sgeom/shapes.hpp"

#include <cmath>

namespace sgeom {

Shape plane_shape(double height, Rect domain) {
    return {domain,
            [height](double s, double t) {
                return Jet2{{s, t, height}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {}, {}, {}};
            },
            [height](double s, double t) { return Vec3{s, t, height}; }};
}

Shape sphere_shape(Rect domain) {
    auto point = [](double s, double t) {
        return Vec3{std::cos(s) * std::cos(t), std::sin(s) * std::cos(t), std::sin(t)};
    };
    auto jets = [](double s, double t) {
        const double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t), st = std::sin(t);
        Jet2 j;
        j.X = {cs * ct, ss * ct, st};
        j.Xs = {-ss * ct, cs * ct, 0.0};
        j.Xt = {-cs * st, -ss * st, ct};
        j.Xss = {-cs * ct, -ss * ct, 0.0};
        j.Xst = {ss * st, -cs * st, 0.0};
        j.Xtt = {-cs * ct, -ss * ct, -st};
        return j;
    };
    return {domain, jets, point};
}

Shape hyperboloid_shape(Rect domain) {
    auto point = [](double s, double t) { return Vec3{s, t, std::sqrt(1.0 + s * s + t * t)}; };
    auto jets = [](double s, double t) {
        const double r = std::sqrt(1.0 + s * s + t * t), r3 = r * r * r;
        Jet2 j;
        j.X = {s, t, r};
        j.Xs = {1.0, 0.0, s / r};
        j.Xt = {0.0, 1.0, t / r};
        j.Xss = {0.0, 0.0, (1.0 + t * t) / r3};
        j.Xst = {0.0, 0.0, -s * t / r3};
        j.Xtt = {0.0, 0.0, (1.0 + s * s) / r3};
        return j;
    };
    return {domain, jets, point};
}

Shape helicoid_shape(double pitch, Rect domain) {
    auto point = [pitch](double s, double t) { return Vec3{t * std::cos(s), t * std::sin(s), pitch * s}; };
    auto jets = [pitch](double s, double t) {
        const double c = std::cos(s), n = std::sin(s);
        Jet2 j;
        j.X = {t * c, t * n, pitch * s};
        j.Xs = {-t * n, t * c, pitch};
        j.Xt = {c, n, 0.0};
        j.Xss = {-t * c, -t * n, 0.0};
        j.Xst = {-n, c, 0.0};
        j.Xtt = {};
        return j;
    };
    return {domain, jets, point};
}

}  // namespace sgeom
