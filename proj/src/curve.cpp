#include "sgeom/curve.hpp"

#include <algorithm>

namespace sgeom {

TabulatedCurve::TabulatedCurve(std::vector<double> knots, std::vector<CurveJet> jets)
    : knots_(std::move(knots)), jets_(std::move(jets)) {
    if (knots_.size() < 2 || knots_.size() != jets_.size())
        throw Error(ErrorCode::InvalidArgument, "tabulated curve needs >= 2 knots with one jet each");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i] > knots_[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "tabulated curve knots must increase");
}

CurveJet TabulatedCurve::operator()(double s) const {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
    std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    i = std::min(i, knots_.size() - 2);

    const double h = knots_[i + 1] - knots_[i];
    const double u = (s - knots_[i]) / h;
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;

    // quintic Hermite basis (value, d/du, d2/du2)
    const double b[6] = {1 - 10 * u3 + 15 * u4 - 6 * u5,       u - 6 * u3 + 8 * u4 - 3 * u5,
                         0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5, 10 * u3 - 15 * u4 + 6 * u5,
                         -4 * u3 + 7 * u4 - 3 * u5,              0.5 * u3 - u4 + 0.5 * u5};
    const double db[6] = {-30 * u2 + 60 * u3 - 30 * u4,        1 - 18 * u2 + 32 * u3 - 15 * u4,
                          u - 4.5 * u2 + 6 * u3 - 2.5 * u4,     30 * u2 - 60 * u3 + 30 * u4,
                          -12 * u2 + 28 * u3 - 15 * u4,         1.5 * u2 - 4 * u3 + 2.5 * u4};
    const double ddb[6] = {-60 * u + 180 * u2 - 120 * u3,       -36 * u + 96 * u2 - 60 * u3,
                           1 - 9 * u + 18 * u2 - 10 * u3,       60 * u - 180 * u2 + 120 * u3,
                           -24 * u + 84 * u2 - 60 * u3,         3 * u - 12 * u2 + 10 * u3};

    const CurveJet& a = jets_[i];
    const CurveJet& c = jets_[i + 1];
    const Vec3 coef[6] = {a.p, a.d1 * h, a.d2 * (h * h), c.p, c.d1 * h, c.d2 * (h * h)};

    CurveJet out{};
    for (int k = 0; k < 6; ++k) {
        out.p += coef[k] * b[k];
        out.d1 += coef[k] * db[k];
        out.d2 += coef[k] * ddb[k];
    }
    out.d1 = out.d1 / h;
    out.d2 = out.d2 / (h * h);
    return out;
}

Curve TabulatedCurve::as_curve() const {
    auto shared = std::make_shared<const TabulatedCurve>(*this);
    return [shared](double s) { return (*shared)(s); };
}

namespace {

constexpr double kGlNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                  0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                  0.2223810344533745, 0.1012285362903763};

template <class T, class F>
T gl_impl(const F& f, double a, double b, int pieces) {
    T sum{};
    const double w = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w;
        for (int k = 0; k < 8; ++k) sum += f(mid + 0.5 * w * kGlNodes[k]) * (0.5 * w * kGlWeights[k]);
    }
    return sum;
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int pieces) {
    return gl_impl<double>(f, a, b, std::max(1, pieces));
}

Vec3 gauss_legendre(const std::function<Vec3(double)>& f, double a, double b, int pieces) {
    return gl_impl<Vec3>(f, a, b, std::max(1, pieces));
}

}  // namespace sgeom
