#include "sgeom/variational.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace sgeom {

HeightField::HeightField(int nu_, int nv_, Rect window_, double fill) : nu(nu_), nv(nv_), window(window_) {
    if (nu < 3 || nv < 3) throw Error(ErrorCode::InvalidArgument, "height field needs at least 3 x 3 nodes");
    if (!(window.s.length() > 0.0) || !(window.t.length() > 0.0))
        throw Error(ErrorCode::InvalidArgument, "height field window must have positive size");
    z.assign(static_cast<std::size_t>(nu) * nv, fill);
}

namespace {

double trapezoid_weight(int i, int n) { return i == 0 || i == n - 1 ? 0.5 : 1.0; }

void check_domain(const HeightField& h) {
    if (h.nu < 3 || h.nv < 3 || h.z.size() != static_cast<std::size_t>(h.nu) * h.nv)
        throw Error(ErrorCode::InvalidArgument, "height field needs at least 3 x 3 nodes");
    for (double z : h.z)
        if (!(z > 0.0)) throw Error(ErrorCode::HalfspaceViolation, "heights must be positive");
}

double node_weight(const HeightField& h, int i, int j) {
    return trapezoid_weight(i, h.nu) * trapezoid_weight(j, h.nv) * h.dx() * h.dy();
}

/// One quadrant of node (i, j): neighbours (i + sx, j) and (i, j + sy).
struct Quadrant {
    int sx, sy;
    double gx, gy, root;
};

/// Calls f for every quadrant of (i, j) that stays inside the grid and
/// returns the quadrant count.
template <class F>
int for_each_quadrant(const HeightField& h, int i, int j, F&& f) {
    int count = 0;
    for (int sx : {1, -1}) {
        if (i + sx < 0 || i + sx >= h.nu) continue;
        for (int sy : {1, -1}) {
            if (j + sy < 0 || j + sy >= h.nv) continue;
            const double gx = sx * (h.at(i + sx, j) - h.at(i, j)) / h.dx();
            const double gy = sy * (h.at(i, j + sy) - h.at(i, j)) / h.dy();
            f(Quadrant{sx, sy, gx, gy, std::sqrt(1.0 + gx * gx + gy * gy)});
            ++count;
        }
    }
    return count;
}

double area_factor(const HeightField& h, int i, int j) {
    double sum = 0.0;
    const int n = for_each_quadrant(h, i, j, [&](const Quadrant& q) { sum += q.root; });
    return sum / n;
}

}  // namespace

double height_energy(const HeightField& h, double alpha) {
    check_domain(h);
    double sum = 0.0;
    for (int i = 0; i < h.nu; ++i)
        for (int j = 0; j < h.nv; ++j) sum += node_weight(h, i, j) * std::pow(h.at(i, j), alpha) * area_factor(h, i, j);
    return sum;
}

std::vector<double> interior_gradient(const HeightField& h, double alpha) {
    check_domain(h);
    std::vector<double> grad(h.z.size(), 0.0);
    auto at = [&](int i, int j) -> double& { return grad[static_cast<std::size_t>(i) * h.nv + j]; };
    for (int i = 0; i < h.nu; ++i)
        for (int j = 0; j < h.nv; ++j) {
            const double w = node_weight(h, i, j), z = h.at(i, j);
            const int n = for_each_quadrant(h, i, j, [](const Quadrant&) {});
            const double scale = w * std::pow(z, alpha) / n;
            double area = 0.0;
            for_each_quadrant(h, i, j, [&](const Quadrant& q) {
                area += q.root;
                const double cx = scale * q.gx / q.root * q.sx / h.dx();
                const double cy = scale * q.gy / q.root * q.sy / h.dy();
                at(i + q.sx, j) += cx;
                at(i, j + q.sy) += cy;
                at(i, j) -= cx + cy;
            });
            at(i, j) += w * alpha * std::pow(z, alpha - 1.0) * area / n;
        }
    for (int i = 0; i < h.nu; ++i)
        for (int j = 0; j < h.nv; ++j)
            if (!h.interior(i, j)) at(i, j) = 0.0;
    return grad;
}

DescentResult descend(HeightField h, double alpha, int steps, double rate) {
    if (!(rate >= 0.0) || !std::isfinite(rate) || steps < 0)
        throw Error(ErrorCode::InvalidArgument, "descent needs rate >= 0 and steps >= 0");
    DescentResult out;
    out.energy.push_back(height_energy(h, alpha));
    double best = out.energy.back();
    int stalled = 0;
    for (int k = 0; k < steps; ++k) {
        const std::vector<double> g = interior_gradient(h, alpha);
        for (std::size_t idx = 0; idx < h.z.size(); ++idx) {
            const double next = h.z[idx] - rate * g[idx];
            if (!std::isfinite(next)) throw Error(ErrorCode::Diverged, "non-finite height at step " + std::to_string(k));
            h.z[idx] = std::max(kHeightFloor, next);
        }
        const double e = height_energy(h, alpha);
        if (!std::isfinite(e)) throw Error(ErrorCode::Diverged, "non-finite energy at step " + std::to_string(k));
        stalled = e > best + 1e-12 * std::fabs(best) ? stalled + 1 : 0;
        best = std::min(best, e);
        out.energy.push_back(e);
        if (stalled >= 5) {
            std::ostringstream msg;
            msg << "energy stayed above its minimum for 5 consecutive steps (rate " << rate
                << " is above the stability threshold)";
            throw Error(ErrorCode::Diverged, msg.str());
        }
    }
    out.field = std::move(h);
    return out;
}

namespace {

struct SplineDerivs {
    std::vector<double> d1, d2;
};

/// Nodal first and second derivatives of the not-a-knot cubic spline through
/// equispaced values (spacing h, at least 4 values).
SplineDerivs spline_derivs(const std::vector<double>& y, double h) {
    const int n = static_cast<int>(y.size());
    std::vector<double> M(n, 0.0), r(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) r[i] = 6.0 / (h * h) * (y[i + 1] - 2 * y[i] + y[i - 1]);
    // not-a-knot at both ends turns the first and last interior rows into 6 M = r
    M[1] = r[1] / 6.0;
    M[n - 2] = r[n - 2] / 6.0;
    const int lo = 2, hi = n - 3;
    if (hi >= lo) {
        const int m = hi - lo + 1;
        std::vector<double> diag(m, 4.0), rhs(m);
        for (int k = 0; k < m; ++k) rhs[k] = r[lo + k];
        rhs[0] -= M[lo - 1];
        rhs[m - 1] -= M[hi + 1];
        for (int k = 1; k < m; ++k) {
            const double f = 1.0 / diag[k - 1];
            diag[k] -= f;
            rhs[k] -= f * rhs[k - 1];
        }
        M[hi] = rhs[m - 1] / diag[m - 1];
        for (int k = m - 2; k >= 0; --k) M[lo + k] = (rhs[k] - M[lo + k + 1]) / diag[k];
    }
    M[0] = 2 * M[1] - M[2];
    M[n - 1] = 2 * M[n - 2] - M[n - 3];

    SplineDerivs out{std::vector<double>(n), M};
    for (int i = 0; i + 1 < n; ++i) out.d1[i] = (y[i + 1] - y[i]) / h - h * (2 * M[i] + M[i + 1]) / 6.0;
    out.d1[n - 1] = (y[n - 1] - y[n - 2]) / h + h * (M[n - 2] + 2 * M[n - 1]) / 6.0;
    return out;
}

}  // namespace

std::vector<double> height_residual(const HeightField& h, double alpha) {
    check_domain(h);
    if (h.nu < 4 || h.nv < 4) throw Error(ErrorCode::InvalidArgument, "spline residual needs at least 4 x 4 nodes");
    const std::size_t n = h.z.size();
    std::vector<double> zx(n), zxx(n), zy(n), zyy(n), zxy(n);
    auto idx = [&](int i, int j) { return static_cast<std::size_t>(i) * h.nv + j; };

    std::vector<double> line;
    for (int j = 0; j < h.nv; ++j) {
        line.assign(h.nu, 0.0);
        for (int i = 0; i < h.nu; ++i) line[i] = h.at(i, j);
        const SplineDerivs d = spline_derivs(line, h.dx());
        for (int i = 0; i < h.nu; ++i) zx[idx(i, j)] = d.d1[i], zxx[idx(i, j)] = d.d2[i];
    }
    for (int i = 0; i < h.nu; ++i) {
        line.assign(h.z.begin() + idx(i, 0), h.z.begin() + idx(i, 0) + h.nv);
        const SplineDerivs d = spline_derivs(line, h.dy());
        line.assign(zx.begin() + idx(i, 0), zx.begin() + idx(i, 0) + h.nv);
        const SplineDerivs dxy = spline_derivs(line, h.dy());
        for (int j = 0; j < h.nv; ++j) zy[idx(i, j)] = d.d1[j], zyy[idx(i, j)] = d.d2[j], zxy[idx(i, j)] = dxy.d1[j];
    }

    const Metric m = Metric::euclidean();
    const Direction v = Direction::make(m, {0.0, 0.0, 1.0});
    std::vector<double> out(n, 0.0);
    for (int i = 1; i + 1 < h.nu; ++i)
        for (int j = 1; j + 1 < h.nv; ++j) {
            const std::size_t k = idx(i, j);
            Jet2 jet;
            jet.X = {h.x(i), h.y(j), h.z[k]};
            jet.Xs = {1.0, 0.0, zx[k]};
            jet.Xt = {0.0, 1.0, zy[k]};
            jet.Xss = {0.0, 0.0, zxx[k]};
            jet.Xst = {0.0, 0.0, zxy[k]};
            jet.Xtt = {0.0, 0.0, zyy[k]};
            out[k] = singular_residual(m, jet, v, alpha);
        }
    return out;
}

double max_abs_interior(const HeightField& h, const std::vector<double>& values) {
    double worst = 0.0;
    for (int i = 1; i + 1 < h.nu; ++i)
        for (int j = 1; j + 1 < h.nv; ++j)
            worst = std::max(worst, std::fabs(values[static_cast<std::size_t>(i) * h.nv + j]));
    return worst;
}

HeightField catenary_heights(int n) {
    HeightField h(n, n, {{-1.0, 1.0}, {0.0, 1.0}});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = std::cosh(h.x(i));
    return h;
}

HeightField flat_heights(int n) {
    HeightField h = catenary_heights(n);
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!h.interior(i, j)) sum += h.at(i, j), ++count;
    for (int i = 1; i + 1 < n; ++i)
        for (int j = 1; j + 1 < n; ++j) h.at(i, j) = sum / count;
    return h;
}

HeightField noisy_heights(int n, double amplitude, std::uint64_t seed) {
    HeightField h = catenary_heights(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-amplitude, amplitude);
    for (int i = 1; i + 1 < n; ++i)
        for (int j = 1; j + 1 < n; ++j) h.at(i, j) *= 1.0 + noise(rng);
    return h;
}

void write_height_csv(std::ostream& os, const HeightField& h) {
    os << "i,j,x,y,z\n" << std::setprecision(17);
    for (int i = 0; i < h.nu; ++i)
        for (int j = 0; j < h.nv; ++j) os << i << ',' << j << ',' << h.x(i) << ',' << h.y(j) << ',' << h.at(i, j) << '\n';
}

HeightField read_height_csv(std::istream& is) {
    auto bad = [](const std::string& what) { return Error(ErrorCode::InvalidArgument, "height csv: " + what); };
    std::string line;
    if (!std::getline(is, line) || line.rfind("i,j,x,y,z", 0) != 0) throw bad("missing header i,j,x,y,z");
    std::map<std::pair<int, int>, double> values;
    double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
    int nu = 0, nv = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string cell[5];
        for (auto& c : cell)
            if (!std::getline(row, c, ',')) throw bad("row with fewer than 5 fields: " + line);
        try {
            const int i = std::stoi(cell[0]), j = std::stoi(cell[1]);
            const double x = std::stod(cell[2]), y = std::stod(cell[3]), z = std::stod(cell[4]);
            if (i < 0 || j < 0) throw bad("negative index");
            values[{i, j}] = z;
            nu = std::max(nu, i + 1), nv = std::max(nv, j + 1);
            xlo = std::min(xlo, x), xhi = std::max(xhi, x), ylo = std::min(ylo, y), yhi = std::max(yhi, y);
        } catch (const std::logic_error&) {
            throw bad("unparsable row: " + line);
        }
    }
    if (values.size() != static_cast<std::size_t>(nu) * nv) throw bad("grid is incomplete");
    HeightField h(nu, nv, {{xlo, xhi}, {ylo, yhi}});
    for (const auto& [key, z] : values) h.at(key.first, key.second) = z;
    return h;
}

void write_energy_csv(std::ostream& os, const std::vector<double>& energy) {
    os << "step,energy\n" << std::setprecision(17);
    for (std::size_t k = 0; k < energy.size(); ++k) os << k << ',' << energy[k] << '\n';
}

}  // namespace sgeom
