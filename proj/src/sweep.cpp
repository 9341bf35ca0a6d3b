#include "sgeom/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sgeom/catenary.hpp"

namespace sgeom {

void validate(const SweepConfig& cfg) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::ConfigError, what);
    };
    need(cfg.n_surfaces >= 1, "n_surfaces must be at least 1");
    need(cfg.n_s_samples >= 1, "n_s_samples must be at least 1");
    need(std::isfinite(cfg.alpha_lo) && std::isfinite(cfg.alpha_hi) && cfg.alpha_lo <= cfg.alpha_hi,
         "alpha range must be finite and ordered");
    need(cfg.threshold > 0.0, "threshold must be positive");
    need(cfg.helicoids >= 0, "helicoids must be non-negative");
    const bool lorentz = cfg.metric == Signature::Lorentzian;
    need(lorentz == (cfg.director_class != DirectorClass::EuclidStandard), "director class does not match the metric");
    if (cfg.director_class == DirectorClass::LorentzNondegenerate)
        need(cfg.delta == 1 || cfg.delta == -1, "delta must be +1 or -1");
    if (!cfg.allow_zero_alpha)
        need(cfg.alpha_hi > 1e-3 || cfg.alpha_lo < -1e-3, "alpha range only contains zero");
    need(!cfg.plant_cylinder || !lorentz, "the planted cylinder is Euclidean");
}

namespace {

constexpr double kCylindricalFloor = 1e-8;

RuledSurface planted_cylinder() {
    const CatenaryPolyline c = integrate_catenary({0.0, -1.0, 1.0, 0.0}, 1.0, 2.0, 1e-2);
    // plane curve (u, 0, y) from the tabulated state; y' = sin, u' = cos
    std::vector<double> knots;
    std::vector<CurveJet> jets;
    for (const CatenaryState& st : c.states) {
        const double co = std::cos(st.theta), sn = std::sin(st.theta), k = co / st.y;
        knots.push_back(st.s);
        jets.push_back({{st.u, 0.0, st.y}, {co, 0.0, sn}, {-k * sn, 0.0, k * co}});
    }
    const TabulatedCurve base(std::move(knots), std::move(jets));
    return make_cylinder(base.as_curve(), {0.0, 1.0, 0.0}, Metric::euclidean(), base.range());
}

bool is_cylindrical(const RuledSurface& rs, std::span<const double> samples) {
    double largest = 0.0;
    for (double s : samples) largest = std::max(largest, rs.director(s).d1.coord_norm());
    return largest < kCylindricalFloor;
}

std::vector<double> interior_samples(Interval r, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) out.push_back(r.lo + r.length() * (k + 0.5) / n);
    return out;
}

double draw_alpha(std::mt19937_64& rng, const SweepConfig& cfg) {
    std::uniform_real_distribution<double> dist(cfg.alpha_lo, cfg.alpha_hi);
    for (;;) {
        const double a = cfg.alpha_lo == cfg.alpha_hi ? cfg.alpha_lo : dist(rng);
        if (cfg.allow_zero_alpha || std::fabs(a) >= 1e-3) return a;
    }
}

struct Candidate {
    RuledSurface surface;
    Direction v;
    double alpha;
};

SweepRow evaluate(int id, const Candidate& c, const SweepConfig& cfg) {
    SweepRow row;
    row.id = id;
    row.director_class = to_string(c.surface.director_class);
    row.alpha = c.alpha;
    const std::vector<double> samples = interior_samples(c.surface.s_range, cfg.n_s_samples);
    if (is_cylindrical(c.surface, samples)) {
        row.cylindrical = true;
        return row;
    }
    bool all_small = true;
    for (double s : samples) {
        const CoefficientVector a = coefficients(c.surface, s, c.v, c.alpha);
        const double P = frame(c.surface, s).P;
        const double scaled = a.max_abs() / std::max(1.0, std::fabs(P * P * P));
        row.max_abs_coeff = std::max(row.max_abs_coeff, scaled);
        all_small = all_small && scaled <= cfg.threshold;
    }
    row.flagged = all_small;
    return row;
}

}  // namespace

SweepReport falsification_sweep(const SweepConfig& cfg) {
    validate(cfg);
    const Metric m(cfg.metric);
    SweepReport report;
    report.config = cfg;

    RandomSurfaceSpec spec;
    spec.director_class = cfg.director_class;
    spec.delta = cfg.director_class == DirectorClass::LorentzLightlike ? 0 : cfg.delta;

    int id = 0;
    for (; id < cfg.n_surfaces; ++id) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(id)};
        std::mt19937_64 rng(seq);
        const Direction v = random_direction(rng, m);
        const double alpha = draw_alpha(rng, cfg);
        report.per_surface.push_back(evaluate(id, {random_normalized_surface(rng, spec, v), v, alpha}, cfg));
    }
    if (cfg.plant_cylinder) {
        report.per_surface.push_back(
            evaluate(id++, {planted_cylinder(), Direction::make(m, {0.0, 0.0, 1.0}), 1.0}, cfg));
    }
    for (int k = 0; k < cfg.helicoids; ++k) {
        const double pitch = 0.5 + 0.5 * k;
        RuledSurface h = helicoid(pitch, {0.0, 2.0}, m);
        report.per_surface.push_back(evaluate(id++, {std::move(h), Direction::make(m, {0.0, 0.0, 1.0}), 0.0}, cfg));
    }

    bool any = false;
    for (const SweepRow& row : report.per_surface) {
        if (row.flagged) report.counterexamples.push_back(row.id);
        if (row.cylindrical) continue;
        report.min_max_abs_coeff = any ? std::min(report.min_max_abs_coeff, row.max_abs_coeff) : row.max_abs_coeff;
        any = true;
    }
    return report;
}

nlohmann::json to_json(const SweepReport& report) {
    const SweepConfig& c = report.config;
    nlohmann::json cfg = {
        {"n_surfaces", c.n_surfaces},
        {"n_s_samples", c.n_s_samples},
        {"seed", c.seed},
        {"metric", to_string(c.metric)},
        {"class", to_string(c.director_class)},
        {"delta", c.delta},
        {"alpha_range", {c.alpha_lo, c.alpha_hi}},
        {"allow_zero_alpha", c.allow_zero_alpha},
        {"plant_cylinder", c.plant_cylinder},
        {"helicoids", c.helicoids},
        {"threshold", c.threshold},
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& r : report.per_surface) {
        rows.push_back({{"id", r.id},
                        {"class", r.director_class},
                        {"alpha", r.alpha},
                        {"max_abs_coeff", r.max_abs_coeff},
                        {"flagged", r.flagged},
                        {"cylindrical", r.cylindrical}});
    }
    return {{"config", cfg},
            {"per_surface", rows},
            {"counterexamples", report.counterexamples},
            {"min_max_abs_coeff", report.min_max_abs_coeff}};
}

}  // namespace sgeom
