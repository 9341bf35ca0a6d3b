#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "sgeom/sweep.hpp"

using namespace sgeom;

TEST_SUITE("sweep") {

TEST_CASE("Euclidean sweep finds no counterexample") {
    SweepConfig cfg;
    cfg.n_surfaces = 100;
    cfg.n_s_samples = 10;
    cfg.seed = 42;
    const SweepReport r = falsification_sweep(cfg);
    CHECK(r.per_surface.size() == 100);
    CHECK(r.counterexamples.empty());
    CHECK(r.min_max_abs_coeff > cfg.threshold);
    for (const SweepRow& row : r.per_surface) {
        CHECK(row.alpha >= cfg.alpha_lo);
        CHECK(row.alpha <= cfg.alpha_hi);
        CHECK(std::fabs(row.alpha) >= 1e-3);
    }
}

TEST_CASE("Lorentzian sweeps find no counterexample") {
    for (auto [cls, delta] : {std::pair{DirectorClass::LorentzNondegenerate, 1},
                              std::pair{DirectorClass::LorentzNondegenerate, -1},
                              std::pair{DirectorClass::LorentzLightlike, 0}}) {
        SweepConfig cfg;
        cfg.n_surfaces = 30;
        cfg.seed = 7;
        cfg.metric = Signature::Lorentzian;
        cfg.director_class = cls;
        cfg.delta = delta;
        CHECK(falsification_sweep(cfg).counterexamples.empty());
    }
}

TEST_CASE("sweep is reproducible") {
    SweepConfig cfg;
    cfg.n_surfaces = 20;
    cfg.seed = 99;
    const std::string a = to_json(falsification_sweep(cfg)).dump();
    CHECK(a == to_json(falsification_sweep(cfg)).dump());
    cfg.seed = 100;
    CHECK(a != to_json(falsification_sweep(cfg)).dump());
}

TEST_CASE("rows do not depend on the number of surfaces") {
    SweepConfig cfg;
    cfg.n_surfaces = 5;
    const SweepReport small = falsification_sweep(cfg);
    cfg.n_surfaces = 12;
    const SweepReport large = falsification_sweep(cfg);
    for (int i = 0; i < 5; ++i) {
        CHECK(small.per_surface[i].alpha == large.per_surface[i].alpha);
        CHECK(small.per_surface[i].max_abs_coeff == large.per_surface[i].max_abs_coeff);
    }
}

TEST_CASE("planted cylinder is filtered and helicoids are flagged") {
    SweepConfig cfg;
    cfg.n_surfaces = 10;
    cfg.plant_cylinder = true;
    cfg.helicoids = 3;
    cfg.allow_zero_alpha = true;
    const SweepReport r = falsification_sweep(cfg);
    const auto cylinders = std::count_if(r.per_surface.begin(), r.per_surface.end(),
                                         [](const SweepRow& row) { return row.cylindrical; });
    CHECK(cylinders == 1);
    for (const SweepRow& row : r.per_surface)
        if (row.cylindrical) CHECK_FALSE(row.flagged);
    CHECK(r.counterexamples.size() == 3);
    for (int id : r.counterexamples) {
        const SweepRow& row = r.per_surface.at(id);
        CHECK(row.flagged);
        CHECK(row.alpha == 0.0);
        CHECK(row.max_abs_coeff == doctest::Approx(0.0));
    }
}

TEST_CASE("configuration errors") {
    auto rejects = [](SweepConfig cfg) {
        try {
            validate(cfg);
        } catch (const Error& e) {
            return e.code() == ErrorCode::ConfigError;
        }
        return false;
    };
    SweepConfig ok;
    CHECK_NOTHROW(validate(ok));
    SweepConfig c = ok;
    c.n_surfaces = 0;
    CHECK(rejects(c));
    c = ok;
    c.n_s_samples = 0;
    CHECK(rejects(c));
    c = ok;
    c.alpha_lo = 2;
    c.alpha_hi = 1;
    CHECK(rejects(c));
    c = ok;
    c.director_class = DirectorClass::LorentzLightlike;
    CHECK(rejects(c));
    c = ok;
    c.metric = Signature::Lorentzian;
    c.director_class = DirectorClass::LorentzNondegenerate;
    c.delta = 0;
    CHECK(rejects(c));
    c = ok;
    c.helicoids = -1;
    CHECK(rejects(c));
    c = ok;
    c.alpha_lo = c.alpha_hi = 0.0;
    CHECK(rejects(c));
}

TEST_CASE("report JSON layout") {
    SweepConfig cfg;
    cfg.n_surfaces = 3;
    const nlohmann::json j = to_json(falsification_sweep(cfg));
    CHECK(j.contains("config"));
    CHECK(j["config"]["n_surfaces"] == 3);
    REQUIRE(j["per_surface"].size() == 3);
    for (const char* key : {"id", "class", "alpha", "max_abs_coeff", "flagged"}) CHECK(j["per_surface"][0].contains(key));
    CHECK(j["counterexamples"].is_array());
}

}
