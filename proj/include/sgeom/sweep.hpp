#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "sgeom/ruled.hpp"

namespace sgeom {

/// Randomized search for normalized non-cylindrical ruled surfaces whose
/// residual polynomial vanishes identically.
struct SweepConfig {
    int n_surfaces = 100;
    int n_s_samples = 10;
    std::uint64_t seed = 42;
    Signature metric = Signature::Euclidean;
    DirectorClass director_class = DirectorClass::EuclidStandard;
    int delta = 1;
    double alpha_lo = -3.0;
    double alpha_hi = 3.0;
    bool allow_zero_alpha = false;  ///< otherwise |alpha| < 1e-3 is redrawn
    bool plant_cylinder = false;    ///< adds an alpha-catenary cylinder that must be filtered out
    int helicoids = 0;              ///< adds alpha = 0 helicoids (all-zero coefficients)
    double threshold = 1e-6;
};

/// Throws ConfigError on inconsistent settings.
void validate(const SweepConfig& cfg);

struct SweepRow {
    int id = 0;
    std::string director_class;
    double alpha = 0.0;
    double max_abs_coeff = 0.0;  ///< max over s of max_i |A_i| / max(1, |P|^3)
    bool flagged = false;
    bool cylindrical = false;    ///< removed by the cylindrical filter before evaluation
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRow> per_surface;
    std::vector<int> counterexamples;
    double min_max_abs_coeff = 0.0;  ///< over evaluated (non-cylindrical) surfaces
};

/// Surface i draws from mt19937_64(seed_seq{seed, i}), so rows do not depend
/// on evaluation order.
SweepReport falsification_sweep(const SweepConfig& cfg);

nlohmann::json to_json(const SweepReport& report);

}  // namespace sgeom
