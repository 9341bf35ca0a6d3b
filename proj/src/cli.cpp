#include "sgeom/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgeom/catenary.hpp"
#include "sgeom/ruled.hpp"
#include "sgeom/shapes.hpp"
#include "sgeom/sweep.hpp"
#include "sgeom/variational.hpp"

namespace sgeom::cli {

namespace {

using nlohmann::json;

/// Thrown for user errors caught before a command runs.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Registers flags on a subcommand and mirrors them as JSON keys, so a config
/// file and the command line address the same variables.
class Binder {
public:
    explicit Binder(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* add(const std::string& key, T& var, const std::string& help) {
        readers_[key] = [&var](const json& j) { var = j.get<T>(); };
        writers_.emplace_back(key, [&var] { return json(var); });
        return app_->add_option("--" + key, var, help);
    }

    CLI::Option* flag(const std::string& key, bool& var, const std::string& help) {
        readers_[key] = [&var](const json& j) { var = j.get<bool>(); };
        writers_.emplace_back(key, [&var] { return json(var); });
        return app_->add_flag("--" + key, var, help);
    }

    void apply(const json& cfg) const {
        if (!cfg.is_object()) throw BadInput("config file must hold a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            const auto it = readers_.find(key);
            if (it == readers_.end()) throw BadInput("unknown config key '" + key + "' for " + app_->get_name());
            try {
                it->second(value);
            } catch (const json::exception& e) {
                throw BadInput("config key '" + key + "': " + e.what());
            }
        }
    }

    json resolved() const {
        json out = json::object();
        for (const auto& [key, get] : writers_) out[key] = get();
        return out;
    }

    CLI::App* app() const { return app_; }

private:
    CLI::App* app_;
    std::map<std::string, std::function<void(const json&)>> readers_;
    std::vector<std::pair<std::string, std::function<json()>>> writers_;
};

Metric parse_metric(const std::string& name) {
    if (name == "euclid" || name == "euclidean") return Metric::euclidean();
    if (name == "lorentz" || name == "lorentzian") return Metric::lorentzian();
    throw BadInput("unknown metric '" + name + "' (euclid or lorentz)");
}

Vec3 parse_vec(const std::vector<double>& v) {
    if (v.size() != 3) throw BadInput("a vector needs exactly 3 components");
    try {
        return {v[0], v[1], v[2]};
    } catch (const Error&) {
        throw BadInput("vector components must be finite");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw BadInput("cannot open '" + path + "' for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw BadInput("failed writing '" + path + "'");
}

// catenary -----------------------------------------------------------------

struct CatenaryArgs {
    double alpha = 1.0, u0 = 0.0, y0 = 1.0, theta0 = 0.0, length = 2.0, step = 1e-3;
    std::string out;
};

void bind(Binder& b, CatenaryArgs& a) {
    b.add("alpha", a.alpha, "alpha of the catenary");
    b.add("u0", a.u0, "start abscissa");
    b.add("y0", a.y0, "start height (> 0)");
    b.add("theta0", a.theta0, "start tangent angle");
    b.add("length", a.length, "arclength to integrate");
    b.add("step", a.step, "RK4 step");
    b.add("out", a.out, "output CSV");
}

int cmd_catenary(const CatenaryArgs& a, std::ostream& out, std::ostream& err) {
    if (a.out.empty()) throw BadInput("--out is required");
    if (!(a.y0 > 0.0)) throw BadInput("--y0 must be positive");
    if (!(a.step > 0.0) || !(a.length >= 0.0)) throw BadInput("--step must be positive and --length non-negative");
    const CatenaryPolyline c = integrate_catenary({0.0, a.u0, a.y0, a.theta0}, a.alpha, a.length, a.step);
    std::ofstream os = open_out(a.out);
    write_catenary_csv(os, c);
    finish(os, a.out);
    const CatenaryState& end = c.states.back();
    out << std::setprecision(17) << "rows " << c.states.size() << " end_s " << end.s << " end_u " << end.u
        << " end_y " << end.y << '\n';
    if (c.left_halfspace) {
        err << "catenary left the halfspace at s = " << end.s << '\n';
        return kHalfspace;
    }
    return kOk;
}

// surfaces shared by residual and export-mesh ------------------------------

struct SurfaceArgs {
    std::string surface = "catenary-cylinder";
    std::string metric = "euclid";
    std::string jets = "exact";
    std::string file;
    double alpha = 1.0;
    double pitch = 1.0;
    double y0 = 1.0, theta0 = 0.0, length = 2.0, step = 1e-3;
    int grid = 50;
};

void bind(Binder& b, SurfaceArgs& a) {
    b.add("surface", a.surface, "catenary-cylinder|helicoid|sphere|hyperboloid|plane|lightlike-reference|file");
    b.add("metric", a.metric, "euclid|lorentz");
    b.add("jets", a.jets, "exact|fd");
    b.add("file", a.file, "height field CSV for --surface file");
    b.add("alpha", a.alpha, "alpha (also the alpha of the catenary cylinder)");
    b.add("pitch", a.pitch, "helicoid pitch");
    b.add("y0", a.y0, "catenary start height");
    b.add("theta0", a.theta0, "catenary start angle");
    b.add("length", a.length, "catenary arclength");
    b.add("step", a.step, "catenary RK4 step");
    b.add("grid", a.grid, "nodes per direction");
}

ParamSurface build_surface(const SurfaceArgs& a) {
    const bool fd = a.jets == "fd";
    if (!fd && a.jets != "exact") throw BadInput("unknown --jets '" + a.jets + "'");
    auto pick = [fd](const Shape& s) { return fd ? s.finite_difference() : s.exact(); };
    if (a.surface == "plane") return pick(plane_shape());
    if (a.surface == "sphere") return pick(sphere_shape());
    if (a.surface == "hyperboloid") return pick(hyperboloid_shape());
    if (a.surface == "helicoid") return pick(helicoid_shape(a.pitch));
    if (fd) throw BadInput("--jets fd is only available for closed-form surfaces");
    if (a.surface == "lightlike-reference") return lightlike_reference().surface({0.0, 1.0});
    if (a.surface == "catenary-cylinder") {
        if (!(a.y0 > 0.0) || !(a.step > 0.0) || !(a.length > 0.0))
            throw BadInput("catenary cylinder needs --y0, --step and --length positive");
        const CatenaryPolyline c = integrate_catenary({0.0, 0.0, a.y0, a.theta0}, a.alpha, a.length, a.step);
        if (c.left_halfspace) throw BadInput("catenary left the halfspace; shorten --length");
        return catenary_cylinder(c, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
    }
    throw BadInput("unknown --surface '" + a.surface + "'");
}

HeightField load_field(const std::string& path) {
    if (path.empty()) throw BadInput("--surface file needs --file");
    std::ifstream is(path);
    if (!is) throw BadInput("cannot read '" + path + "'");
    try {
        return read_height_csv(is);
    } catch (const Error& e) {
        throw BadInput(e.what());
    }
}

// residual -----------------------------------------------------------------

struct ResidualArgs {
    SurfaceArgs surf;
    std::vector<double> v{0.0, 0.0, 1.0};
    std::string out;
};

void bind(Binder& b, ResidualArgs& a) {
    bind(b, a.surf);
    b.add("v", a.v, "direction v as x,y,z")->delimiter(',')->expected(3);
    b.add("out", a.out, "output CSV s,t,residual");
}

int cmd_residual(const ResidualArgs& a, std::ostream& out, std::ostream& err) {
    if (a.out.empty()) throw BadInput("--out is required");
    if (a.surf.grid < 2) throw BadInput("--grid must be at least 2");
    const Metric m = parse_metric(a.surf.metric);
    const Vec3 v = parse_vec(a.v);

    std::ostringstream csv;
    csv << "s,t,residual\n" << std::setprecision(17);
    double worst = 0.0;

    if (a.surf.surface == "file") {
        if (m.is_lorentzian() || !(v == Vec3{0.0, 0.0, 1.0}))
            throw BadInput("height fields are Euclidean graphs with v = 0,0,1");
        const HeightField h = load_field(a.surf.file);
        if (h.nu < 4 || h.nv < 4) throw BadInput("height field needs at least 4 x 4 nodes");
        const std::vector<double> r = height_residual(h, a.surf.alpha);
        for (int i = 1; i + 1 < h.nu; ++i)
            for (int j = 1; j + 1 < h.nv; ++j) {
                const double value = r[static_cast<std::size_t>(i) * h.nv + j];
                csv << h.x(i) << ',' << h.y(j) << ',' << value << '\n';
                worst = std::max(worst, std::fabs(value));
            }
    } else {
        const ParamSurface surf = build_surface(a.surf);
        Direction dir = [&] {
            try {
                return Direction::make(m, v);
            } catch (const Error& e) {
                throw BadInput(e.what());
            }
        }();
        const int n = a.surf.grid;
        const Rect& d = surf.domain();
        // finite-difference jets keep their stencil inside the domain
        const double margin = surf.source() == JetSource::FiniteDifference ? 2.0 * surf.step() : 0.0;
        const Interval si{d.s.lo + margin, d.s.hi - margin}, ti{d.t.lo + margin, d.t.hi - margin};
        const std::vector<double> ss = linspace(si.lo, si.hi, n), ts = linspace(ti.lo, ti.hi, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double value = 0.0;
                try {
                    value = singular_residual(m, surf, ss[i], ts[j], dir, a.surf.alpha);
                } catch (const Error& e) {
                    err << e.what() << " at cell (" << i << ", " << j << ") s = " << ss[i] << " t = " << ts[j]
                        << '\n';
                    if (e.code() == ErrorCode::HalfspaceViolation) return kHalfspace;
                    if (e.code() == ErrorCode::DegenerateMetric || e.code() == ErrorCode::NotSpacelike)
                        return kDegenerate;
                    throw;
                }
                csv << ss[i] << ',' << ts[j] << ',' << value << '\n';
                worst = std::max(worst, std::fabs(value));
            }
    }
    std::ofstream os = open_out(a.out);
    os << csv.str();
    finish(os, a.out);
    out << std::setprecision(17) << "max_abs_residual " << worst << '\n';
    return kOk;
}

// sweep --------------------------------------------------------------------

struct SweepArgs {
    std::string metric = "euclid";
    std::string cls = "auto";
    int n = 100;
    int samples = 10;
    std::uint64_t seed = 42;
    double alpha_min = -3.0, alpha_max = 3.0;
    bool allow_zero_alpha = false;
    bool plant_cylinder = false;
    int helicoids = 0;
    std::string out;
};

void bind(Binder& b, SweepArgs& a) {
    b.add("metric", a.metric, "euclid|lorentz");
    b.add("class", a.cls, "standard|delta-plus|delta-minus|lightlike (auto picks by metric)");
    b.add("n", a.n, "number of random surfaces");
    b.add("samples", a.samples, "s-samples per surface");
    b.add("seed", a.seed, "random seed");
    b.add("alpha-min", a.alpha_min, "lower end of the alpha range");
    b.add("alpha-max", a.alpha_max, "upper end of the alpha range");
    b.flag("allow-zero-alpha", a.allow_zero_alpha, "admit alpha = 0");
    b.flag("plant-cylinder", a.plant_cylinder, "add an alpha-catenary cylinder (filtered, never flagged)");
    b.add("helicoids", a.helicoids, "add this many alpha = 0 helicoids");
    b.add("out", a.out, "report JSON");
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
    SweepConfig cfg;
    const Metric m = parse_metric(a.metric);
    cfg.metric = m.signature();
    const std::string cls = a.cls == "auto" ? (m.is_lorentzian() ? "delta-plus" : "standard") : a.cls;
    if (cls == "standard") {
        cfg.director_class = DirectorClass::EuclidStandard;
    } else if (cls == "delta-plus" || cls == "delta-minus") {
        cfg.director_class = DirectorClass::LorentzNondegenerate;
        cfg.delta = cls == "delta-plus" ? 1 : -1;
    } else if (cls == "lightlike") {
        cfg.director_class = DirectorClass::LorentzLightlike;
        cfg.delta = 0;
    } else {
        throw BadInput("unknown --class '" + cls + "'");
    }
    cfg.n_surfaces = a.n;
    cfg.n_s_samples = a.samples;
    cfg.seed = a.seed;
    cfg.alpha_lo = a.alpha_min;
    cfg.alpha_hi = a.alpha_max;
    cfg.allow_zero_alpha = a.allow_zero_alpha;
    cfg.plant_cylinder = a.plant_cylinder;
    cfg.helicoids = a.helicoids;
    try {
        validate(cfg);
    } catch (const Error& e) {
        throw BadInput(e.what());
    }

    const SweepReport report = falsification_sweep(cfg);
    if (!a.out.empty()) {
        std::ofstream os = open_out(a.out);
        os << to_json(report).dump(2) << '\n';
        finish(os, a.out);
    }
    int evaluated = 0;
    for (const SweepRow& r : report.per_surface) evaluated += r.cylindrical ? 0 : 1;
    out << std::setprecision(17) << "surfaces " << report.per_surface.size() << " evaluated " << evaluated
        << " counterexamples " << report.counterexamples.size() << " min_max_abs_coeff "
        << report.min_max_abs_coeff << '\n';
    return report.counterexamples.empty() ? kOk : kCounterexample;
}

// export-mesh --------------------------------------------------------------

struct MeshArgs {
    SurfaceArgs surf;
    std::string out;
};

void bind(Binder& b, MeshArgs& a) {
    bind(b, a.surf);
    b.add("out", a.out, "output OBJ");
}

int cmd_export_mesh(const MeshArgs& a, std::ostream& out, std::ostream&) {
    if (a.out.empty()) throw BadInput("--out is required");
    if (a.surf.grid < 2) throw BadInput("--grid must be at least 2");
    std::vector<Vec3> vertices;
    int ns = a.surf.grid, nt = a.surf.grid;
    if (a.surf.surface == "file") {
        const HeightField h = load_field(a.surf.file);
        ns = h.nu, nt = h.nv;
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) vertices.push_back({h.x(i), h.y(j), h.at(i, j)});
    } else {
        const ParamSurface surf = build_surface(a.surf);
        const std::vector<double> ss = linspace(surf.domain().s.lo, surf.domain().s.hi, ns);
        const std::vector<double> ts = linspace(surf.domain().t.lo, surf.domain().t.hi, nt);
        for (double s : ss)
            for (double t : ts) vertices.push_back(surf.point(s, t));
    }
    std::ostringstream obj;
    obj << std::setprecision(17);
    for (const Vec3& p : vertices) obj << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
    // (i, j) -> i nt + j + 1; counterclockwise around Xs x Xt
    int faces = 0;
    for (int i = 0; i + 1 < ns; ++i)
        for (int j = 0; j + 1 < nt; ++j) {
            const int p = i * nt + j + 1, q = (i + 1) * nt + j + 1, r = q + 1, s = p + 1;
            obj << "f " << p << ' ' << q << ' ' << r << '\n' << "f " << p << ' ' << r << ' ' << s << '\n';
            faces += 2;
        }
    std::ofstream os = open_out(a.out);
    os << obj.str();
    finish(os, a.out);
    out << "vertices " << vertices.size() << " faces " << faces << '\n';
    return kOk;
}

// variational --------------------------------------------------------------

struct VariationalArgs {
    double alpha = 1.0;
    int grid = 64;
    int steps = 100;
    double rate = 0.1;
    std::string init = "catenary";
    std::string file;
    double noise = 0.01;
    std::uint64_t seed = 42;
    std::string out_prefix;
};

void bind(Binder& b, VariationalArgs& a) {
    b.add("alpha", a.alpha, "alpha of the energy");
    b.add("grid", a.grid, "nodes per direction");
    b.add("steps", a.steps, "descent steps");
    b.add("rate", a.rate, "descent rate");
    b.add("init", a.init, "flat|catenary|noisy|file");
    b.add("file", a.file, "height field CSV for --init file");
    b.add("noise", a.noise, "relative noise amplitude for --init noisy");
    b.add("seed", a.seed, "random seed for --init noisy");
    b.add("out-prefix", a.out_prefix, "writes <prefix>_field.csv and <prefix>_energy.csv");
}

int cmd_variational(const VariationalArgs& a, std::ostream& out, std::ostream& err) {
    if (a.out_prefix.empty()) throw BadInput("--out-prefix is required");
    if (a.init != "file" && a.grid < 4) throw BadInput("--grid must be at least 4");
    if (a.steps < 0 || !(a.rate >= 0.0) || !std::isfinite(a.rate)) throw BadInput("--steps and --rate must be >= 0");
    HeightField h;
    if (a.init == "flat") h = flat_heights(a.grid);
    else if (a.init == "catenary") h = catenary_heights(a.grid);
    else if (a.init == "noisy") h = noisy_heights(a.grid, a.noise, a.seed);
    else if (a.init == "file") h = load_field(a.file);
    else throw BadInput("unknown --init '" + a.init + "'");

    const double before = h.nu >= 4 && h.nv >= 4 ? max_abs_interior(h, height_residual(h, a.alpha)) : 0.0;
    DescentResult result;
    try {
        result = descend(h, a.alpha, a.steps, a.rate);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Diverged) throw;
        err << e.what() << '\n';
        return kDiverged;
    }
    const double after =
        h.nu >= 4 && h.nv >= 4 ? max_abs_interior(result.field, height_residual(result.field, a.alpha)) : 0.0;

    const std::string field_path = a.out_prefix + "_field.csv", energy_path = a.out_prefix + "_energy.csv";
    std::ofstream fs = open_out(field_path);
    write_height_csv(fs, result.field);
    finish(fs, field_path);
    std::ofstream es = open_out(energy_path);
    write_energy_csv(es, result.energy);
    finish(es, energy_path);
    out << std::setprecision(17) << "energy_initial " << result.energy.front() << " energy_final "
        << result.energy.back() << " residual_initial " << before << " residual_final " << after << '\n';
    return kOk;
}

std::string find_config(const std::vector<std::string>& args) {
    for (std::size_t k = 1; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw BadInput("--config needs a path");
            return args[k + 1];
        }
        if (args[k].rfind("--config=", 0) == 0) return args[k].substr(9);
    }
    return {};
}

std::optional<std::uint64_t> env_seed(std::ostream& err) {
    const char* raw = std::getenv("SINGULAR_GEOM_SEED");
    if (!raw || !*raw) return std::nullopt;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used == std::string(raw).size()) return v;
    } catch (const std::logic_error&) {
    }
    err << "ignoring SINGULAR_GEOM_SEED='" << raw << "': not an unsigned integer\n";
    return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Singular minimal and maximal surfaces toolkit", args.empty() ? "singular-geom" : args[0]};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with the same keys as the flags");

    CatenaryArgs catenary;
    ResidualArgs residual;
    SweepArgs sweep;
    MeshArgs mesh;
    VariationalArgs variational;
    if (const auto seed = env_seed(err)) sweep.seed = variational.seed = *seed;

    std::vector<std::unique_ptr<Binder>> binders;
    auto sub = [&](const std::string& name, const std::string& help, auto& params) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--config", config_path, "JSON file with the same keys as the flags");
        binders.push_back(std::make_unique<Binder>(s));
        bind(*binders.back(), params);
    };
    sub("catenary", "integrate a planar alpha-catenary", catenary);
    sub("residual", "evaluate the singular minimal / maximal residual on a grid", residual);
    sub("sweep", "randomized falsification sweep over normalized ruled surfaces", sweep);
    sub("export-mesh", "write a surface as an OBJ triangle mesh", mesh);
    sub("variational", "gradient descent on the discrete potential energy", variational);

    try {
        // config values become the defaults that flags then override
        const std::string cfg_path = find_config(args);
        if (!cfg_path.empty()) {
            std::ifstream is(cfg_path);
            if (!is) throw BadInput("cannot read config '" + cfg_path + "'");
            json cfg;
            try {
                cfg = json::parse(is);
            } catch (const json::exception& e) {
                throw BadInput("config '" + cfg_path + "': " + e.what());
            }
            const auto name = std::find_if(args.begin() + 1, args.end(), [&](const std::string& a) {
                return std::any_of(binders.begin(), binders.end(),
                                   [&](const auto& b) { return b->app()->get_name() == a; });
            });
            if (name == args.end()) throw BadInput("no command given");
            for (const auto& b : binders)
                if (b->app()->get_name() == *name) b->apply(cfg);
        }

        std::vector<std::string> rest(args.rbegin(), args.rend());
        if (!rest.empty()) rest.pop_back();
        try {
            app.parse(rest);
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kOk;
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out << app.help();
                return kOk;
            }
            err << e.what() << '\n';
            return kBadInput;
        }

        for (const auto& b : binders) {
            if (!b->app()->parsed()) continue;
            json resolved = b->resolved();
            err << "config " << b->app()->get_name() << ' ' << resolved.dump() << '\n';
        }

        if (app.got_subcommand("catenary")) return cmd_catenary(catenary, out, err);
        if (app.got_subcommand("residual")) return cmd_residual(residual, out, err);
        if (app.got_subcommand("sweep")) return cmd_sweep(sweep, out, err);
        if (app.got_subcommand("export-mesh")) return cmd_export_mesh(mesh, out, err);
        if (app.got_subcommand("variational")) return cmd_variational(variational, out, err);
        return kBadInput;
    } catch (const BadInput& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::HalfspaceViolation: return kHalfspace;
            case ErrorCode::DegenerateMetric:
            case ErrorCode::NotSpacelike: return kDegenerate;
            case ErrorCode::Diverged: return kDiverged;
            default: return kBadInput;
        }
    }
}

}  // namespace sgeom::cli
