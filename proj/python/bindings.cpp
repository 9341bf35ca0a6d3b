#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sgeom/catenary.hpp"
#include "sgeom/cli.hpp"
#include "sgeom/ruled.hpp"
#include "sgeom/shapes.hpp"
#include "sgeom/sweep.hpp"
#include "sgeom/variational.hpp"

namespace py = pybind11;
using namespace sgeom;

namespace {

using Triple = std::array<double, 3>;

Vec3 vec(const Triple& a) { return {a[0], a[1], a[2]}; }
Triple tup(const Vec3& v) { return {v.x, v.y, v.z}; }

Metric metric(const std::string& name) {
    if (name == "euclid" || name == "euclidean") return Metric::euclidean();
    if (name == "lorentz" || name == "lorentzian") return Metric::lorentzian();
    throw Error(ErrorCode::InvalidArgument, "metric must be 'euclid' or 'lorentz'");
}

DirectorClass director_class(const std::string& name) {
    if (name == "standard") return DirectorClass::EuclidStandard;
    if (name == "nondegenerate") return DirectorClass::LorentzNondegenerate;
    if (name == "lightlike") return DirectorClass::LorentzLightlike;
    throw Error(ErrorCode::InvalidArgument, "class must be 'standard', 'nondegenerate' or 'lightlike'");
}

py::dict jet_dict(const Jet2& j) {
    py::dict d;
    d["X"] = tup(j.X);
    d["Xs"] = tup(j.Xs);
    d["Xt"] = tup(j.Xt);
    d["Xss"] = tup(j.Xss);
    d["Xst"] = tup(j.Xst);
    d["Xtt"] = tup(j.Xtt);
    return d;
}

/// A surface together with the metric it is measured in.
struct PySurface {
    ParamSurface surface;
    Metric metric;
};

PySurface named_surface(const std::string& name, const std::string& metric_name, bool finite_difference,
                        double pitch, double alpha) {
    const Metric m = metric(metric_name);
    auto pick = [&](const Shape& s) { return PySurface{finite_difference ? s.finite_difference() : s.exact(), m}; };
    if (name == "plane") return pick(plane_shape());
    if (name == "sphere") return pick(sphere_shape());
    if (name == "hyperboloid") return pick(hyperboloid_shape());
    if (name == "helicoid") return pick(helicoid_shape(pitch));
    if (name == "catenary-cylinder")
        return {catenary_cylinder(integrate_catenary({0, 0, 1, 0}, alpha, 2.0, 1e-3), {0, 0, 1}, {0, 1, 0}, m), m};
    throw Error(ErrorCode::InvalidArgument, "unknown surface '" + name + "'");
}

HeightField field_arg(py::array_t<double, py::array::c_style | py::array::forcecast> z, std::array<double, 2> x,
                      std::array<double, 2> y) {
    if (z.ndim() != 2) throw Error(ErrorCode::InvalidArgument, "heights must be a 2-d array");
    HeightField h(static_cast<int>(z.shape(0)), static_cast<int>(z.shape(1)), {{x[0], x[1]}, {y[0], y[1]}});
    std::copy(z.data(), z.data() + z.size(), h.z.begin());
    return h;
}

py::array_t<double> grid_array(const HeightField& h, const std::vector<double>& values) {
    py::array_t<double> out({h.nu, h.nv});
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

py::tuple field_tuple(const HeightField& h) {
    return py::make_tuple(grid_array(h, h.z), py::make_tuple(h.window.s.lo, h.window.s.hi),
                          py::make_tuple(h.window.t.lo, h.window.t.hi));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Singular minimal surfaces in R^3 and L^3";

    static py::exception<Error> geometry_error(m, "GeometryError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(geometry_error.ptr())(e.what());
            inst.attr("code") = to_string(e.code());
            PyErr_SetObject(geometry_error.ptr(), inst.ptr());
        }
    });

    m.def("inner", [](const std::string& mt, Triple u, Triple v) { return metric(mt).inner(vec(u), vec(v)); });
    m.def("cross", [](const std::string& mt, Triple u, Triple v) { return tup(metric(mt).cross(vec(u), vec(v))); });
    m.def("triple", [](Triple u, Triple v, Triple w) { return triple(vec(u), vec(v), vec(w)); });
    m.def("causal_character", [](Triple v, double eps) {
        return std::string(to_string(eps > 0 ? causal_character_tol(vec(v), eps) : causal_character(vec(v))));
    }, py::arg("v"), py::arg("eps") = 0.0);
    m.def("hyperbolic_angle", [](Triple u, Triple v) { return hyperbolic_angle(vec(u), vec(v)); });

    py::class_<PySurface>(m, "Surface")
        .def_property_readonly("domain", [](const PySurface& s) {
            const Rect& d = s.surface.domain();
            return py::make_tuple(py::make_tuple(d.s.lo, d.s.hi), py::make_tuple(d.t.lo, d.t.hi));
        })
        .def("jet", [](const PySurface& s, double a, double b) { return jet_dict(s.surface.jet(a, b)); })
        .def("mean_curvature", [](const PySurface& s, double a, double b) {
            return mean_curvature(s.metric, s.surface.jet(a, b));
        })
        .def("unit_normal", [](const PySurface& s, double a, double b) {
            return tup(unit_normal(s.metric, s.surface.jet(a, b)));
        })
        .def("singular_residual", [](const PySurface& s, double a, double b, Triple v, double alpha) {
            return singular_residual(s.metric, s.surface, a, b, Direction::make(s.metric, vec(v)), alpha);
        })
        .def("potential_energy", [](const PySurface& s, Triple v, double alpha, int ns, int nt) {
            return potential_energy(s.metric, s.surface, Direction::make(s.metric, vec(v)), alpha, {ns, nt});
        }, py::arg("v"), py::arg("alpha"), py::arg("ns") = 64, py::arg("nt") = 64);

    m.def("surface", &named_surface, py::arg("name"), py::arg("metric") = "euclid",
          py::arg("finite_difference") = false, py::arg("pitch") = 1.0, py::arg("alpha") = 1.0,
          "Built-in surface: plane, sphere, hyperboloid, helicoid or catenary-cylinder.");

    m.def("integrate_catenary", [](double alpha, double length, double step, double u0, double y0, double theta0) {
        const CatenaryPolyline c = integrate_catenary({0.0, u0, y0, theta0}, alpha, length, step);
        const py::ssize_t n = static_cast<py::ssize_t>(c.states.size());
        py::array_t<double> s(n), u(n), y(n), th(n);
        for (py::ssize_t k = 0; k < n; ++k) {
            s.mutable_at(k) = c.states[k].s;
            u.mutable_at(k) = c.states[k].u;
            y.mutable_at(k) = c.states[k].y;
            th.mutable_at(k) = c.states[k].theta;
        }
        py::dict d;
        d["s"] = s;
        d["u"] = u;
        d["y"] = y;
        d["theta"] = th;
        d["left_halfspace"] = c.left_halfspace;
        return d;
    }, py::arg("alpha"), py::arg("length"), py::arg("step") = 1e-3, py::arg("u0") = 0.0, py::arg("y0") = 1.0,
       py::arg("theta0") = 0.0);
    m.def("solve_catenary_bvp", [](std::array<double, 2> p0, std::array<double, 2> p1, double alpha, double tol) {
        return solve_catenary_bvp({p0[0], p0[1]}, {p1[0], p1[1]}, alpha, tol);
    }, py::arg("p0"), py::arg("p1"), py::arg("alpha"), py::arg("tol") = 1e-10);

    py::class_<RuledSurface>(m, "RuledSurface")
        .def_property_readonly("s_range", [](const RuledSurface& r) { return py::make_tuple(r.s_range.lo, r.s_range.hi); })
        .def_property_readonly("director_class", [](const RuledSurface& r) { return std::string(to_string(r.director_class)); })
        .def("jet", [](const RuledSurface& r, double s, double t) { return jet_dict(r.jet(s, t)); })
        .def("frame", [](const RuledSurface& r, double s) {
            const RuledFrame f = frame(r, s);
            py::dict d;
            d["P"] = f.P;
            d["Q"] = f.Q;
            d["delta"] = f.delta;
            d["w"] = tup(f.w);
            d["wp"] = tup(f.wp);
            return d;
        })
        .def("coefficients", [](const RuledSurface& r, double s, Triple v, double alpha) {
            return coefficients(r, s, Direction::make(r.metric, vec(v)), alpha).A;
        })
        .def("consistency", [](const RuledSurface& r, double s, Triple v, double alpha, std::vector<double> t) {
            return residual_polynomial_consistency(r, s, Direction::make(r.metric, vec(v)), alpha, t);
        }, py::arg("s"), py::arg("v"), py::arg("alpha"), py::arg("t_samples"));

    m.def("helicoid", [](double pitch, std::array<double, 2> range, const std::string& mt) {
        return helicoid(pitch, {range[0], range[1]}, metric(mt));
    }, py::arg("pitch") = 1.0, py::arg("s_range") = std::array<double, 2>{0.5, 2.5}, py::arg("metric") = "euclid");
    m.def("lightlike_reference", &lightlike_reference);
    m.def("random_ruled_surface", [](std::uint64_t seed, const std::string& cls, int delta, Triple v) {
        std::mt19937_64 rng(seed);
        const DirectorClass c = director_class(cls);
        const Metric mt = c == DirectorClass::EuclidStandard ? Metric::euclidean() : Metric::lorentzian();
        return random_normalized_surface(rng, {c, delta}, Direction::make(mt, vec(v)));
    }, py::arg("seed"), py::arg("director_class") = "standard", py::arg("delta") = 1,
       py::arg("v") = Triple{0, 0, 1});

    m.def("sweep", [](int n, int samples, std::uint64_t seed, const std::string& mt, const std::string& cls, int delta,
                      double alpha_lo, double alpha_hi, bool plant_cylinder, int helicoids, bool allow_zero_alpha) {
        SweepConfig cfg;
        cfg.n_surfaces = n;
        cfg.n_s_samples = samples;
        cfg.seed = seed;
        cfg.metric = metric(mt).signature();
        cfg.director_class = director_class(cls);
        cfg.delta = delta;
        cfg.alpha_lo = alpha_lo;
        cfg.alpha_hi = alpha_hi;
        cfg.plant_cylinder = plant_cylinder;
        cfg.helicoids = helicoids;
        cfg.allow_zero_alpha = allow_zero_alpha;
        return py::module_::import("json").attr("loads")(to_json(falsification_sweep(cfg)).dump());
    }, py::arg("n") = 100, py::arg("samples") = 10, py::arg("seed") = 42, py::arg("metric") = "euclid",
       py::arg("director_class") = "standard", py::arg("delta") = 1, py::arg("alpha_min") = -3.0,
       py::arg("alpha_max") = 3.0, py::arg("plant_cylinder") = false, py::arg("helicoids") = 0,
       py::arg("allow_zero_alpha") = false);

    m.def("catenary_heights", [](int n) { return field_tuple(catenary_heights(n)); });
    m.def("flat_heights", [](int n) { return field_tuple(flat_heights(n)); });
    m.def("noisy_heights", [](int n, double amp, std::uint64_t seed) { return field_tuple(noisy_heights(n, amp, seed)); },
          py::arg("n"), py::arg("amplitude") = 0.01, py::arg("seed") = 0);
    m.def("height_energy", [](py::array_t<double> z, std::array<double, 2> x, std::array<double, 2> y, double alpha) {
        return height_energy(field_arg(z, x, y), alpha);
    });
    m.def("interior_gradient", [](py::array_t<double> z, std::array<double, 2> x, std::array<double, 2> y, double alpha) {
        const HeightField h = field_arg(z, x, y);
        return grid_array(h, interior_gradient(h, alpha));
    });
    m.def("height_residual", [](py::array_t<double> z, std::array<double, 2> x, std::array<double, 2> y, double alpha) {
        const HeightField h = field_arg(z, x, y);
        return grid_array(h, height_residual(h, alpha));
    });
    m.def("descend", [](py::array_t<double> z, std::array<double, 2> x, std::array<double, 2> y, double alpha, int steps,
                        double rate) {
        DescentResult r;
        HeightField h = field_arg(z, x, y);
        {
            py::gil_scoped_release release;
            r = descend(std::move(h), alpha, steps, rate);
        }
        return py::make_tuple(grid_array(r.field, r.field.z), py::array_t<double>(r.energy.size(), r.energy.data()));
    }, py::arg("z"), py::arg("x_range"), py::arg("y_range"), py::arg("alpha"), py::arg("steps"), py::arg("rate") = 0.1);

    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "singular-geom");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "Runs one command-line invocation and returns (exit_code, stdout, stderr).");
}
