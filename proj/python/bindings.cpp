#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dnoise/domain.hpp"
#include "dnoise/errors.hpp"
#include "dnoise/estimators.hpp"
#include "dnoise/fields.hpp"
#include "dnoise/harness.hpp"
#include "dnoise/kernels.hpp"

namespace py = pybind11;
using namespace dnoise;

namespace {

py::dict rate_dict(const RateReport& rep) {
    py::dict d;
    d["distances"] = rep.distances;
    d["values"] = rep.values;
    d["ratios"] = rep.ratios;
    d["slope"] = rep.slope;
    d["intercept"] = rep.intercept;
    d["r_squared"] = rep.r_squared;
    d["log_square_mode"] = rep.log_square_mode;
    d["log_square_coeff"] = rep.log_square_coeff;
    d["bound_constant"] = rep.bound_constant;
    d["bound_stable"] = rep.bound_stable;
    d["excluded"] = rep.excluded;
    return d;
}

}  // namespace

PYBIND11_MODULE(dirichlet_noise, m) {
    m.doc() = "Dirichlet boundary-noise kernels, variance formulas and blow-up checks";

    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Domain>(m, "Domain")
        .def_static("interval", &Domain::interval, py::arg("a"), py::arg("b"))
        .def_static("half_line", &Domain::half_line)
        .def_static("half_space", &Domain::half_space, py::arg("m"))
        .def_static("unit_ball", &Domain::unit_ball, py::arg("d"))
        .def("dimension", &Domain::dimension)
        .def("bounded", &Domain::bounded)
        .def("id", &Domain::id)
        .def("contains", &Domain::contains, py::arg("x"))
        .def("dist_to_boundary", &Domain::dist_to_boundary, py::arg("x"))
        .def("normal_probe_line", &Domain::normal_probe_line, py::arg("anchor"),
             py::arg("distances"))
        .def("__repr__", [](const Domain& d) { return "<Domain " + d.id() + ">"; });

    py::class_<KernelConfig>(m, "KernelConfig")
        .def(py::init<>())
        .def_readwrite("lam", &KernelConfig::lambda, "resolvent parameter lambda")
        .def_readwrite("series_terms", &KernelConfig::series_terms)
        .def_readwrite("eigen_switch", &KernelConfig::eigen_switch);

    m.def("heat_kernel", &heat_kernel, py::arg("domain"), py::arg("config"), py::arg("t"),
          py::arg("x"), py::arg("y"),
          "transition density of Brownian motion killed at the boundary");
    m.def("heat_kernel_normal_derivative", &heat_kernel_normal_derivative, py::arg("domain"),
          py::arg("config"), py::arg("t"), py::arg("x"), py::arg("y"),
          "inward normal derivative of the heat kernel in the boundary variable");
    m.def("green_kernel", &green_kernel, py::arg("domain"), py::arg("config"), py::arg("x"),
          py::arg("y"), "resolvent kernel");
    m.def("green_normal_derivative", &green_normal_derivative, py::arg("domain"),
          py::arg("config"), py::arg("x"), py::arg("y"),
          "inward normal derivative of the resolvent kernel");
    m.def("disk_heat_mass", &disk_heat_mass, py::arg("t"), py::arg("r"),
          "total heat mass remaining in the unit disk");
    m.def("disk_bessel_zeros", &disk_bessel_zeros, py::arg("n"), py::arg("j_max"));

    m.def(
        "fit_blowup",
        [](const std::vector<double>& d, const std::vector<double>& v, bool log_square_mode) {
            return rate_dict(fit_blowup(d, v, log_square_mode));
        },
        py::arg("distances"), py::arg("values"), py::arg("log_square_mode") = false,
        "log-log least squares fit of values against boundary distance");
    m.def(
        "check_heat_tail_bound",
        [](int d, double k2, double t, const std::vector<double>& r_grid) {
            const HeatTailReport rep = check_heat_tail_bound(d, k2, t, r_grid);
            py::dict out;
            out["max_scaled"] = rep.max_scaled;
            out["limit"] = rep.limit;
            out["worst_quad_error"] = rep.worst_quad_error;
            out["ok"] = rep.ok;
            return out;
        },
        py::arg("d"), py::arg("k2"), py::arg("t"), py::arg("r_grid"),
        "scaled tail integral of the Gaussian envelope vs its closed-form cap");
    m.def(
        "young_i_alpha",
        [](const std::function<double(double)>& f, double t, double alpha) {
            return young_i_alpha(f, t, alpha);
        },
        py::arg("f"), py::arg("t"), py::arg("alpha"),
        "fractional norm controlling Young integrals against a rough path");

    m.def(
        "run_experiment",
        [](const std::string& experiment, const std::string& domain, const std::string& noise,
           const std::string& out_dir, py::object seed, py::object n, int workers) {
            ExperimentConfig cfg = default_config(experiment, domain, noise);
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            if (!seed.is_none()) cfg.mc.seed = seed.cast<std::uint64_t>();
            if (!n.is_none()) cfg.mc.n = n.cast<std::size_t>();
            cfg.mc.workers = workers;
            const RunResult res = run_experiment(cfg);
            py::dict out;
            out["pass"] = res.pass;
            out["csv"] = res.csv_path;
            out["json"] = res.json_path;
            out["failures"] = res.failures;
            return out;
        },
        py::arg("experiment"), py::arg("domain") = "", py::arg("noise") = "",
        py::arg("out_dir") = "out", py::arg("seed") = py::none(), py::arg("n") = py::none(),
        py::arg("workers") = 1, "run one registered experiment, writing csv + json");
    m.def("list_experiments", [] {
        std::ostringstream os;
        list_experiments(os);
        return os.str();
    });
    m.def("kernel_selftest", [] {
        std::ostringstream os;
        const bool ok = kernel_selftest(os);
        py::dict out;
        out["ok"] = ok;
        out["report"] = os.str();
        return out;
    });
}
