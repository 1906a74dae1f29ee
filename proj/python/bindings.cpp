#include "nnlif/nnlif.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace nnlif;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
    return std::vector<double>(a.data(), a.data() + a.size());
}

Array to_array(const std::vector<double>& v) { return Array(static_cast<py::ssize_t>(v.size()), v.data()); }

py::dict run_to_dict(const RunResult& r) {
    std::vector<double> t, n, mt, mass, rr, et, s, bulk, boundary, gt, e;
    for (const auto& x : r.rate) {
        t.push_back(x.t);
        n.push_back(x.n);
    }
    for (const auto& x : r.mass) {
        mt.push_back(x.t);
        mass.push_back(x.mass);
        rr.push_back(x.r);
    }
    for (const auto& x : r.entropy) {
        et.push_back(x.t);
        s.push_back(x.s);
        bulk.push_back(x.bulk);
        boundary.push_back(x.boundary);
    }
    for (const auto& x : r.energy) {
        gt.push_back(x.t);
        e.push_back(x.e);
    }
    py::list snaps;
    for (const auto& x : r.snapshots) snaps.append(py::make_tuple(x.t, to_array(x.p)));

    py::dict d;
    d["v"] = to_array(r.v);
    d["t"] = to_array(t);
    d["rate"] = to_array(n);
    d["mass_t"] = to_array(mt);
    d["mass"] = to_array(mass);
    d["r"] = to_array(rr);
    d["entropy_t"] = to_array(et);
    d["entropy"] = to_array(s);
    d["bulk"] = to_array(bulk);
    d["boundary"] = to_array(boundary);
    d["energy_t"] = to_array(gt);
    d["energy"] = to_array(e);
    d["snapshots"] = snaps;
    d["final_p"] = to_array(r.final_p);
    d["final_rate"] = r.final_rate;
    d["final_r"] = r.final_r;
    d["final_mass"] = r.final_mass;
    d["stop_reason"] = std::string(to_string(r.stop_reason));
    d["stop_time"] = r.stop_time;
    d["stop_detail"] = r.stop_detail;
    d["steps"] = r.steps;
    d["negative_density_steps"] = r.negative_density_steps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Structure-preserving finite-volume solver for the NNLIF Fokker-Planck equation";
    m.attr("__version__") = NNLIF_VERSION;

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, double, double, int>(), py::arg("v_min"), py::arg("v_reset"), py::arg("v_fire"),
             py::arg("n"))
        .def_property_readonly("v_min", &Grid::v_min)
        .def_property_readonly("v_reset", &Grid::v_reset)
        .def_property_readonly("v_fire", &Grid::v_fire)
        .def_property_readonly("cells", &Grid::cells)
        .def_property_readonly("spacing", &Grid::spacing)
        .def_property_readonly("reset_index", &Grid::reset_index)
        .def("node", &Grid::node)
        .def("nodes", [](const Grid& g) { return to_array(g.nodes()); })
        .def("refined", &Grid::refined)
        .def("__repr__", [](const Grid& g) {
            return "Grid(" + std::to_string(g.v_min()) + ", " + std::to_string(g.v_reset()) + ", " +
                   std::to_string(g.v_fire()) + ", " + std::to_string(g.cells()) + ")";
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double a0, double a1, double b, double v_ext) {
                 ModelParams p{a0, a1, b, v_ext};
                 p.validate();
                 return p;
             }),
             py::arg("a0") = 1.0, py::arg("a1") = 0.0, py::arg("b") = 0.0, py::arg("v_ext") = 0.0)
        .def_readwrite("a0", &ModelParams::a0)
        .def_readwrite("a1", &ModelParams::a1)
        .def_readwrite("b", &ModelParams::b)
        .def_readwrite("v_ext", &ModelParams::v_ext);

    py::enum_<Scheme>(m, "Scheme")
        .value("explicit", Scheme::explicit_euler)
        .value("semi_implicit", Scheme::semi_implicit);

    py::enum_<NegativeDensityPolicy>(m, "NegativeDensityPolicy")
        .value("abort", NegativeDensityPolicy::abort)
        .value("warn", NegativeDensityPolicy::warn);

    py::enum_<ProfileFlavor>(m, "ProfileFlavor")
        .value("continuous", ProfileFlavor::continuous_quadrature)
        .value("discrete", ProfileFlavor::discrete_recursion);

    py::class_<StepConfig>(m, "StepConfig")
        .def(py::init([](double tau, Scheme scheme, NegativeDensityPolicy policy, double threshold) {
                 StepConfig c{tau, scheme, policy, threshold};
                 c.validate();
                 return c;
             }),
             py::arg("tau"), py::arg("scheme") = Scheme::semi_implicit,
             py::arg("negative_density") = NegativeDensityPolicy::abort, py::arg("blowup_threshold") = 1e3)
        .def_readwrite("tau", &StepConfig::tau)
        .def_readwrite("scheme", &StepConfig::scheme)
        .def_readwrite("negative_density", &StepConfig::negative_density)
        .def_readwrite("blowup_threshold", &StepConfig::blowup_threshold);

    py::class_<SolverState>(m, "SolverState")
        .def_property_readonly("p", [](const SolverState& s) { return to_array(s.p); })
        .def_readonly("t", &SolverState::t)
        .def_readonly("n_rate", &SolverState::n_rate);

    m.def(
        "make_state",
        [](const Array& p, const Grid& g, const ModelParams& params, double t) {
            return make_state(to_vector(p), g, params, t);
        },
        py::arg("p"), py::arg("grid"), py::arg("params"), py::arg("t") = 0.0);
    m.def("step", &step, py::arg("state"), py::arg("config"), py::arg("grid"), py::arg("params"));
    m.def("semi_implicit_step", &semi_implicit_step, py::arg("state"), py::arg("config"), py::arg("grid"),
          py::arg("params"));
    m.def("explicit_step", &explicit_step, py::arg("state"), py::arg("config"), py::arg("grid"), py::arg("params"));
    m.def("firing_rate", &firing_rate, py::arg("p_last"), py::arg("grid"), py::arg("params"));
    m.def("cfl_ok", &cfl_ok, py::arg("tau"), py::arg("grid"), py::arg("n_rate"), py::arg("params"));
    m.def("maxwellian", &maxwellian, py::arg("v"), py::arg("n_rate"), py::arg("params"));
    m.def("g_half", &g_half, py::arg("i"), py::arg("n_rate"), py::arg("grid"), py::arg("params"));

    py::class_<StationaryProfile>(m, "StationaryProfile")
        .def_readonly("n_inf", &StationaryProfile::n_inf)
        .def_property_readonly("p_inf", [](const StationaryProfile& s) { return to_array(s.p_inf); })
        .def_readonly("flavor", &StationaryProfile::flavor);

    m.def(
        "find_stationary_rates",
        [](const ModelParams& params, const Grid& g, double n_max, int samples) {
            return find_stationary_rates(params, g, RateSearch{n_max, samples});
        },
        py::arg("params"), py::arg("grid"), py::arg("n_max") = 10.0, py::arg("samples") = 400);
    m.def(
        "stationary_density",
        [](double n_inf, const Grid& g, const ModelParams& params) {
            return to_array(stationary_density(n_inf, g, params));
        },
        py::arg("n_inf"), py::arg("grid"), py::arg("params"));
    m.def("continuous_stationary", &continuous_stationary, py::arg("n_inf"), py::arg("grid"), py::arg("params"));
    m.def("discrete_stationary", &discrete_stationary, py::arg("n_inf"), py::arg("grid"), py::arg("params"),
          py::arg("allow_rate_dependent") = false);

    py::class_<EntropyReport>(m, "EntropyReport")
        .def_readonly("s", &EntropyReport::s)
        .def_readonly("bulk", &EntropyReport::bulk)
        .def_readonly("boundary", &EntropyReport::boundary)
        .def_readonly("t", &EntropyReport::t);

    m.def(
        "total_mass",
        [](const Array& p, const Grid& g, double r) { return total_mass(to_vector(p), g, r); },
        py::arg("p"), py::arg("grid"), py::arg("refractory") = 0.0);
    m.def(
        "relative_entropy",
        [](const Array& p, const StationaryProfile& prof, const Grid& g) {
            return relative_entropy(to_vector(p), prof, g);
        },
        py::arg("p"), py::arg("stationary"), py::arg("grid"));
    m.def(
        "entropy_dissipation",
        [](const Array& p, const StationaryProfile& prof, double n_rate, const Grid& g, const ModelParams& params,
           double t) { return entropy_dissipation(to_vector(p), prof, n_rate, g, params, t); },
        py::arg("p"), py::arg("stationary"), py::arg("n_rate"), py::arg("grid"), py::arg("params"),
        py::arg("t") = 0.0);

    m.def("refractory_update", &refractory_update, py::arg("r"), py::arg("n_rate"), py::arg("gamma"),
          py::arg("tau"));

    m.def(
        "gaussian_ic",
        [](double v0, double sigma0, const Grid& g, double mass) { return to_array(gaussian_ic(v0, sigma0, g, mass)); },
        py::arg("v0"), py::arg("sigma0"), py::arg("grid"), py::arg("mass") = 1.0);
    m.def(
        "stationary_ic",
        [](double n_inf, const Grid& g, const ModelParams& params) {
            return to_array(stationary_ic(n_inf, g, params));
        },
        py::arg("n_inf"), py::arg("grid"), py::arg("params"));

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def_readwrite("params", &ScenarioConfig::params)
        .def_readwrite("v_min", &ScenarioConfig::v_min)
        .def_readwrite("v_reset", &ScenarioConfig::v_reset)
        .def_readwrite("v_fire", &ScenarioConfig::v_fire)
        .def_readwrite("n", &ScenarioConfig::n)
        .def_readwrite("tau", &ScenarioConfig::tau)
        .def_readwrite("t_end", &ScenarioConfig::t_end)
        .def_readwrite("scheme", &ScenarioConfig::scheme)
        .def_readwrite("negative_density", &ScenarioConfig::negative_density)
        .def_readwrite("blowup_threshold", &ScenarioConfig::blowup_threshold)
        .def("grid", &ScenarioConfig::grid)
        .def("validate", &ScenarioConfig::validate);

    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def(
        "run_scenario",
        [](const ScenarioConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_scenario(cfg);
            }
            return run_to_dict(r);
        },
        py::arg("config"));

    m.def(
        "convergence_order",
        [](const ScenarioConfig& cfg, const std::string& axis, int levels) {
            if (axis != "space" && axis != "time") throw InvalidArgument("axis must be 'space' or 'time'");
            const auto rows =
                convergence_order(cfg, axis == "space" ? RefinementAxis::space : RefinementAxis::time, levels);
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["level"] = r.level;
                d["step"] = r.step;
                d["err_l1"] = r.err_l1 ? py::cast(*r.err_l1) : py::none();
                d["order_l1"] = r.order_l1 ? py::cast(*r.order_l1) : py::none();
                d["err_linf"] = r.err_linf ? py::cast(*r.err_linf) : py::none();
                d["order_linf"] = r.order_linf ? py::cast(*r.order_linf) : py::none();
                out.append(d);
            }
            return out;
        },
        py::arg("config"), py::arg("axis"), py::arg("levels"));

    m.def(
        "oscillation_report",
        [](const Array& t, const Array& n) {
            const auto tv = to_vector(t), nv = to_vector(n);
            if (tv.size() != nv.size()) throw InvalidArgument("t and n must have the same length");
            std::vector<RatePoint> series;
            for (std::size_t k = 0; k < tv.size(); ++k) series.push_back({tv[k], nv[k]});
            const auto rep = oscillation_report(series);
            py::dict d;
            d["sustained"] = rep.sustained;
            d["peak_times"] = to_array(rep.peak_times);
            d["peak_heights"] = to_array(rep.peak_heights);
            d["period"] = rep.period;
            d["spacing_spread"] = rep.spacing_spread;
            d["amplitude_slope"] = rep.amplitude_slope;
            d["summary"] = rep.summary;
            return d;
        },
        py::arg("t"), py::arg("n"));
}
