#include "fracnet/advection.hpp"
#include "fracnet/config.hpp"
#include "fracnet/error.hpp"
#include "fracnet/harness.hpp"
#include "fracnet/io.hpp"
#include "fracnet/lbm.hpp"
#include "fracnet/metrics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fracnet;

namespace {

py::dict permeability_dict(const lbm::PermeabilityResult& p, const lbm::FlowField& flow) {
    py::dict d;
    d["K"] = p.K;
    d["v_avg"] = p.v_avg;
    d["grad_p"] = p.grad_p;
    d["mu"] = p.mu;
    d["tau"] = p.tau;
    d["nu"] = p.nu;
    d["rho_mean"] = p.rho_mean;
    d["iterations"] = flow.iterations;
    d["converged"] = flow.converged;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fracture network generation, graph metrics, advection and lattice-Boltzmann permeability";
    m.attr("__version__") = FRACNET_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<GenerationFailed>(m, "GenerationFailed", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
    py::register_exception<InstabilityError>(m, "InstabilityError", base.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
    (void)validation;

    py::class_<JointSet>(m, "JointSet")
        .def(py::init<double, double>(), py::arg("mean_deg"), py::arg("spread_deg") = 5.0)
        .def_readwrite("mean_deg", &JointSet::mean_deg)
        .def_readwrite("spread_deg", &JointSet::spread_deg);

    py::class_<GeneratorConfig>(m, "GeneratorConfig")
        .def(py::init<>())
        .def_readwrite("n_g", &GeneratorConfig::n_g)
        .def_readwrite("n", &GeneratorConfig::n)
        .def_readwrite("njs", &GeneratorConfig::njs)
        .def_readwrite("gamma", &GeneratorConfig::gamma)
        .def_readwrite("alpha", &GeneratorConfig::alpha)
        .def_readwrite("hub_growth", &GeneratorConfig::hub_growth)
        .def_readwrite("back_growth", &GeneratorConfig::back_growth)
        .def_readwrite("n_fz", &GeneratorConfig::n_fz)
        .def_readwrite("joint_set_azimuths", &GeneratorConfig::joint_set_azimuths)
        .def_readwrite("aperture_mean", &GeneratorConfig::aperture_mean)
        .def_readwrite("seed", &GeneratorConfig::seed)
        .def_readwrite("l_min", &GeneratorConfig::l_min)
        .def_readwrite("require_spanning", &GeneratorConfig::require_spanning)
        .def_property(
            "fixed_count", [](const GeneratorConfig& c) { return c.mode == GenerationMode::FixedCount; },
            [](GeneratorConfig& c, bool v) { c.mode = v ? GenerationMode::FixedCount : GenerationMode::Threshold; })
        .def("validate", [](const GeneratorConfig& c) { validate(c); });

    py::class_<PipelineOptions>(m, "PipelineOptions")
        .def(py::init<>())
        .def_readwrite("grid_n", &PipelineOptions::grid_n)
        .def_readwrite("tau", &PipelineOptions::tau)
        .def_readwrite("rho_in", &PipelineOptions::rho_in)
        .def_readwrite("rho_out", &PipelineOptions::rho_out)
        .def_readwrite("tol", &PipelineOptions::tol)
        .def_readwrite("max_iters", &PipelineOptions::max_iters)
        .def_readwrite("workers", &PipelineOptions::workers)
        .def_readwrite("advect_tol", &PipelineOptions::advect_tol);

    py::class_<RunConfig>(m, "RunConfig")
        .def_readwrite("generator", &RunConfig::generator)
        .def_readwrite("run", &RunConfig::run)
        .def("format", [](const RunConfig& c) { return format_config(c); });
    m.def("parse_config_text", &parse_config_text, py::arg("text"));

    py::class_<Fracture>(m, "Fracture")
        .def_readonly("id", &Fracture::id)
        .def_readonly("length", &Fracture::length)
        .def_readonly("azimuth", &Fracture::azimuth)
        .def_readonly("aperture", &Fracture::aperture)
        .def_readonly("hub_id", &Fracture::hub_id)
        .def_property_readonly("is_hub", [](const Fracture& f) { return f.kind == FractureKind::Hub; })
        .def_property_readonly("endpoints", [](const Fracture& f) {
            return py::make_tuple(py::make_tuple(f.segment.a.x, f.segment.a.y),
                                  py::make_tuple(f.segment.b.x, f.segment.b.y));
        });

    py::class_<FractureNetwork>(m, "FractureNetwork")
        .def_readonly("fractures", &FractureNetwork::fractures)
        .def_readonly("domain", &FractureNetwork::domain)
        .def("__len__", &FractureNetwork::size)
        .def("percolates", [](const FractureNetwork& n) { return percolates(n); })
        .def("to_csv", [](const FractureNetwork& n) { return io::network_csv(n); });

    m.def("generate_network", &generate_network, py::arg("config"));
    m.def("sample_fracture_length", &sample_fracture_length, py::arg("gamma"), py::arg("l_min"), py::arg("l_max"),
          py::arg("u"));

    py::class_<FractureGraph>(m, "FractureGraph")
        .def_static("from_edges", &FractureGraph::from_edges, py::arg("n_nodes"), py::arg("edges"))
        .def_property_readonly("n_nodes", &FractureGraph::n_nodes)
        .def("edge_count", &FractureGraph::edge_count)
        .def("edges", &FractureGraph::edges)
        .def("degrees", &FractureGraph::degrees)
        .def("neighbors", &FractureGraph::neighbors);
    m.def("build_graph", &build_graph, py::arg("network"));

    m.def("clustering_coefficient", &clustering_coefficient, py::arg("graph"));
    m.def("mean_path_length", [](const FractureGraph& g) { return mean_path_length(g).mean_length; }, py::arg("graph"));
    m.def(
        "subgraph_census4",
        [](const FractureGraph& g) {
            py::dict d;
            const auto c = subgraph_census4(g);
            for (std::size_t i = 0; i < c.size(); ++i) d[py::str(std::string(kMotif4Names[i]))] = c[i];
            return d;
        },
        py::arg("graph"));
    m.def(
        "degree_slope",
        [](const FractureGraph& g) -> std::optional<double> {
            const auto d = degree_distribution(g);
            return d.fit ? std::optional(d.fit->slope) : std::nullopt;
        },
        py::arg("graph"));

    m.def(
        "solve_steady",
        [](const FractureGraph& g, std::vector<int> sources, std::vector<int> sinks, double tol) {
            SteadyOptions so;
            so.tol = tol;
            const auto r = solve_steady(g, sources, sinks, so);
            py::dict d;
            d["u"] = r.u;
            d["unreached"] = r.unreached;
            d["steps"] = r.steps;
            d["dt"] = r.dt;
            return d;
        },
        py::arg("graph"), py::arg("sources"), py::arg("sinks"), py::arg("tol") = 1e-10);

    py::class_<lbm::Mask>(m, "Mask")
        .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
        .def_readonly("width", &lbm::Mask::width)
        .def_readonly("height", &lbm::Mask::height)
        .def("is_fluid", &lbm::Mask::is_fluid)
        .def("set", &lbm::Mask::set)
        .def("fluid_count", &lbm::Mask::fluid_count)
        .def("percolates", [](const lbm::Mask& mk) { return lbm::mask_percolates(mk); });
    m.def("rasterize", &lbm::rasterize, py::arg("network"), py::arg("grid_n"));
    m.def(
        "permeability",
        [](const lbm::Mask& mask, const PipelineOptions& opt) {
            const lbm::BoundaryConfig bc{lbm::BoundaryKind::PressureX, opt.rho_in, opt.rho_out};
            lbm::Lattice lattice(mask, bc, opt.workers);
            lattice.init_rest();
            lbm::RunOptions ro;
            ro.tau = opt.tau;
            ro.tol = opt.tol;
            ro.max_iters = opt.max_iters;
            py::gil_scoped_release release;
            const auto flow = lbm::run_to_steady(lattice, ro);
            const auto p = lbm::permeability(flow, bc, opt.tau);
            py::gil_scoped_acquire acquire;
            return permeability_dict(p, flow);
        },
        py::arg("mask"), py::arg("options") = PipelineOptions{});

    m.def(
        "sweep_gamma",
        [](const GeneratorConfig& base, std::vector<double> gammas, int realizations, const PipelineOptions& opt,
           std::uint64_t master_seed) {
            SweepSpec spec;
            spec.base = base;
            spec.vary = {"gamma"};
            for (double g : gammas) spec.grid.push_back({g});
            spec.realizations = realizations;
            spec.options = opt;
            spec.master_seed = master_seed;
            const auto r = sweep_gamma(spec);
            py::list rows;
            for (const auto& row : r.rows) {
                py::dict d;
                d["gamma"] = row.point.front();
                d["mean_K"] = row.mean_K;
                d["sd_K"] = row.sd_K;
                d["mean_L"] = row.mean_L;
                d["failed"] = row.failed;
                rows.append(d);
            }
            return py::make_tuple(rows, r.verdicts);
        },
        py::arg("base"), py::arg("gammas"), py::arg("realizations") = 5, py::arg("options") = PipelineOptions{},
        py::arg("master_seed") = 1);
}
