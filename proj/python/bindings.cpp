#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluxjac/cli/commands.hpp"
#include "fluxjac/fluxes/change_of_vars.hpp"
#include "fluxjac/operators/quadrature.hpp"
#include "fluxjac/oracles/oracles.hpp"
#include "fluxjac/timestepping/integrators.hpp"

namespace py = pybind11;
using namespace fluxjac;

namespace {

std::vector<double> from_array(const py::array_t<double>& a) {
    auto buf = a.request();
    const double* p = static_cast<const double*>(buf.ptr);
    return std::vector<double>(p, p + buf.size);
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), static_cast<double*>(out.request().ptr));
    return out;
}

py::array_t<double> to_array2d(const DenseMatrix& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.rows()),
                             static_cast<py::ssize_t>(m.cols())});
    auto r = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < m.rows(); ++i)
        for (py::ssize_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return out;
}

py::dict sparse_to_coo(const SparseOperator& a) {
    const auto& rp = a.row_ptr();
    const auto& ci = a.col_idx();
    const auto& v = a.values();
    std::vector<double> rows, cols, vals;
    for (int r = 0; r < a.rows(); ++r)
        for (int k = rp[r]; k < rp[r + 1]; ++k) {
            rows.push_back(r);
            cols.push_back(ci[k]);
            vals.push_back(v[k]);
        }
    py::dict d;
    d["shape"] = py::make_tuple(a.rows(), a.cols());
    d["row"] = to_array(rows);
    d["col"] = to_array(cols);
    d["data"] = to_array(vals);
    return d;
}

}  // namespace

PYBIND11_MODULE(_fluxjac, m) {
    m.doc() = "entropy stable flux differencing: residuals, Jacobians, oracles";

    py::register_exception<Error>(m, "FluxjacError");

    m.def("logmean", [](double a, double b) { return logmean_checked(a, b); });

    m.def("lobatto_nodes", [](int degree) {
        auto [x, w] = lobatto_nodes(degree);
        return py::make_tuple(to_array(to_std(x)), to_array(to_std(w)));
    });
    m.def("gauss_nodes", [](int n) {
        auto [x, w] = gauss_nodes(n);
        return py::make_tuple(to_array(to_std(x)), to_array(to_std(w)));
    });

    m.def("flux_ec", [](const std::string& law_name, int dir,
                        const py::array_t<double>& ul, const py::array_t<double>& ur) {
        auto law = ConservationLaw::from_name(law_name);
        auto l = from_array(ul), r = from_array(ur);
        std::vector<double> out(law.n_fields);
        flux_ec<double>(law, dir, l, r, out);
        return to_array(out);
    });
    m.def("entropy_vars", [](const std::string& law_name, const py::array_t<double>& u) {
        auto law = ConservationLaw::from_name(law_name);
        auto uu = from_array(u);
        std::vector<double> v(law.n_fields);
        entropy_vars<double>(law, uu, v);
        return to_array(v);
    });
    m.def("cons_vars", [](const std::string& law_name, const py::array_t<double>& v) {
        auto law = ConservationLaw::from_name(law_name);
        auto vv = from_array(v);
        std::vector<double> u(law.n_fields);
        cons_vars<double>(law, vv, u);
        return to_array(u);
    });
    m.def("dudv", [](const std::string& law_name, const py::array_t<double>& u) {
        auto law = ConservationLaw::from_name(law_name);
        return to_array2d(dudv(law, from_array(u)));
    });

    py::class_<SemiDiscreteSystem>(m, "System")
        .def_property_readonly("n_dof", &SemiDiscreteSystem::n_dof)
        .def_property_readonly("n_fields",
                               [](const SemiDiscreteSystem& s) { return s.law().n_fields; })
        .def_property_readonly("nodes_x", [](const SemiDiscreteSystem& s) {
            return to_array(s.disc.is_modal() ? s.disc.xq : s.disc.x);
        })
        .def("residual",
             [](const SemiDiscreteSystem& sys, const py::array_t<double>& u, double t) {
                 return to_array(residual(sys, from_array(u), t));
             },
             py::arg("u"), py::arg("t") = 0.0)
        .def("jacobian",
             [](const SemiDiscreteSystem& sys, const py::array_t<double>& u) {
                 return sparse_to_coo(jacobian_flat(sys, from_array(u)));
             })
        .def("jacobian_vector_product",
             [](const SemiDiscreteSystem& sys, const py::array_t<double>& u,
                const py::array_t<double>& w) {
                 return to_array(jacobian_vector_product(sys, from_array(u), from_array(w)));
             })
        .def("mass", [](const SemiDiscreteSystem& sys) { return sparse_to_coo(mass_matrix(sys)); })
        .def("total_entropy",
             [](const SemiDiscreteSystem& sys, const py::array_t<double>& u) {
                 return total_entropy(sys, from_array(u));
             })
        .def("total_energy", [](const SemiDiscreteSystem& sys, const py::array_t<double>& u) {
            return total_energy(sys, from_array(u));
        });

    m.def("make_system", [](const std::string& config_text) {
        return build_system(ExperimentConfig::parse(config_text));
    });

    m.def("ad_jacobian", [](const SemiDiscreteSystem& sys, const py::array_t<double>& u,
                            double t) {
        auto oracle = make_residual_oracle(sys, t);
        return to_array2d(ad_jacobian(oracle, from_array(u)));
    }, py::arg("sys"), py::arg("u"), py::arg("t") = 0.0);

    m.def("verify_table1", [](unsigned long seed) {
        py::list out;
        for (const auto& r : verify_table1(seed)) {
            py::dict d;
            d["name"] = r.name;
            d["frobenius_abs"] = r.frobenius_abs;
            d["frobenius_rel"] = r.frobenius_rel;
            d["pass"] = r.pass;
            out.append(d);
        }
        return out;
    });

    m.def("step_implicit_midpoint",
          [](const SemiDiscreteSystem& sys, const py::array_t<double>& u, double t,
             double dt, double rtol, int max_iter) {
              auto res = step_implicit_midpoint(sys, from_array(u), t, dt, rtol, max_iter);
              py::dict rep;
              rep["newton_iters"] = res.report.newton_iters;
              rep["converged"] = res.report.converged;
              rep["entropy"] = res.report.entropy;
              rep["energy"] = res.report.energy;
              return py::make_tuple(to_array(res.u), rep);
          },
          py::arg("sys"), py::arg("u"), py::arg("t"), py::arg("dt"),
          py::arg("rtol") = 1e-11, py::arg("max_iter") = 25);

    m.def("step_rk45", [](const SemiDiscreteSystem& sys, const py::array_t<double>& u,
                          double t, double dt) {
        return to_array(step_rk45(sys, from_array(u), t, dt));
    });
    m.def("compute_dt", &compute_dt);
}
