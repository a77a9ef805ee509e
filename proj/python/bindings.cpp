#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qg/checkpoint.hpp"
#include "qg/diagnostics.hpp"
#include "qg/dynamics.hpp"
#include "qg/initdata.hpp"
#include "qg/operators.hpp"
#include "qg/transform.hpp"

namespace py = pybind11;
using namespace qg;

namespace {

py::array_t<cplx> coeffs_array(const SpectralField& f) {
    const int n = f.n();
    py::array_t<cplx> a({n, n});
    auto w = a.mutable_unchecked<2>();
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) w(j1, j2) = f.at(j1, j2);
    return a;
}

SpectralField field_from_coeffs(const Grid& grid, py::array_t<cplx, py::array::c_style | py::array::forcecast> coeffs) {
    if (coeffs.ndim() != 2 || coeffs.shape(0) != grid.n() || coeffs.shape(1) != grid.n())
        throw std::invalid_argument("coefficient array must be n x n for the grid");
    SpectralField f(grid);
    auto r = coeffs.unchecked<2>();
    for (int j1 = 0; j1 < grid.n(); ++j1)
        for (int j2 = 0; j2 < grid.n(); ++j2) f.at(j1, j2) = r(j1, j2);
    return f;
}

py::array_t<double> samples_array(const std::vector<double>& v, int n) {
    py::array_t<double> a({n, n});
    auto w = a.mutable_unchecked<2>();
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = 0; j2 < n; ++j2) w(j1, j2) = v[static_cast<size_t>(j1) * n + j2];
    return a;
}

std::vector<double> samples_vector(py::array_t<double, py::array::c_style | py::array::forcecast> samples, const Grid& grid) {
    if (samples.ndim() != 2 || samples.shape(0) != grid.n() || samples.shape(1) != grid.n())
        throw std::invalid_argument("sample array must be n x n for the grid");
    auto r = samples.unchecked<2>();
    std::vector<double> v(static_cast<size_t>(grid.size()));
    for (int j1 = 0; j1 < grid.n(); ++j1)
        for (int j2 = 0; j2 < grid.n(); ++j2) v[static_cast<size_t>(j1) * grid.n() + j2] = r(j1, j2);
    return v;
}

py::array_t<double> series_column(const NormSeries& s, double NormRecord::*field) {
    const std::vector<NormRecord>& rec = s.records();
    std::vector<double> col(rec.size());
    for (size_t i = 0; i < rec.size(); ++i) col[i] = rec[i].*field;
    return py::array_t<double>(static_cast<py::ssize_t>(col.size()), col.data());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudospectral solver for the 2D dissipative quasi-geostrophic equation "
              "with Fourier-weighted norm diagnostics";

    py::register_exception<BlowupError>(m, "BlowupError", PyExc_RuntimeError);

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, double>(), py::arg("n"), py::arg("l") = two_pi)
        .def_property_readonly("n", &Grid::n)
        .def_property_readonly("l", &Grid::l)
        .def_property_readonly("dx", &Grid::dx)
        .def("mode", &Grid::mode, py::arg("j"))
        .def("kappa", &Grid::kappa, py::arg("j"))
        .def("kappa_mag", &Grid::kappa_mag, py::arg("j1"), py::arg("j2"))
        .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; })
        .def("__repr__", [](const Grid& g) {
            return "Grid(n=" + std::to_string(g.n()) + ", l=" + std::to_string(g.l()) + ")";
        });

    py::class_<SpectralField>(m, "SpectralField")
        .def(py::init<const Grid&>(), py::arg("grid"))
        .def_static("from_coeffs", &field_from_coeffs, py::arg("grid"), py::arg("coeffs"))
        .def_property_readonly("grid", &SpectralField::grid)
        .def_property_readonly("coeffs", &coeffs_array)
        .def("max_abs", &SpectralField::max_abs)
        .def("hermitian_defect", &SpectralField::hermitian_defect)
        .def("mean_coeff", &SpectralField::mean_coeff);

    py::class_<VelocityField>(m, "VelocityField")
        .def_property_readonly("u1", [](const VelocityField& v) { return v.u1; })
        .def_property_readonly("u2", [](const VelocityField& v) { return v.u2; });

    m.def("forward_transform",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> samples,
             const Grid& grid) { return forward_transform(samples_vector(samples, grid), grid); },
          py::arg("samples"), py::arg("grid"));
    m.def("inverse_transform",
          [](const SpectralField& f) { return samples_array(inverse_transform(f), f.n()); },
          py::arg("field"));

    m.def("apply_fractional_power", &apply_fractional_power, py::arg("field"), py::arg("s"));
    m.def("velocity_from_theta", &velocity_from_theta, py::arg("theta"));
    m.def("gradient", &gradient, py::arg("field"));
    m.def("dealias", &dealias, py::arg("field"));
    m.def("nonlinear_term", py::overload_cast<const SpectralField&, bool>(&nonlinear_term),
          py::arg("theta"), py::arg("dealias_on") = true);
    m.def("cfl_dt", py::overload_cast<const VelocityField&, const Grid&, double>(&cfl_dt),
          py::arg("u"), py::arg("grid"), py::arg("cfl_coeff"));

    m.def("chi_norm", &chi_norm, py::arg("field"), py::arg("sigma"));
    m.def("l2_norm", &l2_norm, py::arg("field"));
    m.def("scaling_invariance_check", &scaling_invariance_check, py::arg("field"),
          py::arg("lambda_"), py::arg("alpha"));
    m.def("exact_decay_reference", &exact_decay_reference, py::arg("a"), py::arg("m"),
          py::arg("alpha"), py::arg("k"), py::arg("t"), py::arg("l") = two_pi);

    py::enum_<InitKind>(m, "InitKind")
        .value("single_mode", InitKind::single_mode)
        .value("two_mode", InitKind::two_mode)
        .value("gaussian_spectrum", InitKind::gaussian_spectrum)
        .value("random_phase", InitKind::random_phase);

    py::class_<InitSpec>(m, "InitSpec")
        .def(py::init<>())
        .def_readwrite("kind", &InitSpec::kind)
        .def_readwrite("amplitude", &InitSpec::amplitude)
        .def_readwrite("mode", &InitSpec::mode)
        .def_readwrite("mode2", &InitSpec::mode2)
        .def_readwrite("kappa0", &InitSpec::kappa0)
        .def_readwrite("width", &InitSpec::width)
        .def_readwrite("slope", &InitSpec::slope)
        .def_readwrite("cutoff", &InitSpec::cutoff)
        .def_readwrite("seed", &InitSpec::seed)
        .def_readwrite("target_norm", &InitSpec::target_norm)
        .def_readwrite("target_sigma", &InitSpec::target_sigma);

    m.def("build_initial", &build_initial, py::arg("spec"), py::arg("grid"));
    m.def("rescale_to_norm", &rescale_to_norm, py::arg("field"), py::arg("sigma"),
          py::arg("target"));
    m.def("make_initial", &make_initial, py::arg("spec"), py::arg("grid"),
          py::arg("default_sigma"));

    py::class_<SimParams>(m, "SimParams")
        .def(py::init<>())
        .def_readwrite("alpha", &SimParams::alpha)
        .def_readwrite("k", &SimParams::k)
        .def_readwrite("dt", &SimParams::dt)
        .def_readwrite("t_end", &SimParams::t_end)
        .def_readwrite("cfl_coeff", &SimParams::cfl_coeff)
        .def_readwrite("dealias_on", &SimParams::dealias_on)
        .def_readwrite("record_every", &SimParams::record_every)
        .def_property_readonly("sigma_low", &SimParams::sigma_low)
        .def("validate", &SimParams::validate);

    py::class_<NormRecord>(m, "NormRecord")
        .def_readonly("t", &NormRecord::t)
        .def_readonly("chi_low", &NormRecord::chi_low)
        .def_readonly("chi_one", &NormRecord::chi_one)
        .def_readonly("l2", &NormRecord::l2)
        .def_readonly("int_chi_one", &NormRecord::int_chi_one);

    py::class_<NormSeries>(m, "NormSeries")
        .def("__len__", &NormSeries::size)
        .def_property_readonly("records", &NormSeries::records)
        .def_property_readonly("t", [](const NormSeries& s) { return series_column(s, &NormRecord::t); })
        .def_property_readonly("chi_low",
                               [](const NormSeries& s) { return series_column(s, &NormRecord::chi_low); })
        .def_property_readonly("chi_one",
                               [](const NormSeries& s) { return series_column(s, &NormRecord::chi_one); })
        .def_property_readonly("l2", [](const NormSeries& s) { return series_column(s, &NormRecord::l2); })
        .def_property_readonly("int_chi_one", [](const NormSeries& s) {
            return series_column(s, &NormRecord::int_chi_one);
        });

    m.def("simulate",
          [](const SpectralField& theta0, const SimParams& params) {
              py::gil_scoped_release release;
              return simulate(theta0, params);
          },
          py::arg("theta0"), py::arg("params"));

    py::class_<InequalityRow>(m, "InequalityRow")
        .def_readonly("t", &InequalityRow::t)
        .def_readonly("lhs", &InequalityRow::lhs)
        .def_readonly("rhs", &InequalityRow::rhs)
        .def_readonly("margin", &InequalityRow::margin);

    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("theta0_norm", &InequalityReport::theta0_norm)
        .def_readonly("smallness_ok", &InequalityReport::smallness_ok)
        .def_readonly("worst_margin", &InequalityReport::worst_margin)
        .def_readonly("satisfied", &InequalityReport::satisfied)
        .def_readonly("rows", &InequalityReport::rows);

    m.def("theorem1_functional", &theorem1_functional, py::arg("series"),
          py::arg("theta0_norm"), py::arg("tolerance") = 1e-6);

    py::class_<DecayVerdict>(m, "DecayVerdict")
        .def_readonly("ratio_final", &DecayVerdict::ratio_final)
        .def_readonly("t_half", &DecayVerdict::t_half)
        .def_readonly("tail_monotone", &DecayVerdict::tail_monotone)
        .def_readonly("applicable", &DecayVerdict::applicable);

    m.def("decay_summary", &decay_summary, py::arg("series"), py::arg("alpha"));
}
