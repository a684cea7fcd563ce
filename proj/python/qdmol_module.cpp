#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdmol/analysis.hpp"
#include "qdmol/basis.hpp"
#include "qdmol/integrals.hpp"
#include "qdmol/mo_solver.hpp"
#include "qdmol/model.hpp"
#include "qdmol/pipeline.hpp"
#include "qdmol/uhf.hpp"
#include "qdmol/variational.hpp"

namespace py = pybind11;
using namespace qdmol;

namespace {

BasisLevel level_from(const std::string& s) {
    if (s == "hl") return BasisLevel::hl;
    if (s == "hm") return BasisLevel::hm;
    if (s == "sp") return BasisLevel::sp;
    throw py::value_error("basis level must be 'hl', 'hm' or 'sp'");
}

py::dict result_dict(const MoResult& mo) {
    py::dict d;
    std::vector<double> es(mo.singlet.energies.data(),
                           mo.singlet.energies.data() + mo.singlet.energies.size());
    std::vector<double> et(mo.triplet.energies.data(),
                           mo.triplet.energies.data() + mo.triplet.energies.size());
    d["singlet_energies"] = es;
    d["triplet_energies"] = et;
    d["J"] = mo.J;
    d["P_double"] = mo.P_double;
    d["P_double_both"] = mo.P_double_both;
    return d;
}

} // namespace

PYBIND11_MODULE(_qdmol, m) {
    m.doc() = "two-electron double quantum dot simulator";

    py::class_<MaterialParams>(m, "MaterialParams")
        .def(py::init<>())
        .def_readwrite("effective_mass_ratio", &MaterialParams::effective_mass_ratio)
        .def_readwrite("dielectric_const", &MaterialParams::dielectric_const)
        .def_readwrite("g_factor", &MaterialParams::g_factor)
        .def_readwrite("interband_coupling_Ep", &MaterialParams::interband_coupling_Ep)
        .def_readwrite("band_gap_Eg", &MaterialParams::band_gap_Eg)
        .def_readwrite("so_splitting_Delta", &MaterialParams::so_splitting_Delta)
        .def_static("gaas", &MaterialParams::gaas);

    py::class_<ConfinementPotential>(m, "ConfinementPotential")
        .def(py::init<>())
        .def_readwrite("V0", &ConfinementPotential::V0)
        .def_readwrite("a", &ConfinementPotential::a)
        .def_readwrite("Vb", &ConfinementPotential::Vb)
        .def_readwrite("lx", &ConfinementPotential::lx)
        .def_readwrite("ly", &ConfinementPotential::ly)
        .def_readwrite("lbx", &ConfinementPotential::lbx)
        .def_readwrite("lby", &ConfinementPotential::lby);

    py::class_<FieldConfig>(m, "FieldConfig")
        .def(py::init<>())
        .def_readwrite("B", &FieldConfig::B)
        .def_readwrite("include_zeeman", &FieldConfig::include_zeeman)
        .def_readwrite("gauge_center_x", &FieldConfig::gauge_center_x)
        .def_readwrite("gauge_center_y", &FieldConfig::gauge_center_y);

    py::class_<VariationalFit>(m, "VariationalFit")
        .def_readonly("delta_parabolicity", &VariationalFit::delta_parabolicity)
        .def_readonly("delta_location", &VariationalFit::delta_location)
        .def_readonly("ground_energy", &VariationalFit::ground_energy)
        .def_readonly("n_evals", &VariationalFit::n_evals)
        .def_readonly("base_parabolicity", &VariationalFit::base_parabolicity)
        .def_readonly("base_location", &VariationalFit::base_location)
        .def_property_readonly("parabolicity", &VariationalFit::parabolicity)
        .def_property_readonly("location", &VariationalFit::location);

    m.def("evaluate_potential", &evaluate_potential, py::arg("pot"),
          py::arg("x"), py::arg("y"));
    m.def("effective_barrier", &effective_barrier, py::arg("pot"));
    m.def("calibrate_v0", &calibrate_v0, py::arg("shape"), py::arg("Vb"),
          py::arg("target_barrier_meV"), py::arg("tol_meV") = 1e-8);
    m.def(
        "fit_parabola_at_minima",
        [](const ConfinementPotential& pot, const MaterialParams& mat) {
            const ParabolaFit f = fit_parabola_at_minima(pot, mat);
            return py::make_tuple(f.hbar_omega0, f.x_min);
        },
        py::arg("pot"), py::arg("mat"));
    m.def(
        "envelope_validity",
        [](const MaterialParams& mat, double e, double v) {
            const auto r = envelope_validity(mat, e, v);
            return py::make_tuple(r.p, r.p_prime);
        },
        py::arg("mat"), py::arg("E_bar_meV"), py::arg("V_bar_meV"));
    m.def("zeeman_splitting", &zeeman_splitting, py::arg("mat"), py::arg("B"));

    m.def(
        "optimize_fitting_wells",
        [](const ConfinementPotential& pot, const MaterialParams& mat,
           int n_threads) {
            VariationalOptions opts;
            opts.n_threads = n_threads;
            return optimize_fitting_wells(pot, mat, opts);
        },
        py::arg("pot"), py::arg("mat"), py::arg("n_threads") = 1);

    m.def(
        "solve_two_electron",
        [](const ConfinementPotential& pot, const MaterialParams& mat,
           double B, const std::string& level, double hbar_omega0,
           double half_sep, bool use_parity, int n_threads) {
            MoInput in;
            in.mat = mat;
            in.pot = pot;
            in.field.B = B;
            in.level = level_from(level);
            in.use_parity = use_parity && in.level != BasisLevel::hl;
            in.hbar_omega0 = hbar_omega0;
            in.half_sep = half_sep;
            in.n_threads = n_threads;
            return result_dict(mo_solve(in));
        },
        py::arg("pot"), py::arg("mat"), py::arg("B"), py::arg("level"),
        py::arg("hbar_omega0"), py::arg("half_sep"),
        py::arg("use_parity") = true, py::arg("n_threads") = 1);

    m.def(
        "exchange_coupling",
        [](const ConfinementPotential& pot, const MaterialParams& mat,
           double B, const std::string& level, int n_threads) {
            SolveSpec spec;
            spec.mat = mat;
            spec.pot = pot;
            spec.field.B = B;
            spec.level = level_from(level);
            spec.use_parity = spec.level == BasisLevel::sp;
            spec.n_threads = n_threads;
            return exchange_coupling(spec);
        },
        py::arg("pot"), py::arg("mat"), py::arg("B") = 0.0,
        py::arg("level") = "sp", py::arg("n_threads") = 1);

    m.def(
        "heitler_london",
        [](const ConfinementPotential& pot, const MaterialParams& mat,
           double B, double hbar_omega0, double half_sep) {
            FieldConfig field;
            field.B = B;
            const HLDecomposition hl =
                heitler_london_J(pot, field, mat, hbar_omega0, half_sep);
            py::dict d;
            d["J_total"] = hl.J_total;
            d["J_r"] = hl.J_r;
            d["J_c"] = hl.J_c;
            d["S_LR"] = hl.S_LR;
            return d;
        },
        py::arg("pot"), py::arg("mat"), py::arg("B"), py::arg("hbar_omega0"),
        py::arg("half_sep"));

    m.def("adiabatic_lower_bound", &adiabatic_lower_bound, py::arg("gap_meV"));
    m.def(
        "swap_time",
        [](double J) {
            const SwapTime t = swap_time(J);
            return py::make_tuple(t.raw_ps, t.padded_ps);
        },
        py::arg("J_meV"));
    m.def("zeeman_phase_mismatch", &zeeman_phase_mismatch, py::arg("J_meV"),
          py::arg("delta_B_T"), py::arg("mat"));
    m.def(
        "phase_noise",
        [](double R, double T, double alpha, double t) {
            const NoiseEstimate n = phase_noise(R, T, alpha, t);
            return py::make_tuple(n.phase_var_rate, n.phase_var);
        },
        py::arg("R_ohm"), py::arg("T_K"), py::arg("alpha_eV_per_V"),
        py::arg("t_s"));
    m.def("alpha_from_sweep", &alpha_from_sweep, py::arg("J_vs_Vb"));

    m.def(
        "uhf_splitting",
        [](const ConfinementPotential& pot, const MaterialParams& mat,
           double B, int nx, int ny) {
            FieldConfig field;
            field.B = B;
            const Mesh mesh = default_mesh(pot, mat, nx, ny);
            const UhfSplit split = uhf_splitting(pot, field, mat, mesh);
            py::dict d;
            d["J"] = split.J;
            d["E_opposite"] = split.opposite.total_energy;
            d["E_parallel"] = split.parallel.total_energy;
            d["iters_opposite"] = split.opposite.iterations;
            d["iters_parallel"] = split.parallel.iterations;
            return d;
        },
        py::arg("pot"), py::arg("mat"), py::arg("B") = 0.0,
        py::arg("nx") = 40, py::arg("ny") = 20);

    m.def("unique_coulomb_count",
          [](int n_states, bool use_parity, const std::string& sector) {
              const Sector s = sector == "singlet" ? Sector::singlet
                                                   : Sector::triplet;
              return enumerate_unique_elements(n_states, use_parity, s).size();
          },
          py::arg("n_states"), py::arg("use_parity"), py::arg("sector"));
}
