#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "qsb/correlations.hpp"
#include "qsb/errors.hpp"
#include "qsb/scaling.hpp"
#include "qsb/simulator.hpp"
#include "qsb/thresholds.hpp"
#include "qsb/version.hpp"

namespace py = pybind11;

namespace {

qsb::CovarianceClass parse_covariance(const std::string& name) {
    if (name == "universal") return qsb::CovarianceClass::Universal;
    if (name == "phase") return qsb::CovarianceClass::Phase;
    throw qsb::domain_error("covariance must be 'universal' or 'phase'");
}

qsb::ThresholdMode parse_mode(const std::string& name) {
    if (name == "n+1") return qsb::ThresholdMode::NPlusOne;
    if (name == "mstar") return qsb::ThresholdMode::MStar;
    throw qsb::domain_error("mode must be 'n+1' or 'mstar'");
}

py::object big_to_int(const qsb::BigInt& value) {
    return py::module_::import("builtins").attr("int")(value.str());
}

}  // namespace

PYBIND11_MODULE(_qsb, m) {
    m.doc() = "Optimal N->M qubit superbroadcasting: scaling factors, thresholds, "
              "density-matrix simulation, and output correlations";
    m.attr("__version__") = qsb::kVersion;

    py::register_exception<qsb::domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<qsb::capacity_error>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<qsb::contract_error>(m, "ContractError", PyExc_RuntimeError);

    m.def(
        "multiplicity",
        [](int num_qubits, int twice_j) {
            return big_to_int(
                qsb::multiplicity(num_qubits, qsb::HalfInteger::from_twice(twice_j)));
        },
        py::arg("num_qubits"), py::arg("twice_j"),
        "Exact multiplicity d_j of the spin j = twice_j / 2 irrep in num_qubits "
        "qubits.");

    m.def(
        "admissible_twice_spins",
        [](int num_qubits) {
            std::vector<int> out;
            for (qsb::HalfInteger j : qsb::admissible_spins(num_qubits))
                out.push_back(j.twice());
            return out;
        },
        py::arg("num_qubits"));

    m.def("scaling_universal", &qsb::scaling_universal, py::arg("n_in"),
          py::arg("m_out"), py::arg("r"),
          "Optimal universal-covariant scaling factor p = r'/r.");
    m.def("scaling_phase", &qsb::scaling_phase, py::arg("n_in"), py::arg("m_out"),
          py::arg("r"), "Optimal phase-covariant scaling factor p = r'/r.");
    m.def(
        "scaling",
        [](int n, int m_out, double r, const std::string& cov) {
            return qsb::scaling(n, m_out, r, parse_covariance(cov));
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("r"),
        py::arg("covariance") = "universal");
    m.def(
        "scaling_limit",
        [](int n, double r, const std::string& cov) {
            return qsb::scaling_limit(n, r, parse_covariance(cov));
        },
        py::arg("n_in"), py::arg("r"), py::arg("covariance") = "universal",
        "M -> infinity limit of the scaling formulas.");

    m.def(
        "critical_purity",
        [](int n, int m_out, const std::string& cov) {
            return qsb::critical_purity(n, m_out, parse_covariance(cov));
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("covariance") = "universal",
        "Largest r with p(r) = 1, or None when superbroadcasting is impossible.");

    m.def(
        "max_output_copies",
        [](int n, const std::string& cov, int cap) -> py::object {
            const qsb::MaxCopies mc =
                qsb::max_output_copies(n, parse_covariance(cov), cap);
            switch (mc.kind) {
                case qsb::MaxCopies::Kind::Finite: return py::int_(mc.value);
                case qsb::MaxCopies::Kind::Infinite:
                    return py::float_(std::numeric_limits<double>::infinity());
                default: return py::none();
            }
        },
        py::arg("n_in"), py::arg("covariance") = "universal",
        py::arg("search_cap") = 2000,
        "M*(N): an int, math.inf, or None when no M superbroadcasts.");

    m.def(
        "asymptotic_fit",
        [](const std::string& cov, const std::string& mode, int n_min, int n_max) {
            const qsb::PowerFit fit = qsb::asymptotic_fit(
                parse_covariance(cov), parse_mode(mode), n_min, n_max);
            return py::make_tuple(fit.coefficient, fit.exponent);
        },
        py::arg("covariance"), py::arg("mode"), py::arg("n_min"), py::arg("n_max"),
        "(c, a) from the least-squares fit 1 - r* = c N^a.");

    m.def(
        "simulated_scaling",
        [](int n, int m_out, double r) {
            const qsb::BlockDiagonalState out =
                qsb::superbroadcast_universal(n, m_out, r);
            const double p_sim =
                qsb::single_site_bloch(out, qsb::BlochAxis::Z) / r;
            return py::make_tuple(qsb::scaling_universal(n, m_out, r), p_sim);
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("r"),
        "(closed-form p, simulated p) from the density-matrix realization.");

    m.def(
        "superbroadcast_dense",
        [](int n, int m_out, double r) {
            return qsb::block_to_dense(qsb::superbroadcast_universal(n, m_out, r));
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("r"),
        "Dense 2^M x 2^M broadcast output state.");

    m.def(
        "broadcast_pair_state",
        [](int n, int m_out, double r) {
            return qsb::reduce_to_two_sites(qsb::superbroadcast_universal(n, m_out, r))
                .entries;
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("r"),
        "Two-site marginal of the broadcast output (4x4).");

    m.def(
        "extract_alpha_beta",
        [](const Eigen::MatrixXcd& rho) {
            const qsb::SymmetricPairState s =
                qsb::extract_alpha_beta(qsb::DensityMatrix{2, rho});
            return py::make_tuple(s.beta, s.alpha);
        },
        py::arg("rho2"), "(beta, alpha) coordinates of a triplet-sector state.");

    m.def(
        "concurrence",
        [](const Eigen::MatrixXcd& rho) {
            return qsb::concurrence(qsb::DensityMatrix{2, rho});
        },
        py::arg("rho2"), "Wootters concurrence of a two-qubit density matrix.");

    m.def(
        "family_concurrence",
        [](double alpha, double beta) {
            return qsb::family_concurrence({alpha, beta});
        },
        py::arg("alpha"), py::arg("beta"));

    m.def(
        "is_entangled_family",
        [](double alpha, double beta) {
            return qsb::is_entangled_family({alpha, beta});
        },
        py::arg("alpha"), py::arg("beta"));

    m.def(
        "concurrence_curve",
        [](int n, int m_out, const std::vector<double>& grid) {
            std::vector<std::tuple<double, double, double, double>> rows;
            for (const qsb::ConcurrencePoint& pt :
                 qsb::concurrence_curve(n, m_out, grid))
                rows.emplace_back(pt.r, pt.beta, pt.alpha, pt.concurrence);
            return rows;
        },
        py::arg("n_in"), py::arg("m_out"), py::arg("r_grid"),
        "Rows of (r, beta, alpha, C) for the universal broadcast output.");
}
