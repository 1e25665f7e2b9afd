#include "qsb/scaling.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qsb/errors.hpp"

namespace qsb {

namespace {

// Per-N list of (2l, d_l) with the exact multiplicities already converted to
// double. d_l spans ~30 orders of magnitude by N = 100, hence the compensated
// descending-magnitude summation below.
struct SpinWeight {
    int twice_l;
    double d_l;
};

const std::vector<SpinWeight>& spin_weights(int n_in) {
    static std::mutex mu;
    static std::map<int, std::vector<SpinWeight>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n_in);
    if (it == cache.end()) {
        std::vector<SpinWeight> weights;
        for (HalfInteger l : admissible_spins(n_in))
            weights.push_back({l.twice(), multiplicity(n_in, l).convert_to<double>()});
        it = cache.emplace(n_in, std::move(weights)).first;
    }
    return it->second;
}

// Row-wise products D(i, k) D(i+1, k) of the pi/2 Wigner matrix, so the
// superdiagonal of exp(J_x t) = D exp(J_z t) D^T comes out of one
// matrix-vector product against the diagonal weights.
const Eigen::MatrixXd& superdiagonal_products(int twice_l) {
    static std::mutex mu;
    static std::map<int, Eigen::MatrixXd> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(twice_l);
    if (it == cache.end()) {
        const Eigen::MatrixXd d = wigner_d_half_pi(HalfInteger::from_twice(twice_l));
        Eigen::MatrixXd p(twice_l, twice_l + 1);
        for (int i = 0; i < twice_l; ++i)
            p.row(i) = d.row(i).cwiseProduct(d.row(i + 1));
        it = cache.emplace(twice_l, std::move(p)).first;
    }
    return it->second;
}

void check_scaling_domain(int n_in, std::optional<int> m_out, double r) {
    if (n_in < 1) throw domain_error("scaling: N must be positive");
    if (m_out && *m_out < n_in) throw domain_error("scaling: M must satisfy M >= N");
    if (r == 0.0) throw domain_error("scaling: r = 0 is outside the domain of p");
    if (!(r > 0.0 && r <= 1.0)) throw domain_error("scaling: r must lie in (0, 1]");
}

double universal_sum(int n_in, double r) {
    const PurityPowers pw(r, n_in);
    std::vector<double> terms;
    for (const auto& [twice_l, d_l] : spin_weights(n_in)) {
        if (twice_l == 0) continue;  // the n-sum vanishes
        const double coeff = d_l / (0.5 * twice_l + 1.0);
        for (int twice_n = -twice_l; twice_n <= twice_l; twice_n += 2) {
            if (twice_n == 0) continue;
            terms.push_back(coeff * (0.5 * twice_n) *
                            pw.paired((n_in - twice_n) / 2, (n_in + twice_n) / 2));
        }
    }
    return stable_sum(std::move(terms));
}

// Inner sum of the phase-covariant formula. With a finite M the superdiagonal
// element of J_x at spin M/2 enters at index n (even M - N) or n + 1/2 (odd);
// in the M -> infinity limit that factor, times 4/M, tends to 1.
double phase_sum(int n_in, std::optional<int> m_out, double r) {
    const bool odd = m_out.has_value() && (*m_out - n_in) % 2 != 0;
    std::vector<double> terms;
    for (const auto& t : detail::phase_terms(n_in, r)) {
        double factor = 1.0;
        if (m_out)
            factor = detail::phase_jx_factor(*m_out, odd ? t.twice_n + 1 : t.twice_n);
        terms.push_back(t.coeff * factor);
    }
    return stable_sum(std::move(terms));
}

}  // namespace

namespace detail {

std::vector<PhaseTerm> phase_terms(int n_in, double r) {
    const PurityPowers pw(r, n_in);
    std::vector<PhaseTerm> terms;
    Eigen::VectorXd diag;
    for (const auto& [twice_l, d_l] : spin_weights(n_in)) {
        if (twice_l == 0) continue;  // empty n-range
        const Eigen::MatrixXd& products = superdiagonal_products(twice_l);
        diag.resize(twice_l + 1);
        for (int k = 0; k <= twice_l; ++k) {
            const int twice_m = twice_l - 2 * k;
            diag(k) = pw.paired((n_in + twice_m) / 2, (n_in - twice_m) / 2);
        }
        const Eigen::VectorXd superdiag = products * diag;
        for (int row = 0; row < twice_l; ++row)
            terms.push_back({d_l * superdiag(row), twice_l - 2 * (row + 1)});
    }
    return terms;
}

double phase_jx_factor(int m_out, int twice_a) {
    const double radicand = static_cast<double>(m_out) * (m_out + 2) -
                            static_cast<double>(twice_a) * (twice_a + 2);
    if (radicand < 0.0)
        throw contract_error("scaling_phase: invalid J_x matrix index");
    return std::sqrt(radicand) / m_out;
}

}  // namespace detail

const char* to_string(CovarianceClass c) {
    return c == CovarianceClass::Universal ? "universal" : "phase";
}

double scaling_universal(int n_in, int m_out, double r) {
    check_scaling_domain(n_in, m_out, r);
    return -(m_out + 2.0) / (m_out * r) * universal_sum(n_in, r);
}

double scaling_universal_limit(int n_in, double r) {
    check_scaling_domain(n_in, std::nullopt, r);
    return -universal_sum(n_in, r) / r;
}

double scaling_phase(int n_in, int m_out, double r) {
    check_scaling_domain(n_in, m_out, r);
    return phase_sum(n_in, m_out, r) / r;
}

double scaling_phase_limit(int n_in, double r) {
    check_scaling_domain(n_in, std::nullopt, r);
    return phase_sum(n_in, std::nullopt, r) / r;
}

double scaling(int n_in, int m_out, double r, CovarianceClass c) {
    return c == CovarianceClass::Universal ? scaling_universal(n_in, m_out, r)
                                           : scaling_phase(n_in, m_out, r);
}

double scaling_limit(int n_in, double r, CovarianceClass c) {
    return c == CovarianceClass::Universal ? scaling_universal_limit(n_in, r)
                                           : scaling_phase_limit(n_in, r);
}

ScalingResult scaling_result(int n_in, int m_out, double r, CovarianceClass c) {
    const double p = scaling(n_in, m_out, r, c);
    return ScalingResult{n_in, m_out, r, c, p, p * r};
}

double single_site_bloch(const BlockDiagonalState& state, BlochAxis axis) {
    const double trace = state.trace();
    if (std::abs(trace - 1.0) > 1e-8)
        throw contract_error("single_site_bloch: state is not normalized (trace " +
                             std::to_string(trace) + ")");
    double sum = 0.0;
    for (const auto& entry : state.blocks) {
        const SpinOperator op =
            axis == BlochAxis::Z ? jz_operator(entry.j) : jx_operator(entry.j);
        const double tr =
            (op.entries.cast<std::complex<double>>() * entry.block).trace().real();
        sum += entry.multiplicity.convert_to<double>() * tr;
    }
    return 2.0 / state.num_qubits * sum;
}

}  // namespace qsb
