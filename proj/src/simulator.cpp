#include "qsb/simulator.hpp"

#include <cmath>
#include <string>

#include "qsb/errors.hpp"

namespace qsb {

namespace {

constexpr int kDenseQubitCap = 12;

using Complex = std::complex<double>;

void check_qubit_capacity(int n, const char* who) {
    if (n < 1) throw domain_error(std::string(who) + ": need at least one qubit");
    if (n > kDenseQubitCap)
        throw capacity_error(std::string(who) + ": dense path capped at " +
                             std::to_string(kDenseQubitCap) + " qubits");
}

// Symmetric-sector block of the cloner output: with V_M the Dicke columns,
// the dense output is V_M [ (2l+1)/(M+1) * A ] V_M^dag, so only the j = M/2
// block is ever nonzero. A is contracted without forming any 2^M matrix:
// reshape each Dicke column over (first 2l qubits) x (rest), project onto the
// symmetric sector of the input qubits, and sandwich the input block.
Eigen::MatrixXcd cloner_symmetric_block(const Eigen::MatrixXcd& input, HalfInteger l,
                                        int m_out) {
    const int n_in = l.twice();  // 2l input qubits
    const int rest = 1 << (m_out - n_in);
    const SchurBasis& out_basis = schur_basis(m_out);
    const Eigen::MatrixXd v_out =
        out_basis.sector_columns(HalfInteger::from_twice(m_out), 0);

    std::vector<Eigen::MatrixXd> projected;  // rest x (2l+1), one per Dicke column
    projected.reserve(static_cast<std::size_t>(m_out) + 1);
    for (int k = 0; k <= m_out; ++k) {
        Eigen::Map<const Eigen::MatrixXd> reshaped(v_out.col(k).data(), rest,
                                                   1 << n_in);
        if (n_in == 0) {
            projected.push_back(reshaped);
        } else {
            const Eigen::MatrixXd v_in =
                schur_basis(n_in).sector_columns(l, 0);
            projected.push_back(reshaped * v_in);
        }
    }

    Eigen::MatrixXcd a(m_out + 1, m_out + 1);
    for (int k2 = 0; k2 <= m_out; ++k2) {
        const Eigen::MatrixXcd d =
            projected[static_cast<std::size_t>(k2)] * input.transpose();
        for (int k1 = 0; k1 <= m_out; ++k1)
            a(k1, k2) = projected[static_cast<std::size_t>(k1)]
                            .cast<Complex>()
                            .cwiseProduct(d)
                            .sum();
    }
    a = 0.5 * (a + a.adjoint()).eval();
    return (n_in + 1.0) / (m_out + 1.0) * a;
}

}  // namespace

std::vector<MeasurementOutcome> project_measurement(int num_qubits, double r) {
    check_qubit_capacity(num_qubits, "project_measurement");
    if (!(r >= 0.0 && r <= 1.0))
        throw domain_error("project_measurement: r must lie in [0, 1]");
    const BlockDiagonalState state = tensor_power_blocks(r, num_qubits);
    std::vector<MeasurementOutcome> outcomes;
    for (const auto& entry : state.blocks) {
        const double tau = entry.block.trace().real();
        Eigen::MatrixXcd post;
        if (tau > 0.0) {
            post = entry.block / tau;
        } else {
            // r = 1 puts no weight outside the top sector; report the r -> 1
            // limit |l, m=l><l, m=l| for the zero-probability outcomes.
            post = Eigen::MatrixXcd::Zero(entry.j.dim(), entry.j.dim());
            post(0, 0) = 1.0;
        }
        const auto d = entry.multiplicity.convert_to<int>();
        for (int alpha = 0; alpha < d; ++alpha)
            outcomes.push_back({entry.j, alpha, tau, post});
    }
    return outcomes;
}

DensityMatrix universal_pure_cloner(const Eigen::MatrixXcd& input, HalfInteger l,
                                    int m_out) {
    check_qubit_capacity(m_out, "universal_pure_cloner");
    if (m_out < l.twice())
        throw domain_error("universal_pure_cloner: need M >= 2l");
    if (input.rows() != l.dim() || input.cols() != l.dim())
        throw domain_error("universal_pure_cloner: input must be (2l+1) x (2l+1)");
    if ((input - input.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw contract_error("universal_pure_cloner: input is not Hermitian");
    if (std::abs(input.trace().real() - 1.0) > 1e-8)
        throw contract_error("universal_pure_cloner: input trace must be 1");

    const Eigen::MatrixXcd block = cloner_symmetric_block(input, l, m_out);
    const Eigen::MatrixXcd v_out = schur_basis(m_out)
                                       .sector_columns(HalfInteger::from_twice(m_out), 0)
                                       .cast<Complex>();
    DensityMatrix out;
    out.num_qubits = m_out;
    out.entries = v_out * block * v_out.adjoint();
    if (std::abs(out.entries.trace().real() - 1.0) > 1e-10)
        throw contract_error("universal_pure_cloner: trace not preserved");
    return out;
}

BlockDiagonalState superbroadcast_universal(int n_in, int m_out, double r) {
    check_qubit_capacity(n_in, "superbroadcast_universal");
    check_qubit_capacity(m_out, "superbroadcast_universal");
    if (!(r >= 0.0 && r <= 1.0))
        throw domain_error("superbroadcast_universal: r must lie in [0, 1]");

    const BlockDiagonalState measured = tensor_power_blocks(r, n_in);
    Eigen::MatrixXcd symmetric_block = Eigen::MatrixXcd::Zero(m_out + 1, m_out + 1);
    for (const auto& entry : measured.blocks) {
        const double tau = entry.block.trace().real();
        if (tau == 0.0) continue;  // unrealized outcome
        if (entry.j.twice() > m_out)
            throw domain_error("superbroadcast_universal: outcome spin " +
                               entry.j.str() + " needs more than M = " +
                               std::to_string(m_out) + " output qubits");
        const double weight = entry.multiplicity.convert_to<double>() * tau;
        symmetric_block.noalias() +=
            weight * cloner_symmetric_block(entry.block / tau, entry.j, m_out);
    }

    BlockDiagonalState out;
    out.num_qubits = m_out;
    for (HalfInteger j : admissible_spins(m_out)) {
        Eigen::MatrixXcd block;
        if (j.twice() == m_out)
            block = symmetric_block;
        else
            block = Eigen::MatrixXcd::Zero(j.dim(), j.dim());
        out.blocks.push_back({j, std::move(block), multiplicity(m_out, j)});
    }
    if (std::abs(out.trace() - 1.0) > 1e-10)
        throw contract_error("superbroadcast_universal: output trace drifted from 1");
    return out;
}

DensityMatrix reduce_to_two_sites(const BlockDiagonalState& state) {
    if (state.num_qubits < 2)
        throw domain_error("reduce_to_two_sites: need at least two qubits");
    if (state.num_qubits > kDenseQubitCap)
        throw capacity_error("reduce_to_two_sites: dense path capped at " +
                             std::to_string(kDenseQubitCap) + " qubits");
    const Eigen::MatrixXcd dense = block_to_dense(state);
    if (state.num_qubits == 2) return DensityMatrix{2, dense};

    const int rest = 1 << (state.num_qubits - 2);
    Eigen::MatrixXcd first_pair = Eigen::MatrixXcd::Zero(4, 4);
    Eigen::MatrixXcd last_pair = Eigen::MatrixXcd::Zero(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < rest; ++k) {
                first_pair(a, b) += dense(a * rest + k, b * rest + k);
                last_pair(a, b) += dense(k * 4 + a, k * 4 + b);
            }
    if ((first_pair - last_pair).cwiseAbs().maxCoeff() > 1e-10)
        throw contract_error(
            "reduce_to_two_sites: marginals disagree between site pairs "
            "(state is not permutation invariant)");
    return DensityMatrix{2, std::move(first_pair)};
}

}  // namespace qsb
