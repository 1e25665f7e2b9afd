#pragma once

#include <vector>

#include "qsb/spinrep.hpp"

namespace qsb {

/// Dense n-qubit density matrix (simulator carrier; n <= 12).
struct DensityMatrix {
    int num_qubits = 0;
    Eigen::MatrixXcd entries;
};

/// One outcome of the irrep-label measurement on ρ^{⊗N}: the pair (l, α),
/// its probability, and the normalized post-measurement block on the spin-l
/// irrep. All d_l outcomes of a given l share the same probability.
struct MeasurementOutcome {
    HalfInteger l;
    int multiplicity_index = 0;
    double probability = 0.0;
    Eigen::MatrixXcd post_state;  // (2l+1) x (2l+1), trace 1
};

/// Joint measurement of the (l, α) projectors on ρ^{⊗N}, ρ = diag(r_+, r_-).
/// Computed from the block decomposition; no dense 2^N matrix is formed.
std::vector<MeasurementOutcome> project_measurement(int num_qubits, double r);

/// Optimal symmetric 2l -> M cloner for pure (symmetric-sector) inputs:
/// (2l+1)/(M+1) * S_M (input ⊗ I^{⊗(M-2l)}) S_M with S_M the symmetric
/// projector. Trace-preserving on symmetric-sector inputs (asserted).
DensityMatrix universal_pure_cloner(const Eigen::MatrixXcd& input, HalfInteger l, int m_out);

/// Full realization of the universal N -> M superbroadcasting channel:
/// measure the irrep label, discard the multiplicity register, clone the
/// spin-l block, and average over outcomes. Output is block-diagonal with
/// support on the symmetric sector j = M/2.
BlockDiagonalState superbroadcast_universal(int n_in, int m_out, double r);

/// Two-site marginal of a permutation-invariant M-qubit state via the dense
/// expansion (M <= 12). Cross-checked against a second site pair.
DensityMatrix reduce_to_two_sites(const BlockDiagonalState& state);

}  // namespace qsb
