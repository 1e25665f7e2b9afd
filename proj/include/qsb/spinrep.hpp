#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qsb/half_integer.hpp"
#include "qsb/numeric.hpp"

namespace qsb {

// Conventions used throughout: irrep bases are ordered m = j, j-1, ..., -j
// (row/column index i corresponds to m = j - i), and block lists run over j
// in descending order. Computational-basis indices put qubit 1 in the most
// significant bit, with bit 0 = spin up (m = +1/2).

/// Angular-momentum component on the spin-j irrep. J_z and J_x are real in
/// this basis, so entries are stored as a real matrix.
struct SpinOperator {
    HalfInteger j;
    Eigen::MatrixXd entries;
};

/// Multiplicity d_j of the spin-j irrep in the decomposition of num_qubits
/// qubits, evaluated with exact integer arithmetic.
BigInt multiplicity(int num_qubits, HalfInteger j);

/// Admissible spin labels for num_qubits qubits, descending from N/2.
std::vector<HalfInteger> admissible_spins(int num_qubits);

/// J_z = diag(j, j-1, ..., -j).
SpinOperator jz_operator(HalfInteger j);

/// J_x with <j,m±1|J_x|j,m> = sqrt(j(j+1) - m(m±1))/2.
SpinOperator jx_operator(HalfInteger j);

/// Real orthogonal D with D J_z D^T = J_x (a pi/2 rotation of the z-axis onto
/// the x-axis; column signs follow a fixed deterministic convention).
Eigen::MatrixXd wigner_d_half_pi(HalfInteger j);

/// One irrep block of a permutation-invariant operator together with its
/// multiplicity. The represented operator is  ⊕_j block_j ⊗ I_{d_j}.
struct BlockEntry {
    HalfInteger j;
    Eigen::MatrixXcd block;
    BigInt multiplicity;
};

struct BlockDiagonalState {
    int num_qubits = 0;
    std::vector<BlockEntry> blocks;  // j descending

    /// Σ_j d_j Tr[block_j]
    double trace() const;
    const BlockEntry* find(HalfInteger j) const;
};

/// Block decomposition of ρ^{⊗N} for ρ = diag(r_+, r_-): the spin-j block is
/// diag(r_+^{N/2+m} r_-^{N/2-m}), m = j..-j. Total trace is 1.
BlockDiagonalState tensor_power_blocks(double r, int num_qubits);

struct SchurSector {
    HalfInteger j;
    std::int64_t multiplicity = 0;
    int column_offset = 0;  // columns [offset, offset + (2j+1) d_j)
};

/// Orthonormal basis adapted to the spin decomposition of n qubits, built by
/// sequential Clebsch-Gordan coupling with exact rational coefficients
/// (square roots taken only on output). Within a sector the column at
/// offset + i_m * d_j + alpha carries labels (j, m = j - i_m, alpha), where
/// alpha orders multiplicity copies by lexicographic coupling path. With this
/// layout, conjugation takes a permutation-invariant operator to
/// ⊕_j block_j ⊗ I_{d_j}.
struct SchurBasis {
    int n = 0;
    Eigen::MatrixXd columns;  // 2^n x 2^n, orthogonal
    std::vector<SchurSector> sectors;

    const SchurSector& sector(HalfInteger j) const;
    /// The 2^n x (2j+1) slice holding multiplicity copy alpha of sector j.
    Eigen::MatrixXd sector_columns(HalfInteger j, int alpha) const;
};

/// Schur basis for n qubits (dense regime, n <= 12). Results are cached per n
/// behind an internal lock; the returned reference remains valid.
const SchurBasis& schur_basis(int num_qubits);

/// Expand ⊕_j block_j ⊗ I_{d_j} to the dense computational-basis matrix.
/// All-zero blocks are skipped.
Eigen::MatrixXcd block_to_dense(const BlockDiagonalState& state);

/// Project a dense matrix onto block-diagonal form, averaging over
/// multiplicity copies. Exact for permutation-invariant input.
BlockDiagonalState dense_to_blocks(const Eigen::MatrixXcd& dense, int num_qubits);

}  // namespace qsb
