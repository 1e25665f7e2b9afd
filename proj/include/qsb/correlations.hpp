#pragma once

#include <span>
#include <vector>

#include "qsb/simulator.hpp"

namespace qsb {

/// Two-qubit state of the family α I^(1) + β J_z^(1) + (1-3α)/2 J_z^(1)².
/// Physical iff 0 <= α <= 1 - 2|β| (triangle with vertices (±1/2, 0), (0, 1)
/// in the (β, α) plane).
struct SymmetricPairState {
    double alpha = 0.0;
    double beta = 0.0;

    bool physical(double tol = 1e-12) const;
};

/// Read (β, α) off a two-qubit state that commutes with total J_z and has no
/// singlet weight: α = <ψ+|ρ|ψ+>, β = (<00|ρ|00> - <11|ρ|11>)/2.
SymmetricPairState extract_alpha_beta(const DensityMatrix& rho2);

/// Dense 4x4 state with triplet diagonal (a_+, a_0, a_-) determined by (β, α).
DensityMatrix reconstruct_pair_state(const SymmetricPairState& s);

/// Wootters concurrence of an arbitrary two-qubit density matrix.
double concurrence(const DensityMatrix& rho2);

/// Closed form for the (β, α) family: max(0, α - 2 sqrt(((1-α)/2)² - β²)).
double family_concurrence(const SymmetricPairState& s);

/// true iff α > (1 - 4β²)/2, i.e. the state lies above the separability
/// parabola (equivalently family_concurrence > 0).
bool is_entangled_family(const SymmetricPairState& s);

struct ConcurrencePoint {
    double r = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double concurrence = 0.0;
};

/// For each r: superbroadcast N -> M (universal), reduce to two sites,
/// extract (β, α), and evaluate the closed-form concurrence.
std::vector<ConcurrencePoint> concurrence_curve(int n_in, int m_out,
                                                std::span<const double> r_grid);

}  // namespace qsb
