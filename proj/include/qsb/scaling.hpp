#pragma once

#include "qsb/spinrep.hpp"

namespace qsb {

enum class CovarianceClass { Universal, Phase };

const char* to_string(CovarianceClass c);

/// One evaluation of the optimal scaling factor p = r'/r.
struct ScalingResult {
    int n_in = 0;
    int m_out = 0;
    double r = 0.0;
    CovarianceClass covariance = CovarianceClass::Universal;
    double p = 0.0;
    double r_prime = 0.0;  // p * r
};

/// Optimal universal-covariant N -> M scaling factor, 0 < r <= 1.
double scaling_universal(int n_in, int m_out, double r);

/// Optimal phase-covariant N -> M scaling factor; the formula branches on the
/// parity of M - N. 0 < r <= 1.
double scaling_phase(int n_in, int m_out, double r);

/// M -> infinity limits of the two formulas (output-count prefactor -> 1).
double scaling_universal_limit(int n_in, double r);
double scaling_phase_limit(int n_in, double r);

double scaling(int n_in, int m_out, double r, CovarianceClass c);
double scaling_limit(int n_in, double r, CovarianceClass c);

ScalingResult scaling_result(int n_in, int m_out, double r, CovarianceClass c);

enum class BlochAxis { Z, X };

/// Single-site Bloch component (2/M) Σ_j d_j Tr[J_axis^{(j)} block_j] of a
/// normalized permutation-invariant M-qubit state.
double single_site_bloch(const BlockDiagonalState& state, BlochAxis axis);

namespace detail {

/// One (l, n) term of the phase-covariant sum:
/// coeff = d_l [exp(J_x^{(l)} log((1+r)/(1-r)))]_{n,n+1} with the
/// (r_+ r_-)^{N/2} prefactor absorbed entrywise. Only the J_x matrix element
/// at spin M/2 and the 1/(M r) prefactor depend on M, which makes scans over
/// M cheap once these are cached per r.
struct PhaseTerm {
    double coeff;
    int twice_n;
};

std::vector<PhaseTerm> phase_terms(int n_in, double r);

/// (4/M) <M/2,a | J_x | M/2,a+1> for twice_a = 2a; tends to 1 as M grows.
double phase_jx_factor(int m_out, int twice_a);

}  // namespace detail

}  // namespace qsb
