#include "qsb/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qsb/errors.hpp"

namespace qsb {

namespace {

using Complex = std::complex<double>;

Eigen::MatrixXcd spin_flip() {
    Eigen::MatrixXcd yy = Eigen::MatrixXcd::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

void check_two_qubit_state(const DensityMatrix& rho, const char* who) {
    if (rho.num_qubits != 2 || rho.entries.rows() != 4 || rho.entries.cols() != 4)
        throw domain_error(std::string(who) + ": expected a 4x4 two-qubit state");
    if ((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw contract_error(std::string(who) + ": state is not Hermitian");
    if (std::abs(rho.entries.trace().real() - 1.0) > 1e-8)
        throw contract_error(std::string(who) + ": state trace must be 1");
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    // Eigenvalues at rounding-noise scale are exact zeros of the state; the
    // square root would otherwise blow the noise up from ~1e-17 to ~1e-9.
    const double threshold = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max(ev.maxCoeff(), 0.0);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) < threshold) ev(i) = 0.0;
    return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

}  // namespace

bool SymmetricPairState::physical(double tol) const {
    return alpha >= -tol && alpha <= 1.0 - 2.0 * std::abs(beta) + tol;
}

SymmetricPairState extract_alpha_beta(const DensityMatrix& rho2) {
    check_two_qubit_state(rho2, "extract_alpha_beta");
    const Eigen::MatrixXcd& rho = rho2.entries;

    // Total J_z is diag(1, 0, 0, -1) on {|00>, |01>, |10>, |11>}.
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(4, 4);
    jz(0, 0) = 1.0;
    jz(3, 3) = -1.0;
    const double comm = (rho * jz - jz * rho).cwiseAbs().maxCoeff();
    if (comm > 1e-8)
        throw contract_error("extract_alpha_beta: state does not commute with total "
                             "J_z (defect " + std::to_string(comm) + ")");
    const double singlet =
        0.5 * std::abs((rho(1, 1) + rho(2, 2) - rho(1, 2) - rho(2, 1)).real());
    if (singlet > 1e-8)
        throw contract_error("extract_alpha_beta: singlet weight " +
                             std::to_string(singlet) + " exceeds 1e-8");

    const double a_plus = rho(0, 0).real();
    const double a_minus = rho(3, 3).real();
    const double a_zero =
        0.5 * (rho(1, 1) + rho(2, 2) + rho(1, 2) + rho(2, 1)).real();
    SymmetricPairState s{a_zero, 0.5 * (a_plus - a_minus)};

    // The inversion is exact on the family; a mismatch means the input was
    // outside it (e.g. trace split between sectors).
    const double half = 0.5 * (1.0 - s.alpha);
    if (std::abs(half + s.beta - a_plus) > 1e-8 ||
        std::abs(half - s.beta - a_minus) > 1e-8)
        throw contract_error(
            "extract_alpha_beta: triplet diagonal inconsistent with the "
            "(beta, alpha) family");
    return s;
}

DensityMatrix reconstruct_pair_state(const SymmetricPairState& s) {
    if (!s.physical())
        throw domain_error("reconstruct_pair_state: (beta, alpha) outside the "
                           "positivity triangle");
    const double a_plus = 0.5 * (1.0 - s.alpha) + s.beta;
    const double a_minus = 0.5 * (1.0 - s.alpha) - s.beta;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(0, 0) = a_plus;
    rho(3, 3) = a_minus;
    rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5 * s.alpha;
    return DensityMatrix{2, std::move(rho)};
}

double concurrence(const DensityMatrix& rho2) {
    check_two_qubit_state(rho2, "concurrence");
    const Eigen::MatrixXcd& rho = rho2.entries;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw contract_error("concurrence: state is not positive semidefinite");
    }
    const Eigen::MatrixXcd yy = spin_flip();
    const Eigen::MatrixXcd root = psd_sqrt(rho);
    // The Wootters lambdas are the square roots of the eigenvalues of the
    // Hermitian similarity sqrt(rho) (Y⊗Y) rho* (Y⊗Y) sqrt(rho), i.e. the
    // singular values of sqrt(rho) sqrt(rho~). Taking them from an SVD keeps
    // full precision for the near-zero lambdas, which an eigenvalue pass
    // followed by square roots would amplify.
    const Eigen::MatrixXcd flipped_root = yy * root.conjugate() * yy;
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(root * flipped_root);
    const Eigen::VectorXd& lambda = svd.singularValues();  // descending
    return std::max(0.0, lambda(0) - lambda(1) - lambda(2) - lambda(3));
}

double family_concurrence(const SymmetricPairState& s) {
    if (!s.physical())
        throw domain_error("family_concurrence: (beta, alpha) outside the "
                           "positivity triangle");
    // ((1-alpha)/2)^2 - beta^2 in product form a_+ a_-, avoiding the
    // cancellation of the difference of squares near the triangle edges
    const double half = 0.5 * (1.0 - s.alpha);
    const double radicand = std::max(0.0, (half + s.beta) * (half - s.beta));
    return std::max(0.0, s.alpha - 2.0 * std::sqrt(radicand));
}

bool is_entangled_family(const SymmetricPairState& s) {
    if (!s.physical())
        throw domain_error("is_entangled_family: (beta, alpha) outside the "
                           "positivity triangle");
    return s.alpha > 0.5 * (1.0 - 4.0 * s.beta * s.beta);
}

std::vector<ConcurrencePoint> concurrence_curve(int n_in, int m_out,
                                                std::span<const double> r_grid) {
    if (n_in < 1 || n_in > 6 || m_out < 2 || m_out > 8)
        throw capacity_error("concurrence_curve: supported range is N <= 6, M <= 8");
    std::vector<ConcurrencePoint> points;
    points.reserve(r_grid.size());
    for (double r : r_grid) {
        const BlockDiagonalState out = superbroadcast_universal(n_in, m_out, r);
        const DensityMatrix pair = reduce_to_two_sites(out);
        const SymmetricPairState s = extract_alpha_beta(pair);
        points.push_back({r, s.beta, s.alpha, family_concurrence(s)});
    }
    return points;
}

}  // namespace qsb
