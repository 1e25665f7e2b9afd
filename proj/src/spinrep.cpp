#include "qsb/spinrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace qsb {

namespace {

constexpr int kDenseQubitCap = 12;

int pow2(int n) { return 1 << n; }

}  // namespace

BigInt multiplicity(int num_qubits, HalfInteger j) {
    if (num_qubits < 1)
        throw domain_error("multiplicity: need at least one qubit");
    if (!j.admissible_for(num_qubits))
        throw domain_error("multiplicity: spin " + j.str() + " is not admissible for " +
                           std::to_string(num_qubits) + " qubits");
    const int k = (num_qubits - j.twice()) / 2;
    const BigInt numerator = BigInt(j.twice() + 1) * binomial(num_qubits, k);
    const BigInt denominator = BigInt(num_qubits + j.twice()) / 2 + 1;
    BigInt quotient, remainder;
    boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
    if (remainder != 0)
        throw contract_error("multiplicity: formula did not divide evenly");
    return quotient;
}

std::vector<HalfInteger> admissible_spins(int num_qubits) {
    if (num_qubits < 1)
        throw domain_error("admissible_spins: need at least one qubit");
    std::vector<HalfInteger> spins;
    for (int twice = num_qubits; twice >= 0; twice -= 2)
        spins.push_back(HalfInteger::from_twice(twice));
    return spins;
}

SpinOperator jz_operator(HalfInteger j) {
    const int d = j.dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i)
        m(i, i) = 0.5 * (j.twice() - 2 * i);
    return SpinOperator{j, std::move(m)};
}

SpinOperator jx_operator(HalfInteger j) {
    const int d = j.dim();
    const double jj = j.value() * (j.value() + 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) {
        const double mu = 0.5 * (j.twice() - 2 * i);  // coupling m = mu and mu - 1
        const double v = 0.5 * std::sqrt(jj - mu * (mu - 1.0));
        m(i, i + 1) = v;
        m(i + 1, i) = v;
    }
    return SpinOperator{j, std::move(m)};
}

Eigen::MatrixXd wigner_d_half_pi(HalfInteger j) {
    const int d = j.dim();
    if (d == 1) return Eigen::MatrixXd::Ones(1, 1);
    // Columns are the eigenvectors of the tridiagonal J_x, ordered so that
    // column i carries eigenvalue m = j - i; the eigenvalues are exactly
    // j..-j and nondegenerate, so the basis is well conditioned.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jx_operator(j).entries);
    Eigen::MatrixXd dmat(d, d);
    for (int i = 0; i < d; ++i)
        dmat.col(i) = es.eigenvectors().col(d - 1 - i);
    for (int i = 0; i < d; ++i) {
        int imax = 0;
        dmat.col(i).cwiseAbs().maxCoeff(&imax);
        if (dmat(imax, i) < 0.0) dmat.col(i) = -dmat.col(i);
    }
    return dmat;
}

double BlockDiagonalState::trace() const {
    double sum = 0.0;
    for (const auto& b : blocks)
        sum += b.multiplicity.convert_to<double>() * b.block.trace().real();
    return sum;
}

const BlockEntry* BlockDiagonalState::find(HalfInteger j) const {
    for (const auto& b : blocks)
        if (b.j == j) return &b;
    return nullptr;
}

BlockDiagonalState tensor_power_blocks(double r, int num_qubits) {
    if (num_qubits < 1)
        throw domain_error("tensor_power_blocks: need at least one qubit");
    if (!(r >= 0.0 && r <= 1.0))
        throw domain_error("tensor_power_blocks: r must lie in [0, 1]");
    const PurityPowers pw(r, num_qubits);
    BlockDiagonalState state;
    state.num_qubits = num_qubits;
    for (HalfInteger j : admissible_spins(num_qubits)) {
        const int d = j.dim();
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            const int twice_m = j.twice() - 2 * i;
            block(i, i) = pw.paired((num_qubits + twice_m) / 2, (num_qubits - twice_m) / 2);
        }
        state.blocks.push_back({j, std::move(block), multiplicity(num_qubits, j)});
    }
    return state;
}

// --- Schur basis -----------------------------------------------------------

namespace {

// Exact amplitude sign * sqrt(square). Sequential coupling of qubits only ever
// multiplies such amplitudes (each computational-basis entry is reached along
// a single path), so no sums of surds appear before the final conversion.
struct Surd {
    int sign = 0;
    BigRational square = 0;
};

double surd_value(const Surd& s) {
    if (s.sign == 0) return 0.0;
    return s.sign * std::sqrt(s.square.convert_to<double>());
}

// Sparse vector over computational-basis indices, one per magnetic number.
using Component = std::map<std::uint32_t, Surd>;

struct SchurBuilder {
    int n;
    SchurBasis basis;
    std::map<int, int> next_alpha;              // twice_j -> next copy index
    std::map<int, const SchurSector*> sectors;  // twice_j -> layout

    explicit SchurBuilder(int num_qubits) : n(num_qubits) {
        basis.n = n;
        basis.columns = Eigen::MatrixXd::Zero(pow2(n), pow2(n));
        int offset = 0;
        for (HalfInteger j : admissible_spins(n)) {
            const auto d = multiplicity(n, j).convert_to<std::int64_t>();
            basis.sectors.push_back({j, d, offset});
            offset += j.dim() * static_cast<int>(d);
        }
        for (const auto& s : basis.sectors) sectors[s.j.twice()] = &s;
    }

    // comps[i] is the vector for m = j - i on the qubits coupled so far.
    void couple(int depth, int twice_j, const std::vector<Component>& comps) {
        if (depth == n) {
            emit(twice_j, comps);
            return;
        }
        step(depth, twice_j, comps, +1);
        if (twice_j > 0) step(depth, twice_j, comps, -1);
    }

    void step(int depth, int twice_j, const std::vector<Component>& comps, int direction) {
        const int twice_jn = twice_j + direction;
        std::vector<Component> next(static_cast<std::size_t>(twice_jn) + 1);
        for (int i = 0; i <= twice_jn; ++i) {
            const int twice_m = twice_jn - 2 * i;
            // bit 0 appends spin up (source m' = m - 1/2), bit 1 spin down.
            for (int bit = 0; bit <= 1; ++bit) {
                const int twice_src = bit == 0 ? twice_m - 1 : twice_m + 1;
                if (std::abs(twice_src) > twice_j) continue;
                // Clebsch-Gordan weights for coupling j with 1/2:
                //   j+1/2: ( +sqrt((j+m+1/2)/(2j+1)), +sqrt((j-m+1/2)/(2j+1)) )
                //   j-1/2: ( -sqrt((j-m+1/2)/(2j+1)), +sqrt((j+m+1/2)/(2j+1)) )
                int num;
                int sign = 1;
                if (direction > 0) {
                    num = bit == 0 ? twice_j + twice_m + 1 : twice_j - twice_m + 1;
                } else {
                    num = bit == 0 ? twice_j - twice_m + 1 : twice_j + twice_m + 1;
                    if (bit == 0) sign = -1;
                }
                if (num <= 0) continue;
                const BigRational csq(num, 2 * (twice_j + 1));
                const int isrc = (twice_j - twice_src) / 2;
                for (const auto& [idx, amp] : comps[static_cast<std::size_t>(isrc)]) {
                    Surd out;
                    out.sign = sign * amp.sign;
                    out.square = amp.square * csq;
                    next[static_cast<std::size_t>(i)].emplace(idx * 2 + bit, std::move(out));
                }
            }
        }
        couple(depth + 1, twice_jn, next);
    }

    void emit(int twice_j, const std::vector<Component>& comps) {
        const SchurSector& sector = *sectors.at(twice_j);
        const int alpha = next_alpha[twice_j]++;
        for (int i = 0; i <= twice_j; ++i) {
            const int col = sector.column_offset +
                            i * static_cast<int>(sector.multiplicity) + alpha;
            for (const auto& [idx, amp] : comps[static_cast<std::size_t>(i)])
                basis.columns(idx, col) = surd_value(amp);
        }
    }

    SchurBasis build() {
        std::vector<Component> seed(2);
        seed[0][0] = Surd{1, 1};  // |0> carries m = +1/2
        seed[1][1] = Surd{1, 1};
        couple(1, 1, seed);
        for (const auto& s : basis.sectors)
            if (next_alpha[s.j.twice()] != s.multiplicity)
                throw contract_error("schur_basis: path count does not match multiplicity");
        return std::move(basis);
    }
};

}  // namespace

const SchurSector& SchurBasis::sector(HalfInteger j) const {
    for (const auto& s : sectors)
        if (s.j == j) return s;
    throw domain_error("SchurBasis: no sector for spin " + j.str());
}

Eigen::MatrixXd SchurBasis::sector_columns(HalfInteger j, int alpha) const {
    const SchurSector& s = sector(j);
    if (alpha < 0 || alpha >= s.multiplicity)
        throw domain_error("SchurBasis: multiplicity index out of range");
    Eigen::MatrixXd slice(columns.rows(), j.dim());
    for (int i = 0; i < j.dim(); ++i)
        slice.col(i) =
            columns.col(s.column_offset + i * static_cast<int>(s.multiplicity) + alpha);
    return slice;
}

const SchurBasis& schur_basis(int num_qubits) {
    if (num_qubits < 1)
        throw domain_error("schur_basis: need at least one qubit");
    if (num_qubits > kDenseQubitCap)
        throw capacity_error("schur_basis: dense construction capped at " +
                             std::to_string(kDenseQubitCap) + " qubits");
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const SchurBasis>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(num_qubits); it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<const SchurBasis>(SchurBuilder(num_qubits).build());
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(num_qubits, std::move(built));
    return *it->second;
}

Eigen::MatrixXcd block_to_dense(const BlockDiagonalState& state) {
    const SchurBasis& basis = schur_basis(state.num_qubits);
    const int dim = pow2(state.num_qubits);
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& entry : state.blocks) {
        const SchurSector& sector = basis.sector(entry.j);
        if (entry.block.rows() != entry.j.dim() || entry.block.cols() != entry.j.dim())
            throw domain_error("block_to_dense: block dimension mismatch for spin " +
                               entry.j.str());
        if (entry.multiplicity != BigInt(sector.multiplicity))
            throw contract_error("block_to_dense: multiplicity mismatch for spin " +
                                 entry.j.str());
        if (entry.block.cwiseAbs().maxCoeff() == 0.0) continue;
        for (int alpha = 0; alpha < sector.multiplicity; ++alpha) {
            const Eigen::MatrixXcd v =
                basis.sector_columns(entry.j, alpha).cast<std::complex<double>>();
            dense.noalias() += v * entry.block * v.adjoint();
        }
    }
    return dense;
}

BlockDiagonalState dense_to_blocks(const Eigen::MatrixXcd& dense, int num_qubits) {
    const SchurBasis& basis = schur_basis(num_qubits);
    if (dense.rows() != pow2(num_qubits) || dense.cols() != pow2(num_qubits))
        throw domain_error("dense_to_blocks: matrix size does not match qubit count");
    BlockDiagonalState state;
    state.num_qubits = num_qubits;
    for (const auto& sector : basis.sectors) {
        const int d = sector.j.dim();
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d, d);
        for (int alpha = 0; alpha < sector.multiplicity; ++alpha) {
            const Eigen::MatrixXcd v =
                basis.sector_columns(sector.j, alpha).cast<std::complex<double>>();
            block.noalias() += v.adjoint() * dense * v;
        }
        block /= static_cast<double>(sector.multiplicity);
        block = 0.5 * (block + block.adjoint()).eval();
        state.blocks.push_back({sector.j, std::move(block), BigInt(sector.multiplicity)});
    }
    return state;
}

}  // namespace qsb
