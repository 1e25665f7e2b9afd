#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "qsb/spinrep.hpp"
#include "test_util.hpp"

using namespace qsb;
using qsb_test::Complex;

namespace {
HalfInteger twice(int t) { return HalfInteger::from_twice(t); }
}  // namespace

TEST_CASE("multiplicity matches hand evaluations for four qubits") {
    CHECK(multiplicity(4, twice(4)) == 1);
    CHECK(multiplicity(4, twice(2)) == 3);
    CHECK(multiplicity(4, twice(0)) == 2);
    CHECK(multiplicity(3, twice(3)) == 1);
    CHECK(multiplicity(3, twice(1)) == 2);
}

TEST_CASE("multiplicity rejects inadmissible spins") {
    CHECK_THROWS_AS(multiplicity(4, twice(3)), domain_error);   // parity mismatch
    CHECK_THROWS_AS(multiplicity(4, twice(6)), domain_error);   // 2j > N
    CHECK_THROWS_AS(multiplicity(0, twice(0)), domain_error);
    CHECK_THROWS_AS(HalfInteger::from_twice(-1), domain_error);
}

TEST_CASE("dimension sum rule holds exactly up to 200 qubits") {
    for (int n = 1; n <= 200; ++n) {
        BigInt total = 0;
        for (HalfInteger j : admissible_spins(n))
            total += multiplicity(n, j) * (j.twice() + 1);
        CHECK(total == BigInt(1) << n);
    }
}

TEST_CASE("jz is diagonal with descending m") {
    const SpinOperator half = jz_operator(twice(1));
    CHECK(half.entries(0, 0) == 0.5);
    CHECK(half.entries(1, 1) == -0.5);

    const SpinOperator one = jz_operator(twice(2));
    CHECK(one.entries(0, 0) == 1.0);
    CHECK(one.entries(1, 1) == 0.0);
    CHECK(one.entries(2, 2) == -1.0);

    for (int t = 0; t <= 12; ++t)
        CHECK(jz_operator(twice(t)).entries.trace() == doctest::Approx(0.0));
}

TEST_CASE("jx matches the ladder-operator matrix elements") {
    const SpinOperator half = jx_operator(twice(1));
    CHECK(half.entries(0, 1) == doctest::Approx(0.5));
    CHECK(half.entries(1, 0) == doctest::Approx(0.5));

    // <1,0|J_x|1,1> with the m = 1,0,-1 ordering sits at (1, 0).
    const SpinOperator one = jx_operator(twice(2));
    CHECK(one.entries(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));

    for (int t = 1; t <= 20; ++t) {
        const Eigen::MatrixXcd jx =
            jx_operator(twice(t)).entries.cast<Complex>();
        const Eigen::MatrixXcd jz =
            jz_operator(twice(t)).entries.cast<Complex>();
        const Eigen::MatrixXcd commutator = jx * jz - jz * jx;
        const Eigen::MatrixXcd expected =
            Complex(0.0, -1.0) * qsb_test::jy_from_ladder(t);
        CHECK((commutator - expected).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("tensor_power_blocks reproduces the stated small cases") {
    SUBCASE("maximally mixed pair") {
        const BlockDiagonalState s = tensor_power_blocks(0.0, 2);
        REQUIRE(s.blocks.size() == 2);
        const BlockEntry* triplet = s.find(twice(2));
        const BlockEntry* singlet = s.find(twice(0));
        REQUIRE(triplet);
        REQUIRE(singlet);
        for (int i = 0; i < 3; ++i)
            CHECK(triplet->block(i, i).real() == doctest::Approx(0.25));
        CHECK(singlet->block(0, 0).real() == doctest::Approx(0.25));
        CHECK(s.trace() == doctest::Approx(1.0));
    }
    SUBCASE("pure aligned pair") {
        const BlockDiagonalState s = tensor_power_blocks(1.0, 2);
        const BlockEntry* triplet = s.find(twice(2));
        REQUIRE(triplet);
        CHECK(triplet->block(0, 0).real() == 1.0);
        CHECK(triplet->block(1, 1).real() == 0.0);
        CHECK(triplet->block(2, 2).real() == 0.0);
        CHECK(s.find(twice(0))->block(0, 0).real() == 0.0);
    }
    SUBCASE("single qubit") {
        const BlockDiagonalState s = tensor_power_blocks(0.6, 1);
        const BlockEntry* b = s.find(twice(1));
        REQUIRE(b);
        CHECK(b->block(0, 0).real() == doctest::Approx(0.8));
        CHECK(b->block(1, 1).real() == doctest::Approx(0.2));
    }
}

TEST_CASE("tensor_power_blocks stays normalized at large N") {
    for (int n : {1, 2, 3, 7, 12, 25, 50, 100})
        for (double r : {0.0, 0.1, 0.37, 0.5, 0.9, 0.99, 1.0})
            CHECK(std::abs(tensor_power_blocks(r, n).trace() - 1.0) < 1e-12);
}

TEST_CASE("tensor_power_blocks rejects r outside [0,1]") {
    CHECK_THROWS_AS(tensor_power_blocks(-0.1, 2), domain_error);
    CHECK_THROWS_AS(tensor_power_blocks(1.1, 2), domain_error);
}

TEST_CASE("wigner_d_half_pi conjugates J_z onto J_x") {
    for (int t = 0; t <= 100; ++t) {
        const Eigen::MatrixXd d = wigner_d_half_pi(twice(t));
        const Eigen::MatrixXd jz = jz_operator(twice(t)).entries;
        const Eigen::MatrixXd jx = jx_operator(twice(t)).entries;
        CHECK((d * jz * d.transpose() - jx).cwiseAbs().maxCoeff() < 1e-12);
        if (t <= 40) {
            const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(t + 1, t + 1);
            CHECK((d * d.transpose() - eye).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("wigner_d_half_pi entries for a single qubit") {
    const Eigen::MatrixXd d = wigner_d_half_pi(twice(1));
    const double c = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::abs(d(i, j)) == doctest::Approx(c));
}

TEST_CASE("exp(t J_x) via the rotated diagonal matches a matrix exponential") {
    const int t2 = 3;  // j = 3/2
    const double t = 1.0;
    const Eigen::MatrixXd d = wigner_d_half_pi(twice(t2));
    Eigen::VectorXd diag(t2 + 1);
    for (int i = 0; i <= t2; ++i) diag(i) = std::exp(t * 0.5 * (t2 - 2 * i));
    const Eigen::MatrixXd rotated = d * diag.asDiagonal() * d.transpose();
    const Eigen::MatrixXd direct = (t * jx_operator(twice(t2)).entries).exp();
    CHECK((rotated - direct).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("schur basis couples two qubits into triplet and singlet") {
    const SchurBasis& b = schur_basis(2);
    REQUIRE(b.sectors.size() == 2);
    const Eigen::MatrixXd triplet = b.sector_columns(twice(2), 0);
    const double s = 1.0 / std::sqrt(2.0);
    // |1,1> = |00>, |1,0> = (|01>+|10>)/sqrt2, |1,-1> = |11>
    CHECK(triplet(0, 0) == doctest::Approx(1.0));
    CHECK(triplet(1, 1) == doctest::Approx(s));
    CHECK(triplet(2, 1) == doctest::Approx(s));
    CHECK(triplet(3, 2) == doctest::Approx(1.0));
    const Eigen::MatrixXd singlet = b.sector_columns(twice(0), 0);
    CHECK(singlet(1, 0) == doctest::Approx(s));
    CHECK(singlet(2, 0) == doctest::Approx(-s));
}

TEST_CASE("schur basis sector shapes for three qubits") {
    const SchurBasis& b = schur_basis(3);
    CHECK(b.sector(twice(3)).multiplicity == 1);
    CHECK(b.sector(twice(1)).multiplicity == 2);
    CHECK(b.columns.cols() == 8);
}

TEST_CASE("schur basis is orthogonal and block-diagonalizes total J_z") {
    for (int n = 1; n <= 10; ++n) {
        const SchurBasis& b = schur_basis(n);
        const int dim = 1 << n;
        const Eigen::MatrixXd gram = b.columns.transpose() * b.columns;
        CHECK((gram - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() <
              1e-10);
        if (n > 6) continue;
        Eigen::MatrixXd total_jz = Eigen::MatrixXd::Zero(dim, dim);
        for (int x = 0; x < dim; ++x)
            total_jz(x, x) = 0.5 * (n - 2 * __builtin_popcount(static_cast<unsigned>(x)));
        const Eigen::MatrixXd conjugated =
            b.columns.transpose() * total_jz * b.columns;
        Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(dim, dim);
        for (const SchurSector& sector : b.sectors) {
            const int d = static_cast<int>(sector.multiplicity);
            for (int i = 0; i <= sector.j.twice(); ++i) {
                const double m = 0.5 * (sector.j.twice() - 2 * i);
                for (int alpha = 0; alpha < d; ++alpha) {
                    const int col = sector.column_offset + i * d + alpha;
                    expected(col, col) = m;
                }
            }
        }
        CHECK((conjugated - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("block expansion reproduces the dense tensor power") {
    for (int n : {1, 2, 3, 5, 8})
        for (double r : {0.0, 0.3, 0.7, 1.0}) {
            const Eigen::MatrixXcd dense =
                block_to_dense(tensor_power_blocks(r, n));
            const Eigen::MatrixXcd expected = qsb_test::dense_tensor_power(r, n);
            CHECK((dense - expected).cwiseAbs().maxCoeff() < 1e-10);
        }
}

TEST_CASE("dense_to_blocks inverts block_to_dense") {
    std::mt19937 rng(7);
    BlockDiagonalState state;
    state.num_qubits = 4;
    for (HalfInteger j : admissible_spins(4))
        state.blocks.push_back(
            {j, qsb_test::random_block_state(j.dim(), rng) / 3.0, multiplicity(4, j)});
    const BlockDiagonalState back =
        dense_to_blocks(block_to_dense(state), 4);
    for (std::size_t i = 0; i < state.blocks.size(); ++i)
        CHECK((back.blocks[i].block - state.blocks[i].block).cwiseAbs().maxCoeff() <
              1e-12);
}

TEST_CASE("schur_basis enforces its capacity window") {
    CHECK_THROWS_AS(schur_basis(0), domain_error);
    CHECK_THROWS_AS(schur_basis(13), capacity_error);
}
