#include <doctest.h>

#include <cmath>
#include <vector>

#include "qsb/correlations.hpp"
#include "test_util.hpp"

using namespace qsb;
using qsb_test::Complex;

namespace {

DensityMatrix bell_psi_plus() {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 0.5;
    return {2, rho};
}

DensityMatrix triplet_projector() {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(0, 0) = rho(3, 3) = 1.0 / 3.0;
    rho(1, 1) = rho(2, 2) = rho(1, 2) = rho(2, 1) = 1.0 / 6.0;
    return {2, rho};
}

}  // namespace

TEST_CASE("alpha-beta extraction of the landmark states") {
    const SymmetricPairState mixed = extract_alpha_beta(triplet_projector());
    CHECK(mixed.beta == doctest::Approx(0.0));
    CHECK(mixed.alpha == doctest::Approx(1.0 / 3.0));

    const SymmetricPairState bell = extract_alpha_beta(bell_psi_plus());
    CHECK(bell.beta == doctest::Approx(0.0));
    CHECK(bell.alpha == doctest::Approx(1.0));

    Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(4, 4);
    up(0, 0) = 1.0;
    const SymmetricPairState corner = extract_alpha_beta({2, up});
    CHECK(corner.beta == doctest::Approx(0.5));
    CHECK(corner.alpha == doctest::Approx(0.0));
}

TEST_CASE("extraction rejects states outside the family") {
    // 10% singlet weight
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    rho(0, 0) = 0.9;
    rho(1, 1) = rho(2, 2) = 0.05;
    rho(1, 2) = rho(2, 1) = -0.05;
    CHECK_THROWS_AS(extract_alpha_beta({2, rho}), contract_error);

    // coherence between m = +1 and m = 0 breaks [rho, J_z] = 0
    Eigen::MatrixXcd coherent = Eigen::MatrixXcd::Zero(4, 4);
    coherent(0, 0) = 0.6;
    coherent(1, 1) = coherent(2, 2) = 0.2;
    coherent(0, 1) = coherent(1, 0) = 0.1;
    CHECK_THROWS_AS(extract_alpha_beta({2, coherent}), contract_error);
}

TEST_CASE("reconstruction round-trips the diagonal") {
    for (double beta : {-0.4, -0.1, 0.0, 0.25})
        for (double alpha : {0.0, 0.15, 0.6}) {
            if (alpha > 1.0 - 2.0 * std::abs(beta)) continue;
            const SymmetricPairState s{alpha, beta};
            const SymmetricPairState back =
                extract_alpha_beta(reconstruct_pair_state(s));
            CHECK(back.alpha == doctest::Approx(alpha).epsilon(1e-10));
            CHECK(back.beta == doctest::Approx(beta).epsilon(1e-10));
        }
}

TEST_CASE("concurrence of the landmark states") {
    CHECK(concurrence(bell_psi_plus()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(triplet_projector()) == doctest::Approx(0.0));

    // product states
    Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(4, 4);
    up(0, 0) = 1.0;
    CHECK(concurrence({2, up}) == doctest::Approx(0.0));
    const Eigen::MatrixXcd product = qsb_test::dense_tensor_power(0.3, 2);
    CHECK(concurrence({2, product}) == doctest::Approx(0.0));
}

TEST_CASE("concurrence rejects non-states") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(4, 4);
    bad(0, 0) = 1.5;
    bad(3, 3) = -0.5;
    CHECK_THROWS_AS(concurrence({2, bad}), contract_error);
}

TEST_CASE("closed-form family concurrence") {
    CHECK(family_concurrence({1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(family_concurrence({0.6, 0.0}) == doctest::Approx(0.2).epsilon(1e-12));
    for (double beta : {0.0, 0.2, -0.2, 0.4, -0.4}) {
        const double alpha = 0.5 * (1.0 - 4.0 * beta * beta);
        CHECK(family_concurrence({alpha, beta}) <= 1e-12);
    }
    CHECK_THROWS_AS(family_concurrence({0.9, 0.4}), domain_error);
}

TEST_CASE("closed form agrees with generic Wootters across the triangle") {
    // 50 x 50 cell centers of the open triangle; the closed edges are covered
    // by the exact boundary and vertex cases above (on the edge itself a_-
    // drops to rounding scale, which no dense eigensolver can resolve).
    for (int i = 0; i < 50; ++i)
        for (int k = 0; k < 50; ++k) {
            const double beta = -0.5 + (i + 0.5) / 50.0;
            const double alpha = (k + 0.5) / 50.0 * (1.0 - 2.0 * std::abs(beta));
            const SymmetricPairState s{alpha, beta};
            REQUIRE(s.physical());
            const double closed = family_concurrence(s);
            const double generic = concurrence(reconstruct_pair_state(s));
            CHECK(std::abs(closed - generic) <= 1e-12);
        }
}

TEST_CASE("separability verdicts against the concurrence oracle") {
    CHECK_FALSE(is_entangled_family({1.0 / 3.0, 0.0}));
    CHECK(is_entangled_family({1.0, 0.0}));

    // just below / above the parabola at beta = 0.4, boundary alpha = 0.18
    const SymmetricPairState below{0.17, 0.4};
    const SymmetricPairState above{0.19, 0.4};
    CHECK_FALSE(is_entangled_family(below));
    CHECK(is_entangled_family(above));
    CHECK(concurrence(reconstruct_pair_state(below)) == doctest::Approx(0.0));
    CHECK(concurrence(reconstruct_pair_state(above)) > 0.0);
}

TEST_CASE("parabola touches the triangle corners") {
    CHECK(0.5 * (1.0 - 4.0 * 0.25) == 0.0);
    CHECK(family_concurrence({0.0, 0.5}) == doctest::Approx(0.0));
    CHECK(family_concurrence({0.0, -0.5}) == doctest::Approx(0.0));
}

TEST_CASE("concurrence curves of broadcast outputs") {
    SUBCASE("N = 2 entangles near purity") {
        const std::vector<double> grid{0.5, 0.9, 0.99};
        const auto points = concurrence_curve(2, 3, grid);
        CHECK(points.back().concurrence > 0.0);
    }
    SUBCASE("larger N stays below the N = 2 curve") {
        const std::vector<double> grid{0.3, 0.6, 0.9, 0.99};
        const auto small_n = concurrence_curve(2, 3, grid);
        const auto large_n = concurrence_curve(6, 7, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(large_n[i].concurrence <= small_n[i].concurrence + 1e-12);
    }
    SUBCASE("curve points stay inside the positivity triangle") {
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(0.05 * i);
        for (const auto& pt : concurrence_curve(4, 5, grid)) {
            CHECK(pt.alpha >= -1e-9);
            CHECK(pt.alpha <= 1.0 - 2.0 * std::abs(pt.beta) + 1e-9);
        }
    }
    SUBCASE("capacity window") {
        const std::vector<double> grid{0.5};
        CHECK_THROWS_AS(concurrence_curve(7, 8, grid), capacity_error);
        CHECK_THROWS_AS(concurrence_curve(4, 9, grid), capacity_error);
    }
}
