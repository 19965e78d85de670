#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qme/errors.hpp"
#include "qme/generators.hpp"
#include "qme/problem.hpp"
#include "qme/solver.hpp"
#include "support.hpp"

using namespace qme;
using namespace qme::test;

namespace {

// strictly positive random QBD problem built directly from the invariants
QbdProblem small_random_problem(std::mt19937_64& rng, std::size_t n) {
    return random_problem(n, rng());
}

}  // namespace

TEST_CASE("validate: delta example passes, mutations fail") {
    const QbdProblem p = make_delta_example(20, 0.5);
    CHECK(p.n() == 20);

    DenseMatrix a = p.a(), b = p.b(), c = p.c();

    SUBCASE("negative entry in A") {
        a(0, 0) = -0.1;
        CHECK_THROWS_AS(validate_problem(a, b, c), NegativeEntry);
        try {
            validate_problem(a, b, c);
        } catch (const NegativeEntry& e) {
            CHECK(e.block == "A");
            CHECK(e.row == 0);
            CHECK(e.col == 0);
        }
    }
    SUBCASE("B below -I") {
        b(3, 3) = -1.5;
        try {
            validate_problem(a, b, c);
            FAIL("expected NegativeEntry");
        } catch (const NegativeEntry& e) {
            CHECK(e.block == "B+I");
            CHECK(e.row == 3);
        }
    }
    SUBCASE("perturbed row sum") {
        c(2, 5) += 1e-6;
        try {
            validate_problem(a, b, c);
            FAIL("expected RowSumViolation");
        } catch (const RowSumViolation& e) {
            CHECK(e.row == 2);
            CHECK(e.deviation == doctest::Approx(1e-6).epsilon(1e-3));
        }
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(validate_problem(a, b, DenseMatrix(19, 19)), DimensionMismatch);
    }
    SUBCASE("non-finite entry") {
        a(1, 1) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_problem(a, b, c), NonFiniteInput);
    }
}

TEST_CASE("validate: reducible pattern is reported with its invariant subset") {
    // two 1-state groups with no transitions between them
    DenseMatrix a(2, 2, 0.0), b(2, 2, 0.0), c(2, 2, 0.0);
    a(0, 0) = 0.5;
    c(0, 0) = 0.5;
    b(0, 0) = -1.0;
    a(1, 1) = 0.3;
    c(1, 1) = 0.7;
    b(1, 1) = -1.0;
    try {
        validate_problem(a, b, c);
        FAIL("expected Reducible");
    } catch (const Reducible& e) {
        CHECK(e.invariant_subset == std::vector<std::size_t>{0});
    }
}

TEST_CASE("validate: scalar edge case") {
    const QbdProblem p = validate_problem(DenseMatrix{{0.0}}, DenseMatrix{{-0.5}},
                                          DenseMatrix{{0.5}});
    CHECK(p.n() == 1);
    CHECK(p.b_plus_identity()(0, 0) == 0.5);
}

TEST_CASE("q_apply: zero, exact root, dimensions") {
    const QbdProblem p = make_delta_example(6, 0.3);
    CHECK(q_apply(p, DenseMatrix(6, 6, 0.0)) == p.c());
    CHECK_THROWS_AS(q_apply(p, DenseMatrix(5, 5)), DimensionMismatch);

    const QbdProblem s = make_scalar_problem(0.2, 0.5);
    CHECK(q_apply(s, DenseMatrix{{1.0}})(0, 0) == 0.0);
}

TEST_CASE("q_apply: residual at a converged solution") {
    const QbdProblem p = make_delta_example(5, 0.5);
    auto [sol, report] = newton_solve(p);
    const double bound = 1e-12 * (p.norm_a() * sol.inf_norm() * sol.inf_norm() +
                                  p.norm_b() * sol.inf_norm() + p.norm_c());
    CHECK(q_apply(p, sol).inf_norm() <= bound);
}

TEST_CASE("frechet_apply: degenerate arguments") {
    const QbdProblem p = make_delta_example(4, 0.4);
    std::mt19937_64 rng(5);
    DenseMatrix z = random_matrix(rng, 4, 4);
    CHECK(frechet_apply(p, DenseMatrix(4, 4, 0.0), z) == p.b() * z);
    CHECK(frechet_apply(p, z, DenseMatrix(4, 4, 0.0)) == DenseMatrix(4, 4, 0.0));
}

TEST_CASE("frechet_apply: agrees with central differences") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const QbdProblem p = small_random_problem(rng, 5);
        DenseMatrix x = random_matrix(rng, 5, 5, 0.0, 1.0);
        DenseMatrix z = random_matrix(rng, 5, 5);
        DenseMatrix analytic = frechet_apply(p, x, z);
        DenseMatrix numeric = finite_difference_frechet(p, x, z);
        CHECK(max_abs_diff(analytic, numeric) <= 1e-8 * (1.0 + analytic.max_abs()));
    }
}

TEST_CASE("second derivative: symmetry and collapse") {
    std::mt19937_64 rng(9);
    const QbdProblem p = small_random_problem(rng, 6);
    DenseMatrix z1 = random_matrix(rng, 6, 6);
    DenseMatrix z2 = random_matrix(rng, 6, 6);
    CHECK(second_derivative_apply(p, z1, z2) == second_derivative_apply(p, z2, z1));
    CHECK(second_derivative_apply(p, DenseMatrix(6, 6, 0.0), z2) == DenseMatrix(6, 6, 0.0));

    DenseMatrix twice = second_derivative_apply(p, z1, z1);
    DenseMatrix direct = 2.0 * (p.a() * (z1 * z1));
    CHECK(max_abs_diff(twice, direct) <= 1e-14 * direct.max_abs());
}

TEST_CASE("exact second-order Taylor identity") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(u01(rng) * 10);
        const QbdProblem p = small_random_problem(rng, n);
        DenseMatrix x = random_matrix(rng, n, n);
        DenseMatrix z = random_matrix(rng, n, n);
        DenseMatrix xz = x;
        xz += z;
        DenseMatrix lhs = q_apply(p, xz);
        lhs -= q_apply(p, x);
        lhs -= frechet_apply(p, x, z);
        lhs.add_scaled(second_derivative_apply(p, z, z), -0.5);
        const double scale = q_apply(p, xz).inf_norm() + q_apply(p, x).inf_norm() +
                             frechet_apply(p, x, z).inf_norm() + 1.0;
        CHECK(lhs.inf_norm() <= 1e-13 * scale);
    }
}

TEST_CASE("stationary_vector: uniform for the symmetric delta example") {
    const QbdProblem p = make_delta_example(8, 0.5);
    DenseMatrix sum = p.a() + p.b() + p.c();
    sum.add_identity();
    std::vector<double> pi = stationary_vector(sum);
    for (double v : pi) CHECK(v == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

    CHECK(stationary_vector(DenseMatrix{{1.0}}) == std::vector<double>{1.0});
}

TEST_CASE("stationary_vector: random stochastic matrices") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 6;
        DenseMatrix p(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                p(i, j) = 0.05 + u01(rng);
                total += p(i, j);
            }
            for (std::size_t j = 0; j < n; ++j) p(i, j) /= total;
        }
        std::vector<double> pi = stationary_vector(p, 1e-9);
        double sum = 0.0;
        for (double v : pi) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        // residual ||pi^T P - pi^T||_inf
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += pi[i] * p(i, j);
            worst = std::max(worst, std::abs(s - pi[j]));
        }
        CHECK(worst <= 1e-12);
        // cross-check against power iteration
        std::vector<double> ref = power_iteration_stationary(p);
        for (std::size_t i = 0; i < n; ++i) CHECK(pi[i] == doctest::Approx(ref[i]).epsilon(1e-9));
    }
}

TEST_CASE("stationary_vector: non-stochastic and reducible inputs fail") {
    CHECK_THROWS_AS(stationary_vector(DenseMatrix{{0.5, 0.2}, {0.3, 0.7}}), SingularSystem);
    // block-diagonal stochastic: reducible, replaced system is singular
    DenseMatrix block{{1.0, 0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(stationary_vector(block), SingularSystem);
}

TEST_CASE("drift_rate: delta examples give exactly 1 - delta") {
    for (std::size_t n : {5ul, 20ul, 50ul}) {
        for (double delta : {0.5, 0.1, 1e-3}) {
            CHECK(std::abs(drift_rate(make_delta_example(n, delta)) - (1.0 - delta)) <= 1e-12);
        }
    }
}

TEST_CASE("drift_rate: scalar closed form") {
    CHECK(drift_rate(make_scalar_problem(0.2, 0.5)) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(drift_rate(make_scalar_problem(0.5, 0.2)) == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("residual_nres: anchors") {
    const QbdProblem s = make_scalar_problem(0.2, 0.5);
    CHECK(residual_nres(s, DenseMatrix{{1.0}}) <= 1e-16);
    CHECK(residual_nres(s, DenseMatrix{{0.0}}) == 1.0);

    // C = 0: the zero matrix is an exact solution and the residual is 0
    const QbdProblem c0 = make_scalar_problem(0.5, 0.0);
    CHECK(residual_nres(c0, DenseMatrix{{0.0}}) == 0.0);
}

TEST_CASE("validate accepts every generator output") {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(u01(rng) * 12);
        CHECK_NOTHROW(random_problem(n, rng()));
    }
    CHECK_NOTHROW(make_delta_example(2, 0.9));
    CHECK_NOTHROW(make_scalar_problem(0.0, 1.0));
}
