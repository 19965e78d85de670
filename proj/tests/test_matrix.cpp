#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "qme/errors.hpp"
#include "qme/matrix.hpp"
#include "support.hpp"

using namespace qme;
using namespace qme::test;

TEST_CASE("construction and indexing") {
    DenseMatrix m(2, 3, 1.5);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 1.5);
    m(0, 1) = -2.0;
    CHECK(m(0, 1) == -2.0);

    DenseMatrix init{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(init(1, 0) == 3.0);
    CHECK_THROWS_AS(DenseMatrix({{1.0}, {2.0, 3.0}}), DimensionMismatch);
}

TEST_CASE("identity and product") {
    DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    DenseMatrix i = DenseMatrix::identity(2);
    CHECK(a * i == a);
    CHECK(i * a == a);

    DenseMatrix b{{5.0, 6.0}, {7.0, 8.0}};
    DenseMatrix ab = a * b;
    CHECK(ab(0, 0) == 19.0);
    CHECK(ab(0, 1) == 22.0);
    CHECK(ab(1, 0) == 43.0);
    CHECK(ab(1, 1) == 50.0);

    CHECK_THROWS_AS(a * DenseMatrix(3, 2), DimensionMismatch);
}

TEST_CASE("product against transpose helper") {
    std::mt19937_64 rng(3);
    DenseMatrix a = random_matrix(rng, 7, 5);
    DenseMatrix b = random_matrix(rng, 6, 5);
    CHECK(max_abs_diff(multiply_abt(a, b), a * b.transpose()) == 0.0);
}

TEST_CASE("norms") {
    DenseMatrix m{{1.0, -2.0}, {-3.0, 0.5}};
    CHECK(m.inf_norm() == 3.5);
    CHECK(m.max_abs() == 3.0);
    CHECK(m.min_entry() == -3.0);
    CHECK(m.all_finite());
    m(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(!m.all_finite());
}

TEST_CASE("arithmetic") {
    DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
    DenseMatrix b{{0.5, 0.5}, {0.5, 0.5}};
    DenseMatrix sum = a + b;
    CHECK(sum(0, 0) == 1.5);
    DenseMatrix diff = sum - b;
    CHECK(diff == a);
    DenseMatrix scaled = 2.0 * a;
    CHECK(scaled(1, 1) == 8.0);
    DenseMatrix neg = -a;
    CHECK(neg(0, 1) == -2.0);

    DenseMatrix c = a;
    c.add_scaled(b, 2.0);
    CHECK(c(0, 0) == 2.0);
    c.add_identity(-1.0);
    CHECK(c(0, 0) == 1.0);

    CHECK_THROWS_AS(a += DenseMatrix(3, 3), DimensionMismatch);
}

TEST_CASE("transpose is an involution") {
    std::mt19937_64 rng(11);
    DenseMatrix a = random_matrix(rng, 9, 4);
    CHECK(a.transpose().transpose() == a);
}

TEST_CASE("matrix-vector product") {
    DenseMatrix a{{2.0, 0.0}, {1.0, 3.0}};
    std::vector<double> x{1.0, 2.0};
    std::vector<double> y = multiply(a, x);
    CHECK(y[0] == 2.0);
    CHECK(y[1] == 7.0);
}
