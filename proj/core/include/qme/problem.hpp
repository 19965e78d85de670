#pragma once

#include <cstddef>
#include <vector>

#include "qme/matrix.hpp"

namespace qme {

// Validated coefficient triple of the quadratic matrix equation
//
//     Q(X) = A X^2 + B X + C = 0
//
// coming from a discrete-time quasi-birth-death chain. Invariants, enforced
// by validate():
//   - A >= 0, B + I >= 0, C >= 0 elementwise,
//   - A + B + I + C is irreducible,
//   - every row of A + B + I + C sums to 1 (within row_sum_tol).
// The object of interest is the elementwise-minimal nonnegative solution S.
class QbdProblem {
public:
    static QbdProblem validate(DenseMatrix a, DenseMatrix b, DenseMatrix c,
                               double row_sum_tol = 1e-12);

    std::size_t n() const noexcept { return n_; }
    const DenseMatrix& a() const noexcept { return a_; }
    const DenseMatrix& b() const noexcept { return b_; }
    const DenseMatrix& c() const noexcept { return c_; }
    const DenseMatrix& b_plus_identity() const noexcept { return b_plus_i_; }

    double norm_a() const noexcept { return norm_a_; }
    double norm_b() const noexcept { return norm_b_; }
    double norm_c() const noexcept { return norm_c_; }

    friend bool operator==(const QbdProblem& lhs, const QbdProblem& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.c_ == rhs.c_;
    }

private:
    QbdProblem(DenseMatrix a, DenseMatrix b, DenseMatrix c);

    std::size_t n_;
    DenseMatrix a_, b_, c_;
    DenseMatrix b_plus_i_;
    double norm_a_, norm_b_, norm_c_;
};

QbdProblem validate_problem(DenseMatrix a, DenseMatrix b, DenseMatrix c,
                            double row_sum_tol = 1e-12);

// Q(X) = A X^2 + B X + C.
DenseMatrix q_apply(const QbdProblem& p, const DenseMatrix& x);

// Derivative of Q at X applied to Z: A Z X + A X Z + B Z.
DenseMatrix frechet_apply(const QbdProblem& p, const DenseMatrix& x, const DenseMatrix& z);

// Second derivative applied to (Z1, Z2): A Z1 Z2 + A Z2 Z1. Symmetric in its
// arguments; together with frechet_apply the expansion
// Q(X+Z) = Q(X) + Q'_X(Z) + Q''(Z,Z)/2 is exact.
DenseMatrix second_derivative_apply(const QbdProblem& p, const DenseMatrix& z1,
                                    const DenseMatrix& z2);

// Stationary vector p of a row-stochastic irreducible matrix: p^T P = p^T,
// p >= 0, sum(p) = 1. Direct solve of (P^T - I) with the last equation
// replaced by the normalization. Throws SingularSystem when the replaced
// system is singular (reducible or otherwise invalid P).
std::vector<double> stationary_vector(const DenseMatrix& p, double tol = 1e-12);

// Drift rate rho = p^T (B + I + 2A) e with p stationary for A + B + I + C.
// The chain is positive recurrent iff rho < 1.
double drift_rate(const QbdProblem& p);

// Normalized residual
//   ||A X^2 + B X + C|| / (||X|| (||A|| ||X|| + ||B||) + ||C||)
// in the matrix infinity-norm. A vanishing denominator forces a vanishing
// numerator, in which case the residual is 0.
double residual_nres(const QbdProblem& p, const DenseMatrix& x);
double residual_nres(const QbdProblem& p, const DenseMatrix& x, const DenseMatrix& qx);

}  // namespace qme
