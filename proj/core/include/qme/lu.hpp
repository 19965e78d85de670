#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qme/matrix.hpp"

namespace qme {

// LU factorization with partial pivoting, P*A = L*U. L (unit lower) and U
// share one matrix; perm[i] names the row of A that ended up in position i.
// Reusable across any number of right-hand sides.
struct LuFactorization {
    DenseMatrix lu;
    std::vector<std::size_t> perm;

    std::size_t order() const noexcept { return lu.rows(); }

    // max |u_ii| / min |u_ii|; a cheap lower bound on the condition number.
    double condition_estimate() const noexcept;
};

// Throws Singular when a pivot falls below 1e-14 * ||A||_inf.
LuFactorization lu_factor(const DenseMatrix& a);

std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> rhs);
DenseMatrix lu_solve(const LuFactorization& f, const DenseMatrix& rhs);

}  // namespace qme
