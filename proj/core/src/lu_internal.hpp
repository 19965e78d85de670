#pragma once

#include <cstddef>
#include <span>

namespace qme::detail {

// P*A = L*U in place on a row-major n x n buffer; perm receives the row
// mapping (row i of P*A is row perm[i] of the input). Throws Singular when a
// pivot falls below 1e-14 * ||A||_inf.
void lu_factor_kernel(std::span<double> a, std::size_t n, std::span<std::size_t> perm);

// Solves with a factored buffer; x must not alias rhs.
void lu_solve_kernel(std::span<const double> a, std::size_t n, std::span<const std::size_t> perm,
                     std::span<const double> rhs, std::span<double> x);

}  // namespace qme::detail
