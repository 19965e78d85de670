#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qme/matrix.hpp"

namespace qme {

// Real Schur form A = Q * T * Q^T. T is quasi-upper-triangular: zero below
// the first subdiagonal, with 1x1 and 2x2 diagonal blocks. Every surviving
// 2x2 block carries a complex-conjugate eigenvalue pair (its discriminant is
// negative); 2x2 blocks with real eigenvalues are split during iteration.
struct SchurFactorization {
    DenseMatrix q;
    DenseMatrix t;
    std::vector<int> block_sizes;  // top-left to bottom-right, each 1 or 2
};

// Householder reduction to upper Hessenberg form, A = Q * H * Q^T.
// An input that is already Hessenberg comes back untouched with Q = I.
std::pair<DenseMatrix, DenseMatrix> hessenberg(const DenseMatrix& a);

// Francis implicit double-shift QR with deflation. max_sweeps = 0 selects
// the default budget of 30*n; exhausting it raises NoConvergence.
SchurFactorization real_schur(const DenseMatrix& a, std::size_t max_sweeps = 0);

}  // namespace qme
