#pragma once

#include <cstddef>
#include <vector>

#include "qme/lu.hpp"
#include "qme/matrix.hpp"
#include "qme/problem.hpp"
#include "qme/schur.hpp"

namespace qme {

// Reusable solve context for the step equation
//
//     M * Z + N * Z * X = E.
//
// Construction does the expensive work once: X is reduced to real Schur form
// X = U T U^T and one LU is cached per diagonal block of T — of (M + t*N)
// for a 1x1 block t, of the coupled 2n x 2n system for a 2x2 block. Each
// solve() is then a pair of orthogonal transforms plus columnwise back
// substitution against the cached factors.
//
// A Newton step for Q freezes M = A*X_k + B and N = A; repeated solves
// against one context are what make frozen-derivative inner updates cheap.
// The context is immutable after construction and safe to share across
// threads; it answers only for the exact X it was built from.
class NewtonStepContext {
public:
    NewtonStepContext(DenseMatrix m, DenseMatrix n, DenseMatrix x);

    DenseMatrix solve(const DenseMatrix& e) const;

    std::size_t order() const noexcept { return m_.rows(); }
    const DenseMatrix& coefficient_m() const noexcept { return m_; }
    const DenseMatrix& coefficient_n() const noexcept { return n_; }
    const DenseMatrix& frozen_x() const noexcept { return x_; }
    const SchurFactorization& schur_x() const noexcept { return schur_; }

    // worst diagonal ratio across the cached LU factors
    double condition_estimate() const noexcept { return cond_; }

private:
    struct BlockFactor {
        std::size_t col;          // first column of the block in T
        std::size_t dim;          // factored system size: n, or 2n for a 2x2 block
        std::size_t offset;       // into factor_arena_
        std::size_t perm_offset;  // into perm_arena_
    };

    DenseMatrix m_;
    DenseMatrix n_;
    DenseMatrix x_;
    SchurFactorization schur_;
    std::vector<BlockFactor> blocks_;
    std::vector<double> factor_arena_;
    std::vector<std::size_t> perm_arena_;
    double cond_ = 0.0;
};

// Context for one Newton step at X_k: M = A*X_k + B, N = A.
NewtonStepContext build_step_context(const QbdProblem& p, const DenseMatrix& xk);

// Z with M*Z + N*Z*frozen_X = E through the cached reduced form.
DenseMatrix solve_step(const NewtonStepContext& ctx, const DenseMatrix& e);

// Reference path: assembles the n^2 x n^2 system (X^T kron N + I kron M)
// vec(Z) = vec(E) and solves it by LU. Exact up to rounding but cubic in n^2;
// refuses n above cap.
DenseMatrix kronecker_solve(const DenseMatrix& m, const DenseMatrix& n, const DenseMatrix& x,
                            const DenseMatrix& e, std::size_t cap = 40);

}  // namespace qme
