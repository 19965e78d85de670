#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "qme/matrix.hpp"
#include "qme/problem.hpp"

namespace qme {

struct SolverOptions {
    // stop once the normalized residual falls to or below this
    double tol = 1e-13;
    // outer-step budget; the fixed-point baseline gets max_outer * 50 sweeps
    std::size_t max_outer = 200;
    // inner updates per derivative factorization (m); 1 reproduces pure Newton
    std::size_t inner_steps = 2;
    // enforce the monotone-chain properties; violations abort the solve
    bool check_monotone = true;
    // verify the M-matrix hypothesis at X0 and at each outer iterate
    bool check_mmatrix = true;
    // dimension cap for anything that assembles the n^2 x n^2 Kronecker form
    std::size_t kronecker_cap = 40;
    // starting iterate; defaults to the zero matrix
    std::optional<DenseMatrix> initial_guess;
    // called with each iterate right after an inner update
    std::function<void(const DenseMatrix&)> iterate_observer;
};

struct SolveReport {
    // derivative evaluations/factorizations (fixed point: sweeps)
    std::size_t outer_steps = 0;
    // individual updates; equals outer_steps for Newton and the fixed point
    std::size_t inner_steps = 0;
    // (inner step index, NRes) recorded after every inner update
    std::vector<std::pair<std::size_t, double>> residual_history;
    double final_nres = std::numeric_limits<double>::quiet_NaN();
    // no ordering or residual-sign violation was observed
    bool monotone_ok = true;
    // no attempted M-matrix certificate failed
    bool mmatrix_ok = true;
    bool converged = false;
    // worst cached-factor condition estimate across all step contexts
    double step_condition_estimate = 0.0;
    std::chrono::duration<double> elapsed{0.0};
};

// Natural fixed-point iteration X <- A X^2 + (B+I) X + C from X0. Linearly
// convergent baseline; from 0 the sequence increases monotonically to the
// minimal solution.
std::pair<DenseMatrix, SolveReport> fixed_point_solve(const QbdProblem& p,
                                                      const SolverOptions& opts = {});

// Newton iteration: per outer step, factor the derivative at X_k and apply
// one update. Quadratically convergent on the monotone path from 0.
std::pair<DenseMatrix, SolveReport> newton_solve(const QbdProblem& p,
                                                 const SolverOptions& opts = {});

// Newton with the derivative frozen for opts.inner_steps consecutive updates
// per factorization; trades extra cheap back-substitution steps for fewer
// Schur reductions. opts.inner_steps == 1 is bit-for-bit newton_solve.
std::pair<DenseMatrix, SolveReport> newton_shamanskii_solve(const QbdProblem& p,
                                                            const SolverOptions& opts = {});

struct MMatrixCertificate {
    // v > 0 with K v = e > 0, witnessing that K is a nonsingular M-matrix
    std::vector<double> v;
};

struct ZMatrixCheck {
    bool certified = false;
    std::vector<double> v;  // solution of K v = e when the solve succeeded
};

// Z-sign-pattern check plus the certificate solve K v = e on a square K.
// certified iff the solve succeeds and v is strictly positive. Throws
// NotZMatrix on a positive off-diagonal entry.
ZMatrixCheck certify_z_matrix(const DenseMatrix& k);

// Certificate that -[(X^T kron A + I kron A X) + I kron B] is a nonsingular
// M-matrix. X = 0 reduces to the n x n check on -B for any n; otherwise the
// n^2 x n^2 form is assembled, so n must not exceed cap.
std::optional<MMatrixCertificate> mmatrix_certificate(const QbdProblem& p, const DenseMatrix& x,
                                                      std::size_t cap = 40);

}  // namespace qme
