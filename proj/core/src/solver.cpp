#include "qme/solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qme/errors.hpp"
#include "qme/lu.hpp"
#include "qme/sylvester.hpp"

namespace qme {

namespace {

// rounding slack for the exact-arithmetic inequalities of the monotone theory
constexpr double kMonotoneSlack = 1e-12;

using Clock = std::chrono::steady_clock;

void check_common_options(const SolverOptions& opts, const QbdProblem& p) {
    if (!(opts.tol > 0.0)) throw ParameterOutOfRange("solver tol must be positive");
    if (opts.initial_guess &&
        (opts.initial_guess->rows() != p.n() || opts.initial_guess->cols() != p.n())) {
        throw DimensionMismatch("initial guess must be n x n");
    }
}

DenseMatrix starting_iterate(const QbdProblem& p, const SolverOptions& opts) {
    if (opts.initial_guess) return *opts.initial_guess;
    return DenseMatrix(p.n(), p.n(), 0.0);
}

// M-matrix certificate at an outer iterate. Returns false when the check is
// not affordable (n beyond the Kronecker cap and X != 0), true when it ran.
bool run_certificate(const QbdProblem& p, const DenseMatrix& x, const SolverOptions& opts,
                     SolveReport& report, const char* where) {
    if (p.n() > opts.kronecker_cap && x.max_abs() != 0.0) return false;
    if (!mmatrix_certificate(p, x, opts.kronecker_cap)) {
        report.mmatrix_ok = false;
        throw CertificateFailure(std::string("M-matrix certificate failed at ") + where);
    }
    return true;
}

void check_start_hypotheses(const QbdProblem& p, const DenseMatrix& x0, const DenseMatrix& qx0,
                            const SolverOptions& opts, SolveReport& report) {
    if (!opts.check_mmatrix) return;
    if (x0.min_entry() < 0.0) {
        throw MonotonicityViolation("initial guess has negative entries");
    }
    if (qx0.min_entry() < -kMonotoneSlack) {
        report.monotone_ok = false;
        throw MonotonicityViolation("Q(X0) has negative entries; X0 is not below the solution");
    }
    run_certificate(p, x0, opts, report, "X0");
}

// Shared Newton / Newton-Shamanskii driver; m updates per factorization.
std::pair<DenseMatrix, SolveReport> newton_like_solve(const QbdProblem& p,
                                                      const SolverOptions& opts, std::size_t m) {
    check_common_options(opts, p);
    if (m < 1) throw ParameterOutOfRange("inner step count m must be at least 1");

    const auto start = Clock::now();
    SolveReport report;

    DenseMatrix x = starting_iterate(p, opts);
    DenseMatrix qx = q_apply(p, x);
    double nres = residual_nres(p, x, qx);
    report.final_nres = nres;

    check_start_hypotheses(p, x, qx, opts, report);

    bool converged = nres <= opts.tol;
    while (!converged) {
        if (report.outer_steps >= opts.max_outer) {
            throw MaxIterations("no convergence within " + std::to_string(opts.max_outer) +
                                " outer steps (NRes " + std::to_string(nres) + ")");
        }
        if (opts.check_mmatrix && report.outer_steps > 0) {
            run_certificate(p, x, opts, report, "an outer iterate");
        }
        const NewtonStepContext ctx = build_step_context(p, x);
        ++report.outer_steps;
        report.step_condition_estimate =
            std::max(report.step_condition_estimate, ctx.condition_estimate());

        for (std::size_t s = 0; s < m; ++s) {
            const DenseMatrix z = ctx.solve(-qx);
            x += z;
            ++report.inner_steps;
            qx = q_apply(p, x);
            nres = residual_nres(p, x, qx);
            report.residual_history.emplace_back(report.inner_steps, nres);
            report.final_nres = nres;

            if (z.min_entry() < -kMonotoneSlack || qx.min_entry() < -kMonotoneSlack) {
                report.monotone_ok = false;
                if (opts.check_monotone) {
                    throw MonotonicityViolation(
                        "monotone chain violated at inner step " +
                        std::to_string(report.inner_steps) +
                        (z.min_entry() < -kMonotoneSlack ? " (decreasing iterate)"
                                                         : " (negative residual)"));
                }
            }
            if (opts.iterate_observer) opts.iterate_observer(x);
            if (nres <= opts.tol) {
                converged = true;
                break;
            }
        }
    }

    report.converged = true;
    report.elapsed = Clock::now() - start;
    return {std::move(x), std::move(report)};
}

}  // namespace

std::pair<DenseMatrix, SolveReport> fixed_point_solve(const QbdProblem& p,
                                                      const SolverOptions& opts) {
    check_common_options(opts, p);
    const auto start = Clock::now();
    const std::size_t max_steps = opts.max_outer * 50;
    SolveReport report;

    DenseMatrix x = starting_iterate(p, opts);
    // map value G = A X^2 + (B+I) X + C; note Q(X) = G - X
    auto map = [&p](const DenseMatrix& x_cur) {
        DenseMatrix ax = p.a() * x_cur;
        ax += p.b_plus_identity();
        DenseMatrix g = ax * x_cur;
        g += p.c();
        return g;
    };

    DenseMatrix g = map(x);
    DenseMatrix qx = g;
    qx -= x;
    double nres = residual_nres(p, x, qx);
    report.final_nres = nres;

    while (nres > opts.tol) {
        if (report.inner_steps >= max_steps) {
            throw MaxIterations("fixed point made no convergence within " +
                                std::to_string(max_steps) + " sweeps (NRes " +
                                std::to_string(nres) + ")");
        }
        if (qx.min_entry() < -kMonotoneSlack) {
            report.monotone_ok = false;
            if (opts.check_monotone) {
                throw MonotonicityViolation("fixed-point increment went negative at sweep " +
                                            std::to_string(report.inner_steps + 1));
            }
        }
        x = std::move(g);
        ++report.inner_steps;
        ++report.outer_steps;
        g = map(x);
        qx = g;
        qx -= x;
        nres = residual_nres(p, x, qx);
        report.residual_history.emplace_back(report.inner_steps, nres);
        report.final_nres = nres;
        if (opts.iterate_observer) opts.iterate_observer(x);
    }

    report.converged = true;
    report.elapsed = Clock::now() - start;
    return {std::move(x), std::move(report)};
}

std::pair<DenseMatrix, SolveReport> newton_solve(const QbdProblem& p, const SolverOptions& opts) {
    return newton_like_solve(p, opts, 1);
}

std::pair<DenseMatrix, SolveReport> newton_shamanskii_solve(const QbdProblem& p,
                                                            const SolverOptions& opts) {
    return newton_like_solve(p, opts, opts.inner_steps);
}

ZMatrixCheck certify_z_matrix(const DenseMatrix& k) {
    if (!k.is_square() || k.rows() == 0) {
        throw DimensionMismatch("certify_z_matrix: matrix must be square and nonempty");
    }
    const std::size_t n = k.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && k(i, j) > 0.0) throw NotZMatrix(i, j, k(i, j));
        }
    }
    ZMatrixCheck result;
    LuFactorization f{};
    try {
        f = lu_factor(k);
    } catch (const Singular&) {
        return result;  // singular: certainly not a nonsingular M-matrix
    }
    result.v = lu_solve(f, std::vector<double>(n, 1.0));
    result.certified = true;
    for (double vi : result.v) {
        if (!(vi > 0.0)) {
            result.certified = false;
            break;
        }
    }
    return result;
}

std::optional<MMatrixCertificate> mmatrix_certificate(const QbdProblem& p, const DenseMatrix& x,
                                                      std::size_t cap) {
    const std::size_t n = p.n();
    if (x.rows() != n || x.cols() != n) {
        throw DimensionMismatch("mmatrix_certificate: X must be n x n");
    }

    if (x.max_abs() == 0.0) {
        // K = -(I kron B) is block diagonal; certifying -B certifies every block
        const ZMatrixCheck base = certify_z_matrix(-p.b());
        if (!base.certified) return std::nullopt;
        MMatrixCertificate cert;
        cert.v.reserve(n * n);
        for (std::size_t b = 0; b < n; ++b) {
            cert.v.insert(cert.v.end(), base.v.begin(), base.v.end());
        }
        return cert;
    }

    if (n > cap) throw OracleCapExceeded(n, cap);

    // K = -[X^T kron A + I kron (A X + B)]
    DenseMatrix ax = p.a() * x;
    ax += p.b();
    const std::size_t nn = n * n;
    DenseMatrix k(nn, nn);
    for (std::size_t jp = 0; jp < n; ++jp) {
        for (std::size_t ip = 0; ip < n; ++ip) {
            const double xv = x(jp, ip);
            const bool diag = ip == jp;
            if (xv == 0.0 && !diag) continue;
            for (std::size_t iq = 0; iq < n; ++iq) {
                auto row = k.row(ip * n + iq);
                for (std::size_t jq = 0; jq < n; ++jq) {
                    double v = xv * p.a()(iq, jq);
                    if (diag) v += ax(iq, jq);
                    row[jp * n + jq] = -v;
                }
            }
        }
    }
    const ZMatrixCheck check = certify_z_matrix(k);
    if (!check.certified) return std::nullopt;
    return MMatrixCertificate{std::move(check.v)};
}

}  // namespace qme
