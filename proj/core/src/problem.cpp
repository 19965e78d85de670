#include "qme/problem.hpp"

#include <cmath>
#include <utility>

#include "qme/errors.hpp"
#include "qme/lu.hpp"

namespace qme {

namespace {

void require_block_nonnegative(const DenseMatrix& m, const char* name, bool shift_diagonal) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double v = m(i, j) + ((shift_diagonal && i == j) ? 1.0 : 0.0);
            if (v < 0.0) throw NegativeEntry(name, i, j, v);
        }
    }
}

// Forward reachability over the boolean pattern sum(i,j) > 0.
std::vector<bool> reachable(const DenseMatrix& sum, bool transposed) {
    const std::size_t n = sum.rows();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n; ++v) {
            if (seen[v]) continue;
            const double w = transposed ? sum(v, u) : sum(u, v);
            if (w > 0.0) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

QbdProblem::QbdProblem(DenseMatrix a, DenseMatrix b, DenseMatrix c)
    : n_(a.rows()),
      a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      b_plus_i_(b_),
      norm_a_(a_.inf_norm()),
      norm_b_(b_.inf_norm()),
      norm_c_(c_.inf_norm()) {
    b_plus_i_.add_identity();
}

QbdProblem QbdProblem::validate(DenseMatrix a, DenseMatrix b, DenseMatrix c, double row_sum_tol) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionMismatch("coefficient blocks must be square and nonempty");
    }
    if (b.rows() != a.rows() || b.cols() != a.cols() || c.rows() != a.rows() ||
        c.cols() != a.cols()) {
        throw DimensionMismatch("coefficient blocks A, B, C must share one dimension");
    }
    if (!a.all_finite()) throw NonFiniteInput("block A has a non-finite entry");
    if (!b.all_finite()) throw NonFiniteInput("block B has a non-finite entry");
    if (!c.all_finite()) throw NonFiniteInput("block C has a non-finite entry");

    require_block_nonnegative(a, "A", false);
    require_block_nonnegative(b, "B+I", true);
    require_block_nonnegative(c, "C", false);

    const std::size_t n = a.rows();
    DenseMatrix sum = a;  // A + B + I + C, entrywise nonnegative by the checks above
    sum += b;
    sum += c;
    sum.add_identity();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : sum.row(i)) s += v;
        if (std::abs(s - 1.0) > row_sum_tol) throw RowSumViolation(i, s - 1.0);
    }

    if (n > 1) {
        const std::vector<bool> fwd = reachable(sum, false);
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (fwd[i]) subset.push_back(i);
        }
        if (subset.size() < n) throw Reducible(std::move(subset));
        const std::vector<bool> bwd = reachable(sum, true);
        subset.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (!bwd[i]) subset.push_back(i);
        }
        if (!subset.empty()) throw Reducible(std::move(subset));
    }

    return QbdProblem(std::move(a), std::move(b), std::move(c));
}

QbdProblem validate_problem(DenseMatrix a, DenseMatrix b, DenseMatrix c, double row_sum_tol) {
    return QbdProblem::validate(std::move(a), std::move(b), std::move(c), row_sum_tol);
}

DenseMatrix q_apply(const QbdProblem& p, const DenseMatrix& x) {
    if (x.rows() != p.n() || x.cols() != p.n()) {
        throw DimensionMismatch("q_apply: X must be n x n");
    }
    // (A X + B) X + C
    DenseMatrix ax = p.a() * x;
    ax += p.b();
    DenseMatrix r = ax * x;
    r += p.c();
    return r;
}

DenseMatrix frechet_apply(const QbdProblem& p, const DenseMatrix& x, const DenseMatrix& z) {
    if (x.rows() != p.n() || x.cols() != p.n() || z.rows() != p.n() || z.cols() != p.n()) {
        throw DimensionMismatch("frechet_apply: X and Z must be n x n");
    }
    DenseMatrix az = p.a() * z;
    DenseMatrix r = az * x;        // A Z X
    DenseMatrix ax = p.a() * x;
    ax += p.b();
    r += ax * z;                   // + (A X + B) Z
    return r;
}

DenseMatrix second_derivative_apply(const QbdProblem& p, const DenseMatrix& z1,
                                    const DenseMatrix& z2) {
    if (z1.rows() != p.n() || z1.cols() != p.n() || z2.rows() != p.n() || z2.cols() != p.n()) {
        throw DimensionMismatch("second_derivative_apply: Z1 and Z2 must be n x n");
    }
    DenseMatrix s = z1 * z2;
    s += z2 * z1;
    return p.a() * s;
}

std::vector<double> stationary_vector(const DenseMatrix& p, double tol) {
    if (!p.is_square() || p.rows() == 0) {
        throw DimensionMismatch("stationary_vector: matrix must be square and nonempty");
    }
    const std::size_t n = p.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double v : p.row(i)) s += v;
        if (std::abs(s - 1.0) > tol) {
            throw SingularSystem("stationary_vector: row " + std::to_string(i) +
                                 " is not stochastic within tolerance");
        }
    }
    if (n == 1) return {1.0};

    // (P^T - I) with the last equation replaced by sum(p) = 1
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
    }
    for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = 1.0;
    std::vector<double> rhs(n, 0.0);
    rhs[n - 1] = 1.0;

    try {
        const LuFactorization f = lu_factor(m);
        return lu_solve(f, rhs);
    } catch (const Singular&) {
        throw SingularSystem(
            "stationary_vector: replaced system is singular (matrix reducible or not "
            "stochastic)");
    }
}

double drift_rate(const QbdProblem& p) {
    const std::size_t n = p.n();
    DenseMatrix sum = p.a();
    sum += p.b();
    sum += p.c();
    sum.add_identity();
    // validation already pinned the row sums to 1e-12; 1e-9 here is pure slack
    const std::vector<double> pi = stationary_vector(sum, 1e-9);

    double rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 1.0;  // the I term
        for (std::size_t j = 0; j < n; ++j) row += p.b()(i, j) + 2.0 * p.a()(i, j);
        rho += pi[i] * row;
    }
    return rho;
}

double residual_nres(const QbdProblem& p, const DenseMatrix& x) {
    return residual_nres(p, x, q_apply(p, x));
}

double residual_nres(const QbdProblem& p, const DenseMatrix& x, const DenseMatrix& qx) {
    const double nx = x.inf_norm();
    const double denom = nx * (p.norm_a() * nx + p.norm_b()) + p.norm_c();
    if (denom == 0.0) return 0.0;  // then A X^2 + B X + C = 0 as well
    return qx.inf_norm() / denom;
}

}  // namespace qme
