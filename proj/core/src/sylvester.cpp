#include "qme/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "lu_internal.hpp"
#include "qme/errors.hpp"

namespace qme {

namespace {

void require_square_of(const DenseMatrix& m, std::size_t n, const char* what) {
    if (m.rows() != n || m.cols() != n) {
        throw DimensionMismatch(std::string(what) + " must be " + std::to_string(n) + "x" +
                                std::to_string(n));
    }
}

}  // namespace

NewtonStepContext::NewtonStepContext(DenseMatrix m, DenseMatrix n, DenseMatrix x)
    : m_(std::move(m)), n_(std::move(n)), x_(std::move(x)) {
    if (!m_.is_square() || m_.rows() == 0) {
        throw DimensionMismatch("step context: M must be square and nonempty");
    }
    const std::size_t dim = m_.rows();
    require_square_of(n_, dim, "step context: N");
    require_square_of(x_, dim, "step context: X");

    schur_ = real_schur(x_);
    const DenseMatrix& t = schur_.t;

    // all factors live in one arena; a 2x2 block owns the coupled 2n system
    std::size_t data_size = 0, perm_size = 0;
    for (int bs : schur_.block_sizes) {
        const std::size_t d = (bs == 1) ? dim : 2 * dim;
        data_size += d * d;
        perm_size += d;
    }
    factor_arena_.resize(data_size);
    perm_arena_.resize(perm_size);
    blocks_.reserve(schur_.block_sizes.size());

    std::size_t j = 0, off = 0, poff = 0;
    for (std::size_t b = 0; b < schur_.block_sizes.size(); ++b) {
        const int size = schur_.block_sizes[b];
        const std::size_t d = (size == 1) ? dim : 2 * dim;
        const std::span<double> slice(factor_arena_.data() + off, d * d);
        const std::span<std::size_t> perm(perm_arena_.data() + poff, d);

        if (size == 1) {
            const double tv = t(j, j);
            for (std::size_t r = 0; r < dim; ++r) {
                auto mr = m_.row(r);
                auto nr = n_.row(r);
                double* out = slice.data() + r * dim;
                for (std::size_t c = 0; c < dim; ++c) out[c] = mr[c] + tv * nr[c];
            }
        } else {
            // [ M + t(j,j) N       t(j+1,j) N     ] [y_j  ]   [rhs_j  ]
            // [ t(j,j+1) N       M + t(j+1,j+1) N ] [y_j+1] = [rhs_j+1]
            const double t00 = t(j, j), t10 = t(j + 1, j);
            const double t01 = t(j, j + 1), t11 = t(j + 1, j + 1);
            for (std::size_t r = 0; r < dim; ++r) {
                auto mr = m_.row(r);
                auto nr = n_.row(r);
                double* top = slice.data() + r * d;
                double* bottom = slice.data() + (dim + r) * d;
                for (std::size_t c = 0; c < dim; ++c) {
                    top[c] = mr[c] + t00 * nr[c];
                    top[dim + c] = t10 * nr[c];
                    bottom[c] = t01 * nr[c];
                    bottom[dim + c] = mr[c] + t11 * nr[c];
                }
            }
        }
        try {
            detail::lu_factor_kernel(slice, d, perm);
        } catch (const Singular&) {
            throw SingularStepMatrix(b, t(j, j));
        }
        double lo = std::abs(slice[0]), hi = lo;
        for (std::size_t r = 1; r < d; ++r) {
            const double v = std::abs(slice[r * d + r]);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        cond_ = std::max(cond_, lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());

        blocks_.push_back(BlockFactor{j, d, off, poff});
        off += d * d;
        poff += d;
        j += static_cast<std::size_t>(size);
    }
}

DenseMatrix NewtonStepContext::solve(const DenseMatrix& e) const {
    const std::size_t dim = order();
    require_square_of(e, dim, "solve_step: E");

    const DenseMatrix& u = schur_.q;
    const DenseMatrix& t = schur_.t;

    // M Y + N Y T = E U, columnwise in Schur order, then Z = Y U^T.
    const DenseMatrix ep = e * u;
    DenseMatrix y(dim, dim);
    std::vector<double> w(dim), rhs(2 * dim), sol(2 * dim);

    for (const BlockFactor& blk : blocks_) {
        const std::size_t j = blk.col;
        const std::size_t cols = blk.dim / dim;  // 1 or 2
        for (std::size_t col = 0; col < cols; ++col) {
            const std::size_t jc = j + col;
            // w = sum_{i<j} T(i, jc) * y_i over the already-solved columns
            std::fill(w.begin(), w.end(), 0.0);
            for (std::size_t i = 0; i < j; ++i) {
                const double tij = t(i, jc);
                if (tij == 0.0) continue;
                for (std::size_t r = 0; r < dim; ++r) w[r] += tij * y(r, i);
            }
            // rhs = E'(:, jc) - N w
            double* out = rhs.data() + col * dim;
            for (std::size_t r = 0; r < dim; ++r) {
                double s = ep(r, jc);
                auto nr = n_.row(r);
                for (std::size_t k = 0; k < dim; ++k) s -= nr[k] * w[k];
                out[r] = s;
            }
        }
        detail::lu_solve_kernel(
            std::span<const double>(factor_arena_.data() + blk.offset, blk.dim * blk.dim),
            blk.dim, std::span<const std::size_t>(perm_arena_.data() + blk.perm_offset, blk.dim),
            std::span<const double>(rhs.data(), blk.dim), std::span<double>(sol.data(), blk.dim));
        for (std::size_t col = 0; col < cols; ++col) {
            for (std::size_t r = 0; r < dim; ++r) y(r, j + col) = sol[col * dim + r];
        }
    }
    return multiply_abt(y, u);  // Y U^T
}

NewtonStepContext build_step_context(const QbdProblem& p, const DenseMatrix& xk) {
    require_square_of(xk, p.n(), "build_step_context: X_k");
    DenseMatrix m = p.a() * xk;
    m += p.b();
    return NewtonStepContext(std::move(m), p.a(), xk);
}

DenseMatrix solve_step(const NewtonStepContext& ctx, const DenseMatrix& e) {
    return ctx.solve(e);
}

DenseMatrix kronecker_solve(const DenseMatrix& m, const DenseMatrix& n, const DenseMatrix& x,
                            const DenseMatrix& e, std::size_t cap) {
    if (!m.is_square() || m.rows() == 0) {
        throw DimensionMismatch("kronecker_solve: M must be square and nonempty");
    }
    const std::size_t dim = m.rows();
    require_square_of(n, dim, "kronecker_solve: N");
    require_square_of(x, dim, "kronecker_solve: X");
    require_square_of(e, dim, "kronecker_solve: E");
    if (dim > cap) throw OracleCapExceeded(dim, cap);

    // vec stacks columns: vec(Z)[jp*dim + iq] = Z(iq, jp).
    const std::size_t nn = dim * dim;
    DenseMatrix big(nn, nn);
    for (std::size_t jp = 0; jp < dim; ++jp) {
        for (std::size_t ip = 0; ip < dim; ++ip) {
            const double xv = x(jp, ip);  // (X^T)(ip, jp)
            const bool diag = ip == jp;
            if (xv == 0.0 && !diag) continue;
            for (std::size_t iq = 0; iq < dim; ++iq) {
                auto row = big.row(ip * dim + iq);
                for (std::size_t jq = 0; jq < dim; ++jq) {
                    double v = xv * n(iq, jq);
                    if (diag) v += m(iq, jq);
                    row[jp * dim + jq] = v;
                }
            }
        }
    }
    std::vector<double> vec_e(nn);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) vec_e[j * dim + i] = e(i, j);
    }
    const LuFactorization f = lu_factor(big);
    const std::vector<double> vec_z = lu_solve(f, vec_e);
    DenseMatrix z(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) z(i, j) = vec_z[j * dim + i];
    }
    return z;
}

}  // namespace qme
