#include "qme/lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lu_internal.hpp"
#include "qme/errors.hpp"

namespace qme {

namespace detail {

void lu_factor_kernel(std::span<double> a, std::size_t n, std::span<std::size_t> perm) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += std::abs(a[i * n + j]);
        norm = std::max(norm, sum);
    }
    const double pivot_floor = 1e-14 * norm;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(a[i * n + k]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= pivot_floor) {
            throw Singular("zero pivot at elimination step " + std::to_string(k));
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            std::swap(perm[k], perm[p]);
        }
        const double inv_pivot = 1.0 / a[k * n + k];
        const double* rk = a.data() + k * n;
        for (std::size_t i = k + 1; i < n; ++i) {
            double* ri = a.data() + i * n;
            const double mult = ri[k] * inv_pivot;
            ri[k] = mult;
            if (mult == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) ri[j] -= mult * rk[j];
        }
    }
}

void lu_solve_kernel(std::span<const double> a, std::size_t n, std::span<const std::size_t> perm,
                     std::span<const double> rhs, std::span<double> x) {
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
        const double* ri = a.data() + i * n;
        double sum = x[i];
        for (std::size_t j = 0; j < i; ++j) sum -= ri[j] * x[j];
        x[i] = sum;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        const double* ri = a.data() + ii * n;
        double sum = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) sum -= ri[j] * x[j];
        x[ii] = sum / ri[ii];
    }
}

}  // namespace detail

double LuFactorization::condition_estimate() const noexcept {
    const std::size_t n = order();
    if (n == 0) return 0.0;
    double lo = std::abs(lu(0, 0));
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = std::abs(lu(i, i));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

LuFactorization lu_factor(const DenseMatrix& a) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionMismatch("lu_factor: matrix must be square and nonempty");
    }
    const std::size_t n = a.rows();
    LuFactorization f{a, std::vector<std::size_t>(n)};
    detail::lu_factor_kernel(f.lu.data(), n, f.perm);
    return f;
}

std::vector<double> lu_solve(const LuFactorization& f, std::span<const double> rhs) {
    const std::size_t n = f.order();
    if (rhs.size() != n) {
        throw DimensionMismatch("lu_solve: right-hand side length differs from matrix order");
    }
    std::vector<double> x(n);
    detail::lu_solve_kernel(f.lu.data(), n, f.perm, rhs, x);
    return x;
}

DenseMatrix lu_solve(const LuFactorization& f, const DenseMatrix& rhs) {
    const std::size_t n = f.order();
    if (rhs.rows() != n) {
        throw DimensionMismatch("lu_solve: right-hand side row count differs from matrix order");
    }
    DenseMatrix x(n, rhs.cols());
    std::vector<double> col(n), sol(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        detail::lu_solve_kernel(f.lu.data(), n, f.perm, col, sol);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
}

}  // namespace qme
