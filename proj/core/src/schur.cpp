#include "qme/schur.hpp"

#include <cmath>
#include <cstddef>
#include <span>

#include "qme/errors.hpp"

namespace qme {

namespace {

// Builds the Householder reflector P = I - beta*v*v^T with P*x = alpha*e1.
// x is rewritten into v in place. Returns beta; beta == 0 means there is
// nothing to annihilate and x is left usable as-is.
double make_householder(std::span<double> x, double& alpha_out) {
    alpha_out = x.empty() ? 0.0 : x[0];
    if (x.size() < 2) return 0.0;
    double scale = 0.0;
    for (double e : x) scale += std::abs(e);
    if (scale == 0.0) return 0.0;
    double sigma = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        x[i] /= scale;
        sigma += x[i] * x[i];
    }
    if (sigma == 0.0) return 0.0;  // entries below the head are already zero
    const double x0 = x[0] / scale;
    const double mu = std::sqrt(x0 * x0 + sigma);
    const double alpha = (x0 <= 0.0) ? mu : -mu;
    const double v0 = x0 - alpha;  // same signs, no cancellation
    x[0] = v0;
    alpha_out = alpha * scale;
    return 2.0 / (v0 * v0 + sigma);
}

// rows [r0, r0+len) of m <- (I - beta*v*v^T) * rows
void apply_reflector_left(DenseMatrix& m, std::size_t r0, std::span<const double> v, double beta,
                          std::vector<double>& scratch) {
    const std::size_t nc = m.cols();
    scratch.assign(nc, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        auto row = m.row(r0 + i);
        for (std::size_t j = 0; j < nc; ++j) scratch[j] += vi * row[j];
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = beta * v[i];
        if (f == 0.0) continue;
        auto row = m.row(r0 + i);
        for (std::size_t j = 0; j < nc; ++j) row[j] -= f * scratch[j];
    }
}

// cols [c0, c0+len) of m <- cols * (I - beta*v*v^T)
void apply_reflector_right(DenseMatrix& m, std::size_t c0, std::span<const double> v,
                           double beta) {
    const std::size_t len = v.size();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = m.row(i);
        double u = 0.0;
        for (std::size_t j = 0; j < len; ++j) u += row[c0 + j] * v[j];
        const double f = beta * u;
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < len; ++j) row[c0 + j] -= f * v[j];
    }
}

// Similarity by the rotation G = [[cs, -sn], [sn, cs]] on rows/cols r, r+1.
void apply_rotation_similarity(DenseMatrix& h, DenseMatrix& q, std::size_t r, double cs,
                               double sn) {
    const std::size_t n = h.rows();
    for (std::size_t j = 0; j < n; ++j) {
        const double x = h(r, j), y = h(r + 1, j);
        h(r, j) = cs * x + sn * y;
        h(r + 1, j) = cs * y - sn * x;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double x = h(i, r), y = h(i, r + 1);
        h(i, r) = cs * x + sn * y;
        h(i, r + 1) = cs * y - sn * x;
        const double qx = q(i, r), qy = q(i, r + 1);
        q(i, r) = cs * qx + sn * qy;
        q(i, r + 1) = cs * qy - sn * qx;
    }
}

// Trailing 2x2 block at rows hi-1, hi. A block with real eigenvalues is
// rotated into two 1x1 blocks; a complex-conjugate pair stays as-is.
void split_or_keep_2x2(DenseMatrix& h, DenseMatrix& q, std::size_t hi) {
    const std::size_t r = hi - 1;
    const double a = h(r, r), b = h(r, hi), c = h(hi, r), d = h(hi, hi);
    const double disc = (a - d) * (a - d) + 4.0 * b * c;
    if (disc < 0.0) return;
    const double half_gap = std::sqrt(disc) / 2.0;
    const double mid = (a + d) / 2.0;
    // pick the eigenvalue that keeps |d - lambda| large
    const double lambda = (d >= a) ? mid - half_gap : mid + half_gap;
    const double v0 = d - lambda, v1 = -c;
    const double nrm = std::hypot(v0, v1);
    if (nrm == 0.0) {
        h(hi, r) = 0.0;  // c == 0 and lambda == d: already triangular
        return;
    }
    apply_rotation_similarity(h, q, r, v0 / nrm, v1 / nrm);
    h(hi, r) = 0.0;
}

// One implicit double-shift bulge chase over the unreduced window [lo, hi].
void francis_sweep(DenseMatrix& h, DenseMatrix& q, std::ptrdiff_t lo, std::ptrdiff_t hi,
                   bool exceptional, std::vector<double>& scratch) {
    double s, t;
    if (exceptional) {
        // stalled: replace the trailing-block shifts with the usual ad-hoc pair
        const double sab = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
        const double h11 = 0.75 * sab + h(hi, hi);
        s = 2.0 * h11;
        t = h11 * h11 + 0.4375 * sab * sab;
    } else {
        s = h(hi - 1, hi - 1) + h(hi, hi);
        t = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
    }
    // first column of (H - aI)(H - bI) restricted to the window
    double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - s * h(lo, lo) + t;
    double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - s);
    double z = h(lo + 1, lo) * h(lo + 2, lo + 1);

    for (std::ptrdiff_t k = lo - 1; k <= hi - 3; ++k) {
        double v[3] = {x, y, z};
        double alpha;
        const double beta = make_householder(std::span<double>(v, 3), alpha);
        if (beta != 0.0) {
            const std::span<const double> vs(v, 3);
            apply_reflector_left(h, k + 1, vs, beta, scratch);
            apply_reflector_right(h, k + 1, vs, beta);
            apply_reflector_right(q, k + 1, vs, beta);
            if (k >= lo) {
                h(k + 1, k) = alpha;
                h(k + 2, k) = 0.0;
                h(k + 3, k) = 0.0;
            }
        }
        x = h(k + 2, k + 1);
        y = h(k + 3, k + 1);
        if (k < hi - 3) z = h(k + 4, k + 1);
    }
    double v2[2] = {x, y};
    double alpha;
    const double beta = make_householder(std::span<double>(v2, 2), alpha);
    if (beta != 0.0) {
        const std::span<const double> vs(v2, 2);
        apply_reflector_left(h, hi - 1, vs, beta, scratch);
        apply_reflector_right(h, hi - 1, vs, beta);
        apply_reflector_right(q, hi - 1, vs, beta);
        h(hi - 1, hi - 2) = alpha;
        h(hi, hi - 2) = 0.0;
    }
}

}  // namespace

std::pair<DenseMatrix, DenseMatrix> hessenberg(const DenseMatrix& a) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionMismatch("hessenberg: matrix must be square and nonempty");
    }
    if (!a.all_finite()) throw NonFiniteInput("hessenberg: non-finite entry in input");
    const std::size_t n = a.rows();
    DenseMatrix h = a;
    DenseMatrix q = DenseMatrix::identity(n);
    if (n <= 2) return {std::move(q), std::move(h)};

    std::vector<double> v(n), scratch(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        for (std::size_t i = 0; i < len; ++i) v[i] = h(k + 1 + i, k);
        double alpha;
        const double beta = make_householder(std::span<double>(v.data(), len), alpha);
        if (beta == 0.0) continue;  // column already in Hessenberg shape
        const std::span<const double> vs(v.data(), len);
        apply_reflector_left(h, k + 1, vs, beta, scratch);
        apply_reflector_right(h, k + 1, vs, beta);
        apply_reflector_right(q, k + 1, vs, beta);
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return {std::move(q), std::move(h)};
}

SchurFactorization real_schur(const DenseMatrix& a, std::size_t max_sweeps) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionMismatch("real_schur: matrix must be square and nonempty");
    }
    if (!a.all_finite()) throw NonFiniteInput("real_schur: non-finite entry in input");
    const std::size_t n = a.rows();
    if (max_sweeps == 0) max_sweeps = 30 * n;

    auto [q, h] = hessenberg(a);
    const double tol = 1e-14;
    const double anorm = h.inf_norm();
    std::vector<double> scratch(n);

    std::size_t sweeps = 0;
    std::size_t stall = 0;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    while (hi >= 0) {
        for (std::ptrdiff_t i = 1; i <= hi; ++i) {
            const double sub = std::abs(h(i, i - 1));
            if (sub == 0.0) continue;
            double denom = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
            if (denom == 0.0) denom = anorm;
            if (sub <= tol * denom) h(i, i - 1) = 0.0;
        }
        if (hi == 0 || h(hi, hi - 1) == 0.0) {
            --hi;
            stall = 0;
            continue;
        }
        if (hi == 1 || h(hi - 1, hi - 2) == 0.0) {
            split_or_keep_2x2(h, q, static_cast<std::size_t>(hi));
            hi -= 2;
            stall = 0;
            continue;
        }
        std::ptrdiff_t lo = hi;
        while (lo > 0 && h(lo, lo - 1) != 0.0) --lo;
        if (sweeps >= max_sweeps) {
            throw NoConvergence("real_schur: eigenvalue at index " + std::to_string(hi) +
                                " failed to deflate within " + std::to_string(max_sweeps) +
                                " QR sweeps");
        }
        ++stall;
        francis_sweep(h, q, lo, hi, stall % 10 == 0, scratch);
        ++sweeps;
    }

    SchurFactorization f{std::move(q), std::move(h), {}};
    std::size_t i = 0;
    while (i < n) {
        if (i + 1 < n && f.t(i + 1, i) != 0.0) {
            f.block_sizes.push_back(2);
            i += 2;
        } else {
            f.block_sizes.push_back(1);
            i += 1;
        }
    }
    return f;
}

}  // namespace qme
