#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the library's solution paths: finite differences
// instead of the analytic derivative, power iteration instead of direct
// solves, characteristic-polynomial roots instead of the QR eigensolver.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "qme/matrix.hpp"
#include "qme/problem.hpp"
#include "qme/schur.hpp"
#include "support.hpp"

namespace qme::test {

// central difference (Q(X+hZ) - Q(X-hZ)) / 2h
inline DenseMatrix finite_difference_frechet(const QbdProblem& p, const DenseMatrix& x,
                                             const DenseMatrix& z, double h = 1e-5) {
    DenseMatrix xp = x;
    xp.add_scaled(z, h);
    DenseMatrix xm = x;
    xm.add_scaled(z, -h);
    DenseMatrix d = q_apply(p, xp);
    d -= q_apply(p, xm);
    d *= 1.0 / (2.0 * h);
    return d;
}

// stationary row vector by power iteration; requires irreducible aperiodic P
inline std::vector<double> power_iteration_stationary(const DenseMatrix& p, double tol = 1e-14,
                                                      std::size_t max_iter = 200000) {
    const std::size_t n = p.rows();
    std::vector<double> v(n, 1.0 / static_cast<double>(n)), next(n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += v[i] * p(i, j);
            next[j] = s;
        }
        double sum = 0.0, delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += next[j];
        for (std::size_t j = 0; j < n; ++j) {
            next[j] /= sum;
            delta = std::max(delta, std::abs(next[j] - v[j]));
        }
        v = next;
        if (delta <= tol) break;
    }
    return v;
}

// minimal nonnegative root of a x^2 - (a+c) x + c = 0 (roots 1 and c/a)
inline double scalar_minimal_solution(double a, double c) {
    if (a > 0.0) return std::min(1.0, c / a);
    return c > 0.0 ? 1.0 : 0.0;
}

// characteristic polynomial coefficients [1, c1, ..., cn] by Faddeev-LeVerrier
inline std::vector<double> characteristic_polynomial(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> coeffs{1.0};
    DenseMatrix m(n, n, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k == 1) {
            m = a;
        } else {
            m.add_identity(coeffs.back());
            m = a * m;
        }
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
        coeffs.push_back(-trace / static_cast<double>(k));
    }
    return coeffs;
}

namespace poly_detail {

inline std::complex<double> horner(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> v = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) v = v * x + c[k];
    return v;
}

inline std::complex<double> horner_derivative(const std::vector<double>& c,
                                              std::complex<double> x) {
    const std::size_t deg = c.size() - 1;
    std::complex<double> v = c[0] * static_cast<double>(deg);
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        v = v * x + c[k] * static_cast<double>(deg - k);
    }
    return v;
}

inline std::complex<double> newton_polish(const std::vector<double>& c, std::complex<double> x) {
    for (int it = 0; it < 60; ++it) {
        const std::complex<double> f = horner(c, x);
        const std::complex<double> df = horner_derivative(c, x);
        if (std::abs(df) == 0.0) break;
        const std::complex<double> step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

// companion matrix product y = C v for monic p = x^d + c1 x^{d-1} + ... + cd
inline void companion_apply(const std::vector<double>& c, const std::vector<std::complex<double>>& v,
                            std::vector<std::complex<double>>& y) {
    const std::size_t d = c.size() - 1;
    const std::complex<double> last = v[d - 1];
    y[0] = -c[d] * last;
    for (std::size_t i = 1; i < d; ++i) y[i] = v[i - 1] - c[d - i] * last;
}

}  // namespace poly_detail

// All roots of a real monic polynomial: power iteration on the companion
// matrix finds the dominant root (or the dominant conjugate pair via a
// quadratic fit of three consecutive iterates), the polynomial is deflated,
// and every root is Newton-polished against the original polynomial.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& original) {
    using cd = std::complex<double>;
    std::vector<cd> roots;
    std::vector<double> work = original;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);

    while (work.size() > 3) {
        const std::size_t d = work.size() - 1;
        // strip exact zero roots early
        if (work.back() == 0.0) {
            roots.emplace_back(0.0, 0.0);
            work.pop_back();
            continue;
        }
        std::vector<cd> v(d), y(d);
        for (auto& e : v) e = cd(u01(rng) - 0.5, u01(rng) - 0.5);

        cd ratio_prev(0.0, 0.0);
        bool simple_converged = false;
        for (int iter = 0; iter < 400; ++iter) {
            poly_detail::companion_apply(work, v, y);
            std::size_t imax = 0;
            for (std::size_t i = 1; i < d; ++i) {
                if (std::abs(y[i]) > std::abs(y[imax])) imax = i;
            }
            const double scale = std::abs(y[imax]);
            if (scale == 0.0) break;
            const cd ratio = std::abs(v[imax]) > 0.0 ? y[imax] / v[imax] : cd(0.0, 0.0);
            for (std::size_t i = 0; i < d; ++i) v[i] = y[i] / scale;
            if (iter > 20 && std::abs(ratio - ratio_prev) <= 1e-12 * std::abs(ratio)) {
                simple_converged = true;
                ratio_prev = ratio;
                break;
            }
            ratio_prev = ratio;
        }

        if (simple_converged && std::abs(ratio_prev.imag()) <= 1e-8 * std::abs(ratio_prev)) {
            // dominant simple real root
            cd root = poly_detail::newton_polish(work, cd(ratio_prev.real(), 0.0));
            const double r = root.real();
            roots.emplace_back(r, 0.0);
            std::vector<double> next(work.size() - 1);
            next[0] = work[0];
            for (std::size_t k = 1; k < next.size(); ++k) next[k] = work[k] + r * next[k - 1];
            work = std::move(next);
            continue;
        }

        // dominant conjugate pair: v2 = s v1 - t v componentwise; least squares for (s, t)
        std::vector<cd> v1(d), v2(d);
        poly_detail::companion_apply(work, v, v1);
        poly_detail::companion_apply(work, v1, v2);
        cd a11(0, 0), a12(0, 0), a22(0, 0), b1(0, 0), b2(0, 0);
        for (std::size_t i = 0; i < d; ++i) {
            a11 += std::conj(v1[i]) * v1[i];
            a12 -= std::conj(v1[i]) * v[i];
            a22 += std::conj(v[i]) * v[i];
            b1 += std::conj(v1[i]) * v2[i];
            b2 -= std::conj(v[i]) * v2[i];
        }
        const cd det = a11 * a22 - a12 * std::conj(a12);
        const cd s = (a22 * b1 - a12 * b2) / det;
        const cd t = (a11 * b2 - std::conj(a12) * b1) / det;
        const cd disc = std::sqrt(s * s - 4.0 * t);
        cd r1 = poly_detail::newton_polish(work, (s + disc) / 2.0);
        if (r1.imag() < 0.0) r1 = std::conj(r1);
        const double rs = 2.0 * r1.real();
        const double rt = std::norm(r1);
        roots.push_back(r1);
        roots.push_back(std::conj(r1));
        // divide by the real quadratic x^2 - rs x + rt
        std::vector<double> next(work.size() - 2);
        next[0] = work[0];
        if (next.size() > 1) next[1] = work[1] + rs * next[0];
        for (std::size_t k = 2; k < next.size(); ++k) {
            next[k] = work[k] + rs * next[k - 1] - rt * next[k - 2];
        }
        work = std::move(next);
    }

    if (work.size() == 3) {
        const cd disc = std::sqrt(cd(work[1] * work[1] - 4.0 * work[2], 0.0));
        roots.push_back((-work[1] + disc) / 2.0);
        roots.push_back((-work[1] - disc) / 2.0);
    } else if (work.size() == 2) {
        roots.emplace_back(-work[1], 0.0);
    }

    for (auto& r : roots) {
        r = poly_detail::newton_polish(original, r);
        if (std::abs(r.imag()) <= 1e-10 * (1.0 + std::abs(r.real()))) r = cd(r.real(), 0.0);
    }
    return roots;
}

// eigenvalues read off the diagonal blocks of a real Schur form
inline std::vector<std::complex<double>> schur_eigenvalues(const SchurFactorization& f) {
    std::vector<std::complex<double>> out;
    std::size_t j = 0;
    for (int bs : f.block_sizes) {
        if (bs == 1) {
            out.emplace_back(f.t(j, j), 0.0);
        } else {
            const double a = f.t(j, j), b = f.t(j, j + 1);
            const double c = f.t(j + 1, j), d = f.t(j + 1, j + 1);
            const double mid = (a + d) / 2.0;
            const double disc = (a - d) * (a - d) + 4.0 * b * c;
            const double im = std::sqrt(-disc) / 2.0;
            out.emplace_back(mid, im);
            out.emplace_back(mid, -im);
        }
        j += static_cast<std::size_t>(bs);
    }
    return out;
}

// greedy one-to-one matching; returns the largest matched distance
inline double eigenvalue_multiset_distance(std::vector<std::complex<double>> lhs,
                                           std::vector<std::complex<double>> rhs) {
    if (lhs.size() != rhs.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(rhs.size(), false);
    for (const auto& l : lhs) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t pick = rhs.size();
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(l - rhs[i]);
            if (dist < best) {
                best = dist;
                pick = i;
            }
        }
        used[pick] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace qme::test
