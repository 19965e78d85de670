#include "qme/generators.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qme/errors.hpp"

namespace qme {

namespace {

// Uniform double in [0, 1) from the top 53 bits; keeps generated problems
// identical across platforms for a given seed.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct RandomDraw {
    DenseMatrix alpha, beta, gamma;
};

// Blend the raw draw with mixing parameter theta in (0, 1): theta shifts row
// mass from C toward A, raising the drift rate. Rows are normalized so that
// A + (B+I) + C is stochastic.
QbdProblem assemble(const RandomDraw& draw, double theta) {
    const std::size_t n = draw.alpha.rows();
    DenseMatrix a(n, n), b(n, n), c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            total += theta * draw.alpha(i, j) + draw.beta(i, j) + (1.0 - theta) * draw.gamma(i, j);
        }
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = theta * draw.alpha(i, j) / total;
            c(i, j) = (1.0 - theta) * draw.gamma(i, j) / total;
            b(i, j) = draw.beta(i, j) / total - (i == j ? 1.0 : 0.0);
        }
    }
    return validate_problem(std::move(a), std::move(b), std::move(c));
}

}  // namespace

QbdProblem make_delta_example(const DeltaExampleSpec& spec) {
    if (spec.n < 2) {
        throw ParameterOutOfRange("delta example needs n >= 2, got n = " +
                                  std::to_string(spec.n));
    }
    if (!(spec.delta > 0.0) || !(spec.delta < 1.0)) {
        throw ParameterOutOfRange("delta example needs 0 < delta < 1");
    }
    const std::size_t n = spec.n;
    // (A+B+I+C) e = (3W + delta*I) e = e forces the off-diagonal constant
    const double w = (1.0 - spec.delta) / (3.0 * static_cast<double>(n - 1));
    DenseMatrix a(n, n, w), b(n, n, w), c(n, n, w);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = 0.0;
        b(i, i) = -1.0;
        c(i, i) = spec.delta;
    }
    return validate_problem(std::move(a), std::move(b), std::move(c));
}

QbdProblem make_delta_example(std::size_t n, double delta) {
    return make_delta_example(DeltaExampleSpec{n, delta});
}

QbdProblem make_scalar_problem(double a, double c) {
    if (!(a >= 0.0) || !(c >= 0.0) || !(a + c <= 1.0)) {
        throw ParameterOutOfRange("scalar problem needs a >= 0, c >= 0, a + c <= 1");
    }
    return validate_problem(DenseMatrix{{a}}, DenseMatrix{{-(a + c)}}, DenseMatrix{{c}});
}

QbdProblem random_problem(std::size_t n, std::uint64_t seed, std::optional<double> rho_target) {
    if (n < 1) throw ParameterOutOfRange("random problem needs n >= 1");
    std::mt19937_64 rng(seed);
    RandomDraw draw{DenseMatrix(n, n), DenseMatrix(n, n), DenseMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) draw.alpha(i, j) = 0.2 + uniform01(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) draw.beta(i, j) = 0.2 + uniform01(rng);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) draw.gamma(i, j) = 0.2 + uniform01(rng);
    }

    if (!rho_target) return assemble(draw, 0.5);

    const double target = *rho_target;
    double lo = 1e-9, hi = 1.0 - 1e-9;
    double rho_lo = drift_rate(assemble(draw, lo));
    double rho_hi = drift_rate(assemble(draw, hi));
    if (target < std::min(rho_lo, rho_hi) || target > std::max(rho_lo, rho_hi)) {
        throw TargetUnreachable("drift target " + std::to_string(target) +
                                " outside the reachable range [" + std::to_string(rho_lo) + ", " +
                                std::to_string(rho_hi) + "]");
    }
    const bool increasing = rho_hi >= rho_lo;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        QbdProblem candidate = assemble(draw, mid);
        const double rho = drift_rate(candidate);
        if (std::abs(rho - target) <= 1e-6) return candidate;
        if ((rho < target) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw TargetUnreachable("bisection on the drift target did not settle to 1e-6");
}

}  // namespace qme
