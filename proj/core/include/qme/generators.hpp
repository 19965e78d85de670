#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qme/problem.hpp"

namespace qme {

// Benchmark family A = W, B = W - I, C = W + delta*I with W zero on the
// diagonal and constant off the diagonal. The off-diagonal value
// w = (1 - delta) / (3 (n - 1)) is forced by stochasticity of A+B+I+C, and
// the drift rate comes out as exactly 1 - delta.
struct DeltaExampleSpec {
    std::size_t n = 0;        // >= 2
    double delta = 0.0;       // in (0, 1)
};

QbdProblem make_delta_example(const DeltaExampleSpec& spec);
QbdProblem make_delta_example(std::size_t n, double delta);

// n = 1 family A = [a], B = [-a-c], C = [c] with a, c >= 0 and a + c <= 1.
// The roots of a x^2 - (a+c) x + c are 1 and c/a, so the minimal nonnegative
// solution is known in closed form: min(1, c/a) for a > 0, else 1 (c > 0).
QbdProblem make_scalar_problem(double a, double c);

// Strictly positive random blocks, rows scaled so A+B+I+C is stochastic.
// Deterministic per seed. With rho_target set, mass is shifted between A and
// C by bisection until |drift_rate - rho_target| <= 1e-6.
QbdProblem random_problem(std::size_t n, std::uint64_t seed,
                          std::optional<double> rho_target = std::nullopt);

}  // namespace qme
