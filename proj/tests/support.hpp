#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qme/matrix.hpp"

namespace qme::test {

// deterministic uniform in [0, 1) from the top 53 bits
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                 double lo = -1.0, double hi = 1.0) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = lo + (hi - lo) * u01(rng);
    }
    return m;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix d = a;
    d -= b;
    return d.max_abs();
}

inline double orthogonality_defect(const DenseMatrix& q) {
    DenseMatrix g = multiply_abt(q.transpose(), q.transpose());  // Q^T Q
    g -= DenseMatrix::identity(q.rows());
    return g.inf_norm();
}

// || Q T Q^T - A ||_inf / || A ||_inf
inline double reconstruction_defect(const DenseMatrix& q, const DenseMatrix& t,
                                    const DenseMatrix& a) {
    DenseMatrix rec = q * t;
    rec = multiply_abt(rec, q);
    rec -= a;
    const double na = a.inf_norm();
    return na > 0.0 ? rec.inf_norm() / na : rec.inf_norm();
}

}  // namespace qme::test
