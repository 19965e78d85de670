#include "qme/matrix.hpp"

#include <cmath>
#include <utility>

#include "qme/errors.hpp"

namespace qme {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                "x" + std::to_string(b.cols()) + " differ");
    }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) {
            throw DimensionMismatch("initializer rows have unequal lengths");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

double DenseMatrix::inf_norm() const noexcept {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double sum = 0.0;
        for (double v : row(i)) sum += std::abs(v);
        if (sum > best) best = sum;
    }
    return best;
}

double DenseMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (double v : data_) {
        double a = std::abs(v);
        if (a > best) best = a;
    }
    return best;
}

double DenseMatrix::min_entry() const noexcept {
    if (data_.empty()) return 0.0;
    double best = data_[0];
    for (double v : data_) {
        if (v < best) best = v;
    }
    return best;
}

bool DenseMatrix::all_finite() const noexcept {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
    require_same_shape(*this, rhs, "matrix add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
    require_same_shape(*this, rhs, "matrix subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

DenseMatrix& DenseMatrix::add_scaled(const DenseMatrix& rhs, double s) {
    require_same_shape(*this, rhs, "matrix add_scaled");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * rhs.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::add_identity(double s) {
    if (!is_square()) throw DimensionMismatch("add_identity: matrix not square");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, i) += s;
    return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }

DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }

DenseMatrix operator-(DenseMatrix m) { return m *= -1.0; }

DenseMatrix operator*(double s, DenseMatrix m) { return m *= s; }

DenseMatrix operator*(DenseMatrix m, double s) { return m *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: inner dimensions " + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + " differ");
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            auto bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

DenseMatrix multiply_abt(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionMismatch("multiply_abt: column counts differ");
    }
    DenseMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            auto bj = b.row(j);
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) sum += ai[k] * bj[k];
            c(i, j) = sum;
        }
    }
    return c;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw DimensionMismatch("matrix-vector product: dimensions differ");
    }
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ai = a.row(i);
        double sum = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) sum += ai[k] * x[k];
        y[i] = sum;
    }
    return y;
}

}  // namespace qme
