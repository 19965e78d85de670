#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qme {

// Dense row-major matrix of doubles. The single numeric carrier for the
// whole library; everything else (factorizations, solvers, generators)
// works in terms of it. Value type: copying copies the data.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> init);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * cols_ + j];
    }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    DenseMatrix transpose() const;

    double inf_norm() const noexcept;  // max absolute row sum
    double max_abs() const noexcept;
    double min_entry() const noexcept;
    bool all_finite() const noexcept;

    DenseMatrix& operator+=(const DenseMatrix& rhs);
    DenseMatrix& operator-=(const DenseMatrix& rhs);
    DenseMatrix& operator*=(double s) noexcept;

    // *this += s * rhs
    DenseMatrix& add_scaled(const DenseMatrix& rhs, double s);
    // *this += s * I
    DenseMatrix& add_identity(double s = 1.0);

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix m);
DenseMatrix operator*(double s, DenseMatrix m);
DenseMatrix operator*(DenseMatrix m, double s);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

// a * b^T without materializing the transpose.
DenseMatrix multiply_abt(const DenseMatrix& a, const DenseMatrix& b);

// a * x for a vector x.
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

}  // namespace qme
