#pragma once

#include <span>
#include <vector>

namespace frac_iga {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, 0.0) {}
    DenseMatrix(int rows, int cols, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }
    std::span<double> row(int i) { return {data_.data() + size_t(i) * cols_, size_t(cols_)}; }
    std::span<const double> row(int i) const { return {data_.data() + size_t(i) * cols_, size_t(cols_)}; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<double> matvec(std::span<const double> x) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// One sparse row: strictly increasing column indices with values.
struct SparseRow {
    std::vector<int> cols;
    std::vector<double> vals;

    bool empty() const { return cols.empty(); }
    double dot(std::span<const double> x) const;
};

/// y_i = rows[i] . x, summed in stored order.
std::vector<double> sparse_matvec(std::span<const SparseRow> rows, std::span<const double> x);

/// Thrown when a pivot collapses during factorization.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Partial-pivoting LU factorization; factor once, solve many.
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix a);
    std::vector<double> solve(std::span<const double> b) const;
    int size() const { return lu_.rows(); }

private:
    DenseMatrix lu_;
    std::vector<int> perm_;
};

/// One-shot solve of A x = b.
std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b);

}  // namespace frac_iga
