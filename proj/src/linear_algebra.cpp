#include "frac_iga/linear_algebra.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frac_iga {

DenseMatrix::DenseMatrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != size_t(rows) * cols) {
        throw std::invalid_argument("dense matrix storage size mismatch");
    }
}

std::vector<double> DenseMatrix::matvec(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != cols_) {
        throw std::invalid_argument("matvec dimension mismatch");
    }
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double* r = data_.data() + size_t(i) * cols_;
        double acc = 0.0;
        for (int j = 0; j < cols_; ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double SparseRow::dot(std::span<const double> x) const {
    double acc = 0.0;
    for (size_t k = 0; k < cols.size(); ++k) {
        if (cols[k] < 0 || size_t(cols[k]) >= x.size()) {
            throw std::domain_error("sparse row column index out of range");
        }
        acc += vals[k] * x[cols[k]];
    }
    return acc;
}

std::vector<double> sparse_matvec(std::span<const SparseRow> rows, std::span<const double> x) {
    std::vector<double> y(rows.size(), 0.0);
    for (size_t i = 0; i < rows.size(); ++i) y[i] = rows[i].dot(x);
    return y;
}

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    const int n = lu_.rows();
    if (lu_.cols() != n) throw std::invalid_argument("LU requires a square matrix");
    std::iota(perm_.begin(), perm_.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best < 1e-300) throw SingularMatrixError("numerically singular matrix");
        if (piv != k) {
            std::swap(perm_[k], perm_[piv]);
            auto rk = lu_.row(k);
            auto rp = lu_.row(piv);
            for (int j = 0; j < n; ++j) std::swap(rk[j], rp[j]);
        }
        const double inv = 1.0 / lu_(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) * inv;
            lu_(i, k) = m;
            if (m != 0.0) {
                double* ri = lu_.row(i).data();
                const double* rk = lu_.row(k).data();
                for (int j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
            }
        }
    }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
    const int n = lu_.rows();
    if (static_cast<int>(b.size()) != n) {
        throw std::invalid_argument("solve dimension mismatch");
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (int i = 1; i < n; ++i) {
        const double* ri = lu_.row(i).data();
        double acc = x[i];
        for (int j = 0; j < i; ++j) acc -= ri[j] * x[j];
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        const double* ri = lu_.row(i).data();
        double acc = x[i];
        for (int j = i + 1; j < n; ++j) acc -= ri[j] * x[j];
        x[i] = acc / ri[i];
    }
    return x;
}

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b) {
    return LuFactorization(a).solve(b);
}

}  // namespace frac_iga
