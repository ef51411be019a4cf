#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gwave/error.hpp"

namespace gwave {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_{rows}, cols_{cols}, data_(rows * cols, fill)
    {
    }

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_{rows}, cols_{cols}, data_{std::move(entries)}
    {
        detail::require(data_.size() == rows_ * cols_,
                        "DenseMatrix: entry count does not match shape");
    }

    DenseMatrix(std::initializer_list<std::initializer_list<double>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (auto const& row : init) {
            detail::require(row.size() == cols_, "DenseMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(std::span<const double> d)
    {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    [[nodiscard]] Vector column(std::size_t c) const
    {
        Vector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = (*this)(r, c);
        return out;
    }

    void set_column(std::size_t c, std::span<const double> v)
    {
        detail::require(v.size() == rows_, "DenseMatrix::set_column: length mismatch");
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    [[nodiscard]] std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    [[nodiscard]] DenseMatrix transpose() const
    {
        DenseMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    [[nodiscard]] double max_abs() const
    {
        double m = 0.0;
        for (double v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

    [[nodiscard]] double frobenius() const
    {
        double s = 0.0;
        for (double v : data_)
            s += v * v;
        return std::sqrt(s);
    }

    [[nodiscard]] bool all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
    }

    [[nodiscard]] bool is_symmetric(double rel_tol) const
    {
        if (!is_square())
            return false;
        double const scale = std::max(1.0, max_abs());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (std::abs((*this)(r, c) - (*this)(c, r)) > rel_tol * scale)
                    return false;
        return true;
    }

    /// Rows and columns picked by index lists, in the given order.
    [[nodiscard]] DenseMatrix select(std::span<const std::size_t> row_idx,
                                     std::span<const std::size_t> col_idx) const
    {
        DenseMatrix out(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                out(i, j) = (*this)(row_idx[i], col_idx[j]);
        return out;
    }

    friend bool operator==(DenseMatrix const&, DenseMatrix const&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline DenseMatrix operator*(DenseMatrix const& a, DenseMatrix const& b)
{
    detail::require(a.cols() == b.rows(), "matrix product: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double const aik = a(i, k);
            if (aik == 0.0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Vector operator*(DenseMatrix const& a, std::span<const double> x)
{
    detail::require(a.cols() == x.size(), "matrix-vector product: length mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        auto const r = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j)
            s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Vector operator*(DenseMatrix const& a, Vector const& x)
{
    return a * std::span<const double>(x);
}

inline DenseMatrix operator-(DenseMatrix a, DenseMatrix const& b)
{
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference: shape mismatch");
    auto d = a.data();
    auto e = b.data();
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] -= e[i];
    return a;
}

/// Aᵀ A without forming the transpose.
inline DenseMatrix gram(DenseMatrix const& a)
{
    DenseMatrix g(a.cols(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto const row = a.row(r);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            if (row[i] == 0.0)
                continue;
            for (std::size_t j = 0; j < a.cols(); ++j)
                g(i, j) += row[i] * row[j];
        }
    }
    return g;
}

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

inline double max_abs(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a)
        m = std::max(m, std::abs(v));
    return m;
}

}  // namespace gwave
