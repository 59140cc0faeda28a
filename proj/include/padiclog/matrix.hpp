#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "padiclog/error.hpp"

namespace padiclog {

/// Dense row-major matrix over a commutative ring T. T only needs +, -, *
/// and copy; operations that need a zero take it from the caller because
/// ring elements here carry their context.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m;
        m.rows_ = rows.size();
        m.cols_ = rows.front().size();
        for (const auto& r : rows) {
            if (r.size() != m.cols_) fail(ErrorKind::InvalidArgument, "ragged matrix rows");
            m.data_.insert(m.data_.end(), r.begin(), r.end());
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const noexcept { return data_; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Matrix transpose() const {
        Matrix t;
        t.rows_ = cols_;
        t.cols_ = rows_;
        t.data_.reserve(data_.size());
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
        return t;
    }

    template <typename F>
    auto map(F&& f) const -> Matrix<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        std::vector<std::vector<U>> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(f((*this)(i, j)));
        Matrix<U> m = Matrix<U>::from_rows(out);
        return m;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
        return c;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_ || a.cols_ == 0) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
        Matrix c;
        c.rows_ = a.rows_;
        c.cols_ = b.cols_;
        c.data_.reserve(a.rows_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc = a(i, 0) * b(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
                c.data_.push_back(std::move(acc));
            }
        return c;
    }

    /// Matrix times column vector.
    std::vector<T> apply(const std::vector<T>& v) const {
        if (v.size() != cols_ || cols_ == 0) fail(ErrorKind::InvalidArgument, "vector length mismatch");
        std::vector<T> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            T acc = (*this)(i, 0) * v[0];
            for (std::size_t k = 1; k < cols_; ++k) acc = acc + (*this)(i, k) * v[k];
            out.push_back(std::move(acc));
        }
        return out;
    }

    template <typename S>
    Matrix scaled(const S& s) const {
        Matrix c = *this;
        for (auto& x : c.data_) x = s * x;
        return c;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Square power by repeated multiplication; e >= 1.
template <typename T>
Matrix<T> matrix_power(const Matrix<T>& m, int e) {
    if (e < 1) fail(ErrorKind::InvalidArgument, "matrix_power needs a positive exponent");
    Matrix<T> r = m;
    for (int i = 1; i < e; ++i) r = r * m;
    return r;
}

/// Division-free determinant: sum over permutations organised as a dynamic
/// program over the set of used columns, O(2^n n). Exact over any
/// commutative ring; n <= 20.
template <typename T>
T determinant(const Matrix<T>& m, const T& zero) {
    if (!m.is_square()) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) fail(ErrorKind::InvalidArgument, "determinant of an empty matrix");
    if (n > 20) fail(ErrorKind::InvalidArgument, "determinant: dimension too large");
    const std::size_t full = std::size_t{1} << n;
    std::vector<T> f(full, zero);
    std::vector<char> live(full, 0);
    live[0] = 1;
    for (std::size_t mask = 0; mask < full; ++mask) {
        if (!live[mask]) continue;
        const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (row == n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            const std::size_t above = mask >> (j + 1);
            const bool negate = __builtin_popcountll(above) % 2 == 1;
            T term = (mask == 0) ? m(row, j) : f[mask] * m(row, j);
            const std::size_t next = mask | (std::size_t{1} << j);
            if (negate) term = zero - term;
            f[next] = live[next] ? f[next] + term : term;
            live[next] = 1;
        }
    }
    return f[full - 1];
}

} // namespace padiclog
