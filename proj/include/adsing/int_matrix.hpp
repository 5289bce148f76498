/**
 * Dense integer matrices with exact arithmetic.
 */
#ifndef ADSING_INT_MATRIX_HPP
#define ADSING_INT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integer.hpp"

namespace adsing
{

class IntMatrix
{
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix scalar(std::size_t n, const Integer& value)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = value;
        return m;
    }

    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows)
    {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows)
        {
            if (row.size() != c)
                throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
            std::size_t j = 0;
            for (long x : row)
                m(i, j++) = x;
            ++i;
        }
        return m;
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns)
    {
        IntMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j)
        {
            if (columns[j].size() != rows)
                throw std::invalid_argument("IntMatrix::from_columns: length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t j) const
    {
        IntVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            v[i] = (*this)(i, j);
        return v;
    }

    IntVector row(std::size_t i) const
    {
        return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<IntVector> columns() const
    {
        std::vector<IntVector> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            out.push_back(column(j));
        return out;
    }

    IntMatrix transposed() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Columns [first, first + count).
    IntMatrix column_block(std::size_t first, std::size_t count) const
    {
        IntMatrix m(rows_, count);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < count; ++j)
                m(i, j) = (*this)(i, first + j);
        return m;
    }

    /// Rows [first, first + count).
    IntMatrix row_block(std::size_t first, std::size_t count) const
    {
        IntMatrix m(count, cols_);
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = (*this)(first + i, j);
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (i != j && (*this)(i, j) != 0)
                    return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0)
                (*this)(dst, j) += factor * (*this)(src, j);
    }

    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor)
    {
        if (factor == 0)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0)
                (*this)(i, dst) += factor * (*this)(i, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = -(*this)(i, j);
    }

    /// Replace columns (a, b) by (s*a + t*b, u*a + v*b).
    void combine_cols(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                      const Integer& u, const Integer& v)
    {
        for (std::size_t i = 0; i < rows_; ++i)
        {
            Integer x = (*this)(i, a);
            Integer y = (*this)(i, b);
            if (x == 0 && y == 0)
                continue;
            (*this)(i, a) = s * x + t * y;
            (*this)(i, b) = u * x + v * y;
        }
    }

    /// Replace rows (a, b) by (s*a + t*b, u*a + v*b).
    void combine_rows(std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                      const Integer& u, const Integer& v)
    {
        for (std::size_t j = 0; j < cols_; ++j)
        {
            Integer x = (*this)(a, j);
            Integer y = (*this)(b, j);
            if (x == 0 && y == 0)
                continue;
            (*this)(a, j) = s * x + t * y;
            (*this)(b, j) = u * x + v * y;
        }
    }

    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_)
            throw std::invalid_argument("IntMatrix::hstack: row mismatch");
        IntMatrix m(a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
        {
            for (std::size_t j = 0; j < a.cols_; ++j)
                m(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j)
                m(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }

    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.cols_)
            throw std::invalid_argument("IntMatrix::vstack: column mismatch");
        IntMatrix m(a.rows_ + b.rows_, a.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                m(a.rows_ + i, j) = b(i, j);
        return m;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("IntMatrix::operator*: dimension mismatch");
        IntMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
            {
                const Integer& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0)
                        m(i, j) += x * b(k, j);
            }
        return m;
    }

    friend IntVector operator*(const IntMatrix& a, const IntVector& v)
    {
        if (a.cols_ != v.size())
            throw std::invalid_argument("IntMatrix::operator*: vector length mismatch");
        IntVector out(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (a(i, k) != 0 && v[k] != 0)
                    out[i] += a(i, k) * v[k];
        return out;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("IntMatrix::operator+: dimension mismatch");
        IntMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i)
            m.data_[i] += b.data_[i];
        return m;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("IntMatrix::operator-: dimension mismatch");
        IntMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i)
            m.data_[i] -= b.data_[i];
        return m;
    }

    IntMatrix scaled(const Integer& factor) const
    {
        IntMatrix m = *this;
        for (auto& x : m.data_)
            x *= factor;
        return m;
    }

    std::string to_string() const
    {
        std::ostringstream out;
        out << "[";
        for (std::size_t i = 0; i < rows_; ++i)
        {
            out << (i == 0 ? "[" : ", [");
            for (std::size_t j = 0; j < cols_; ++j)
                out << (j == 0 ? "" : ", ") << (*this)(i, j).get_str();
            out << "]";
        }
        out << "]";
        return out.str();
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Determinant by fraction-free Bareiss elimination.
inline Integer determinant(IntMatrix m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Integer sign = 1;
    Integer previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (m(k, k) == 0)
        {
            std::size_t swap = k + 1;
            while (swap < n && m(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
            {
                Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
            }
        previous = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace adsing

#endif
