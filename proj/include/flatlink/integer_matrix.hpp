#pragma once

#include "flatlink/error.hpp"
#include "flatlink/integer.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace flatlink {

/// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

namespace detail {

/// dst += factor * src
inline void axpy_row(SparseRow& dst, const SparseRow& src, const Integer& factor)
{
    if (factor == 0 || src.empty())
        return;
    SparseRow out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == dst.end() || b->first < a->first) {
            out.emplace_back(b->first, factor * b->second);
            ++b;
        } else {
            Integer v = a->second + factor * b->second;
            if (v != 0)
                out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

inline void scale_row(SparseRow& row, const Integer& factor)
{
    if (factor == 0) {
        row.clear();
        return;
    }
    for (auto& e : row)
        e.second *= factor;
}

/// (x, y) <- (a*x + b*y, c*x + d*y)
inline void mix_rows(SparseRow& x, SparseRow& y, const Integer& a, const Integer& b, const Integer& c,
                     const Integer& d)
{
    SparseRow nx = x, ny = y;
    scale_row(nx, a);
    axpy_row(nx, y, b);
    scale_row(ny, d);
    axpy_row(ny, x, c);
    x = std::move(nx);
    y = std::move(ny);
}

} // namespace detail

/// Exact sparse integer matrix.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

    static IntegerMatrix identity(std::size_t n)
    {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.data_[i].emplace_back(i, 1);
        return m;
    }

    static IntegerMatrix from_dense(const std::vector<std::vector<Integer>>& dense)
    {
        const std::size_t cols = dense.empty() ? 0 : dense.front().size();
        IntegerMatrix m(dense.size(), cols);
        for (std::size_t r = 0; r < dense.size(); ++r) {
            if (dense[r].size() != cols)
                throw InputError("ragged dense matrix");
            for (std::size_t c = 0; c < cols; ++c) {
                if (dense[r][c] != 0)
                    m.data_[r].emplace_back(c, dense[r][c]);
            }
        }
        return m;
    }

    static IntegerMatrix from_dense(std::initializer_list<std::initializer_list<long long>> dense)
    {
        std::vector<std::vector<Integer>> rows;
        for (const auto& r : dense)
            rows.emplace_back(r.begin(), r.end());
        return from_dense(rows);
    }

    /// Builds from explicit rows; each row is sorted and zero entries dropped.
    static IntegerMatrix from_rows(std::size_t rows, std::size_t cols, std::vector<SparseRow> data)
    {
        if (data.size() != rows)
            throw InputError("row count mismatch");
        IntegerMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            SparseRow& row = data[r];
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            for (std::size_t i = 0; i + 1 < row.size(); ++i) {
                if (row[i].first == row[i + 1].first)
                    throw InputError("duplicate entry in row " + std::to_string(r));
            }
            std::erase_if(row, [](const auto& e) { return e.second == 0; });
            if (!row.empty() && row.back().first >= cols)
                throw InputError("column index out of range in row " + std::to_string(r));
            m.data_[r] = std::move(row);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const SparseRow& row(std::size_t r) const { return data_.at(r); }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& r : data_)
            n += r.size();
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    Integer at(std::size_t r, std::size_t c) const
    {
        if (r >= rows_ || c >= cols_)
            throw InputError("matrix index out of range");
        const auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
        return it != row.end() && it->first == c ? it->second : Integer(0);
    }

    void set(std::size_t r, std::size_t c, const Integer& value)
    {
        if (r >= rows_ || c >= cols_)
            throw InputError("matrix index out of range");
        auto& row = data_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (value == 0)
                row.erase(it);
            else
                it->second = value;
        } else if (value != 0) {
            row.insert(it, {c, value});
        }
    }

    IntegerMatrix transpose() const
    {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (const auto& [c, v] : data_[r])
                t.data_[c].emplace_back(r, v);
        }
        return t;
    }

    /// Matrix-vector product with a dense vector.
    std::vector<Integer> apply(const std::vector<Integer>& x) const
    {
        if (x.size() != cols_)
            throw InputError("vector length mismatch");
        std::vector<Integer> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (const auto& [c, v] : data_[r])
                y[r] += v * x[c];
        }
        return y;
    }

    std::vector<std::vector<Integer>> to_dense() const
    {
        std::vector<std::vector<Integer>> d(rows_, std::vector<Integer>(cols_));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (const auto& [c, v] : data_[r])
                d[r][c] = v;
        }
        return d;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InputError("matrix shape mismatch in product");
        IntegerMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (const auto& [k, v] : a.data_[r])
                detail::axpy_row(out.data_[r], b.data_[k], v);
        }
        return out;
    }

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseRow> data_;
};

} // namespace flatlink
