#pragma once

#include "flatlink/error.hpp"
#include "flatlink/integer.hpp"
#include "flatlink/integer_matrix.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace flatlink {

struct SmithOptions {
    bool want_u = false;
    bool want_v = false;
#ifdef FLATLINK_VERIFY_SNF
    bool verify = true;
#else
    bool verify = false;
#endif
    /// Switch to dense storage once the unreduced block is this full.
    double dense_fill_threshold = 0.30;
};

/**
 * Smith normal form D = U * M * V with U, V unimodular. `invariants` are the
 * nonzero diagonal entries d_1 | d_2 | ... (all positive); D has them in
 * positions (0,0), (1,1), ... and zeros elsewhere.
 */
struct SmithResult {
    std::vector<Integer> invariants;
    std::optional<IntegerMatrix> u;
    std::optional<IntegerMatrix> v;
    bool used_dense = false;

    std::size_t rank() const { return invariants.size(); }
};

namespace detail {

struct Pivot {
    std::size_t row;
    std::size_t col;
    Integer value;
};

class SparseStore {
public:
    explicit SparseStore(const IntegerMatrix& m) : rows_(m.rows()), col_rows_(m.cols())
    {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            rows_[r] = m.row(r);
            for (const auto& e : rows_[r])
                col_rows_[e.first].push_back(r);
            nnz_ += rows_[r].size();
        }
        row_dirty_.assign(rows_.size(), 1);
        col_dirty_.assign(col_rows_.size(), 0);
        for (std::size_t r = 0; r < rows_.size(); ++r)
            dirty_rows_.push_back(r);
    }

    std::size_t row_total() const { return rows_.size(); }
    std::size_t col_total() const { return col_rows_.size(); }
    std::size_t nnz() const { return nnz_; }
    std::size_t row_count(std::size_t r) const { return rows_[r].size(); }
    std::size_t col_count(std::size_t c) const { return col_rows_[c].size(); }

    Integer get(std::size_t r, std::size_t c) const
    {
        const auto& row = rows_[r];
        auto it = lower(row, c);
        return it != row.end() && it->first == c ? it->second : Integer(0);
    }

    std::vector<std::size_t> rows_in_col(std::size_t c) const { return col_rows_[c]; }
    std::vector<std::size_t> cols_in_row(std::size_t r) const
    {
        std::vector<std::size_t> out;
        for (const auto& e : rows_[r])
            out.push_back(e.first);
        return out;
    }

    /// Visits nonzeros in (row, col) order until `fn` returns false.
    template <class Fn>
    void visit(Fn&& fn) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            for (const auto& [c, v] : rows_[r]) {
                if (!fn(r, c, v))
                    return;
            }
        }
    }

    /// Visits the entries of row r.
    template <class Fn>
    void visit_row(std::size_t r, Fn&& fn) const
    {
        for (const auto& [c, v] : rows_[r])
            fn(r, c, v);
    }
    template <class Fn>
    void visit_col(std::size_t c, Fn&& fn) const
    {
        for (std::size_t r : col_rows_[c])
            fn(r, c, get(r, c));
    }

    /// Rows and columns whose entries or counts changed since the last call.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> take_dirty()
    {
        for (std::size_t r : dirty_rows_)
            row_dirty_[r] = 0;
        for (std::size_t c : dirty_cols_)
            col_dirty_[c] = 0;
        return {std::exchange(dirty_rows_, {}), std::exchange(dirty_cols_, {})};
    }

    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        mark_row(dst);
        SparseRow before = rows_[dst];
        axpy_row(rows_[dst], rows_[src], q);
        const SparseRow& after = rows_[dst];
        auto a = before.begin();
        auto b = after.begin();
        while (a != before.end() || b != after.end()) {
            if (b == after.end() || (a != before.end() && a->first < b->first)) {
                erase_index(col_rows_[a->first], dst);
                mark_col(a->first);
                ++a;
            } else if (a == before.end() || b->first < a->first) {
                insert_index(col_rows_[b->first], dst);
                mark_col(b->first);
                ++b;
            } else {
                ++a;
                ++b;
            }
        }
        nnz_ = nnz_ - before.size() + after.size();
    }

    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (q == 0)
            return;
        mark_col(dst);
        for (std::size_t r : std::vector<std::size_t>(col_rows_[src])) {
            Integer add = q * get(r, src);
            auto& row = rows_[r];
            auto it = lower(row, dst);
            if (it != row.end() && it->first == dst) {
                it->second += add;
                if (it->second == 0) {
                    row.erase(it);
                    erase_index(col_rows_[dst], r);
                    mark_row(r);
                    --nnz_;
                }
            } else {
                row.insert(it, {dst, add});
                insert_index(col_rows_[dst], r);
                mark_row(r);
                ++nnz_;
            }
        }
    }

    void clear_entry(std::size_t r, std::size_t c)
    {
        auto& row = rows_[r];
        auto it = lower(row, c);
        if (it != row.end() && it->first == c) {
            row.erase(it);
            erase_index(col_rows_[c], r);
            mark_row(r);
            mark_col(c);
            --nnz_;
        }
    }

private:
    void mark_row(std::size_t r)
    {
        if (!row_dirty_[r]) {
            row_dirty_[r] = 1;
            dirty_rows_.push_back(r);
        }
    }
    void mark_col(std::size_t c)
    {
        if (!col_dirty_[c]) {
            col_dirty_[c] = 1;
            dirty_cols_.push_back(c);
        }
    }

    static SparseRow::const_iterator lower(const SparseRow& row, std::size_t c)
    {
        return std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
    }
    static SparseRow::iterator lower(SparseRow& row, std::size_t c)
    {
        return std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
    }
    static void insert_index(std::vector<std::size_t>& v, std::size_t x)
    {
        v.insert(std::lower_bound(v.begin(), v.end(), x), x);
    }
    static void erase_index(std::vector<std::size_t>& v, std::size_t x)
    {
        v.erase(std::lower_bound(v.begin(), v.end(), x));
    }

    std::vector<SparseRow> rows_;
    std::vector<std::vector<std::size_t>> col_rows_;
    std::size_t nnz_ = 0;
    std::vector<char> row_dirty_, col_dirty_;
    std::vector<std::size_t> dirty_rows_, dirty_cols_;
};

class DenseStore {
public:
    explicit DenseStore(const SparseStore& s)
        : rows_(s.row_total()), cols_(s.col_total()), data_(rows_ * cols_), row_cnt_(rows_), col_cnt_(cols_)
    {
        s.visit([&](std::size_t r, std::size_t c, const Integer& v) {
            data_[r * cols_ + c] = v;
            ++row_cnt_[r];
            ++col_cnt_[c];
            ++nnz_;
            return true;
        });
    }

    std::size_t nnz() const { return nnz_; }
    std::size_t row_count(std::size_t r) const { return row_cnt_[r]; }
    std::size_t col_count(std::size_t c) const { return col_cnt_[c]; }
    Integer get(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<std::size_t> rows_in_col(std::size_t c) const
    {
        std::vector<std::size_t> out;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (data_[r * cols_ + c] != 0)
                out.push_back(r);
        }
        return out;
    }
    std::vector<std::size_t> cols_in_row(std::size_t r) const
    {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (data_[r * cols_ + c] != 0)
                out.push_back(c);
        }
        return out;
    }

    template <class Fn>
    void visit(Fn&& fn) const
    {
        for (std::size_t r = 0; r < rows_; ++r) {
            if (row_cnt_[r] == 0)
                continue;
            for (std::size_t c = 0; c < cols_; ++c) {
                const Integer& v = data_[r * cols_ + c];
                if (v != 0 && !fn(r, c, v))
                    return;
            }
        }
    }

    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (q == 0)
            return;
        for (std::size_t c = 0; c < cols_; ++c) {
            const Integer& s = data_[src * cols_ + c];
            if (s != 0)
                update(dst, c, q * s);
        }
    }

    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (q == 0)
            return;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Integer& s = data_[r * cols_ + src];
            if (s != 0)
                update(r, dst, q * s);
        }
    }

    void clear_entry(std::size_t r, std::size_t c)
    {
        Integer& x = data_[r * cols_ + c];
        if (x != 0) {
            x = 0;
            --row_cnt_[r];
            --col_cnt_[c];
            --nnz_;
        }
    }

private:
    void update(std::size_t r, std::size_t c, const Integer& add)
    {
        Integer& x = data_[r * cols_ + c];
        const bool was_zero = x == 0;
        x += add;
        const bool is_zero = x == 0;
        if (was_zero && !is_zero) {
            ++row_cnt_[r];
            ++col_cnt_[c];
            ++nnz_;
        } else if (!was_zero && is_zero) {
            --row_cnt_[r];
            --col_cnt_[c];
            --nnz_;
        }
    }

    std::size_t rows_, cols_;
    std::vector<Integer> data_;
    std::vector<std::size_t> row_cnt_, col_cnt_;
    std::size_t nnz_ = 0;
};

struct TransformTracker {
    bool want_u = false;
    bool want_v = false;
    std::vector<SparseRow> u;  // rows of U
    std::vector<SparseRow> vt; // columns of V

    TransformTracker(std::size_t rows, std::size_t cols, bool track_u, bool track_v) : want_u(track_u), want_v(track_v)
    {
        if (want_u) {
            u.resize(rows);
            for (std::size_t i = 0; i < rows; ++i)
                u[i].emplace_back(i, 1);
        }
        if (want_v) {
            vt.resize(cols);
            for (std::size_t i = 0; i < cols; ++i)
                vt[i].emplace_back(i, 1);
        }
    }

    void row_op(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (want_u)
            axpy_row(u[dst], u[src], q);
    }
    void col_op(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (want_v)
            axpy_row(vt[dst], vt[src], q);
    }
};

/// Pivot rule: least |value|, then least Markowitz cost
/// (row_count-1)*(col_count-1), then least (row, col).
template <class Store>
std::pair<std::size_t, std::size_t> select_pivot(const Store& a)
{
    std::optional<std::tuple<Integer, std::size_t, std::size_t, std::size_t>> best;
    a.visit([&](std::size_t r, std::size_t c, const Integer& v) {
        Integer mag = abs_value(v);
        if (best && mag > std::get<0>(*best))
            return true;
        std::size_t cost = (a.row_count(r) - 1) * (a.col_count(c) - 1);
        if (!best || mag < std::get<0>(*best) || cost < std::get<1>(*best))
            best.emplace(std::move(mag), cost, r, c);
        // Lexicographic visiting order: nothing later can beat a unit pivot of zero cost.
        return !(std::get<0>(*best) == 1 && std::get<1>(*best) == 0);
    });
    return {std::get<2>(*best), std::get<3>(*best)};
}

/// Same rule as select_pivot, with keys kept in a heap. Every entry whose key
/// may have changed is pushed again; popped keys are checked against the
/// current matrix and dropped when stale.
class PivotQueue {
public:
    std::pair<std::size_t, std::size_t> select(SparseStore& a)
    {
        auto [rows, cols] = a.take_dirty();
        auto push = [&](std::size_t r, std::size_t c, const Integer& v) {
            heap_.push({abs_value(v), (a.row_count(r) - 1) * (a.col_count(c) - 1), r, c});
        };
        for (std::size_t r : rows)
            a.visit_row(r, push);
        for (std::size_t c : cols)
            a.visit_col(c, push);
        for (;;) {
            const Key& k = heap_.top();
            const auto [mag, cost, r, c] = k;
            const Integer v = a.get(r, c);
            if (v != 0 && abs_value(v) == mag && (a.row_count(r) - 1) * (a.col_count(c) - 1) == cost)
                return {r, c};
            heap_.pop();
        }
    }

private:
    using Key = std::tuple<Integer, std::size_t, std::size_t, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap_;
};

/// Returns true when it stopped early because the fill threshold was crossed.
template <class Store>
bool eliminate(Store& a, TransformTracker& t, std::vector<Pivot>& pivots, std::size_t rows, std::size_t cols,
               std::optional<double> fill_threshold)
{
    PivotQueue queue;
    while (a.nnz() > 0) {
        const double active = static_cast<double>(rows - pivots.size()) * static_cast<double>(cols - pivots.size());
        if (fill_threshold && static_cast<double>(a.nnz()) > *fill_threshold * active)
            return true;
        std::size_t r, c;
        if constexpr (std::is_same_v<Store, SparseStore>)
            std::tie(r, c) = queue.select(a);
        else
            std::tie(r, c) = select_pivot(a);
        const Integer p = a.get(r, c);
        bool clean = true;
        for (std::size_t i : a.rows_in_col(c)) {
            if (i == r)
                continue;
            Integer q = -floor_div(a.get(i, c), p);
            a.add_row(i, r, q);
            t.row_op(i, r, q);
            if (a.get(i, c) != 0)
                clean = false;
        }
        if (!clean)
            continue;
        for (std::size_t j : a.cols_in_row(r)) {
            if (j == c)
                continue;
            Integer q = -floor_div(a.get(r, j), p);
            a.add_col(j, c, q);
            t.col_op(j, c, q);
            if (a.get(r, j) != 0)
                clean = false;
        }
        if (!clean)
            continue;
        pivots.push_back({r, c, p});
        a.clear_entry(r, c);
    }
    return false;
}

} // namespace detail

inline SmithResult smith_normal_form(const IntegerMatrix& m, const SmithOptions& options = {})
{
    const bool track_u = options.want_u || options.verify;
    const bool track_v = options.want_v || options.verify;
    detail::TransformTracker tracker(m.rows(), m.cols(), track_u, track_v);
    std::vector<detail::Pivot> pivots;
    SmithResult result;

    detail::SparseStore sparse(m);
    if (detail::eliminate(sparse, tracker, pivots, m.rows(), m.cols(), options.dense_fill_threshold)) {
        detail::DenseStore dense(sparse);
        result.used_dense = true;
        detail::eliminate(dense, tracker, pivots, m.rows(), m.cols(), std::nullopt);
    }

    // Permute pivots onto the diagonal.
    std::vector<std::size_t> row_order, col_order;
    std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
    std::vector<Integer> diag;
    for (const auto& p : pivots) {
        row_order.push_back(p.row);
        col_order.push_back(p.col);
        row_used[p.row] = true;
        col_used[p.col] = true;
        diag.push_back(p.value);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (!row_used[r])
            row_order.push_back(r);
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!col_used[c])
            col_order.push_back(c);
    }
    std::vector<SparseRow> u, vt;
    if (track_u) {
        for (std::size_t r : row_order)
            u.push_back(std::move(tracker.u[r]));
    }
    if (track_v) {
        for (std::size_t c : col_order)
            vt.push_back(std::move(tracker.vt[c]));
    }
    for (std::size_t k = 0; k < diag.size(); ++k) {
        if (diag[k] < 0) {
            diag[k] = -diag[k];
            if (track_u)
                detail::scale_row(u[k], -1);
        }
    }

    // Units divide everything: move them to the front, permuting U and V alike.
    std::size_t units = 0;
    {
        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < diag.size(); ++k) {
            if (diag[k] == 1)
                order.push_back(k);
        }
        units = order.size();
        for (std::size_t k = 0; k < diag.size(); ++k) {
            if (diag[k] != 1)
                order.push_back(k);
        }
        auto permute = [&](auto& v) {
            std::remove_reference_t<decltype(v)> head;
            head.reserve(order.size());
            for (std::size_t k : order)
                head.push_back(std::move(v[k]));
            std::move(head.begin(), head.end(), v.begin());
        };
        permute(diag);
        if (track_u)
            permute(u);
        if (track_v)
            permute(vt);
    }

    // Enforce d_i | d_j by replacing (a, b) with (gcd, lcm) through explicit
    // unimodular 2x2 row and column operations.
    for (std::size_t i = units; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            const Integer a = diag[i], b = diag[j];
            if (b % a == 0)
                continue;
            Integer s, t;
            const Integer g = extended_gcd(a, b, s, t);
            if (track_u)
                detail::mix_rows(u[i], u[j], s, t, -b / g, a / g);
            if (track_v)
                detail::mix_rows(vt[i], vt[j], 1, 1, -t * b / g, s * a / g);
            diag[i] = g;
            diag[j] = a / g * b;
        }
    }
    result.invariants = diag;

    if (track_u)
        result.u = IntegerMatrix::from_rows(m.rows(), m.rows(), std::move(u));
    if (track_v)
        result.v = IntegerMatrix::from_rows(m.cols(), m.cols(), std::move(vt)).transpose();

    if (options.verify) {
        IntegerMatrix d(m.rows(), m.cols());
        for (std::size_t k = 0; k < diag.size(); ++k)
            d.set(k, k, diag[k]);
        if (!(*result.u * m * *result.v == d))
            throw InvariantError("Smith normal form check U*M*V == D failed");
        for (std::size_t k = 0; k + 1 < diag.size(); ++k) {
            if (diag[k + 1] % diag[k] != 0)
                throw InvariantError("Smith invariants not in divisibility order");
        }
    }
    if (!options.want_u)
        result.u.reset();
    if (!options.want_v)
        result.v.reset();
    return result;
}

inline std::size_t integer_rank(const IntegerMatrix& m)
{
    return smith_normal_form(m, SmithOptions{false, false, false}).rank();
}

} // namespace flatlink
