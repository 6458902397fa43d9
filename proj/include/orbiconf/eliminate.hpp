// Sparse Gaussian elimination with Markowitz-style pivot selection.
//
// The eliminator repeatedly picks the live row with the fewest entries and,
// within it, the admissible entry whose column is shortest. Singleton rows
// and columns therefore go first and cost no fill. In units-only mode only
// entries equal to +1 or -1 are admissible, which keeps integer matrices
// unimodularly equivalent to the residual left behind.
#pragma once

#include "orbiconf/sparse.hpp"

#include <functional>
#include <queue>

namespace orbiconf {

template <class T>
struct PivotEvent {
    uint32_t row;
    uint32_t col;
    const T& value;
    const SparseVec<T>& pivot_column;         // column at pivot time, pivot entry included
    const SparseVec<T>& pivot_row;            // row at pivot time, indexed by column id
};

template <class T>
class SparseEliminator {
public:
    SparseEliminator(uint32_t rows, std::vector<SparseVec<T>> cols, bool units_only = false)
        : rows_(rows), units_only_(units_only), cols_(std::move(cols)),
          col_alive_(cols_.size(), 1), row_alive_(rows, 1), row_cols_(rows), row_count_(rows, 0) {
        for (uint32_t j = 0; j < cols_.size(); ++j)
            for (const auto& e : cols_[j]) {
                row_cols_[e.index].push_back(j);
                ++row_count_[e.index];
            }
        for (uint32_t i = 0; i < rows_; ++i)
            if (row_count_[i] > 0) heap_.push({row_count_[i], i});
    }

    // Eliminates until no admissible pivot remains. The callback, if any,
    // observes each pivot before the matrix is updated. Returns pivot count.
    size_t run(const std::function<void(const PivotEvent<T>&)>& on_pivot = {}) {
        size_t pivots = 0;
        SparseVec<T> row_snapshot;
        while (!heap_.empty()) {
            auto [count, f] = heap_.top();
            heap_.pop();
            if (!row_alive_[f] || row_count_[f] != count || count == 0) continue;
            if (stuck_count_.size() == rows_ && stuck_count_[f] == count) continue;

            // Refresh the row's column list and pick the pivot column.
            auto& rc = row_cols_[f];
            std::sort(rc.begin(), rc.end());
            rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
            row_snapshot.clear();
            uint32_t best = UINT32_MAX;
            size_t best_len = SIZE_MAX;
            bool best_unit = false;
            std::vector<uint32_t> live;
            live.reserve(rc.size());
            for (uint32_t j : rc) {
                if (!col_alive_[j]) continue;
                const T* v = find_entry(cols_[j], f);
                if (!v) continue;
                live.push_back(j);
                row_snapshot.push_back({j, *v});
                bool unit = v->is_unit();
                if (units_only_ && !unit) continue;
                size_t len = cols_[j].size();
                if (best == UINT32_MAX || (unit && !best_unit) ||
                    (unit == best_unit && len < best_len)) {
                    best = j;
                    best_len = len;
                    best_unit = unit;
                }
            }
            rc = std::move(live);
            if (best == UINT32_MAX) {
                if (stuck_count_.size() != rows_) stuck_count_.assign(rows_, UINT32_MAX);
                stuck_count_[f] = count;
                continue;
            }
            pivot(f, best, row_snapshot, on_pivot);
            ++pivots;
        }
        return pivots;
    }

    bool column_alive(uint32_t j) const { return col_alive_[j] != 0; }
    bool row_alive(uint32_t i) const { return row_alive_[i] != 0; }
    const SparseVec<T>& column(uint32_t j) const { return cols_[j]; }
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return static_cast<uint32_t>(cols_.size()); }

private:
    void pivot(uint32_t f, uint32_t c, const SparseVec<T>& row_snapshot,
               const std::function<void(const PivotEvent<T>&)>& on_pivot) {
        const SparseVec<T>& pc = cols_[c];
        const T a = *find_entry(pc, f);
        if (on_pivot) on_pivot(PivotEvent<T>{f, c, a, pc, row_snapshot});

        for (const auto& re : row_snapshot) {
            uint32_t x = re.index;
            if (x == c) continue;
            T lambda = re.value / a;
            const SparseVec<T>& y = cols_[x];
            SparseVec<T> out;
            out.reserve(y.size() + pc.size());
            size_t i = 0, j = 0;
            while (i < y.size() || j < pc.size()) {
                if (j == pc.size() || (i < y.size() && y[i].index < pc[j].index)) {
                    out.push_back(std::move(cols_[x][i++]));
                } else if (i == y.size() || pc[j].index < y[i].index) {
                    uint32_t g = pc[j].index;
                    out.push_back({g, T(0) - lambda * pc[j].value});
                    row_cols_[g].push_back(x);
                    bump(g, +1);
                    ++j;
                } else {
                    uint32_t g = y[i].index;
                    T v = y[i].value - lambda * pc[j].value;
                    if (v.is_zero()) bump(g, -1);
                    else out.push_back({g, std::move(v)});
                    ++i;
                    ++j;
                }
            }
            cols_[x] = std::move(out);
        }

        for (const auto& e : pc)
            if (e.index != f) bump(e.index, -1);
        row_alive_[f] = 0;
        row_count_[f] = 0;
        row_cols_[f].clear();
        row_cols_[f].shrink_to_fit();
        col_alive_[c] = 0;
        cols_[c].clear();
        cols_[c].shrink_to_fit();
    }

    void bump(uint32_t g, int delta) {
        row_count_[g] = static_cast<uint32_t>(int64_t(row_count_[g]) + delta);
        if (row_alive_[g] && row_count_[g] > 0) heap_.push({row_count_[g], g});
    }

    using Item = std::pair<uint32_t, uint32_t>;
    uint32_t rows_;
    bool units_only_;
    std::vector<SparseVec<T>> cols_;
    std::vector<uint8_t> col_alive_;
    std::vector<uint8_t> row_alive_;
    std::vector<std::vector<uint32_t>> row_cols_;
    std::vector<uint32_t> row_count_;
    std::vector<uint32_t> stuck_count_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
};

} // namespace orbiconf
