// Sparse vectors and column-major sparse matrices over exact scalars.
#pragma once

#include "orbiconf/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbiconf {

template <class T>
struct Entry {
    uint32_t index;
    T value;

    friend bool operator==(const Entry& a, const Entry& b) { return a.index == b.index && a.value == b.value; }
};

// Sorted by index, no stored zeros.
template <class T>
using SparseVec = std::vector<Entry<T>>;

template <class T>
const T* find_entry(const SparseVec<T>& v, uint32_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const Entry<T>& e, uint32_t i) { return e.index < i; });
    return (it != v.end() && it->index == index) ? &it->value : nullptr;
}

// Returns y - lambda * x.
template <class T>
SparseVec<T> axpy(const SparseVec<T>& y, const T& lambda, const SparseVec<T>& x) {
    SparseVec<T> out;
    out.reserve(y.size() + x.size());
    size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].index < y[i].index) {
            out.push_back({x[j].index, T(0) - lambda * x[j].value});
            ++j;
        } else {
            T v = y[i].value - lambda * x[j].value;
            if (!v.is_zero()) out.push_back({y[i].index, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

template <class T>
void add_to(SparseVec<T>& y, const T& lambda, const SparseVec<T>& x) {
    y = axpy(y, T(0) - lambda, x);
}

template <class T>
T dot(const SparseVec<T>& a, const SparseVec<T>& b) {
    T acc(0);
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].index < b[j].index) ++i;
        else if (b[j].index < a[i].index) ++j;
        else {
            acc += a[i].value * b[j].value;
            ++i;
            ++j;
        }
    }
    return acc;
}

// Builds a canonical sparse vector from unsorted (index, value) pairs,
// summing duplicates and dropping zeros.
template <class T>
SparseVec<T> make_sparse(std::vector<Entry<T>> raw) {
    std::sort(raw.begin(), raw.end(), [](const Entry<T>& a, const Entry<T>& b) { return a.index < b.index; });
    SparseVec<T> out;
    out.reserve(raw.size());
    for (auto& e : raw) {
        if (!out.empty() && out.back().index == e.index) out.back().value += e.value;
        else out.push_back(std::move(e));
    }
    std::erase_if(out, [](const Entry<T>& e) { return e.value.is_zero(); });
    return out;
}

template <class T>
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(uint32_t rows, uint32_t cols) : rows_(rows), cols_(cols), columns_(cols) {}
    SparseMatrix(uint32_t rows, std::vector<SparseVec<T>> columns)
        : rows_(rows), cols_(static_cast<uint32_t>(columns.size())), columns_(std::move(columns)) {
        for (const auto& c : columns_)
            for (const auto& e : c)
                if (e.index >= rows_) throw std::out_of_range("SparseMatrix: row index out of range");
    }

    static SparseMatrix from_dense(const std::vector<std::vector<T>>& dense) {
        uint32_t r = static_cast<uint32_t>(dense.size());
        uint32_t c = r == 0 ? 0 : static_cast<uint32_t>(dense[0].size());
        SparseMatrix m(r, c);
        for (uint32_t i = 0; i < r; ++i)
            for (uint32_t j = 0; j < c; ++j)
                if (!dense[i][j].is_zero()) m.columns_[j].push_back({i, dense[i][j]});
        return m;
    }

    static SparseMatrix identity(uint32_t n) {
        SparseMatrix m(n, n);
        for (uint32_t i = 0; i < n; ++i) m.columns_[i].push_back({i, T(1)});
        return m;
    }

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    const SparseVec<T>& column(uint32_t j) const { return columns_[j]; }
    const std::vector<SparseVec<T>>& columns() const { return columns_; }

    T at(uint32_t i, uint32_t j) const {
        const T* p = find_entry(columns_.at(j), i);
        return p ? *p : T(0);
    }

    void set(uint32_t i, uint32_t j, T v) {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("SparseMatrix::set");
        auto& col = columns_[j];
        auto it = std::lower_bound(col.begin(), col.end(), i,
                                   [](const Entry<T>& e, uint32_t k) { return e.index < k; });
        bool present = it != col.end() && it->index == i;
        if (v.is_zero()) {
            if (present) col.erase(it);
        } else if (present) {
            it->value = std::move(v);
        } else {
            col.insert(it, {i, std::move(v)});
        }
    }

    size_t nonzeros() const {
        size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    SparseMatrix transpose() const {
        std::vector<SparseVec<T>> cols(rows_);
        for (uint32_t j = 0; j < cols_; ++j)
            for (const auto& e : columns_[j]) cols[e.index].push_back({j, e.value});
        return SparseMatrix(cols_, std::move(cols));
    }

    SparseVec<T> apply(const SparseVec<T>& x) const {
        std::vector<Entry<T>> raw;
        for (const auto& e : x)
            for (const auto& a : columns_.at(e.index)) raw.push_back({a.index, a.value * e.value});
        return make_sparse(std::move(raw));
    }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix product: dimension mismatch");
        std::vector<SparseVec<T>> cols;
        cols.reserve(b.cols_);
        for (const auto& c : b.columns_) cols.push_back(a.apply(c));
        return SparseMatrix(a.rows_, std::move(cols));
    }

    friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("SparseMatrix sum: dimension mismatch");
        std::vector<SparseVec<T>> cols(a.cols_);
        for (uint32_t j = 0; j < a.cols_; ++j) cols[j] = axpy(a.columns_[j], T(-1), b.columns_[j]);
        return SparseMatrix(a.rows_, std::move(cols));
    }

    friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("SparseMatrix difference: dimension mismatch");
        std::vector<SparseVec<T>> cols(a.cols_);
        for (uint32_t j = 0; j < a.cols_; ++j) cols[j] = axpy(a.columns_[j], T(1), b.columns_[j]);
        return SparseMatrix(a.rows_, std::move(cols));
    }

    SparseMatrix scaled(const T& s) const {
        SparseMatrix m(rows_, cols_);
        if (s.is_zero()) return m;
        for (uint32_t j = 0; j < cols_; ++j)
            for (const auto& e : columns_[j]) m.columns_[j].push_back({e.index, e.value * s});
        return m;
    }

    bool is_zero() const {
        for (const auto& c : columns_)
            if (!c.empty()) return false;
        return true;
    }

    std::vector<std::vector<T>> to_dense() const {
        std::vector<std::vector<T>> d(rows_, std::vector<T>(cols_, T(0)));
        for (uint32_t j = 0; j < cols_; ++j)
            for (const auto& e : columns_[j]) d[e.index][j] = e.value;
        return d;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (uint32_t j = 0; j < a.cols_; ++j) {
            const auto& x = a.columns_[j];
            const auto& y = b.columns_[j];
            if (x.size() != y.size()) return false;
            for (size_t i = 0; i < x.size(); ++i)
                if (x[i].index != y[i].index || x[i].value != y[i].value) return false;
        }
        return true;
    }

private:
    uint32_t rows_ = 0;
    uint32_t cols_ = 0;
    std::vector<SparseVec<T>> columns_;
};

template <class To, class From>
SparseMatrix<To> convert(const SparseMatrix<From>& m) {
    std::vector<SparseVec<To>> cols(m.cols());
    for (uint32_t j = 0; j < m.cols(); ++j)
        for (const auto& e : m.column(j)) cols[j].push_back({e.index, To(e.value)});
    return SparseMatrix<To>(m.rows(), std::move(cols));
}

} // namespace orbiconf
