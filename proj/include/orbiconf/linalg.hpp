// Exact rank, kernel bases and Smith normal form.
#pragma once

#include "orbiconf/eliminate.hpp"

#include <optional>

namespace orbiconf {

inline size_t rank_rational(const SparseMatrix<Rational>& a) {
    SparseEliminator<Rational> elim(a.rows(), a.columns());
    return elim.run();
}

inline size_t rank_rational(const SparseMatrix<Integer>& a) { return rank_rational(convert<Rational>(a)); }

// Basis of the right kernel {x : A x = 0}, one sparse vector per free column.
inline std::vector<SparseVec<Rational>> kernel_basis(const SparseMatrix<Rational>& a) {
    // Gauss-Jordan on the rows of A.
    SparseMatrix<Rational> at = a.transpose();
    std::vector<SparseVec<Rational>> pivot_rows;  // each normalized at its leading index
    std::vector<uint32_t> lead;
    std::vector<int64_t> lead_of_col(a.cols(), -1);
    for (uint32_t i = 0; i < at.cols(); ++i) {
        SparseVec<Rational> r = at.column(i);
        for (size_t p = 0; p < pivot_rows.size() && !r.empty(); ++p) {
            const Rational* v = find_entry(r, lead[p]);
            if (v) {
                Rational lam = *v;
                r = axpy(r, lam, pivot_rows[p]);
            }
        }
        if (r.empty()) continue;
        Rational inv = Rational(1) / r.front().value;
        for (auto& e : r) e.value *= inv;
        uint32_t l = r.front().index;
        for (auto& pr : pivot_rows) {
            const Rational* v = find_entry(pr, l);
            if (v) {
                Rational lam = *v;
                pr = axpy(pr, lam, r);
            }
        }
        lead_of_col[l] = static_cast<int64_t>(pivot_rows.size());
        lead.push_back(l);
        pivot_rows.push_back(std::move(r));
    }
    std::vector<SparseVec<Rational>> basis;
    for (uint32_t j = 0; j < a.cols(); ++j) {
        if (lead_of_col[j] >= 0) continue;
        std::vector<Entry<Rational>> raw{{j, Rational(1)}};
        for (size_t p = 0; p < pivot_rows.size(); ++p) {
            const Rational* v = find_entry(pivot_rows[p], j);
            if (v) raw.push_back({lead[p], -*v});
        }
        basis.push_back(make_sparse(std::move(raw)));
    }
    return basis;
}

struct SmithForm {
    std::vector<Integer> factors;  // nonzero invariant factors, d_1 | d_2 | ...
    size_t rank = 0;
    // Present only when requested: left * A * right == diag(factors).
    std::optional<SparseMatrix<Integer>> left;
    std::optional<SparseMatrix<Integer>> right;

    std::vector<Integer> torsion() const {
        std::vector<Integer> t;
        for (const auto& d : factors)
            if (!(d == Integer(1))) t.push_back(d);
        return t;
    }
};

namespace detail {

using Dense = std::vector<std::vector<Integer>>;

inline void swap_rows(Dense& m, size_t a, size_t b) { std::swap(m[a], m[b]); }
inline void swap_cols(Dense& m, size_t a, size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}
// row_a += k * row_b
inline void add_row(Dense& m, size_t a, size_t b, const Integer& k) {
    if (k.is_zero()) return;
    for (size_t j = 0; j < m[a].size(); ++j)
        if (!m[b][j].is_zero()) m[a][j] += k * m[b][j];
}
inline void add_col(Dense& m, size_t a, size_t b, const Integer& k) {
    if (k.is_zero()) return;
    for (auto& row : m)
        if (!row[b].is_zero()) row[a] += k * row[b];
}

// Floor division so remainders land in [0, |b|).
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (!r.is_zero() && ((r.sign() < 0) != (b.sign() < 0))) q -= Integer(1);
    return q;
}

inline Dense identity_dense(size_t n) {
    Dense d(n, std::vector<Integer>(n, Integer(0)));
    for (size_t i = 0; i < n; ++i) d[i][i] = Integer(1);
    return d;
}

// Dense Smith normal form. When U and V are given, maintains U * A0 * V == m.
inline std::vector<Integer> dense_smith(Dense m, Dense* U, Dense* V) {
    size_t rows = m.size();
    size_t cols = rows ? m[0].size() : 0;
    std::vector<Integer> diag;
    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero entry in the trailing block.
            size_t pi = rows, pj = cols;
            Integer best;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (!m[i][j].is_zero() && (pi == rows || abs(m[i][j]) < best)) {
                        best = abs(m[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) return diag;
            if (pi != t) {
                swap_rows(m, pi, t);
                if (U) swap_rows(*U, pi, t);
            }
            if (pj != t) {
                swap_cols(m, pj, t);
                if (V) swap_cols(*V, pj, t);
            }
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t].is_zero()) continue;
                Integer q = floor_div(m[i][t], m[t][t]);
                add_row(m, i, t, -q);
                if (U) add_row(*U, i, t, -q);
                if (!m[i][t].is_zero()) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j].is_zero()) continue;
                Integer q = floor_div(m[t][j], m[t][t]);
                add_col(m, j, t, -q);
                if (V) add_col(*V, j, t, -q);
                if (!m[t][j].is_zero()) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold any offending row into row t and retry.
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (!(m[i][j] % m[t][t]).is_zero()) {
                        add_row(m, t, i, Integer(1));
                        if (U) add_row(*U, t, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (m[t][t].sign() < 0) {
            for (auto& x : m[t]) x = -x;
            if (U)
                for (auto& x : (*U)[t]) x = -x;
        }
        diag.push_back(m[t][t]);
    }
    return diag;
}

inline SparseMatrix<Integer> sparse_from_dense(const Dense& d) {
    return SparseMatrix<Integer>::from_dense(d);
}

} // namespace detail

// Invariant factors of an integer matrix. Unit pivots are first eliminated
// sparsely; only the residual block is reduced densely. Transformation
// matrices are computed densely on the whole matrix and only on request.
inline SmithForm smith_normal_form(const SparseMatrix<Integer>& a, bool with_transforms = false) {
    SmithForm sf;
    if (with_transforms) {
        detail::Dense u = detail::identity_dense(a.rows());
        detail::Dense v = detail::identity_dense(a.cols());
        sf.factors = detail::dense_smith(a.to_dense(), &u, &v);
        sf.rank = sf.factors.size();
        sf.left = detail::sparse_from_dense(u);
        sf.right = detail::sparse_from_dense(v);
        return sf;
    }
    SparseEliminator<Integer> elim(a.rows(), a.columns(), /*units_only=*/true);
    size_t units = elim.run();
    std::vector<uint32_t> live_rows, live_cols;
    std::vector<int64_t> row_pos(a.rows(), -1);
    for (uint32_t i = 0; i < a.rows(); ++i)
        if (elim.row_alive(i)) {
            row_pos[i] = static_cast<int64_t>(live_rows.size());
            live_rows.push_back(i);
        }
    for (uint32_t j = 0; j < a.cols(); ++j)
        if (elim.column_alive(j) && !elim.column(j).empty()) live_cols.push_back(j);
    detail::Dense residual(live_rows.size(), std::vector<Integer>(live_cols.size(), Integer(0)));
    for (size_t c = 0; c < live_cols.size(); ++c)
        for (const auto& e : elim.column(live_cols[c])) residual[static_cast<size_t>(row_pos[e.index])][c] = e.value;
    std::vector<Integer> rest = detail::dense_smith(std::move(residual), nullptr, nullptr);
    sf.factors.assign(units, Integer(1));
    // The dense pass yields a divisibility chain up to sign; sort to canonical order.
    std::sort(rest.begin(), rest.end());
    for (auto& d : rest) sf.factors.push_back(d);
    sf.rank = sf.factors.size();
    return sf;
}

} // namespace orbiconf
