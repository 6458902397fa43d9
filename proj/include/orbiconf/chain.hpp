// Chain complexes, homology reports and homology with explicit bases.
#pragma once

#include "orbiconf/linalg.hpp"

#include <cstdlib>
#include <future>
#include <string>
#include <thread>

namespace orbiconf {

// Cells of degree k are numbered 0..dims[k]-1; boundary[k][j] expresses the
// boundary of cell j of degree k in the cells of degree k-1. When truncated
// is set, the top degree is present only to supply boundaries and its own
// homology is not reported.
template <class T>
struct ChainComplex {
    std::vector<uint32_t> dims;
    std::vector<std::vector<SparseVec<T>>> boundary;
    bool truncated = false;

    size_t degrees() const { return dims.size(); }
    // Highest degree whose homology is determined by this complex, or -1.
    int exact_through() const { return static_cast<int>(dims.size()) - (truncated ? 2 : 1); }

    SparseMatrix<T> boundary_matrix(size_t k) const {
        if (k == 0 || k >= dims.size()) {
            uint32_t rows = (k == 0 || k > dims.size()) ? 0 : dims[k - 1];
            uint32_t cols = k < dims.size() ? dims[k] : 0;
            return SparseMatrix<T>(rows, cols);
        }
        return SparseMatrix<T>(dims[k - 1], boundary[k]);
    }
};

struct HomologyReport {
    std::string ring = "rational";
    std::vector<size_t> betti;
    std::vector<std::vector<Integer>> torsion;  // integral only, factors > 1 per degree

    friend bool operator==(const HomologyReport& a, const HomologyReport& b) {
        return a.ring == b.ring && a.betti == b.betti && a.torsion == b.torsion;
    }
};

// Upper bound on worker threads, from ORBICONF_THREADS when set.
inline unsigned thread_cap() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ORBICONF_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), hw);
    }
    return hw;
}

// Runs fn(i) for i in [0, n) on at most thread_cap() threads.
template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
    unsigned cap = thread_cap();
    if (cap <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<size_t>(cap, n); ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

inline HomologyReport rational_homology(const ChainComplex<Rational>& c) {
    size_t deg = c.degrees();
    std::vector<size_t> ranks(deg + 1, 0);
    parallel_for(deg, [&](size_t k) {
        if (k >= 1) ranks[k] = rank_rational(c.boundary_matrix(k));
    });
    HomologyReport r;
    int top = c.exact_through();
    for (int k = 0; k <= top; ++k)
        r.betti.push_back(c.dims[k] - ranks[k] - ranks[k + 1]);
    r.torsion.assign(r.betti.size(), {});
    return r;
}

inline HomologyReport integral_homology(const ChainComplex<Integer>& c) {
    size_t deg = c.degrees();
    std::vector<SmithForm> snf(deg + 1);
    parallel_for(deg, [&](size_t k) {
        if (k >= 1) snf[k] = smith_normal_form(c.boundary_matrix(k));
    });
    HomologyReport r;
    r.ring = "integral";
    int top = c.exact_through();
    for (int k = 0; k <= top; ++k) {
        r.betti.push_back(c.dims[k] - snf[k].rank - snf[k + 1].rank);
        r.torsion.push_back(snf[k + 1].torsion());
    }
    return r;
}

template <class T>
ChainComplex<Rational> to_rational(const ChainComplex<T>& c) {
    ChainComplex<Rational> out;
    out.dims = c.dims;
    out.truncated = c.truncated;
    out.boundary.resize(c.boundary.size());
    for (size_t k = 0; k < c.boundary.size(); ++k) {
        out.boundary[k].resize(c.boundary[k].size());
        for (size_t j = 0; j < c.boundary[k].size(); ++j)
            for (const auto& e : c.boundary[k][j]) out.boundary[k][j].push_back({e.index, Rational(e.value)});
    }
    return out;
}

// Checks that consecutive boundary maps compose to zero.
template <class T>
bool boundary_squares_to_zero(const ChainComplex<T>& c) {
    for (size_t k = 2; k < c.degrees(); ++k) {
        auto prod = c.boundary_matrix(k - 1) * c.boundary_matrix(k);
        if (!prod.is_zero()) return false;
    }
    return true;
}

// Rational homology with explicit bases, obtained by eliminating the whole
// complex bottom-up down to zero differential. Each elimination of a pair
// (c in C_k, f in C_{k-1}) is a chain homotopy equivalence; the recorded
// history lets cycles be projected to class coordinates and surviving
// cells be lifted back to cycles of the original complex.
class HomologyBasis {
public:
    explicit HomologyBasis(const ChainComplex<Rational>& c) : exact_through_(c.exact_through()) {
        size_t deg = c.degrees();
        upper_.resize(deg);
        lower_.resize(deg);
        dropped_.resize(deg);
        std::vector<std::vector<uint8_t>> gone(deg);
        for (size_t k = 0; k < deg; ++k) gone[k].assign(c.dims[k], 0);
        for (size_t k = 1; k < deg; ++k) {
            std::vector<SparseVec<Rational>> cols = c.boundary[k];
            const auto& dead_rows = dropped_[k - 1];
            if (!dead_rows.empty())
                for (auto& col : cols)
                    std::erase_if(col, [&](const Entry<Rational>& e) { return dead_rows[e.index] != 0; });
            dropped_[k].assign(c.dims[k], 0);
            SparseEliminator<Rational> elim(c.dims[k - 1], std::move(cols));
            elim.run([&](const PivotEvent<Rational>& ev) {
                lower_[k - 1].push_back({ev.row, ev.value, ev.pivot_column});
                upper_[k].push_back({ev.col, ev.value, ev.pivot_row});
                dropped_[k][ev.col] = 1;
                gone[k - 1][ev.row] = 1;
            });
        }
        survivors_.resize(deg);
        position_.resize(deg);
        for (size_t k = 0; k < deg; ++k) {
            position_[k].assign(c.dims[k], -1);
            for (uint32_t j = 0; j < c.dims[k]; ++j) {
                bool is_dropped = !dropped_[k].empty() && dropped_[k][j];
                if (!gone[k][j] && !is_dropped) {
                    position_[k][j] = static_cast<int64_t>(survivors_[k].size());
                    survivors_[k].push_back(j);
                }
            }
        }
    }

    int exact_through() const { return exact_through_; }
    size_t betti(size_t k) const { return survivors_.at(k).size(); }

    // Coordinates of the homology class of a k-cycle in this basis.
    std::vector<Rational> class_of(size_t k, SparseVec<Rational> x) const {
        if (k < dropped_.size() && !dropped_[k].empty())
            std::erase_if(x, [&](const Entry<Rational>& e) { return dropped_[k][e.index] != 0; });
        if (k < lower_.size())
            for (const auto& step : lower_[k]) {
                const Rational* v = find_entry(x, step.f);
                if (!v) continue;
                Rational lam = *v / step.a;
                x = axpy(x, lam, step.column);
            }
        std::vector<Rational> coords(betti(k), Rational(0));
        for (const auto& e : x) {
            int64_t p = position_[k][e.index];
            if (p < 0) throw std::logic_error("class_of: chain is not a cycle");
            coords[static_cast<size_t>(p)] = e.value;
        }
        return coords;
    }

    // A cycle of the original complex representing basis element i.
    SparseVec<Rational> representative(size_t k, size_t i) const {
        SparseVec<Rational> x{{survivors_.at(k).at(i), Rational(1)}};
        const auto& steps = upper_[k];
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            Rational s = dot(it->row, x);
            if (s.is_zero()) continue;
            SparseVec<Rational> unit{{it->c, Rational(1)}};
            x = axpy(x, s / it->a, unit);
        }
        return x;
    }

private:
    struct LowerStep {
        uint32_t f;
        Rational a;
        SparseVec<Rational> column;
    };
    struct UpperStep {
        uint32_t c;
        Rational a;
        SparseVec<Rational> row;
    };
    int exact_through_;
    std::vector<std::vector<LowerStep>> lower_;   // indexed by the degree of f
    std::vector<std::vector<UpperStep>> upper_;   // indexed by the degree of c
    std::vector<std::vector<uint8_t>> dropped_;
    std::vector<std::vector<uint32_t>> survivors_;
    std::vector<std::vector<int64_t>> position_;
};

// Matrix of the map induced in degree k by a chain map, in the bases of the
// two HomologyBasis objects. The chain map sends a source cell to a target chain.
template <class CellMap>
SparseMatrix<Rational> induced_matrix(const HomologyBasis& source, const HomologyBasis& target, size_t k,
                                      CellMap&& cell_map) {
    size_t bs = source.betti(k), bt = target.betti(k);
    std::vector<SparseVec<Rational>> cols(bs);
    for (size_t i = 0; i < bs; ++i) {
        SparseVec<Rational> z = source.representative(k, i);
        std::vector<Entry<Rational>> raw;
        for (const auto& e : z) {
            SparseVec<Rational> img = cell_map(e.index);
            for (auto& t : img) raw.push_back({t.index, t.value * e.value});
        }
        std::vector<Rational> coords = target.class_of(k, make_sparse(std::move(raw)));
        for (uint32_t r = 0; r < bt; ++r)
            if (!coords[r].is_zero()) cols[i].push_back({r, coords[r]});
    }
    return SparseMatrix<Rational>(static_cast<uint32_t>(bt), std::move(cols));
}

} // namespace orbiconf
