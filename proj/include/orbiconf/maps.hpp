// Forget, transfer and stabilisation maps between configuration complexes,
// their matrices on rational homology, and the relations they satisfy.
//
// All maps act on coinvariant chains (trivial character). A cell of the
// unordered complex C_n is a sorted tuple of simplex orbits; the split
// complex C_{n-m,m} has two blocks, the last m coordinates being the points
// that are remembered by forget.
#pragma once

#include "orbiconf/config.hpp"

#include <map>

namespace orbiconf {

using QMatrix = SparseMatrix<Rational>;

inline QMatrix invert(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix is not square");
    size_t n = a.rows();
    auto m = a.to_dense();
    auto inv = SparseMatrix<Rational>::identity(static_cast<uint32_t>(n)).to_dense();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("invert: matrix is singular");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational s = Rational(1) / m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] = m[c][j] * s;
            inv[c][j] = inv[c][j] * s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c].is_zero()) continue;
            Rational f = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = m[r][j] - f * m[c][j];
                inv[r][j] = inv[r][j] - f * inv[c][j];
            }
        }
    }
    return n == 0 ? QMatrix(0, 0) : QMatrix::from_dense(inv);
}

inline QMatrix zero_matrix(size_t rows, size_t cols) { return QMatrix(static_cast<uint32_t>(rows), static_cast<uint32_t>(cols)); }

// A configuration complex with a homology basis through its exact degree.
struct ConfSpace {
    std::unique_ptr<ConfigurationComplex> complex;
    std::unique_ptr<HomologyBasis> basis;

    // Highest degree with known homology; every degree when not truncated.
    int exact_through() const { return complex->exact_through(); }
    bool known(size_t k) const { return !complex->truncated() || static_cast<int>(k) <= exact_through(); }
    size_t betti(size_t k) const {
        if (!known(k)) throw InputError("degree " + std::to_string(k) + " is above the computed range");
        return static_cast<int>(k) <= complex->top_degree() ? basis->betti(k) : 0;
    }
};

// Sign of reordering the coordinates of a product cell with the given
// dimensions into the order `order` (new position i takes old order[i]).
inline int koszul_sign(const std::vector<unsigned>& dims, const std::vector<size_t>& order) {
    int s = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j)
            if (order[i] > order[j] && dims[order[i]] % 2 && dims[order[j]] % 2) s = -s;
    return s;
}

// m-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<size_t>> subsets(size_t n, size_t m) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> s(m);
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t i) {
        if (i == m) {
            out.push_back(s);
            return;
        }
        for (size_t v = start; v + (m - i) <= n; ++v) {
            s[i] = v;
            rec(v + 1, i + 1);
        }
    };
    rec(0, 0);
    return out;
}

inline size_t binomial(size_t n, size_t m) {
    if (m > n) return 0;
    size_t r = 1;
    for (size_t i = 1; i <= m; ++i) r = r * (n - m + i) / i;
    return r;
}

// A chain map given cell by cell in one degree.
using CellMap = std::function<SparseVec<Rational>(uint32_t)>;

class MapEngine {
public:
    // Homology is computed through degree max_degree in every complex.
    // With stabilisation data, configurations live on its ambient complex.
    MapEngine(const GlobalQuotientOrbifold& x, int max_degree, size_t capacity = 10'000'000)
        : x_(&x), max_degree_(max_degree), capacity_(capacity),
          orbits_(std::make_shared<SimplexOrbits>(x.stabilisation() ? *x.stabilisation()->ambient : x.working())) {
        if (max_degree < 0) throw InputError("map engine needs a degree bound");
    }

    const GlobalQuotientOrbifold& orbifold() const { return *x_; }
    int max_degree() const { return max_degree_; }

    // Unordered C_n.
    const ConfSpace& conf(size_t n) { return space(key(n, 0, false), [&] { return spec(n, 0, false); }); }
    // Two blocks (n-m, m).
    const ConfSpace& split(size_t n, size_t m) {
        if (m > n) throw InputError("split complex needs m <= n");
        return space(key(n, m, false), [&] { return spec(n, m, false); });
    }
    // Conf_n of the nested copy.
    const ConfSpace& nested(size_t n) {
        require_stab();
        return space(key(n, 0, true), [&] { return spec(n, 0, true); });
    }

    // Chain level maps, in degree k, from a source cell index to a target chain.
    CellMap chain_upper_shriek(size_t n, size_t m, size_t k) {
        const auto& src = *conf(n).complex;
        const auto& tgt = *split(n, m).complex;
        auto subs = subsets(n, m);
        return [&src, &tgt, subs, n, m, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            std::vector<unsigned> dims(n);
            for (size_t i = 0; i < n; ++i) dims[i] = src.orbits().dim(c[i]);
            std::vector<Entry<Rational>> raw;
            std::vector<size_t> order;
            std::vector<uint32_t> tuple(n);
            for (const auto& s : subs) {
                order.clear();
                for (size_t i = 0; i < n; ++i)
                    if (!std::binary_search(s.begin(), s.end(), i)) order.push_back(i);
                order.insert(order.end(), s.begin(), s.end());
                for (size_t i = 0; i < n; ++i) tuple[i] = c[order[i]];
                auto cc = tgt.canonical_orbits(tuple);
                if (cc.index < 0) continue;
                raw.push_back({static_cast<uint32_t>(cc.index), Rational(koszul_sign(dims, order) * cc.coefficient)});
            }
            (void)m;
            return make_sparse(std::move(raw));
        };
    }

    CellMap chain_lower_star(size_t n, size_t m, size_t k) {
        const auto& src = *split(n, m).complex;
        const auto& tgt = *conf(n).complex;
        return [&src, &tgt, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            auto cc = tgt.canonical_orbits(std::vector<uint32_t>(c.begin(), c.end()));
            SparseVec<Rational> out;
            if (cc.index >= 0) out.push_back({static_cast<uint32_t>(cc.index), Rational(cc.coefficient)});
            return out;
        };
    }

    // Projection of C_{n-m,m} to C_m; zero unless the dropped coordinates are vertices.
    CellMap chain_forget(size_t n, size_t m, size_t k) {
        const auto& src = *split(n, m).complex;
        const auto& tgt = *conf(m).complex;
        return [&src, &tgt, n, m, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            SparseVec<Rational> out;
            for (size_t i = 0; i < n - m; ++i)
                if (src.orbits().dim(c[i]) != 0) return out;
            auto cc = tgt.canonical_orbits(std::vector<uint32_t>(c.begin() + (n - m), c.end()));
            if (cc.index >= 0) out.push_back({static_cast<uint32_t>(cc.index), Rational(cc.coefficient)});
            return out;
        };
    }

    // forget o p^! in one step: the sum over m-subsets whose complement
    // consists of vertices.
    CellMap chain_transfer(size_t n, size_t m, size_t k) {
        const auto& src = *conf(n).complex;
        const auto& tgt = *conf(m).complex;
        auto subs = subsets(n, m);
        return [&src, &tgt, subs, n, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            std::vector<Entry<Rational>> raw;
            std::vector<uint32_t> tuple;
            for (const auto& s : subs) {
                bool ok = true;
                for (size_t i = 0; i < n && ok; ++i)
                    if (!std::binary_search(s.begin(), s.end(), i) && src.orbits().dim(c[i]) != 0) ok = false;
                if (!ok) continue;
                tuple.clear();
                for (size_t i : s) tuple.push_back(c[i]);
                auto cc = tgt.canonical_orbits(tuple);
                if (cc.index >= 0) raw.push_back({static_cast<uint32_t>(cc.index), Rational(cc.coefficient)});
            }
            return make_sparse(std::move(raw));
        };
    }

    // Conf_n(nested copy) -> Conf_n(K).
    CellMap chain_inclusion(size_t n, size_t k) {
        const auto& src = *nested(n).complex;
        const auto& tgt = *conf(n).complex;
        return [&src, &tgt, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            int64_t j = tgt.find(k, c);
            if (j < 0) throw std::logic_error("nested cell missing from the ambient complex");
            return SparseVec<Rational>{{static_cast<uint32_t>(j), Rational(1)}};
        };
    }

    // Conf_n(nested copy) -> Conf_{n+1}(K), adding the base vertex.
    CellMap chain_add_point(size_t n, size_t k) {
        const auto& src = *nested(n).complex;
        const auto& tgt = *conf(n + 1).complex;
        uint32_t v = x_->stabilisation()->base_vertex;
        const auto& kc = x_->stabilisation()->ambient->complex();
        uint32_t base = orbits_->orbit_of(kc.global_id(0, static_cast<size_t>(kc.index_of(std::span<const uint32_t>(&v, 1)))));
        return [&src, &tgt, base, k](uint32_t cell) {
            auto c = src.cell(k, cell);
            std::vector<uint32_t> tuple(c.begin(), c.end());
            tuple.push_back(base);
            auto cc = tgt.canonical_orbits(tuple);
            SparseVec<Rational> out;
            if (cc.index >= 0) out.push_back({static_cast<uint32_t>(cc.index), Rational(cc.coefficient)});
            return out;
        };
    }

    // Matrices on H_k.
    QMatrix upper_shriek(size_t n, size_t m, size_t k) { return induced(conf(n), split(n, m), k, chain_upper_shriek(n, m, k)); }
    QMatrix lower_star(size_t n, size_t m, size_t k) { return induced(split(n, m), conf(n), k, chain_lower_star(n, m, k)); }
    QMatrix forget(size_t n, size_t m, size_t k) { return induced(split(n, m), conf(m), k, chain_forget(n, m, k)); }

    QMatrix transfer(size_t n, size_t m, size_t k) {
        if (m > n) throw InputError("transfer needs m <= n");
        return induced(conf(n), conf(m), k, chain_transfer(n, m, k));
    }

    // s_n = (add point) o (inclusion)^-1 on H_k.
    QMatrix stabilisation(size_t n, size_t k) {
        require_stab();
        QMatrix inc = induced(nested(n), conf(n), k, chain_inclusion(n, k));
        if (inc.rows() != inc.cols())
            throw InputError("nested copy changes H_" + std::to_string(k) + " of Conf_" + std::to_string(n));
        QMatrix inv;
        try {
            inv = invert(inc);
        } catch (const std::domain_error&) {
            throw InputError("inclusion of the nested copy is not an isomorphism on H_" + std::to_string(k) +
                             " of Conf_" + std::to_string(n));
        }
        QMatrix add = induced(nested(n), conf(n + 1), k, chain_add_point(n, k));
        return add * inv;
    }

    // Largest violation of d f = f d on the chain level, as a boolean.
    bool commutes_with_boundary(const ConfSpace& src, const ConfSpace& tgt, size_t k,
                                const std::function<CellMap(size_t)>& map_in_degree) {
        if (k == 0) return true;
        const auto& sc = chains(src);
        const auto& tc = chains(tgt);
        if (k >= sc.degrees()) return true;
        CellMap fk = map_in_degree(k), fk1 = map_in_degree(k - 1);
        for (uint32_t c = 0; c < sc.dims[k]; ++c) {
            std::vector<Entry<Rational>> lhs, rhs;
            for (const auto& e : fk(c))
                if (k < tc.degrees())
                    for (const auto& f : tc.boundary[k][e.index]) lhs.push_back({f.index, f.value * e.value});
            for (const auto& e : sc.boundary[k][c])
                for (const auto& f : fk1(e.index)) rhs.push_back({f.index, f.value * e.value});
            if (make_sparse(std::move(lhs)) != make_sparse(std::move(rhs))) return false;
        }
        return true;
    }

    const ChainComplex<Rational>& chains(const ConfSpace& s) {
        auto it = chain_cache_.find(&s);
        if (it == chain_cache_.end()) it = chain_cache_.emplace(&s, s.complex->chain_complex<Rational>()).first;
        return it->second;
    }

private:
    using Key = std::tuple<size_t, size_t, bool>;
    static Key key(size_t n, size_t m, bool nested) { return {n, m, nested}; }

    ConfigSpec spec(size_t n, size_t m, bool nested) const {
        ConfigSpec s = ConfigSpec::unordered(n, max_degree_);
        s.capacity = capacity_;
        if (m > 0 && m < n) s.blocks = {n - m, m};
        if (nested && n > 0) {
            const auto& nv = x_->stabilisation()->nested_copy;
            s.allowed = {orbit_mask_within(*orbits_, nv)};
        }
        return s;
    }

    template <class Make>
    const ConfSpace& space(Key k, Make&& make) {
        auto it = spaces_.find(k);
        if (it != spaces_.end()) return it->second;
        ConfSpace s;
        s.complex = std::make_unique<ConfigurationComplex>(orbits_, make());
        s.basis = std::make_unique<HomologyBasis>(s.complex->chain_complex<Rational>());
        return spaces_.emplace(k, std::move(s)).first->second;
    }

    QMatrix induced(const ConfSpace& src, const ConfSpace& tgt, size_t k, const CellMap& f) {
        size_t bs = src.betti(k), bt = tgt.betti(k);
        if (bs == 0 || bt == 0) return zero_matrix(bt, bs);
        return induced_matrix(*src.basis, *tgt.basis, k, f);
    }

    void require_stab() const {
        if (!x_->stabilisation()) throw InputError("stabilisation data is required");
    }

    const GlobalQuotientOrbifold* x_;
    int max_degree_;
    size_t capacity_;
    std::shared_ptr<const SimplexOrbits> orbits_;
    std::map<Key, ConfSpace> spaces_;
    std::map<const ConfSpace*, ChainComplex<Rational>> chain_cache_;
};

// ---------------------------------------------------------------------------
// Verdicts.

struct Verdict {
    std::string relation;
    size_t n = 0;
    int m = -1;  // -1 when the relation has no m
    size_t degree = 0;
    bool pass = false;
    QMatrix lhs, rhs;
    std::string note;
};

inline bool all_pass(const std::vector<Verdict>& v) {
    return std::all_of(v.begin(), v.end(), [](const Verdict& x) { return x.pass; });
}

inline Verdict compare(std::string relation, size_t n, int m, size_t k, QMatrix lhs, QMatrix rhs) {
    Verdict v{std::move(relation), n, m, k, false, std::move(lhs), std::move(rhs), {}};
    v.pass = v.lhs == v.rhs;
    return v;
}

// p_* o p^! = C(n, m) id on H_k(C_n), for 1 <= m < n and k <= max degree.
inline std::vector<Verdict> verify_transfer_identity(MapEngine& e, size_t n) {
    std::vector<Verdict> out;
    for (size_t m = 1; m < n; ++m)
        for (int k = 0; k <= e.conf(n).exact_through(); ++k) {
            QMatrix lhs = e.lower_star(n, m, k) * e.upper_shriek(n, m, k);
            QMatrix rhs = QMatrix::identity(static_cast<uint32_t>(e.conf(n).betti(k))).scaled(Rational(static_cast<long>(binomial(n, m))));
            out.push_back(compare("p_* p^! = C(n,m) id", n, static_cast<int>(m), k, lhs, rhs));
        }
    return out;
}

// The three relations between transfers and stabilisations, for Conf_n.
inline std::vector<Verdict> verify_dold(MapEngine& e, size_t n) {
    if (n < 2) throw InputError("the relations need n >= 2");
    if (!e.orbifold().stabilisation()) throw InputError("the relations need stabilisation data");
    std::vector<Verdict> out;
    int top = std::min(e.conf(n).exact_through(), e.max_degree());
    for (int k = 0; k <= top; ++k) {
        size_t b = e.conf(n - 1).betti(k);
        // t_n s_{n-1} = s_{n-2} t_{n-1} + id on H_k(C_{n-1}).
        QMatrix lhs = e.transfer(n, n - 1, k) * e.stabilisation(n - 1, k);
        QMatrix rhs = e.stabilisation(n - 2, k) * e.transfer(n - 1, n - 2, k) + QMatrix::identity(static_cast<uint32_t>(b));
        out.push_back(compare("t_n s_{n-1} = s_{n-2} t_{n-1} + id", n, -1, k, lhs, rhs));
        // t_{n,m} s_{n-1} = s_{m-1} t_{n-1,m-1} + t_{n-1,m}.
        for (size_t m = 1; m < n; ++m) {
            QMatrix l = e.transfer(n, m, k) * e.stabilisation(n - 1, k);
            QMatrix r = e.stabilisation(m - 1, k) * e.transfer(n - 1, m - 1, k) + e.transfer(n - 1, m, k);
            out.push_back(compare("t_{n,m} s_{n-1} = s_{m-1} t_{n-1,m-1} + t_{n-1,m}", n, static_cast<int>(m), k, l, r));
        }
        // t_{m+1} ... t_n = (n-m)! t_{n,m}.
        for (size_t m = 1; m + 1 < n; ++m) {
            QMatrix chain = e.transfer(n, n - 1, k);
            for (size_t j = n - 1; j > m; --j) chain = e.transfer(j, j - 1, k) * chain;
            long fact = 1;
            for (size_t j = 2; j <= n - m; ++j) fact *= static_cast<long>(j);
            out.push_back(compare("t_{m+1} ... t_n = (n-m)! t_{n,m}", n, static_cast<int>(m), k, chain,
                                  e.transfer(n, m, k).scaled(Rational(fact))));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stability tables.

struct StabilityRow {
    size_t n = 0;
    size_t degree = 0;
    size_t dim_n = 0, dim_next = 0;
    bool in_range = false;         // degree <= n/2
    std::string map;               // "s_n", "t_{n+1}" or ""
    long map_rank = -1;            // -1 when no map was checked
    bool pass = true;
    std::optional<size_t> stratum;  // m, for stratum tables
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    std::vector<std::string> warnings;
    bool pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const StabilityRow& r) { return r.pass; });
    }
};

// For n = 1..n_max compares H_k(C_n) and H_k(C_{n+1}) for k <= n/2 and checks
// that s_n (open case) or t_{n+1} (closed case) is an isomorphism there.
// Stratum tables compare C_{n,m} and C_{n+1,m} for k <= (n-m)/2.
inline StabilityReport verify_stability(const GlobalQuotientOrbifold& x, size_t n_max, bool strata = false,
                                        size_t capacity = 10'000'000) {
    StabilityReport rep;
    if (x.dimension() < 2) rep.warnings.push_back("dimension below 2: stability hypotheses do not hold");
    if (homology(x.manifold().complex(), false, 0).betti.at(0) != 1) rep.warnings.push_back("manifold is not connected");
    int kmax = static_cast<int>(n_max / 2);
    MapEngine e(x, kmax, capacity);
    bool open = x.stabilisation().has_value();
    for (size_t n = 1; n <= n_max; ++n) {
        for (int k = 0; k <= static_cast<int>(n / 2); ++k) {
            StabilityRow row;
            row.n = n;
            row.degree = k;
            row.in_range = true;
            row.dim_n = e.conf(n).betti(k);
            row.dim_next = e.conf(n + 1).betti(k);
            row.pass = row.dim_n == row.dim_next;
            QMatrix m = open ? e.stabilisation(n, k) : e.transfer(n + 1, n, k);
            row.map = open ? "s_n" : "t_{n+1}";
            row.map_rank = static_cast<long>(rank_rational(m));
            row.pass = row.pass && static_cast<size_t>(row.map_rank) == row.dim_n && row.dim_n == row.dim_next;
            rep.rows.push_back(row);
        }
    }
    if (strata && !x.singular_vertices().empty()) {
        for (size_t m = 0; m <= n_max; ++m)
            for (size_t n = std::max<size_t>(m, 1); n <= n_max; ++n) {
                int top = static_cast<int>((n - m) / 2);
                auto a = stratum_model(x, n, m, std::nullopt, top, capacity).rational_homology();
                auto b = stratum_model(x, n + 1, m, std::nullopt, top, capacity).rational_homology();
                for (int k = 0; k <= top; ++k) {
                    StabilityRow row;
                    row.n = n;
                    row.degree = k;
                    row.in_range = true;
                    row.dim_n = a.betti[k];
                    row.dim_next = b.betti[k];
                    row.pass = row.dim_n == row.dim_next;
                    row.stratum = m;
                    rep.rows.push_back(row);
                }
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Duality between homology of Conf_n and omega_n-twisted compactly supported
// cohomology.

struct DualityReport {
    size_t n = 0;
    int dimension = 0;                 // n d
    std::vector<size_t> homology;      // trivial-isotypic H_k, k = 0..nd
    std::vector<size_t> cohomology_c;  // omega-isotypic H^j of the pair, j = 0..nd
    bool pass = false;
};

inline DualityReport duality_check(const GlobalQuotientOrbifold& x, size_t n, size_t capacity = 10'000'000) {
    if (!x.closed()) throw InputError("duality check needs a closed manifold");
    DualityReport rep;
    rep.n = n;
    rep.dimension = static_cast<int>(n) * x.dimension();
    WreathCharacter omega = x.orientation_character();
    auto h = conf_homology(x, n, Coefficients::rational, {}, -1, capacity);
    auto c = compact_support_pair(x, n, capacity).relative_cohomology(omega);
    size_t len = static_cast<size_t>(rep.dimension) + 1;
    rep.homology.assign(len, 0);
    rep.cohomology_c.assign(len, 0);
    for (size_t k = 0; k < h.betti.size() && k < len; ++k) rep.homology[k] = h.betti[k];
    for (size_t j = 0; j < c.betti.size() && j < len; ++j) rep.cohomology_c[j] = c.betti[j];
    rep.pass = true;
    for (size_t k = 0; k < len; ++k) rep.pass = rep.pass && rep.homology[k] == rep.cohomology_c[len - 1 - k];
    return rep;
}

} // namespace orbiconf
