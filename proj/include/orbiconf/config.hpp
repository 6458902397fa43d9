// Equivariant deleted products: orbit configuration complexes, strata and
// compact-support pairs.
//
// The deleted product of K = Sd^r(M) is the subcomplex of the cellular
// product K^n on cells x_1 x ... x x_n whose coordinates have pairwise
// disjoint sets of vertex orbits. Its chains modulo a block subgroup of
// G wr S_n, twisted by a linear character, are computed directly on orbits
// of cells: every orbit has a canonical cell whose coordinates are the
// least simplices of their G-orbits, sorted by orbit within each block.
#pragma once

#include "orbiconf/orbifold.hpp"

#include <memory>
#include <numeric>
#include <optional>

namespace orbiconf {

// G-orbits of the simplices of the working complex.
class SimplexOrbits {
public:
    explicit SimplexOrbits(const ComplexAction& a) : action_(&a) {
        const auto& k = a.complex();
        const auto& grp = a.group();
        vertex_orbit_ = vertex_orbit_ids(a, &vertex_orbits_);
        words_ = (vertex_orbits_ + 63) / 64;
        size_t total = k.size();
        orbit_of_.assign(total, UINT32_MAX);
        to_rep_.assign(total, 0);
        to_rep_sign_.assign(total, 1);
        for (int d = 0; d <= k.dimension(); ++d)
            for (size_t i = 0; i < k.count(d); ++i) {
                size_t gid = k.global_id(d, i);
                if (orbit_of_[gid] != UINT32_MAX) continue;
                uint32_t o = static_cast<uint32_t>(rep_.size());
                rep_.push_back(static_cast<uint32_t>(gid));
                dim_.push_back(static_cast<uint8_t>(d));
                std::vector<uint32_t> stab;
                for (size_t g = 0; g < grp.order(); ++g) {
                    auto [j, sign] = a.apply(g, d, i);
                    size_t m = k.global_id(d, j);
                    if (j == i) {
                        stab.push_back(static_cast<uint32_t>(g));
                        if (sign != 1) throw InputError("a stabilizer reverses a simplex; the action is not regular");
                    }
                    if (orbit_of_[m] == UINT32_MAX) {
                        // g.[c] = sign [m], hence g^-1 [m] = sign [c].
                        orbit_of_[m] = o;
                        to_rep_[m] = static_cast<uint32_t>(grp.inverse(g));
                        to_rep_sign_[m] = static_cast<int8_t>(sign);
                    }
                }
                stabilizer_.push_back(std::move(stab));
                std::vector<uint64_t> bits(words_, 0);
                for (uint32_t v : k.simplex(d, i)) bits[vertex_orbit_[v] / 64] |= uint64_t(1) << (vertex_orbit_[v] % 64);
                bits_.insert(bits_.end(), bits.begin(), bits.end());
            }
        // Faces of every representative, as global simplex ids.
        facets_.resize(rep_.size());
        std::vector<uint32_t> face;
        for (size_t o = 0; o < rep_.size(); ++o) {
            auto [d, i] = k.split_id(rep_[o]);
            if (d == 0) continue;
            auto s = k.simplex(d, i);
            face.resize(d);
            for (size_t j = 0; j <= d; ++j) {
                size_t w = 0;
                for (size_t t = 0; t <= d; ++t)
                    if (t != j) face[w++] = s[t];
                facets_[o].push_back(static_cast<uint32_t>(k.global_id(d - 1, static_cast<size_t>(k.index_of(face)))));
            }
        }
    }

    const ComplexAction& action() const { return *action_; }
    size_t count() const { return rep_.size(); }
    uint32_t orbit_of(size_t gid) const { return orbit_of_[gid]; }
    uint32_t representative(uint32_t o) const { return rep_[o]; }
    unsigned dim(uint32_t o) const { return dim_[o]; }
    uint32_t to_rep_element(size_t gid) const { return to_rep_[gid]; }
    int to_rep_sign(size_t gid) const { return to_rep_sign_[gid]; }
    const std::vector<uint32_t>& stabilizer(uint32_t o) const { return stabilizer_[o]; }
    const std::vector<uint32_t>& facets(uint32_t o) const { return facets_[o]; }
    size_t words() const { return words_; }
    const uint64_t* vertex_orbit_bits(uint32_t o) const { return bits_.data() + o * words_; }
    uint32_t vertex_orbit(uint32_t v) const { return vertex_orbit_[v]; }

    bool disjoint(uint32_t a, uint32_t b) const {
        const uint64_t* x = vertex_orbit_bits(a);
        const uint64_t* y = vertex_orbit_bits(b);
        for (size_t w = 0; w < words_; ++w)
            if (x[w] & y[w]) return false;
        return true;
    }

    // True iff every vertex of the orbit's simplices satisfies the predicate.
    template <class Pred>
    std::vector<uint8_t> orbits_within(Pred&& keep_vertex) const {
        const auto& k = action_->complex();
        std::vector<uint8_t> out(count(), 0);
        for (size_t o = 0; o < count(); ++o) {
            auto [d, i] = k.split_id(rep_[o]);
            auto s = k.simplex(d, i);
            out[o] = std::all_of(s.begin(), s.end(), keep_vertex) ? 1 : 0;
        }
        return out;
    }

private:
    const ComplexAction* action_;
    std::vector<uint32_t> vertex_orbit_;
    uint32_t vertex_orbits_ = 0;
    size_t words_ = 1;
    std::vector<uint32_t> orbit_of_;
    std::vector<uint32_t> to_rep_;
    std::vector<int8_t> to_rep_sign_;
    std::vector<uint32_t> rep_;
    std::vector<uint8_t> dim_;
    std::vector<std::vector<uint32_t>> stabilizer_;
    std::vector<std::vector<uint32_t>> facets_;
    std::vector<uint64_t> bits_;
};

struct ConfigSpec {
    size_t n = 1;
    std::vector<size_t> blocks;                   // empty: one block of size n (unordered)
    WreathCharacter chi;                          // default trivial
    int max_degree = -1;                          // homology wanted through this degree; -1 = all
    std::vector<std::vector<uint8_t>> allowed;    // per block orbit mask; empty = all orbits
    size_t capacity = 10'000'000;

    static ConfigSpec unordered(size_t n, int max_degree = -1) {
        ConfigSpec s;
        s.n = n;
        s.max_degree = max_degree;
        return s;
    }
    static ConfigSpec ordered(size_t n, int max_degree = -1) {
        ConfigSpec s = unordered(n, max_degree);
        s.blocks.assign(n, 1);
        return s;
    }
};

// A cell written as a tuple of simplices, reduced to its canonical orbit cell.
struct CanonicalCell {
    int64_t index = -1;  // -1: the orbit contributes nothing
    unsigned degree = 0;
    int coefficient = 0;
};

class ConfigurationComplex {
public:
    ConfigurationComplex(std::shared_ptr<const SimplexOrbits> orbits, ConfigSpec spec)
        : orbits_(std::move(orbits)), spec_(std::move(spec)) {
        if (spec_.blocks.empty() && spec_.n > 0) spec_.blocks = {spec_.n};
        size_t total = 0;
        for (size_t b : spec_.blocks) total += b;
        if (total != spec_.n) throw InputError("block sizes must sum to n");
        if (!spec_.allowed.empty() && spec_.allowed.size() != spec_.blocks.size())
            throw InputError("one orbit mask per block is required");
        for (size_t b = 0; b < spec_.blocks.size(); ++b)
            for (size_t i = 0; i < spec_.blocks[b]; ++i) block_of_.push_back(b);
        admissible_.assign(orbits_->count(), 1);
        for (uint32_t o = 0; o < orbits_->count(); ++o)
            for (uint32_t h : orbits_->stabilizer(o))
                if (spec_.chi.base(h) != 1) admissible_[o] = 0;
        unsigned kdim = 0;
        for (uint32_t o = 0; o < orbits_->count(); ++o) kdim = std::max(kdim, orbits_->dim(o));
        int natural_top = static_cast<int>(spec_.n * kdim);
        top_ = natural_top;
        if (spec_.max_degree >= 0 && spec_.max_degree < natural_top) {
            top_ = spec_.max_degree + 1;
            truncated_ = top_ < natural_top;
        }
        enumerate();
    }

    size_t n() const { return spec_.n; }
    const ConfigSpec& spec() const { return spec_; }
    const SimplexOrbits& orbits() const { return *orbits_; }
    std::shared_ptr<const SimplexOrbits> orbits_ptr() const { return orbits_; }
    int top_degree() const { return top_; }
    bool truncated() const { return truncated_; }
    int exact_through() const { return truncated_ ? top_ - 1 : top_; }
    size_t count(size_t k) const { return k < cells_.size() ? cells_[k].size() / std::max<size_t>(spec_.n, 1) : 0; }
    size_t total_cells() const {
        size_t t = 0;
        for (size_t k = 0; k < cells_.size(); ++k) t += count(k);
        return t;
    }
    std::span<const uint32_t> cell(size_t k, size_t i) const {
        return std::span<const uint32_t>(cells_[k].data() + i * spec_.n, spec_.n);
    }

    int64_t find(size_t k, std::span<const uint32_t> tuple) const {
        if (k >= cells_.size()) return -1;
        if (spec_.n == 0) return count(k) ? 0 : -1;
        size_t lo = 0, hi = count(k);
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            auto c = cell(k, mid);
            if (std::lexicographical_compare(c.begin(), c.end(), tuple.begin(), tuple.end())) lo = mid + 1;
            else hi = mid;
        }
        if (lo < count(k)) {
            auto c = cell(k, lo);
            if (std::equal(c.begin(), c.end(), tuple.begin())) return static_cast<int64_t>(lo);
        }
        return -1;
    }

    // The class of the oriented product cell x_1 x ... x x_n (simplex global ids,
    // one per position) in the basis of canonical orbit cells.
    CanonicalCell canonical(std::span<const uint32_t> simplices) const {
        CanonicalCell out;
        size_t n = spec_.n;
        if (simplices.size() != n) throw std::logic_error("canonical: wrong tuple length");
        std::vector<uint32_t> orb(n);
        std::vector<unsigned> dims(n);
        int coeff = 1;
        for (size_t i = 0; i < n; ++i) {
            orb[i] = orbits_->orbit_of(simplices[i]);
            dims[i] = orbits_->dim(orb[i]);
            out.degree += dims[i];
            coeff *= orbits_->to_rep_sign(simplices[i]) * spec_.chi.base(orbits_->to_rep_element(simplices[i]));
        }
        coeff *= sort_within_blocks(orb, dims);
        if (coeff == 0) return out;  // repeated orbit within a block
        out.index = find(out.degree, orb);
        out.coefficient = out.index >= 0 ? coeff : 0;
        return out;
    }

    // Same, with coordinates already given as orbit representatives.
    CanonicalCell canonical_orbits(std::vector<uint32_t> orb) const {
        std::vector<uint32_t> simplices(orb.size());
        for (size_t i = 0; i < orb.size(); ++i) simplices[i] = orbits_->representative(orb[i]);
        return canonical(simplices);
    }

    template <class T>
    ChainComplex<T> chain_complex() const {
        ChainComplex<T> c;
        c.truncated = truncated_;
        c.dims.resize(cells_.size());
        c.boundary.resize(cells_.size());
        std::vector<uint32_t> x(spec_.n);
        for (size_t k = 0; k < cells_.size(); ++k) {
            c.dims[k] = static_cast<uint32_t>(count(k));
            c.boundary[k].resize(count(k));
            if (k == 0) continue;
            for (size_t idx = 0; idx < count(k); ++idx) {
                auto cl = cell(k, idx);
                for (size_t i = 0; i < spec_.n; ++i) x[i] = orbits_->representative(cl[i]);
                std::vector<Entry<T>> raw;
                unsigned before = 0;
                for (size_t i = 0; i < spec_.n; ++i) {
                    uint32_t keep = x[i];
                    const auto& fs = orbits_->facets(cl[i]);
                    for (size_t j = 0; j < fs.size(); ++j) {
                        x[i] = fs[j];
                        CanonicalCell f = canonical(x);
                        if (f.index < 0) continue;
                        int sign = ((before + j) % 2 ? -1 : 1) * f.coefficient;
                        raw.push_back({static_cast<uint32_t>(f.index), T(sign)});
                    }
                    x[i] = keep;
                    before += orbits_->dim(cl[i]);
                }
                c.boundary[k][idx] = make_sparse(std::move(raw));
            }
        }
        return c;
    }

    // True when every orbit used has trivial stabilizer, so the block group
    // acts freely on the cells and integral chains model the quotient.
    bool free_action() const {
        for (size_t k = 0; k < cells_.size(); ++k)
            for (size_t i = 0; i < count(k); ++i)
                for (uint32_t o : cell(k, i))
                    if (orbits_->stabilizer(o).size() != 1) return false;
        return true;
    }

    HomologyReport rational_homology() const { return orbiconf::rational_homology(chain_complex<Rational>()); }

    HomologyReport integral_homology() const {
        if (!spec_.chi.is_trivial()) throw InputError("integral homology is only defined for the trivial character");
        if (!free_action())
            throw InputError("integral homology requires the wreath action on the deleted product to be free and regular");
        return orbiconf::integral_homology(chain_complex<Integer>());
    }

private:
    // Sorts orbit ids within each block; returns the sign of the reordering
    // (Koszul sign times sign(pi)^eps_power), or 0 if a block repeats an orbit.
    int sort_within_blocks(std::vector<uint32_t>& orb, std::vector<unsigned>& dims) const {
        int sign = 1;
        size_t start = 0;
        for (size_t b : spec_.blocks) {
            for (size_t i = start + 1; i < start + b; ++i)
                for (size_t j = i; j > start && orb[j - 1] >= orb[j]; --j) {
                    if (orb[j - 1] == orb[j]) return 0;
                    if (dims[j - 1] % 2 && dims[j] % 2) sign = -sign;
                    if (spec_.chi.eps_power % 2) sign = -sign;
                    std::swap(orb[j - 1], orb[j]);
                    std::swap(dims[j - 1], dims[j]);
                }
            start += b;
        }
        return sign;
    }

    void enumerate() {
        size_t n = spec_.n;
        cells_.assign(top_ + 1, {});
        if (n == 0) {
            cells_[0].push_back(0);  // the empty configuration; count() treats n = 0 specially
            empty_config_ = true;
            return;
        }
        // Candidate orbits per block, in increasing id (hence dimension) order.
        std::vector<std::vector<uint32_t>> candidates(spec_.blocks.size());
        for (size_t b = 0; b < spec_.blocks.size(); ++b)
            for (uint32_t o = 0; o < orbits_->count(); ++o) {
                if (!admissible_[o]) continue;
                if (!spec_.allowed.empty() && !spec_.allowed[b][o]) continue;
                candidates[b].push_back(o);
            }
        size_t words = orbits_->words();
        std::vector<std::vector<uint64_t>> used(n + 1, std::vector<uint64_t>(words, 0));
        std::vector<uint32_t> tuple(n);
        size_t total = 0;
        std::function<void(size_t, unsigned)> place = [&](size_t pos, unsigned degree) {
            if (pos == n) {
                cells_[degree].insert(cells_[degree].end(), tuple.begin(), tuple.end());
                if (++total > spec_.capacity)
                    throw CapacityError("deleted product: more than " + std::to_string(spec_.capacity) + " cells");
                return;
            }
            size_t b = block_of_[pos];
            bool continues = pos > 0 && block_of_[pos - 1] == b;
            const auto& cand = candidates[b];
            auto it = cand.begin();
            if (continues) it = std::upper_bound(cand.begin(), cand.end(), tuple[pos - 1]);
            for (; it != cand.end(); ++it) {
                uint32_t o = *it;
                unsigned d = orbits_->dim(o);
                if (degree + d > static_cast<unsigned>(top_)) break;
                const uint64_t* bits = orbits_->vertex_orbit_bits(o);
                bool ok = true;
                for (size_t w = 0; w < words && ok; ++w) ok = (used[pos][w] & bits[w]) == 0;
                if (!ok) continue;
                for (size_t w = 0; w < words; ++w) used[pos + 1][w] = used[pos][w] | bits[w];
                tuple[pos] = o;
                place(pos + 1, degree + d);
            }
        };
        place(0, 0);
    }

    std::shared_ptr<const SimplexOrbits> orbits_;
    ConfigSpec spec_;
    std::vector<size_t> block_of_;
    std::vector<uint8_t> admissible_;
    int top_ = 0;
    bool truncated_ = false;
    bool empty_config_ = false;
    std::vector<std::vector<uint32_t>> cells_;
};

// ---------------------------------------------------------------------------
// Triangulated models inside product_complex(K, n).

// Wreath product acting on the tuple-coded vertices of product_complex(K, n):
// (pi; g) sends t to t' with t'_{pi(i)} = g_i t_i. Element order follows
// WreathProduct::elements(), so WreathCharacter values can be read off.
struct TupleAction {
    std::vector<WreathElement> elements;
    FiniteGroup group;
};

inline TupleAction tuple_action(const ComplexAction& base, size_t n, std::vector<size_t> blocks = {},
                                size_t capacity = 1'000'000) {
    const auto& k = base.complex();
    uint64_t radix = k.size();
    double count = std::pow(double(radix), double(n));
    if (count > 5.0e7) throw CapacityError("tuple action: " + std::to_string(uint64_t(count)) + " product vertices");
    std::vector<std::vector<uint32_t>> sperm(base.group().order());
    for (size_t g = 0; g < base.group().order(); ++g) sperm[g] = base.simplex_permutation(g);
    WreathProduct w(base.group(), n, std::move(blocks), capacity);
    TupleAction out{w.elements(), FiniteGroup::trivial(0)};
    auto as_perm = [&](const WreathElement& e) {
        Perm p(static_cast<size_t>(count + 0.5));
        std::vector<uint32_t> t(n);
        for (uint64_t code = 0; code < p.size(); ++code) {
            uint64_t c = code;
            for (size_t i = 0; i < n; ++i) {
                uint32_t x = static_cast<uint32_t>(c % radix);
                c /= radix;
                t[e.pi[i]] = sperm[e.g[i]][x];
            }
            p[code] = static_cast<uint32_t>(encode_tuple(t, radix));
        }
        return p;
    };
    std::vector<Perm> elems, gens;
    for (const auto& e : out.elements) elems.push_back(as_perm(e));
    for (const auto& e : w.generators()) gens.push_back(as_perm(e));
    out.group = FiniteGroup::from_elements(static_cast<uint32_t>(count + 0.5), std::move(elems), std::move(gens));
    return out;
}

inline Character restrict_character(const WreathCharacter& chi, const std::vector<WreathElement>& elements) {
    Character c{chi.name, {}};
    for (const auto& e : elements) c.values.push_back(static_cast<int8_t>(chi(e)));
    return c;
}

// True iff the simplices with the given global ids have pairwise disjoint
// sets of vertex orbits.
inline bool orbit_disjoint(const SimplexOrbits& orbits, const std::vector<uint32_t>& t) {
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (!orbits.disjoint(orbits.orbit_of(t[i]), orbits.orbit_of(t[j]))) return false;
    return true;
}

// Ordered deleted product, triangulated as the full subcomplex of
// product_complex(K, n) on orbit-disjoint tuples, with the wreath action.
struct DeletedProductComplex {
    size_t n = 0;
    ComplexAction action;
    std::vector<WreathElement> elements;
};

inline DeletedProductComplex deleted_product(const GlobalQuotientOrbifold& x, size_t n, size_t capacity = 10'000'000) {
    if (n == 0) {
        auto pt = SimplicialComplex::from_facets(1, {{0}});
        WreathProduct w(x.group(), 0);
        return {0, ComplexAction::trivial(pt), w.elements()};
    }
    SimplexOrbits orbits(x.working());
    auto k = product_complex(x.complex(), n, [&](const std::vector<uint32_t>& t) { return orbit_disjoint(orbits, t); },
                             capacity);
    auto ta = tuple_action(x.working(), n);
    return {n, ComplexAction(std::move(k), std::move(ta.group), ComplexAction::Trusted{}), std::move(ta.elements)};
}

// The pair (K', A): K' = product_complex(K, n) and A the full subcomplex on
// tuples that are not orbit-disjoint, or that meet an avoided vertex.
// Relative cohomology of the pair is compactly supported cohomology of the
// open configuration space (of the complement of the avoided vertices).
class CompactSupportPair {
public:
    CompactSupportPair(const ComplexAction& base, size_t n, const std::function<bool(uint32_t)>& avoid = {},
                       size_t capacity = 10'000'000)
        : n_(n), dim_(base.complex().dimension()) {
        if (n == 0) throw InputError("compact-support pair requires n >= 1");
        SimplexOrbits orbits(base);
        const auto& k = base.complex();
        radix_ = k.size();
        std::vector<uint8_t> touches(k.size(), 0);
        if (avoid)
            for (int d = 0; d <= k.dimension(); ++d)
                for (size_t i = 0; i < k.count(d); ++i) {
                    auto s = k.simplex(d, i);
                    touches[k.global_id(d, i)] = std::any_of(s.begin(), s.end(), avoid) ? 1 : 0;
                }
        auto complex = product_complex(k, n, {}, capacity);
        closed_.assign(complex.vertex_count(), 0);
        for (uint64_t code = 0; code < closed_.size(); ++code) {
            auto t = decode_tuple(code, radix_, n);
            bool bad = !orbit_disjoint(orbits, t);
            for (uint32_t x : t) bad = bad || touches[x];
            closed_[code] = bad ? 1 : 0;
        }
        auto ta = tuple_action(base, n);
        elements_ = std::move(ta.elements);
        action_.emplace(std::move(complex), std::move(ta.group), ComplexAction::Trusted{});
    }

    size_t n() const { return n_; }
    int manifold_dimension() const { return dim_; }
    const ComplexAction& ambient() const { return *action_; }
    const std::vector<WreathElement>& elements() const { return elements_; }
    bool in_closed_part(std::span<const uint32_t> s) const {
        return std::all_of(s.begin(), s.end(), [&](uint32_t v) { return closed_[v] != 0; });
    }
    SimplicialComplex closed_part() const {
        return full_subcomplex(ambient().complex(), [&](uint32_t v) { return closed_[v] != 0; });
    }

    EquivariantChainComplex relative_chains(const WreathCharacter& chi) const {
        return isotypic_chain_complex(ambient(), restrict_character(chi, elements_),
                                      [this](std::span<const uint32_t> s) { return in_closed_part(s); });
    }

    // chi-isotypic relative cohomology dimensions, via relative homology.
    HomologyReport relative_cohomology(const WreathCharacter& chi) const {
        return rational_homology(relative_chains(chi).chains);
    }

    // Alternating count of the chi-isotypic relative cells.
    long euler_characteristic(const WreathCharacter& chi) const {
        auto rc = relative_chains(chi);
        long e = 0;
        for (size_t d = 0; d < rc.chains.dims.size(); ++d) e += (d % 2 ? -1L : 1L) * long(rc.chains.dims[d]);
        return e;
    }

private:
    size_t n_;
    int dim_;
    uint64_t radix_ = 0;
    std::vector<uint8_t> closed_;
    std::optional<ComplexAction> action_;
    std::vector<WreathElement> elements_;
};

inline CompactSupportPair compact_support_pair(const GlobalQuotientOrbifold& x, size_t n, size_t capacity = 10'000'000) {
    if (!x.closed()) throw InputError("compact-support pairs need a closed manifold");
    return CompactSupportPair(x.working(), n, {}, capacity);
}

// ---------------------------------------------------------------------------
// Homology of Conf_n.

enum class Coefficients { rational, character, integral };

inline HomologyReport conf_homology(const GlobalQuotientOrbifold& x, size_t n, Coefficients coeff = Coefficients::rational,
                                    const WreathCharacter& chi = {}, int max_degree = -1,
                                    size_t capacity = 10'000'000) {
    auto orbits = std::make_shared<SimplexOrbits>(x.working());
    ConfigSpec spec = ConfigSpec::unordered(n, max_degree);
    spec.capacity = capacity;
    if (coeff == Coefficients::character) spec.chi = chi;
    ConfigurationComplex c(orbits, spec);
    return coeff == Coefficients::integral ? c.integral_homology() : c.rational_homology();
}

// ---------------------------------------------------------------------------
// Strata: exactly m points on the singular locus.

inline std::vector<uint8_t> orbit_mask_within(const SimplexOrbits& orbits, const std::vector<uint32_t>& sorted_vertices) {
    return orbits.orbits_within([&](uint32_t v) { return std::binary_search(sorted_vertices.begin(), sorted_vertices.end(), v); });
}

// Conf_{n-m} of the complement of the singular locus (or of one named
// component of it) times Conf_m of the singular locus, under the block group.
inline ConfigurationComplex stratum_model(const GlobalQuotientOrbifold& x, size_t n, size_t m,
                                          std::optional<size_t> component = std::nullopt, int max_degree = -1,
                                          size_t capacity = 10'000'000) {
    if (m > n) throw InputError("stratum needs m <= n");
    auto sing = x.singular_vertices();
    if (m > 0 && sing.empty()) throw InputError("stratum with m > 0 needs a nonempty singular locus");
    std::vector<uint32_t> free_part;
    if (component) {
        auto comps = x.complement_components();
        if (*component >= comps.size())
            throw InputError("complement component " + std::to_string(*component) + " out of range (" +
                             std::to_string(comps.size()) + " components)");
        free_part = comps[*component];
    } else {
        for (uint32_t v = 0; v < x.complex().vertex_count(); ++v)
            if (!std::binary_search(sing.begin(), sing.end(), v)) free_part.push_back(v);
    }
    auto orbits = std::make_shared<SimplexOrbits>(x.working());
    ConfigSpec spec;
    spec.n = n;
    spec.max_degree = max_degree;
    spec.capacity = capacity;
    spec.blocks = {};
    spec.allowed = {};
    if (n - m > 0) {
        spec.blocks.push_back(n - m);
        spec.allowed.push_back(orbit_mask_within(*orbits, free_part));
    }
    if (m > 0) {
        spec.blocks.push_back(m);
        spec.allowed.push_back(orbit_mask_within(*orbits, sing));
    }
    return ConfigurationComplex(orbits, spec);
}

// ---------------------------------------------------------------------------
// Compactly supported Euler characteristics over the strata.

struct ChiCReport {
    size_t n = 0;
    long total = 0;
    std::vector<long> strata;  // indexed by m
    long strata_sum() const { return std::accumulate(strata.begin(), strata.end(), 0L); }
    bool additive() const { return total == strata_sum(); }
};

inline ChiCReport chi_c_report(const GlobalQuotientOrbifold& x, size_t n, size_t capacity = 10'000'000) {
    if (!x.closed()) throw InputError("chi_c report needs a closed manifold");
    if (n == 0) throw InputError("chi_c report needs n >= 1");
    ChiCReport rep;
    rep.n = n;
    WreathCharacter triv;
    rep.total = CompactSupportPair(x.working(), n, {}, capacity).euler_characteristic(triv);
    auto sing = x.singular_vertices();
    auto is_sing = [&](uint32_t v) { return std::binary_search(sing.begin(), sing.end(), v); };
    std::optional<ComplexAction> sing_action;
    if (!sing.empty()) sing_action.emplace(x.singular_locus(), x.group());
    for (size_t m = 0; m <= n; ++m) {
        if (m > 0 && sing.empty()) {
            rep.strata.push_back(0);
            continue;
        }
        long free_part = n - m > 0 ? CompactSupportPair(x.working(), n - m, is_sing, capacity).euler_characteristic(triv) : 1;
        long sing_part = m > 0 ? CompactSupportPair(*sing_action, m, {}, capacity).euler_characteristic(triv) : 1;
        rep.strata.push_back(free_part * sing_part);
    }
    return rep;
}

} // namespace orbiconf
