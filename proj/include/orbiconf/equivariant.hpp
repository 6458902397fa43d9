// Regularity, quotients and character-isotypic chain complexes of group actions.
#pragma once

#include "orbiconf/group.hpp"

namespace orbiconf {

// True iff every element that maps a simplex to itself fixes it pointwise.
inline bool is_regular_action(const ComplexAction& a) {
    const auto& k = a.complex();
    for (size_t g = 1; g < a.group().order(); ++g) {
        const Perm& p = a.group().element(g);
        for (int d = 1; d <= k.dimension(); ++d)
            for (size_t i = 0; i < k.count(d); ++i) {
                auto s = k.simplex(d, i);
                std::vector<uint32_t> img;
                for (uint32_t v : s) img.push_back(p[v]);
                bool moved = false;
                for (size_t t = 0; t < img.size(); ++t) moved |= img[t] != s[t];
                if (!moved) continue;
                std::sort(img.begin(), img.end());
                if (std::equal(img.begin(), img.end(), s.begin())) return false;
            }
    }
    return true;
}

// True iff no non-identity element fixes any simplex setwise.
inline bool is_free_action(const ComplexAction& a) {
    const auto& k = a.complex();
    for (size_t g = 1; g < a.group().order(); ++g)
        for (int d = 0; d <= k.dimension(); ++d)
            for (size_t i = 0; i < k.count(d); ++i)
                if (a.apply(g, d, i).first == i) return false;
    return true;
}

// Vertex orbits of the action: orbit id per vertex, ordered by least member.
inline std::vector<uint32_t> vertex_orbit_ids(const ComplexAction& a, uint32_t* count = nullptr) {
    uint32_t nv = a.complex().vertex_count();
    std::vector<uint32_t> id(nv, UINT32_MAX);
    uint32_t next = 0;
    for (uint32_t v = 0; v < nv; ++v) {
        if (id[v] != UINT32_MAX) continue;
        for (const auto& g : a.group().elements()) id[g[v]] = next;
        ++next;
    }
    if (count) *count = next;
    return id;
}

// Coarse space: vertices are vertex orbits, simplices are orbits of simplices.
inline SimplicialComplex quotient_complex(const ComplexAction& a) {
    if (!is_regular_action(a))
        throw InputError("quotient_complex: action is not regular; subdivide the complex (e.g. raise the subdivision level)");
    const auto& k = a.complex();
    uint32_t norb = 0;
    auto orb = vertex_orbit_ids(a, &norb);
    std::vector<std::vector<uint32_t>> flat(std::max(0, k.dimension() + 1));
    std::vector<size_t> orbit_count(flat.size(), 0);
    for (int d = 0; d <= k.dimension(); ++d) {
        std::vector<uint8_t> seen(k.count(d), 0);
        for (size_t i = 0; i < k.count(d); ++i) {
            if (seen[i]) continue;
            ++orbit_count[d];
            for (size_t g = 0; g < a.group().order(); ++g) seen[a.apply(g, d, i).first] = 1;
            std::vector<uint32_t> img;
            for (uint32_t v : k.simplex(d, i)) img.push_back(orb[v]);
            std::sort(img.begin(), img.end());
            if (std::adjacent_find(img.begin(), img.end()) != img.end())
                throw InputError("quotient_complex: a simplex meets a vertex orbit twice; subdivide further");
            flat[d].insert(flat[d].end(), img.begin(), img.end());
        }
    }
    auto q = SimplicialComplex::from_flat(norb, std::move(flat));
    for (size_t d = 0; d < orbit_count.size(); ++d)
        if (q.count(d) != orbit_count[d])
            throw InputError("quotient_complex: distinct simplex orbits share vertex orbits; subdivide further");
    return q;
}

// Chain complex of the chi-isotypic part. The degree-k basis element for an
// admissible orbit with least member c is u_c = sum_g chi(g) g.c; an orbit is
// admissible iff chi(h) * sign(h on c) = 1 on its stabilizer. Simplices of
// an optional invariant subcomplex are dropped, giving the relative complex.
struct EquivariantChainComplex {
    ChainComplex<Rational> chains;
    std::vector<std::vector<uint32_t>> representatives;  // per degree, simplex index of c
};

using SimplexPredicate = std::function<bool(std::span<const uint32_t>)>;

inline EquivariantChainComplex isotypic_chain_complex(const ComplexAction& a, const Character& chi,
                                                      const SimplexPredicate& in_sub, int max_degree = -1) {
    const auto& k = a.complex();
    const auto& grp = a.group();
    if (chi.values.size() != grp.order()) throw InputError("character does not match the group");
    int top = k.dimension();
    EquivariantChainComplex out;
    if (max_degree >= 0 && max_degree < top) {
        top = max_degree + 1;
        out.chains.truncated = true;
    }
    if (top < 0) return out;
    // Per simplex: local index of its orbit's basis element (or -1) and the
    // coefficient of u_c in the class of the simplex.
    std::vector<std::vector<int32_t>> basis(top + 1);
    std::vector<std::vector<int8_t>> coeff(top + 1);
    out.representatives.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        size_t cnt = k.count(d);
        basis[d].assign(cnt, -2);
        coeff[d].assign(cnt, 0);
        for (size_t i = 0; i < cnt; ++i) {
            if (basis[d][i] != -2) continue;
            bool admissible = !(in_sub && in_sub(k.simplex(d, i)));
            std::vector<std::pair<size_t, int8_t>> members;
            for (size_t g = 0; g < grp.order(); ++g) {
                auto [j, sign] = a.apply(g, d, i);
                if (j == i && chi(g) * sign != 1) admissible = false;
                // g.[c] = sign [m], so the class of [m] is sign * chi(g) u_c.
                members.push_back({j, static_cast<int8_t>(sign * chi(g))});
            }
            int32_t local = -1;
            if (admissible) {
                local = static_cast<int32_t>(out.representatives[d].size());
                out.representatives[d].push_back(static_cast<uint32_t>(i));
            }
            for (auto [j, c] : members)
                if (basis[d][j] == -2) {
                    basis[d][j] = local;
                    coeff[d][j] = c;
                }
        }
    }
    auto& ch = out.chains;
    ch.dims.resize(top + 1);
    ch.boundary.resize(top + 1);
    std::vector<uint32_t> face;
    for (int d = 0; d <= top; ++d) {
        ch.dims[d] = static_cast<uint32_t>(out.representatives[d].size());
        ch.boundary[d].resize(ch.dims[d]);
        if (d == 0) continue;
        face.resize(d);
        for (size_t r = 0; r < out.representatives[d].size(); ++r) {
            auto s = k.simplex(d, out.representatives[d][r]);
            std::vector<Entry<Rational>> raw;
            for (int j = 0; j <= d; ++j) {
                size_t w = 0;
                for (int t = 0; t <= d; ++t)
                    if (t != j) face[w++] = s[t];
                size_t fi = static_cast<size_t>(k.index_of(face));
                int32_t b = basis[d - 1][fi];
                if (b < 0) continue;
                int v = (j % 2 ? -1 : 1) * coeff[d - 1][fi];
                raw.push_back({static_cast<uint32_t>(b), Rational(v)});
            }
            ch.boundary[d][r] = make_sparse(std::move(raw));
        }
    }
    return out;
}

inline EquivariantChainComplex isotypic_chain_complex(const ComplexAction& a, const Character& chi,
                                                      const SimplicialComplex* sub = nullptr, int max_degree = -1) {
    SimplexPredicate pred;
    if (sub) pred = [sub](std::span<const uint32_t> s) { return sub->contains(s); };
    return isotypic_chain_complex(a, chi, pred, max_degree);
}

inline void require_invariant(const ComplexAction& a, const SimplicialComplex& sub) {
    for (const auto& g : a.group().elements())
        for (int d = 0; d <= sub.dimension(); ++d)
            for (size_t i = 0; i < sub.count(d); ++i) {
                std::vector<uint32_t> img;
                for (uint32_t v : sub.simplex(d, i)) img.push_back(g[v]);
                std::sort(img.begin(), img.end());
                if (!sub.contains(img)) throw InputError("subcomplex is not invariant under the group");
                if (!a.complex().contains(sub.simplex(d, i))) throw InputError("subcomplex is not contained in the complex");
            }
}

// Dimensions of chi-isotypic relative cohomology of (K, sub). Over Q these
// equal the dimensions of chi-isotypic relative homology, computed here.
inline HomologyReport relative_isotypic_cohomology(const ComplexAction& a, const SimplicialComplex& sub,
                                                   const Character& chi) {
    require_invariant(a, sub);
    auto eq = isotypic_chain_complex(a, chi, &sub);
    return rational_homology(eq.chains);
}

inline HomologyReport isotypic_homology(const ComplexAction& a, const Character& chi, int max_degree = -1) {
    return rational_homology(isotypic_chain_complex(a, chi, nullptr, max_degree).chains);
}

} // namespace orbiconf
