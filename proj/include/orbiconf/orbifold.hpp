// Global quotient orbifolds [M/G] at a fixed subdivision level.
#pragma once

#include "orbiconf/equivariant.hpp"

#include <memory>
#include <optional>

namespace orbiconf {

// Requested stabilisation data, in vertex ids of the working complex. Vertex
// ids of M survive subdivision unchanged, so a base vertex of M can be named
// independently of the subdivision level.
struct StabilisationRequest {
    uint32_t base_vertex = 0;
    std::vector<uint32_t> nested_copy;  // empty: every vertex outside the base orbit
    std::vector<uint32_t> retraction;   // optional vertex map onto the nested copy
};

// Configurations for the stabilisation map live on `ambient`, which contains
// the nested copy as a full subcomplex and the base vertex outside it. With
// an explicit nested copy the ambient is the working complex. Otherwise the
// ambient is the working complex with a collar cone attached over the
// boundary star of every point in the orbit of the requested boundary
// vertex; the nested copy is then the whole working complex and the base
// vertex is the cone point over the requested vertex.
struct StabilisationData {
    uint32_t base_vertex;               // vertex of the ambient complex
    std::vector<uint32_t> nested_copy;  // sorted vertex ids of the ambient complex
    SimplicialComplex nested;           // full subcomplex on nested_copy
    std::shared_ptr<const ComplexAction> ambient;
    bool collar = false;
    uint32_t attached_at = 0;           // the requested vertex of the working complex
};

// Relative simplicial chain complex of (K, L), with the map from simplex
// index to relative cell index (or -1) per degree.
struct RelativeChains {
    ChainComplex<Rational> chains;
    std::vector<std::vector<int64_t>> cell_of;
};

inline RelativeChains relative_chains(const SimplicialComplex& k, const SimplicialComplex* sub) {
    RelativeChains rc;
    int top = k.dimension();
    if (top < 0) return rc;
    rc.chains.dims.resize(top + 1);
    rc.chains.boundary.resize(top + 1);
    rc.cell_of.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        rc.cell_of[d].assign(k.count(d), -1);
        uint32_t next = 0;
        for (size_t i = 0; i < k.count(d); ++i)
            if (!sub || !sub->contains(k.simplex(d, i))) rc.cell_of[d][i] = next++;
        rc.chains.dims[d] = next;
        rc.chains.boundary[d].resize(next);
    }
    std::vector<uint32_t> face;
    for (int d = 1; d <= top; ++d) {
        face.resize(d);
        for (size_t i = 0; i < k.count(d); ++i) {
            int64_t c = rc.cell_of[d][i];
            if (c < 0) continue;
            auto s = k.simplex(d, i);
            std::vector<Entry<Rational>> raw;
            for (int j = 0; j <= d; ++j) {
                size_t w = 0;
                for (int t = 0; t <= d; ++t)
                    if (t != j) face[w++] = s[t];
                int64_t f = rc.cell_of[d - 1][static_cast<size_t>(k.index_of(face))];
                if (f >= 0) raw.push_back({static_cast<uint32_t>(f), Rational(j % 2 ? -1 : 1)});
            }
            rc.chains.boundary[d][static_cast<size_t>(c)] = make_sparse(std::move(raw));
        }
    }
    return rc;
}

// Closure of the (d-1)-simplices lying in exactly one d-simplex.
inline SimplicialComplex manifold_boundary(const SimplicialComplex& m) {
    int d = m.dimension();
    if (d < 1) return SimplicialComplex::from_flat(m.vertex_count(), {});
    std::vector<uint32_t> cofaces(m.count(d - 1), 0);
    std::vector<uint32_t> face(d);
    for (size_t i = 0; i < m.count(d); ++i) {
        auto s = m.simplex(d, i);
        for (int j = 0; j <= d; ++j) {
            size_t w = 0;
            for (int t = 0; t <= d; ++t)
                if (t != j) face[w++] = s[t];
            ++cofaces[static_cast<size_t>(m.index_of(face))];
        }
    }
    std::vector<Simplex> bd;
    for (size_t i = 0; i < m.count(d - 1); ++i)
        if (cofaces[i] == 1) bd.push_back(m.simplex_vec(d - 1, i));
    return SimplicialComplex::from_facets(m.vertex_count(), bd);
}

class GlobalQuotientOrbifold {
public:
    // The action is subdivided until it is regular, starting from level r.
    GlobalQuotientOrbifold(SimplicialComplex m, FiniteGroup g, size_t r = 0,
                           std::optional<std::vector<uint32_t>> boundary_vertices = std::nullopt,
                           std::optional<StabilisationRequest> stab = std::nullopt)
        : base_(std::move(m), std::move(g)), working_(base_) {
        if (base_.complex().dimension() < 0) throw InputError("empty manifold complex");
        if (base_.complex().count(0) != base_.complex().vertex_count())
            throw InputError("every vertex id must occur in the complex");
        boundary_ = manifold_boundary(base_.complex());
        if (boundary_vertices) {
            auto given = *boundary_vertices;
            std::sort(given.begin(), given.end());
            given.erase(std::unique(given.begin(), given.end()), given.end());
            if (given != boundary_.used_vertices())
                throw InputError("boundary_vertices do not match the boundary of the complex");
        }
        for (const auto& p : base_.group().elements())
            for (int d = 0; d <= boundary_.dimension(); ++d)
                for (size_t i = 0; i < boundary_.count(d); ++i) {
                    Simplex img;
                    for (uint32_t v : boundary_.simplex(d, i)) img.push_back(p[v]);
                    std::sort(img.begin(), img.end());
                    if (!boundary_.contains(img)) throw InputError("boundary is not invariant under the group");
                }
        requested_r_ = r;
        for (size_t i = 0; i < r; ++i) working_ = subdivide_action(working_);
        r_ = r;
        while (!is_regular_action(working_)) {
            if (r_ >= r + 3) throw InputError("action did not become regular after three extra subdivisions");
            working_ = subdivide_action(working_);
            ++r_;
        }
        compute_orientation();
        if (stab) resolve_stabilisation(*stab);
    }

    const ComplexAction& manifold() const { return base_; }
    const ComplexAction& working() const { return working_; }
    const SimplicialComplex& complex() const { return working_.complex(); }
    const FiniteGroup& group() const { return working_.group(); }
    size_t subdiv_level() const { return r_; }
    size_t requested_subdiv_level() const { return requested_r_; }
    int dimension() const { return base_.complex().dimension(); }
    bool closed() const { return boundary_.dimension() < 0; }
    const SimplicialComplex& boundary() const { return boundary_; }
    const std::optional<StabilisationData>& stabilisation() const { return stab_; }

    // Vertices of the working complex fixed by some non-identity element.
    std::vector<uint32_t> singular_vertices() const {
        std::vector<uint32_t> out;
        for (uint32_t v = 0; v < complex().vertex_count(); ++v)
            for (size_t g = 1; g < group().order(); ++g)
                if (group().element(g)[v] == v) {
                    out.push_back(v);
                    break;
                }
        return out;
    }

    SimplicialComplex singular_locus() const {
        auto sv = singular_vertices();
        return full_subcomplex(complex(), [&](uint32_t v) { return std::binary_search(sv.begin(), sv.end(), v); });
    }

    // The G-orbit of v without v itself.
    std::vector<uint32_t> ghost_orbit(uint32_t v) const {
        if (v >= complex().vertex_count()) throw InputError("vertex out of range");
        auto orb = working_.vertex_orbit(v);
        std::erase(orb, v);
        return orb;
    }

    // Connected components of the full subcomplex on non-singular vertices,
    // each as a sorted vertex list; components are ordered by least vertex.
    std::vector<std::vector<uint32_t>> complement_components() const {
        auto sv = singular_vertices();
        uint32_t nv = complex().vertex_count();
        std::vector<uint32_t> parent(nv);
        std::iota(parent.begin(), parent.end(), 0u);
        std::function<uint32_t(uint32_t)> find = [&](uint32_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        auto singular = [&](uint32_t v) { return std::binary_search(sv.begin(), sv.end(), v); };
        for (size_t i = 0; i < complex().count(1); ++i) {
            auto e = complex().simplex(1, i);
            if (singular(e[0]) || singular(e[1])) continue;
            parent[find(e[0])] = find(e[1]);
        }
        std::map<uint32_t, std::vector<uint32_t>> comps;
        for (uint32_t v = 0; v < nv; ++v)
            if (!singular(v)) comps[find(v)].push_back(v);
        std::vector<std::vector<uint32_t>> out;
        for (auto& [root, vs] : comps) out.push_back(vs);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Sign of each element of G on top (relative, when there is a boundary) homology.
    const std::vector<int8_t>& orientation_signs() const {
        if (!orientation_error_.empty()) throw InputError(orientation_error_);
        return or_m_;
    }

    // omega_n(pi; g) = sign(pi)^d * prod or_M(g_i).
    WreathCharacter orientation_character() const {
        return WreathCharacter{"orientation", dimension() % 2, orientation_signs()};
    }

private:
    void compute_orientation() {
        const auto& m = base_.complex();
        int d = m.dimension();
        auto rc = relative_chains(m, closed() ? nullptr : &boundary_);
        HomologyBasis hb(rc.chains);
        if (static_cast<int>(hb.betti(d)) != 1) {
            orientation_error_ = "top homology is " + std::to_string(hb.betti(d)) +
                                 "-dimensional; orientation character needs a rationally orientable model";
            return;
        }
        auto z = hb.representative(d, 0);
        // Relative cell index back to simplex index.
        std::vector<uint32_t> simplex_of(rc.chains.dims[d]);
        for (size_t i = 0; i < m.count(d); ++i)
            if (rc.cell_of[d][i] >= 0) simplex_of[static_cast<size_t>(rc.cell_of[d][i])] = static_cast<uint32_t>(i);
        for (size_t g = 0; g < base_.group().order(); ++g) {
            std::vector<Entry<Rational>> img;
            for (const auto& e : z) {
                auto [j, sign] = base_.apply(g, d, simplex_of[e.index]);
                img.push_back({static_cast<uint32_t>(rc.cell_of[d][j]), e.value * Rational(sign)});
            }
            auto coords = hb.class_of(d, make_sparse(std::move(img)));
            or_m_.push_back(coords[0] == Rational(1) ? 1 : -1);
        }
    }

    void resolve_stabilisation(const StabilisationRequest& req) {
        const auto& k = complex();
        uint32_t v = req.base_vertex;
        if (v >= k.vertex_count()) throw InputError("stabilisation base vertex out of range");
        if (closed()) throw InputError("stabilisation data given for a closed manifold");
        for (size_t g = 1; g < group().order(); ++g)
            if (group().element(g)[v] == v) throw InputError("stabilisation base vertex must have trivial isotropy");
        if (req.nested_copy.empty()) {
            attach_collar(v);
            return;
        }
        auto orbit = working_.vertex_orbit(v);
        std::vector<uint32_t> nested = req.nested_copy;
        std::sort(nested.begin(), nested.end());
        nested.erase(std::unique(nested.begin(), nested.end()), nested.end());
        for (uint32_t w : nested) {
            if (w >= k.vertex_count()) throw InputError("nested copy vertex out of range");
            if (std::binary_search(orbit.begin(), orbit.end(), w))
                throw InputError("base vertex orbit must be disjoint from the nested copy");
        }
        for (const auto& g : group().elements())
            for (uint32_t w : nested)
                if (!std::binary_search(nested.begin(), nested.end(), g[w]))
                    throw InputError("nested copy is not invariant under the group");
        auto in_nested = [&](uint32_t w) { return std::binary_search(nested.begin(), nested.end(), w); };
        SimplicialComplex sub = full_subcomplex(k, in_nested);
        if (!req.retraction.empty()) {
            // An equivariant simplicial retraction onto the nested copy.
            SimplicialMap r(k, k, req.retraction);
            for (uint32_t w = 0; w < k.vertex_count(); ++w) {
                if (!in_nested(r(w))) throw InputError("retraction leaves the nested copy");
                if (in_nested(w) && r(w) != w) throw InputError("retraction is not the identity on the nested copy");
                for (const auto& g : group().elements())
                    if (r(g[w]) != g[r(w)]) throw InputError("retraction is not equivariant");
            }
        }
        stab_ = StabilisationData{v, std::move(nested), std::move(sub), std::make_shared<ComplexAction>(working_), false, v};
    }

    // Cone point w_g = nv + g over the boundary star of g.v, for g in G.
    void attach_collar(uint32_t v) {
        const auto& k = complex();
        if (!std::binary_search(boundary_vertices_working().begin(), boundary_vertices_working().end(), v))
            throw InputError("stabilisation base vertex must lie on the boundary");
        auto bd = manifold_boundary(k);
        uint32_t nv = k.vertex_count();
        size_t order = group().order();
        std::vector<Simplex> facets = k.facets();
        for (size_t g = 0; g < order; ++g) {
            uint32_t gv = group().element(g)[v];
            for (const auto& f : bd.facets())
                if (std::binary_search(f.begin(), f.end(), gv)) {
                    Simplex s = f;
                    s.push_back(nv + static_cast<uint32_t>(g));
                    facets.push_back(s);
                }
        }
        auto plus = SimplicialComplex::from_facets(nv + static_cast<uint32_t>(order), facets);
        std::vector<Perm> elems, gens;
        for (size_t g = 0; g < order; ++g) {
            Perm p = group().element(g);
            for (size_t h = 0; h < order; ++h) p.push_back(nv + static_cast<uint32_t>(group().multiply(g, h)));
            elems.push_back(std::move(p));
        }
        for (const auto& s : group().generators()) gens.push_back(elems[static_cast<size_t>(group().index_of(s))]);
        auto grp = FiniteGroup::from_elements(plus.vertex_count(), std::move(elems), std::move(gens));
        auto ambient = std::make_shared<ComplexAction>(std::move(plus), std::move(grp));
        std::vector<uint32_t> nested(nv);
        std::iota(nested.begin(), nested.end(), 0u);
        stab_ = StabilisationData{nv, std::move(nested), k, std::move(ambient), true, v};
    }

    const std::vector<uint32_t>& boundary_vertices_working() {
        if (!working_boundary_) working_boundary_ = manifold_boundary(complex()).used_vertices();
        return *working_boundary_;
    }

    ComplexAction base_;
    ComplexAction working_;
    SimplicialComplex boundary_;
    size_t r_ = 0;
    size_t requested_r_ = 0;
    std::vector<int8_t> or_m_;
    std::string orientation_error_;
    std::optional<StabilisationData> stab_;
    std::optional<std::vector<uint32_t>> working_boundary_;
};

} // namespace orbiconf
