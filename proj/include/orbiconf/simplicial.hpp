// Finite abstract simplicial complexes, posets, subdivision and products.
#pragma once

#include "orbiconf/chain.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <unordered_map>

namespace orbiconf {

using Simplex = std::vector<uint32_t>;

class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Simplices are strictly increasing vertex lists. They are stored per
// dimension in one flat array, sorted lexicographically, so that the index of
// a simplex within its dimension is found by binary search. The global id of
// a simplex orders by (dimension, lexicographic order).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Downward closure of the given simplices; input lists need not be sorted.
    static SimplicialComplex from_facets(uint32_t vertex_count, const std::vector<Simplex>& facets) {
        std::vector<std::vector<uint32_t>> flat;
        for (auto f : facets) {
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw InputError("simplex has a repeated vertex");
            for (uint32_t v : f)
                if (v >= vertex_count) throw InputError("vertex id out of range");
            if (f.empty()) continue;
            if (f.size() > 24) throw CapacityError("simplex dimension too large to close");
            uint32_t full = (1u << f.size()) - 1;
            for (uint32_t mask = 1; mask <= full; ++mask) {
                size_t k = static_cast<size_t>(std::popcount(mask)) - 1;
                if (flat.size() <= k) flat.resize(k + 1);
                for (size_t i = 0; i < f.size(); ++i)
                    if (mask >> i & 1u) flat[k].push_back(f[i]);
            }
        }
        return from_flat(vertex_count, std::move(flat));
    }

    // Takes per-dimension flat lists of sorted simplices, possibly with
    // duplicates, assumed downward closed.
    static SimplicialComplex from_flat(uint32_t vertex_count, std::vector<std::vector<uint32_t>> flat) {
        SimplicialComplex k;
        k.vertex_count_ = vertex_count;
        for (size_t d = 0; d < flat.size(); ++d) sort_unique_blocks(flat[d], d + 1);
        while (!flat.empty() && flat.back().empty()) flat.pop_back();
        k.flat_ = std::move(flat);
        k.offsets_.assign(k.flat_.size() + 1, 0);
        for (size_t d = 0; d < k.flat_.size(); ++d) k.offsets_[d + 1] = k.offsets_[d] + k.count(d);
        return k;
    }

    uint32_t vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(flat_.size()) - 1; }
    size_t count(size_t d) const { return d < flat_.size() ? flat_[d].size() / (d + 1) : 0; }
    size_t size() const { return offsets_.empty() ? 0 : offsets_.back(); }
    size_t global_id(size_t d, size_t i) const { return offsets_[d] + i; }
    std::pair<size_t, size_t> split_id(size_t g) const {
        size_t d = static_cast<size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), g) - offsets_.begin()) - 1;
        return {d, g - offsets_[d]};
    }

    std::span<const uint32_t> simplex(size_t d, size_t i) const {
        return std::span<const uint32_t>(flat_[d].data() + i * (d + 1), d + 1);
    }
    Simplex simplex_vec(size_t d, size_t i) const {
        auto s = simplex(d, i);
        return Simplex(s.begin(), s.end());
    }

    // Index of a sorted simplex within its dimension, or -1.
    int64_t index_of(std::span<const uint32_t> s) const {
        if (s.empty() || s.size() > flat_.size()) return -1;
        size_t d = s.size() - 1;
        size_t lo = 0, hi = count(d);
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            auto m = simplex(d, mid);
            if (std::lexicographical_compare(m.begin(), m.end(), s.begin(), s.end())) lo = mid + 1;
            else hi = mid;
        }
        if (lo < count(d)) {
            auto m = simplex(d, lo);
            if (std::equal(m.begin(), m.end(), s.begin(), s.end())) return static_cast<int64_t>(lo);
        }
        return -1;
    }
    bool contains(std::span<const uint32_t> s) const { return index_of(s) >= 0; }

    std::vector<size_t> f_vector() const {
        std::vector<size_t> f;
        for (size_t d = 0; d < flat_.size(); ++d) f.push_back(count(d));
        return f;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (size_t d = 0; d < flat_.size(); ++d) chi += (d % 2 ? -1L : 1L) * static_cast<long>(count(d));
        return chi;
    }

    // Maximal simplices.
    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        std::vector<std::vector<uint8_t>> covered(flat_.size());
        for (size_t d = 0; d < flat_.size(); ++d) covered[d].assign(count(d), 0);
        Simplex face;
        for (size_t d = 1; d < flat_.size(); ++d)
            for (size_t i = 0; i < count(d); ++i) {
                auto s = simplex(d, i);
                for (size_t j = 0; j <= d; ++j) {
                    face.clear();
                    for (size_t t = 0; t <= d; ++t)
                        if (t != j) face.push_back(s[t]);
                    covered[d - 1][static_cast<size_t>(index_of(face))] = 1;
                }
            }
        for (size_t d = 0; d < flat_.size(); ++d)
            for (size_t i = 0; i < count(d); ++i)
                if (!covered[d][i]) out.push_back(simplex_vec(d, i));
        return out;
    }

    // Vertices that occur in some simplex.
    std::vector<uint32_t> used_vertices() const {
        std::vector<uint32_t> v;
        for (size_t i = 0; i < count(0); ++i) v.push_back(simplex(0, i)[0]);
        return v;
    }

    // Oriented simplicial chain complex: the boundary of [v_0..v_k] is
    // sum_j (-1)^j [v_0..^v_j..v_k]. Degrees run to max_degree + 1 when
    // max_degree is below the dimension, marking the result truncated.
    template <class T>
    ChainComplex<T> chain_complex(int max_degree = -1) const {
        ChainComplex<T> c;
        int top = dimension();
        if (max_degree >= 0 && max_degree < top) {
            top = max_degree + 1;
            c.truncated = true;
        }
        if (top < 0) return c;
        c.dims.resize(top + 1);
        c.boundary.resize(top + 1);
        for (int d = 0; d <= top; ++d) {
            c.dims[d] = static_cast<uint32_t>(count(d));
            c.boundary[d].resize(count(d));
            if (d == 0) continue;
            std::vector<uint32_t> face(d);
            for (size_t i = 0; i < count(d); ++i) {
                auto s = simplex(d, i);
                auto& col = c.boundary[d][i];
                for (int j = 0; j <= d; ++j) {
                    size_t w = 0;
                    for (int t = 0; t <= d; ++t)
                        if (t != j) face[w++] = s[t];
                    col.push_back({static_cast<uint32_t>(index_of(face)), T(j % 2 ? -1 : 1)});
                }
                std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
            }
        }
        return c;
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertex_count_ == b.vertex_count_ && a.flat_ == b.flat_;
    }

private:
    static void sort_unique_blocks(std::vector<uint32_t>& flat, size_t width) {
        size_t n = flat.size() / width;
        std::vector<uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        auto less = [&](uint32_t a, uint32_t b) {
            return std::lexicographical_compare(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                                                flat.begin() + b * width, flat.begin() + (b + 1) * width);
        };
        auto same = [&](uint32_t a, uint32_t b) {
            return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width, flat.begin() + b * width);
        };
        std::sort(order.begin(), order.end(), less);
        std::vector<uint32_t> out;
        out.reserve(flat.size());
        for (size_t i = 0; i < n; ++i) {
            if (i > 0 && same(order[i], order[i - 1])) continue;
            out.insert(out.end(), flat.begin() + order[i] * width, flat.begin() + (order[i] + 1) * width);
        }
        flat = std::move(out);
    }

    uint32_t vertex_count_ = 0;
    std::vector<std::vector<uint32_t>> flat_;
    std::vector<size_t> offsets_;
};

// Parity of the permutation that sorts a list of distinct values: +1 or -1.
inline int sort_sign(std::vector<uint32_t>& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

// Finite strict partial order on 0..size-1, given by generating relations.
class Poset {
public:
    Poset(uint32_t size, const std::vector<std::pair<uint32_t, uint32_t>>& less_than) : size_(size), up_(size) {
        std::vector<std::vector<uint32_t>> succ(size);
        std::vector<uint32_t> indeg(size, 0);
        for (auto [a, b] : less_than) {
            if (a >= size || b >= size) throw InputError("poset relation out of range");
            succ[a].push_back(b);
            ++indeg[b];
        }
        // Topological order, then transitive closure by reverse sweep.
        std::vector<uint32_t> order;
        for (uint32_t i = 0; i < size; ++i)
            if (indeg[i] == 0) order.push_back(i);
        for (size_t h = 0; h < order.size(); ++h)
            for (uint32_t b : succ[order[h]])
                if (--indeg[b] == 0) order.push_back(b);
        if (order.size() != size) throw InputError("poset relation has a cycle");
        std::vector<std::vector<uint8_t>> above(size, std::vector<uint8_t>(size, 0));
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            for (uint32_t b : succ[*it]) {
                above[*it][b] = 1;
                for (uint32_t c = 0; c < size; ++c)
                    if (above[b][c]) above[*it][c] = 1;
            }
        for (uint32_t a = 0; a < size; ++a)
            for (uint32_t c = 0; c < size; ++c)
                if (above[a][c]) up_[a].push_back(c);
    }

    uint32_t size() const { return size_; }
    bool less(uint32_t a, uint32_t b) const { return std::binary_search(up_[a].begin(), up_[a].end(), b); }
    const std::vector<uint32_t>& above(uint32_t a) const { return up_[a]; }

private:
    uint32_t size_;
    std::vector<std::vector<uint32_t>> up_;
};

// Simplices are the nonempty chains.
inline SimplicialComplex order_complex(const Poset& p) {
    std::vector<std::vector<uint32_t>> flat;
    std::vector<uint32_t> chain;
    std::function<void(uint32_t)> grow = [&](uint32_t top) {
        chain.push_back(top);
        if (flat.size() < chain.size()) flat.resize(chain.size());
        Simplex s = chain;
        std::sort(s.begin(), s.end());
        flat[chain.size() - 1].insert(flat[chain.size() - 1].end(), s.begin(), s.end());
        for (uint32_t b : p.above(top)) grow(b);
        chain.pop_back();
    };
    for (uint32_t a = 0; a < p.size(); ++a) grow(a);
    return SimplicialComplex::from_flat(p.size(), std::move(flat));
}

// Face poset of K on global simplex ids.
inline Poset face_poset(const SimplicialComplex& k) {
    std::vector<std::pair<uint32_t, uint32_t>> rel;
    Simplex face;
    for (int d = 1; d <= k.dimension(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex(d, i);
            for (int j = 0; j <= d; ++j) {
                face.clear();
                for (int t = 0; t <= d; ++t)
                    if (t != j) face.push_back(s[t]);
                rel.push_back({static_cast<uint32_t>(k.global_id(d - 1, static_cast<size_t>(k.index_of(face)))),
                               static_cast<uint32_t>(k.global_id(d, i))});
            }
        }
    return Poset(static_cast<uint32_t>(k.size()), rel);
}

// Barycentric subdivision together with the carrier simplex of every new vertex.
struct Subdivision {
    SimplicialComplex complex;
    std::vector<Simplex> carrier;  // new vertex id (= global simplex id of K) -> simplex of K
};

inline Subdivision barycentric_subdivision(const SimplicialComplex& k) {
    Subdivision out;
    out.carrier.resize(k.size());
    for (int d = 0; d <= k.dimension(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) out.carrier[k.global_id(d, i)] = k.simplex_vec(d, i);
    // Chains are built downward from every simplex by deleting vertices one at a time.
    std::vector<std::vector<uint32_t>> flat(std::max(0, k.dimension() + 1));
    std::vector<uint32_t> chain;
    std::function<void(const Simplex&)> down = [&](const Simplex& s) {
        chain.push_back(static_cast<uint32_t>(k.global_id(s.size() - 1, static_cast<size_t>(k.index_of(s)))));
        Simplex sorted = chain;
        std::sort(sorted.begin(), sorted.end());
        flat[chain.size() - 1].insert(flat[chain.size() - 1].end(), sorted.begin(), sorted.end());
        // Faces are visited by subsets, so each chain is emitted once.
        if (s.size() > 1) {
            uint32_t full = (1u << s.size()) - 1;
            for (uint32_t mask = 1; mask < full; ++mask) {
                Simplex f;
                for (size_t t = 0; t < s.size(); ++t)
                    if (mask >> t & 1u) f.push_back(s[t]);
                down(f);
            }
        }
        chain.pop_back();
    };
    for (int d = 0; d <= k.dimension(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) down(k.simplex_vec(d, i));
    out.complex = SimplicialComplex::from_flat(static_cast<uint32_t>(k.size()), std::move(flat));
    return out;
}

inline SimplicialComplex barycentric_subdivide(const SimplicialComplex& k) { return barycentric_subdivision(k).complex; }

// Staircase triangulation of |K|^n: the order complex of the n-fold product
// of the face poset. Vertex ids encode tuples of global simplex ids in mixed
// radix, coordinate 0 least significant. An optional filter restricts to
// the full subcomplex on the tuples it accepts.
using TupleFilter = std::function<bool(const std::vector<uint32_t>&)>;

inline uint64_t encode_tuple(const std::vector<uint32_t>& t, uint64_t radix) {
    uint64_t id = 0;
    for (size_t i = t.size(); i-- > 0;) id = id * radix + t[i];
    return id;
}

inline std::vector<uint32_t> decode_tuple(uint64_t id, uint64_t radix, size_t n) {
    std::vector<uint32_t> t(n);
    for (size_t i = 0; i < n; ++i) {
        t[i] = static_cast<uint32_t>(id % radix);
        id /= radix;
    }
    return t;
}

inline SimplicialComplex product_complex(const SimplicialComplex& k, size_t n, const TupleFilter& keep = {},
                                         size_t capacity = 10'000'000) {
    if (n == 0) throw InputError("product_complex requires n >= 1");
    uint64_t radix = k.size();
    double elems = std::pow(double(radix), double(n));
    if (elems >= 4.0e9) throw CapacityError("product_complex: " + std::to_string(uint64_t(elems)) + " product cells exceed the vertex id range");
    // Cofaces of every simplex, by global id.
    std::vector<std::vector<uint32_t>> cofaces(k.size());
    for (int d = 0; d <= k.dimension(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex(d, i);
            uint32_t gid = static_cast<uint32_t>(k.global_id(d, i));
            uint32_t m = static_cast<uint32_t>(s.size());
            for (uint32_t mask = 1; mask < (1u << m); ++mask) {
                Simplex f;
                for (uint32_t t = 0; t < m; ++t)
                    if (mask >> t & 1u) f.push_back(s[t]);
                cofaces[k.global_id(f.size() - 1, static_cast<size_t>(k.index_of(f)))].push_back(gid);
            }
        }
    // Each chain is enumerated once, bottom element first, by extending it
    // with strictly larger tuples.
    std::vector<std::vector<uint32_t>> flat;
    std::vector<uint32_t> chain;
    std::vector<std::vector<uint32_t>> tuples;
    size_t emitted = 0;
    std::function<void()> extend = [&] {
        const std::vector<uint32_t> top = tuples.back();
        std::vector<uint32_t> next(n);
        Simplex s(chain.begin(), chain.end());
        std::sort(s.begin(), s.end());
        if (flat.size() < s.size()) flat.resize(s.size());
        flat[s.size() - 1].insert(flat[s.size() - 1].end(), s.begin(), s.end());
        if (++emitted > capacity) throw CapacityError("product_complex: more than " + std::to_string(capacity) + " simplices");
        // Enumerate tuples componentwise above top, excluding top itself.
        std::function<void(size_t, bool)> pick = [&](size_t i, bool strict) {
            if (i == n) {
                if (!strict) return;
                if (keep && !keep(next)) return;
                tuples.push_back(next);
                chain.push_back(static_cast<uint32_t>(encode_tuple(next, radix)));
                extend();
                chain.pop_back();
                tuples.pop_back();
                return;
            }
            for (uint32_t c : cofaces[top[i]]) {
                next[i] = c;
                pick(i + 1, strict || c != top[i]);
            }
        };
        pick(0, false);
    };
    std::vector<uint32_t> t(n, 0);
    std::function<void(size_t)> start = [&](size_t i) {
        if (i == n) {
            if (keep && !keep(t)) return;
            tuples.push_back(t);
            chain.push_back(static_cast<uint32_t>(encode_tuple(t, radix)));
            extend();
            chain.pop_back();
            tuples.pop_back();
            return;
        }
        for (uint32_t g = 0; g < radix; ++g) {
            t[i] = g;
            start(i + 1);
        }
    };
    start(0);
    return SimplicialComplex::from_flat(static_cast<uint32_t>(std::pow(double(radix), double(n)) + 0.5), std::move(flat));
}

inline SimplicialComplex full_subcomplex(const SimplicialComplex& k, const std::function<bool(uint32_t)>& keep) {
    std::vector<std::vector<uint32_t>> flat;
    for (int d = 0; d <= k.dimension(); ++d)
        for (size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex(d, i);
            if (!std::all_of(s.begin(), s.end(), keep)) continue;
            if (flat.size() <= size_t(d)) flat.resize(d + 1);
            flat[d].insert(flat[d].end(), s.begin(), s.end());
        }
    return SimplicialComplex::from_flat(k.vertex_count(), std::move(flat));
}

// A vertex map between complexes; images of simplices must span simplices.
class SimplicialMap {
public:
    SimplicialMap(const SimplicialComplex& source, const SimplicialComplex& target, std::vector<uint32_t> vertex_map)
        : source_(&source), target_(&target), map_(std::move(vertex_map)) {
        if (map_.size() < source.vertex_count()) throw InputError("vertex map shorter than the source vertex set");
        for (int d = 0; d <= source.dimension(); ++d)
            for (size_t i = 0; i < source.count(d); ++i) {
                Simplex img = image(source.simplex(d, i));
                if (!target.contains(img)) throw InputError("vertex map does not send simplices to simplices");
            }
    }

    uint32_t operator()(uint32_t v) const { return map_[v]; }
    const std::vector<uint32_t>& vertex_map() const { return map_; }

    Simplex image(std::span<const uint32_t> s) const {
        Simplex img;
        for (uint32_t v : s) img.push_back(map_[v]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        return img;
    }

    // Chain-level image of simplex i of dimension d; degenerate images vanish.
    template <class T>
    SparseVec<T> chain_image(size_t d, size_t i) const {
        auto s = source_->simplex(d, i);
        std::vector<uint32_t> img;
        for (uint32_t v : s) img.push_back(map_[v]);
        int sign = sort_sign(img);
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) return {};
        return {{static_cast<uint32_t>(target_->index_of(img)), T(sign)}};
    }

private:
    const SimplicialComplex* source_;
    const SimplicialComplex* target_;
    std::vector<uint32_t> map_;
};

inline HomologyReport homology(const SimplicialComplex& k, bool integral = false, int max_degree = -1) {
    if (k.dimension() < 0) {
        HomologyReport r;
        if (integral) r.ring = "integral";
        return r;
    }
    if (integral) return integral_homology(k.chain_complex<Integer>(max_degree));
    return rational_homology(k.chain_complex<Rational>(max_degree));
}

} // namespace orbiconf
