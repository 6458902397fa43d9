// Finite permutation groups, +-1 characters, wreath products and simplicial actions.
#pragma once

#include "orbiconf/simplicial.hpp"

#include <map>

namespace orbiconf {

using Perm = std::vector<uint32_t>;

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
    Perm c(b.size());
    for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
    return c;
}

inline Perm invert(const Perm& a) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<uint32_t>(i);
    return c;
}

inline int permutation_sign(const Perm& p) {
    std::vector<uint8_t> seen(p.size(), 0);
    int sign = 1;
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline bool is_permutation(const Perm& p) {
    std::vector<uint8_t> seen(p.size(), 0);
    for (uint32_t x : p) {
        if (x >= p.size() || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

// Explicitly enumerated group of permutations of {0..degree-1}. Element 0 is
// the identity; the product a*b applies b first.
class FiniteGroup {
public:
    FiniteGroup() : FiniteGroup(trivial(0)) {}

    static FiniteGroup trivial(uint32_t degree) {
        FiniteGroup g(degree);
        Perm id(degree);
        std::iota(id.begin(), id.end(), 0u);
        g.add(id);
        return g;
    }

    static FiniteGroup generated_by(uint32_t degree, const std::vector<Perm>& gens, size_t capacity = 1'000'000) {
        FiniteGroup g = trivial(degree);
        for (const auto& s : gens) {
            if (s.size() != degree || !is_permutation(s)) throw InputError("generator is not a permutation of the vertex set");
            g.generators_.push_back(s);
        }
        for (size_t h = 0; h < g.elements_.size(); ++h)
            for (const auto& s : g.generators_) {
                Perm p = compose(s, g.elements_[h]);
                if (g.index_.count(p)) continue;
                if (g.elements_.size() >= capacity)
                    throw CapacityError("group order exceeds capacity " + std::to_string(capacity));
                g.add(std::move(p));
            }
        return g;
    }

    // Takes a complete, closed element list (identity first); closure is verified
    // against the supplied generators.
    static FiniteGroup from_elements(uint32_t degree, std::vector<Perm> elements, std::vector<Perm> gens) {
        FiniteGroup g(degree);
        for (auto& e : elements) g.add(std::move(e));
        g.generators_ = std::move(gens);
        for (size_t h = 0; h < g.elements_.size(); ++h)
            for (const auto& s : g.generators_)
                if (!g.index_.count(compose(s, g.elements_[h])))
                    throw std::logic_error("element list not closed under the generators");
        return g;
    }

    uint32_t degree() const { return degree_; }
    size_t order() const { return elements_.size(); }
    const Perm& element(size_t i) const { return elements_[i]; }
    const std::vector<Perm>& elements() const { return elements_; }
    const std::vector<Perm>& generators() const { return generators_; }

    int64_t index_of(const Perm& p) const {
        auto it = index_.find(p);
        return it == index_.end() ? -1 : static_cast<int64_t>(it->second);
    }
    size_t multiply(size_t a, size_t b) const { return static_cast<size_t>(index_of(compose(elements_[a], elements_[b]))); }
    size_t inverse(size_t a) const { return static_cast<size_t>(index_of(invert(elements_[a]))); }

    // Full multiplication table; only sensible for small groups.
    std::vector<std::vector<uint32_t>> table() const {
        std::vector<std::vector<uint32_t>> t(order(), std::vector<uint32_t>(order()));
        for (size_t a = 0; a < order(); ++a)
            for (size_t b = 0; b < order(); ++b) t[a][b] = static_cast<uint32_t>(multiply(a, b));
        return t;
    }

private:
    explicit FiniteGroup(uint32_t degree) : degree_(degree) {}
    void add(Perm p) {
        index_.emplace(p, static_cast<uint32_t>(elements_.size()));
        elements_.push_back(std::move(p));
    }

    uint32_t degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<Perm> generators_;
    std::map<Perm, uint32_t> index_;
};

// A +-1 valued function on the elements of a group, by element index.
struct Character {
    std::string name = "trivial";
    std::vector<int8_t> values;

    int operator()(size_t i) const { return values[i]; }

    static Character trivial(const FiniteGroup& g) { return {"trivial", std::vector<int8_t>(g.order(), 1)}; }

    // chi(g s) = chi(g) chi(s) for all g and all generators s forces a homomorphism.
    bool is_multiplicative(const FiniteGroup& g) const {
        if (values.size() != g.order() || values[0] != 1) return false;
        for (const auto& s : g.generators()) {
            int64_t si = g.index_of(s);
            for (size_t a = 0; a < g.order(); ++a)
                if (values[g.multiply(a, static_cast<size_t>(si))] != values[a] * values[static_cast<size_t>(si)]) return false;
        }
        return true;
    }
};

// Elements of G wr S_n act on n-fold products by y_{pi(i)} = g_i x_i.
struct WreathElement {
    Perm pi;
    std::vector<uint32_t> g;  // element indices in the base group

    friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

class WreathProduct {
public:
    // Block sizes restrict pi to permutations preserving consecutive blocks;
    // the default is a single block of size n.
    WreathProduct(const FiniteGroup& base, size_t n, std::vector<size_t> blocks = {}, size_t capacity = 1'000'000)
        : base_(&base), n_(n), blocks_(std::move(blocks)) {
        if (blocks_.empty() && n > 0) blocks_ = {n};
        size_t total = 0;
        for (size_t b : blocks_) total += b;
        if (total != n) throw InputError("block sizes must sum to n");
        double size = std::pow(double(base.order()), double(n));
        for (size_t b : blocks_)
            for (size_t i = 2; i <= b; ++i) size *= double(i);
        if (size > double(capacity))
            throw CapacityError("wreath product of order " + std::to_string(uint64_t(size)) + " exceeds capacity " +
                                std::to_string(capacity));
        order_ = static_cast<size_t>(size + 0.5);
    }

    size_t n() const { return n_; }
    size_t order() const { return order_; }
    const FiniteGroup& base() const { return *base_; }
    const std::vector<size_t>& blocks() const { return blocks_; }

    WreathElement identity() const {
        WreathElement e{Perm(n_), std::vector<uint32_t>(n_, 0)};
        std::iota(e.pi.begin(), e.pi.end(), 0u);
        return e;
    }

    WreathElement multiply(const WreathElement& a, const WreathElement& b) const {
        WreathElement c{compose(a.pi, b.pi), std::vector<uint32_t>(n_)};
        for (size_t i = 0; i < n_; ++i) c.g[i] = static_cast<uint32_t>(base_->multiply(a.g[b.pi[i]], b.g[i]));
        return c;
    }

    WreathElement inverse(const WreathElement& a) const {
        WreathElement c{invert(a.pi), std::vector<uint32_t>(n_)};
        for (size_t i = 0; i < n_; ++i) c.g[a.pi[i]] = static_cast<uint32_t>(base_->inverse(a.g[i]));
        return c;
    }

    // All elements, identity first.
    std::vector<WreathElement> elements() const {
        std::vector<WreathElement> out;
        out.reserve(order_);
        std::vector<Perm> perms = block_permutations();
        std::vector<uint32_t> g(n_, 0);
        for (const auto& pi : perms) {
            std::fill(g.begin(), g.end(), 0u);
            for (;;) {
                out.push_back({pi, g});
                size_t i = 0;
                while (i < n_ && ++g[i] == base_->order()) g[i++] = 0;
                if (i == n_) break;
            }
        }
        return out;
    }

    // Action on the ground set {0..n-1} x {0..degree-1}, point (i, x) -> i * degree + x.
    Perm as_permutation(const WreathElement& w) const {
        uint32_t deg = base_->degree();
        Perm p(n_ * deg);
        for (size_t i = 0; i < n_; ++i)
            for (uint32_t x = 0; x < deg; ++x) p[i * deg + x] = static_cast<uint32_t>(w.pi[i] * deg + base_->element(w.g[i])[x]);
        return p;
    }

    // The wreath product as a permutation group of degree n * |ground set|.
    FiniteGroup group() const {
        std::vector<Perm> elems, gens;
        for (const auto& w : elements()) elems.push_back(as_permutation(w));
        for (const auto& w : generators()) gens.push_back(as_permutation(w));
        return FiniteGroup::from_elements(static_cast<uint32_t>(n_ * base_->degree()), std::move(elems), std::move(gens));
    }

    std::vector<WreathElement> generators() const {
        std::vector<WreathElement> gens;
        size_t start = 0;
        for (size_t b : blocks_) {
            for (size_t i = start; i + 1 < start + b; ++i) {
                WreathElement t = identity();
                std::swap(t.pi[i], t.pi[i + 1]);
                gens.push_back(t);
            }
            start += b;
        }
        for (const auto& s : base_->generators()) {
            int64_t si = base_->index_of(s);
            for (size_t i = 0; i < n_; ++i) {
                WreathElement t = identity();
                t.g[i] = static_cast<uint32_t>(si);
                gens.push_back(t);
            }
        }
        return gens;
    }

    // Block-preserving permutations, lexicographic for a single block.
    std::vector<Perm> block_permutations() const {
        std::vector<Perm> out{Perm{}};
        size_t start = 0;
        for (size_t b : blocks_) {
            Perm local(b);
            std::iota(local.begin(), local.end(), 0u);
            std::vector<Perm> next;
            do {
                for (const auto& prefix : out) {
                    Perm p = prefix;
                    for (size_t i = 0; i < b; ++i) p.push_back(static_cast<uint32_t>(start + local[i]));
                    next.push_back(std::move(p));
                }
            } while (std::next_permutation(local.begin(), local.end()));
            out = std::move(next);
            start += b;
        }
        return out;
    }

private:
    const FiniteGroup* base_;
    size_t n_;
    std::vector<size_t> blocks_;
    size_t order_ = 1;
};

// Linear characters of G wr (S_b1 x ... x S_bt) of the form
// sign(pi)^eps_power * prod_i phi(g_i), with phi a +-1 character of G.
struct WreathCharacter {
    std::string name = "trivial";
    int eps_power = 0;
    std::vector<int8_t> phi;  // on base group elements; empty means trivial

    int base(uint32_t g) const { return phi.empty() ? 1 : phi[g]; }
    int operator()(const WreathElement& w) const {
        int v = (eps_power % 2) ? permutation_sign(w.pi) : 1;
        for (uint32_t g : w.g) v *= base(g);
        return v;
    }
    bool is_trivial() const {
        return eps_power % 2 == 0 && std::all_of(phi.begin(), phi.end(), [](int8_t x) { return x == 1; });
    }
};

// Exhaustive multiplicativity of chi on the wreath product.
inline bool is_multiplicative(const WreathCharacter& chi, const WreathProduct& w) {
    auto elems = w.elements();
    for (const auto& a : elems)
        for (const auto& b : elems)
            if (chi(w.multiply(a, b)) != chi(a) * chi(b)) return false;
    return true;
}

// An element of G wr (S_{n-m} x S_m) as a pair of elements of G wr S_{n-m}
// and G wr S_m.
inline std::pair<WreathElement, WreathElement> split_block_element(const WreathElement& w, size_t m) {
    size_t n = w.pi.size(), k = n - m;
    WreathElement a{Perm(w.pi.begin(), w.pi.begin() + k), std::vector<uint32_t>(w.g.begin(), w.g.begin() + k)};
    WreathElement b{Perm(m), std::vector<uint32_t>(w.g.begin() + k, w.g.end())};
    for (size_t i = 0; i < m; ++i) {
        if (w.pi[k + i] < k) throw InputError("element does not preserve the blocks");
        b.pi[i] = w.pi[k + i] - static_cast<uint32_t>(k);
    }
    for (uint32_t x : a.pi)
        if (x >= k) throw InputError("element does not preserve the blocks");
    return {a, b};
}

// chi restricted to G wr (S_{n-m} x S_m) equals the product of chi on the
// two blocks, checked on every element.
inline bool block_factorization_holds(const WreathCharacter& chi, const FiniteGroup& g, size_t n, size_t m,
                                      size_t capacity = 10'000) {
    if (m > n) throw InputError("block factorization needs m <= n");
    std::vector<size_t> blocks;
    if (n - m > 0) blocks.push_back(n - m);
    if (m > 0) blocks.push_back(m);
    WreathProduct w(g, n, blocks, capacity);
    for (const auto& e : w.elements()) {
        auto [a, b] = split_block_element(e, m);
        if (chi(e) != chi(a) * chi(b)) return false;
    }
    return true;
}

// A finite group acting on a complex by vertex permutations, each a
// simplicial automorphism.
class ComplexAction {
public:
    // Skips the automorphism check; for actions that hold by construction.
    struct Trusted {};

    ComplexAction(SimplicialComplex complex, FiniteGroup group, Trusted)
        : complex_(std::move(complex)), group_(std::move(group)) {
        if (group_.degree() != complex_.vertex_count())
            throw InputError("group degree differs from the vertex count of the complex");
    }

    ComplexAction(SimplicialComplex complex, FiniteGroup group) : ComplexAction(std::move(complex), std::move(group), Trusted{}) {
        for (const auto& g : group_.elements())
            for (int d = 0; d <= complex_.dimension(); ++d)
                for (size_t i = 0; i < complex_.count(d); ++i) {
                    Simplex img;
                    for (uint32_t v : complex_.simplex(d, i)) img.push_back(g[v]);
                    std::sort(img.begin(), img.end());
                    if (!complex_.contains(img)) throw InputError("group element is not a simplicial automorphism");
                }
    }

    static ComplexAction trivial(SimplicialComplex complex) {
        uint32_t nv = complex.vertex_count();
        return ComplexAction(std::move(complex), FiniteGroup::trivial(nv));
    }

    const SimplicialComplex& complex() const { return complex_; }
    const FiniteGroup& group() const { return group_; }

    // Oriented image of simplex (d, i) under element g: (index, sign).
    std::pair<size_t, int> apply(size_t g, size_t d, size_t i) const {
        const Perm& p = group_.element(g);
        std::vector<uint32_t> img;
        for (uint32_t v : complex_.simplex(d, i)) img.push_back(p[v]);
        int sign = sort_sign(img);
        return {static_cast<size_t>(complex_.index_of(img)), sign};
    }

    // Permutation of global simplex ids induced by element g.
    std::vector<uint32_t> simplex_permutation(size_t g) const {
        std::vector<uint32_t> out(complex_.size());
        for (int d = 0; d <= complex_.dimension(); ++d)
            for (size_t i = 0; i < complex_.count(d); ++i)
                out[complex_.global_id(d, i)] = static_cast<uint32_t>(complex_.global_id(d, apply(g, d, i).first));
        return out;
    }

    std::vector<uint32_t> vertex_orbit(uint32_t v) const {
        std::vector<uint32_t> orb;
        for (const auto& g : group_.elements()) orb.push_back(g[v]);
        std::sort(orb.begin(), orb.end());
        orb.erase(std::unique(orb.begin(), orb.end()), orb.end());
        return orb;
    }

private:
    SimplicialComplex complex_;
    FiniteGroup group_;
};

// Subdivision with the action carried along: the new vertex of a simplex
// goes to the new vertex of its image.
inline ComplexAction subdivide_action(const ComplexAction& a) {
    Subdivision sd = barycentric_subdivision(a.complex());
    // Element order is preserved so that characters keep their meaning.
    std::vector<Perm> elems, gens;
    for (size_t g = 0; g < a.group().order(); ++g) elems.push_back(a.simplex_permutation(g));
    for (const auto& s : a.group().generators())
        gens.push_back(elems[static_cast<size_t>(a.group().index_of(s))]);
    FiniteGroup g = FiniteGroup::from_elements(sd.complex.vertex_count(), std::move(elems), std::move(gens));
    return ComplexAction(std::move(sd.complex), std::move(g));
}

} // namespace orbiconf
