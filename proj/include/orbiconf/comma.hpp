// Finite groupoids, configuration groupoids of action groupoids, comma
// categories of the forgetful functor Conf_{n,m} -> Conf_n, and skeleta.
#pragma once

#include "orbiconf/group.hpp"

#include <map>

namespace orbiconf {

// A finite category given by its morphisms; composition is only needed for
// validation and is supplied as a function (a after b, or -1 if undefined).
struct FiniteCategory {
    size_t objects = 0;
    std::vector<uint32_t> source, target;
    std::vector<uint32_t> identity;  // identity morphism per object
    std::function<int64_t(uint32_t, uint32_t)> compose;

    size_t morphisms() const { return source.size(); }
    bool is_identity(uint32_t a) const { return identity[source[a]] == a; }

    // Identity and associativity laws, exhaustively.
    bool satisfies_axioms() const {
        size_t n = morphisms();
        for (uint32_t a = 0; a < n; ++a) {
            if (compose(a, identity[source[a]]) != a || compose(identity[target[a]], a) != a) return false;
        }
        for (uint32_t a = 0; a < n; ++a)
            for (uint32_t b = 0; b < n; ++b) {
                if (source[a] != target[b]) continue;
                int64_t ab = compose(a, b);
                if (ab < 0 || source[ab] != source[b] || target[ab] != target[a]) return false;
                for (uint32_t c = 0; c < n; ++c) {
                    if (source[b] != target[c]) continue;
                    if (compose(static_cast<uint32_t>(ab), c) != compose(a, static_cast<uint32_t>(compose(b, c)))) return false;
                }
            }
        return true;
    }

    // Every morphism has a two-sided inverse.
    bool is_groupoid() const {
        for (uint32_t a = 0; a < morphisms(); ++a) {
            bool found = false;
            for (uint32_t b = 0; b < morphisms() && !found; ++b)
                found = source[b] == target[a] && target[b] == source[a] && compose(a, b) == identity[target[a]] &&
                        compose(b, a) == identity[source[a]];
            if (!found) return false;
        }
        return true;
    }
};

struct Skeleton {
    std::vector<uint32_t> representatives;  // one object per isomorphism class
    size_t morphisms = 0;                   // morphisms between representatives
    bool discrete = false;                  // only identity morphisms remain
};

// Isomorphism classes are the components of the morphism graph (all
// morphisms are invertible in the categories built here). For a general
// category the classes are those of mutually inverse pairs.
inline Skeleton skeleton(const FiniteCategory& c, bool groupoid = true) {
    std::vector<uint32_t> parent(c.objects);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    if (groupoid) {
        for (uint32_t a = 0; a < c.morphisms(); ++a) unite(c.source[a], c.target[a]);
    } else {
        for (uint32_t a = 0; a < c.morphisms(); ++a)
            for (uint32_t b = 0; b < c.morphisms(); ++b)
                if (c.source[b] == c.target[a] && c.target[b] == c.source[a] && c.compose(a, b) == c.identity[c.target[a]] &&
                    c.compose(b, a) == c.identity[c.source[a]])
                    unite(c.source[a], c.target[a]);
    }
    Skeleton s;
    std::vector<uint8_t> is_rep(c.objects, 0);
    for (uint32_t o = 0; o < c.objects; ++o)
        if (find(o) == o) {
            s.representatives.push_back(o);
            is_rep[o] = 1;
        }
    s.discrete = true;
    for (uint32_t a = 0; a < c.morphisms(); ++a)
        if (is_rep[c.source[a]] && is_rep[c.target[a]]) {
            ++s.morphisms;
            if (!c.is_identity(a)) s.discrete = false;
        }
    return s;
}

// The configuration groupoid of the action groupoid of G on a finite point
// set. Objects are ordered n-tuples of points in pairwise distinct orbits;
// an arrow out of x is a wreath element (pi; g) with target x',
// x'_{pi(i)} = g_i x_i. The partitioned variant Conf_{n,m} keeps the
// elements whose pi preserves the blocks {0..n-m-1} and {n-m..n-1}.
class ConfGroupoid {
public:
    ConfGroupoid(const FiniteGroup& g, size_t n, size_t capacity = 1'000'000)
        : group_(g), n_(n), wreath_(group_, n, {}, capacity) {
        points_ = g.degree();
        std::vector<uint32_t> orbit(points_, UINT32_MAX);
        uint32_t next = 0;
        for (uint32_t p = 0; p < points_; ++p) {
            if (orbit[p] != UINT32_MAX) continue;
            for (const auto& e : g.elements()) orbit[e[p]] = next;
            ++next;
        }
        elements_ = wreath_.elements();
        // elements() lists permutations in lexicographic order with the base
        // labels varying fastest, g_0 first, so an element has index
        // rank(pi) * |G|^n + sum g_i |G|^i.
        std::vector<Perm> perms = wreath_.block_permutations();
        for (uint32_t i = 0; i < perms.size(); ++i) perm_rank_[perms[i]] = i;
        stride_ = elements_.size() / std::max<size_t>(perms.size(), 1);
        std::vector<uint32_t> t(n);
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == n) {
                object_index_[t] = static_cast<uint32_t>(objects_.size());
                objects_.push_back(t);
                if (objects_.size() * elements_.size() > capacity)
                    throw CapacityError("configuration groupoid: more than " + std::to_string(capacity) + " arrows");
                return;
            }
            for (uint32_t p = 0; p < points_; ++p) {
                bool ok = true;
                for (size_t j = 0; j < i && ok; ++j) ok = orbit[t[j]] != orbit[p];
                if (!ok) continue;
                t[i] = p;
                rec(i + 1);
            }
        };
        rec(0);
        size_t w = elements_.size();
        inverse_.resize(w);
        for (uint32_t a = 0; a < w; ++a) inverse_[a] = encode(wreath_.inverse(elements_[a]));
        if (w * w <= table_limit && !objects_.empty()) {
            table_.resize(w * w);
            for (uint32_t a = 0; a < w; ++a)
                for (uint32_t b = 0; b < w; ++b) table_[size_t(a) * w + b] = encode(wreath_.multiply(elements_[a], elements_[b]));
        }
        act_.resize(objects_.size() * w);
        std::vector<uint32_t> out(n);
        for (uint32_t x = 0; x < objects_.size(); ++x)
            for (uint32_t e = 0; e < w; ++e) {
                const auto& we = elements_[e];
                for (size_t i = 0; i < n; ++i) out[we.pi[i]] = g.element(we.g[i])[objects_[x][i]];
                act_[size_t(x) * w + e] = object_index_.at(out);
            }
    }

    // wreath_ refers to group_.
    ConfGroupoid(const ConfGroupoid&) = delete;
    ConfGroupoid& operator=(const ConfGroupoid&) = delete;

    size_t n() const { return n_; }
    size_t object_count() const { return objects_.size(); }
    const std::vector<uint32_t>& object(uint32_t i) const { return objects_[i]; }
    int64_t find_object(const std::vector<uint32_t>& t) const {
        auto it = object_index_.find(t);
        return it == object_index_.end() ? -1 : static_cast<int64_t>(it->second);
    }
    size_t element_count() const { return elements_.size(); }
    const WreathElement& element(uint32_t e) const { return elements_[e]; }
    uint32_t element_index(const WreathElement& w) const { return encode(w); }
    uint32_t identity_element() const { return 0; }
    uint32_t multiply(uint32_t a, uint32_t b) const {
        if (!table_.empty()) return table_[size_t(a) * elements_.size() + b];
        return encode(wreath_.multiply(elements_[a], elements_[b]));
    }
    uint32_t inverse(uint32_t a) const { return inverse_[a]; }
    size_t arrow_count() const { return objects_.size() * elements_.size(); }

    // Target object of the arrow e out of object x.
    uint32_t act(uint32_t e, uint32_t x) const { return act_[size_t(x) * elements_.size() + e]; }

    // Element indices of the block subgroup for Conf_{n,m}.
    std::vector<uint32_t> block_elements(size_t m) const {
        std::vector<uint32_t> out;
        for (uint32_t e = 0; e < elements_.size(); ++e) {
            bool ok = true;
            for (size_t i = 0; i < n_ && ok; ++i) ok = (i < n_ - m) == (elements_[e].pi[i] < n_ - m);
            if (ok) out.push_back(e);
        }
        return out;
    }

    // The whole groupoid as an explicit category (arrow id = x * |W| + e).
    FiniteCategory as_category(const std::vector<uint32_t>* allowed = nullptr) const {
        std::vector<uint32_t> elems;
        if (allowed) elems = *allowed;
        else {
            elems.resize(elements_.size());
            std::iota(elems.begin(), elems.end(), 0u);
        }
        std::map<uint32_t, uint32_t> local;
        for (uint32_t i = 0; i < elems.size(); ++i) local[elems[i]] = i;
        size_t w = elems.size();
        FiniteCategory c;
        c.objects = objects_.size();
        c.identity.resize(c.objects);
        for (uint32_t x = 0; x < c.objects; ++x)
            for (uint32_t i = 0; i < w; ++i) {
                c.source.push_back(x);
                c.target.push_back(act(elems[i], x));
                if (elems[i] == identity_element()) c.identity[x] = static_cast<uint32_t>(x * w + i);
            }
        c.compose = [this, elems, local, w, src = c.source, tgt = c.target](uint32_t a, uint32_t b) -> int64_t {
            if (src[a] != tgt[b]) return -1;
            uint32_t e = multiply(elems[a % w], elems[b % w]);
            auto it = local.find(e);
            if (it == local.end()) return -1;
            return static_cast<int64_t>(src[b] * w + it->second);
        };
        return c;
    }

private:
    uint32_t encode(const WreathElement& w) const {
        size_t code = 0;
        for (size_t i = n_; i-- > 0;) code = code * group_.order() + w.g[i];
        return static_cast<uint32_t>(perm_rank_.at(w.pi) * stride_ + code);
    }

    FiniteGroup group_;
    size_t n_;
    WreathProduct wreath_;
    uint32_t points_ = 0;
    std::vector<WreathElement> elements_;
    static constexpr size_t table_limit = 20'000'000;
    std::map<Perm, uint32_t> perm_rank_;
    size_t stride_ = 1;
    std::vector<uint32_t> inverse_, table_, act_;
    std::vector<std::vector<uint32_t>> objects_;
    std::map<std::vector<uint32_t>, uint32_t> object_index_;
};

// The comma category x \ p for p : Conf_{n,m} -> Conf_n. Objects are pairs
// (c, f : x -> c); since an arrow out of x is a wreath element, object i is
// the element i (and c = i.x). A morphism (c1, f1) -> (c2, f2) is an arrow
// h : c1 -> c2 of Conf_{n,m} with p(h) f1 = f2; morphism j * |H| + k is the
// block element H[k] applied at object j.
class CommaCategory {
public:
    CommaCategory(const ConfGroupoid& conf, size_t m, uint32_t x)
        : conf_(&conf), m_(m), x_(x), block_(conf.block_elements(m)) {
        if (m > conf.n()) throw InputError("comma category needs m <= n");
        size_t objs = conf.element_count();
        target_object_.resize(objs);
        for (uint32_t f = 0; f < objs; ++f) target_object_[f] = conf.act(f, x);
        morph_target_.resize(objs * block_.size());
        for (uint32_t f = 0; f < objs; ++f)
            for (size_t k = 0; k < block_.size(); ++k) morph_target_[f * block_.size() + k] = conf.multiply(block_[k], f);
    }

    const ConfGroupoid& conf() const { return *conf_; }
    size_t m() const { return m_; }
    uint32_t base_object() const { return x_; }
    size_t object_count() const { return target_object_.size(); }
    size_t morphism_count() const { return morph_target_.size(); }
    const std::vector<uint32_t>& block() const { return block_; }
    uint32_t morphism_source(size_t mor) const { return static_cast<uint32_t>(mor / block_.size()); }
    uint32_t morphism_target(size_t mor) const { return morph_target_[mor]; }
    uint32_t morphism_arrow(size_t mor) const { return block_[mor % block_.size()]; }

    // p(h) f1 = f2, and h goes from c1 to c2, for every stored morphism.
    bool morphisms_valid() const {
        for (size_t mor = 0; mor < morphism_count(); ++mor) {
            uint32_t f1 = morphism_source(mor), f2 = morphism_target(mor), h = morphism_arrow(mor);
            if (conf_->multiply(h, f1) != f2) return false;
            if (conf_->act(h, target_object_[f1]) != target_object_[f2]) return false;
        }
        return true;
    }

    FiniteCategory as_category() const {
        FiniteCategory c;
        c.objects = object_count();
        size_t hb = block_.size();
        c.source.resize(morphism_count());
        c.target.resize(morphism_count());
        c.identity.resize(c.objects);
        size_t id_pos = static_cast<size_t>(std::find(block_.begin(), block_.end(), conf_->identity_element()) - block_.begin());
        for (size_t mor = 0; mor < morphism_count(); ++mor) {
            c.source[mor] = morphism_source(mor);
            c.target[mor] = morphism_target(mor);
        }
        for (uint32_t o = 0; o < c.objects; ++o) c.identity[o] = static_cast<uint32_t>(o * hb + id_pos);
        std::map<uint32_t, uint32_t> pos;
        for (uint32_t k = 0; k < hb; ++k) pos[block_[k]] = k;
        c.compose = [this, hb, pos](uint32_t a, uint32_t b) -> int64_t {
            if (morphism_source(a) != morphism_target(b)) return -1;
            uint32_t h = conf_->multiply(morphism_arrow(a), morphism_arrow(b));
            return static_cast<int64_t>(morphism_source(b) * hb + pos.at(h));
        };
        return c;
    }

private:
    const ConfGroupoid* conf_;
    size_t m_;
    uint32_t x_;
    std::vector<uint32_t> block_;
    std::vector<uint32_t> target_object_;
    std::vector<uint32_t> morph_target_;
};

// For an arrow b : x -> x' (element e out of x), b* : x'\p -> x\p sends
// (c, f) to (c, f b) and h to h. Checks that b* and (b^-1)* are functors and
// mutually inverse on objects and morphisms.
inline bool verify_comma_invariance(const ConfGroupoid& conf, const CommaCategory& at_x, const CommaCategory& at_x2,
                                    uint32_t e) {
    uint32_t x2 = at_x2.base_object();
    if (conf.act(e, at_x.base_object()) != x2) throw InputError("b* needs an arrow from x to x'");
    uint32_t inv = conf.inverse(e);
    size_t objs = conf.element_count();
    size_t hb = at_x.block().size();
    // b* on objects and morphisms; (b^-1)* in the other direction.
    std::vector<uint32_t> fwd(objs), back(objs);
    for (uint32_t f = 0; f < objs; ++f) {
        fwd[f] = conf.multiply(f, e);
        back[f] = conf.multiply(f, inv);
        // (c, f) and its image have the same object c.
        if (conf.act(f, x2) != conf.act(fwd[f], at_x.base_object())) return false;
    }
    for (uint32_t f = 0; f < objs; ++f)
        if (back[fwd[f]] != f || fwd[back[f]] != f) return false;
    for (size_t mor = 0; mor < at_x2.morphism_count(); ++mor) {
        uint32_t s = at_x2.morphism_source(mor), t = at_x2.morphism_target(mor);
        size_t image = fwd[s] * hb + mor % hb;
        if (at_x.morphism_target(image) != fwd[t]) return false;
        size_t again = back[fwd[s]] * hb + image % hb;
        if (again != mor) return false;
    }
    return true;
}

inline bool verify_comma_invariance(const ConfGroupoid& conf, size_t m, uint32_t x, uint32_t e) {
    return verify_comma_invariance(conf, CommaCategory(conf, m, x), CommaCategory(conf, m, conf.act(e, x)), e);
}

struct CommaReport {
    size_t n = 0, m = 0;
    size_t base_objects = 0;
    size_t expected = 0;           // C(n, m)
    bool skeleta_ok = true;        // every skeleton discrete of the expected size
    size_t skeleton_size = 0;      // size seen (when there are objects)
    size_t invariance_checked = 0;
    bool invariance_ok = true;
};

inline CommaReport verify_comma(const FiniteGroup& g, size_t n, size_t m, bool invariance = true,
                                size_t capacity = 1'000'000) {
    ConfGroupoid conf(g, n, capacity);
    CommaReport rep;
    rep.n = n;
    rep.m = m;
    rep.base_objects = conf.object_count();
    size_t c = 1;
    for (size_t i = 1; i <= m; ++i) c = c * (n - m + i) / i;
    rep.expected = c;
    std::vector<CommaCategory> cats;
    cats.reserve(conf.object_count());
    for (uint32_t x = 0; x < conf.object_count(); ++x) {
        cats.emplace_back(conf, m, x);
        const CommaCategory& cc = cats.back();
        if (!cc.morphisms_valid()) rep.skeleta_ok = false;
        Skeleton s = skeleton(cc.as_category());
        rep.skeleton_size = s.representatives.size();
        if (!s.discrete || s.representatives.size() != c) rep.skeleta_ok = false;
    }
    if (invariance)
        for (uint32_t x = 0; x < conf.object_count(); ++x)
            for (uint32_t e = 0; e < conf.element_count(); ++e) {
                ++rep.invariance_checked;
                if (!verify_comma_invariance(conf, cats[x], cats[conf.act(e, x)], e)) rep.invariance_ok = false;
            }
    return rep;
}

} // namespace orbiconf
