#include <catch2/catch_amalgamated.hpp>

#include "orbiconf/orbifold.hpp"

#include <random>

using namespace orbiconf;

namespace {

// Octahedron with antipodal pairs {0,1}, {2,3}, {4,5}.
SimplicialComplex octahedron() {
    std::vector<Simplex> fs;
    for (uint32_t a : {0u, 1u})
        for (uint32_t b : {2u, 3u})
            for (uint32_t c : {4u, 5u}) fs.push_back({a, b, c});
    return SimplicialComplex::from_facets(6, fs);
}

FiniteGroup z2(uint32_t degree, Perm gen) { return FiniteGroup::generated_by(degree, {std::move(gen)}); }

Character sign_character(const FiniteGroup& g) {
    // For a group of order 2 the non-trivial character.
    Character c{"sign", std::vector<int8_t>(g.order(), -1)};
    c.values[0] = 1;
    return c;
}

} // namespace

TEST_CASE("wreath product orders") {
    auto z = z2(2, {1, 0});
    CHECK(WreathProduct(z, 2).order() == 8);
    CHECK(WreathProduct(z, 2).elements().size() == 8);
    CHECK(WreathProduct(FiniteGroup::trivial(3), 4).order() == 24);
    auto z3 = FiniteGroup::generated_by(3, {{1, 2, 0}});
    CHECK(WreathProduct(z3, 2).order() == 18);
    CHECK_THROWS_AS(WreathProduct(z3, 8, {}, 1000), CapacityError);
}

TEST_CASE("wreath products are groups (seed 99)") {
    std::mt19937_64 rng(99);
    auto z3 = FiniteGroup::generated_by(3, {{1, 2, 0}});
    WreathProduct w(z3, 3);
    auto elems = w.elements();
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    for (int i = 0; i < 200; ++i) {
        const auto &a = elems[pick(rng)], &b = elems[pick(rng)], &c = elems[pick(rng)];
        CHECK(w.multiply(w.multiply(a, b), c) == w.multiply(a, w.multiply(b, c)));
        CHECK(w.multiply(a, w.inverse(a)) == w.identity());
        // The permutation representation is a homomorphism.
        CHECK(w.as_permutation(w.multiply(a, b)) == compose(w.as_permutation(a), w.as_permutation(b)));
    }
}

TEST_CASE("regular actions") {
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    CHECK(is_regular_action(ComplexAction::trivial(edge)));
    ComplexAction flip(edge, z2(2, {1, 0}));
    CHECK(!is_regular_action(flip));
    CHECK(is_regular_action(subdivide_action(flip)));
    CHECK_THROWS_AS(quotient_complex(flip), InputError);
}

TEST_CASE("quotient complexes") {
    auto oct = octahedron();
    CHECK(quotient_complex(ComplexAction::trivial(oct)) == oct);
    ComplexAction anti(oct, z2(6, {1, 0, 3, 2, 5, 4}));
    auto q = quotient_complex(subdivide_action(anti));
    auto h = homology(q, true);
    CHECK(h.betti == std::vector<size_t>{1, 0, 0});
    CHECK(h.torsion[1] == std::vector<Integer>{Integer(2)});
    auto two = SimplicialComplex::from_facets(6, {{0, 1, 2}, {3, 4, 5}});
    ComplexAction swap(two, z2(6, {3, 4, 5, 0, 1, 2}));
    CHECK(quotient_complex(swap).f_vector() == std::vector<size_t>{3, 3, 1});
}

TEST_CASE("isotypic chain complexes") {
    auto oct = octahedron();
    auto triv = ComplexAction::trivial(oct);
    auto full = isotypic_chain_complex(triv, Character::trivial(triv.group()));
    CHECK(full.chains.dims == std::vector<uint32_t>{6, 12, 8});
    ComplexAction anti(oct, z2(6, {1, 0, 3, 2, 5, 4}));
    CHECK(isotypic_homology(anti, Character::trivial(anti.group())).betti == std::vector<size_t>{1, 0, 0});
    CHECK(isotypic_homology(anti, sign_character(anti.group())).betti == std::vector<size_t>{0, 0, 1});
    auto pts = SimplicialComplex::from_facets(2, {{0}, {1}});
    ComplexAction swap(pts, z2(2, {1, 0}));
    CHECK(isotypic_chain_complex(swap, sign_character(swap.group())).chains.dims == std::vector<uint32_t>{1});
}

TEST_CASE("isotypic parts add up and match quotients for free regular actions") {
    auto oct = octahedron();
    std::vector<Perm> gens = {{1, 0, 3, 2, 5, 4}, {1, 0, 3, 2, 4, 5}, {0, 1, 3, 2, 4, 5}};
    for (const auto& gen : gens) {
        ComplexAction a = subdivide_action(ComplexAction(oct, z2(6, gen)));
        auto t = isotypic_homology(a, Character::trivial(a.group()));
        auto s = isotypic_homology(a, sign_character(a.group()));
        auto total = homology(a.complex());
        for (size_t k = 0; k < total.betti.size(); ++k) CHECK(t.betti[k] + s.betti[k] == total.betti[k]);
        auto eq = isotypic_chain_complex(a, sign_character(a.group()));
        CHECK(boundary_squares_to_zero(eq.chains));
        if (is_free_action(a)) CHECK(homology(quotient_complex(a)).betti == t.betti);
    }
}

TEST_CASE("relative isotypic cohomology") {
    auto tet = SimplicialComplex::from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    auto a = ComplexAction::trivial(tet);
    auto chi = Character::trivial(a.group());
    CHECK(relative_isotypic_cohomology(a, SimplicialComplex::from_flat(4, {}), chi).betti == std::vector<size_t>{1, 0, 1});
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    auto ends = SimplicialComplex::from_facets(2, {{0}, {1}});
    auto e = ComplexAction::trivial(edge);
    CHECK(relative_isotypic_cohomology(e, ends, Character::trivial(e.group())).betti == std::vector<size_t>{0, 1});
    auto disk = SimplicialComplex::from_facets(4, {{0, 1, 2}});
    CHECK(relative_isotypic_cohomology(a, disk, chi).betti == std::vector<size_t>{0, 0, 1});
    ComplexAction flip(edge, z2(2, {1, 0}));
    auto one_end = SimplicialComplex::from_facets(2, {{0}});
    CHECK_THROWS_AS(relative_isotypic_cohomology(flip, one_end, Character::trivial(flip.group())), InputError);
}

TEST_CASE("actions commute with the boundary") {
    ComplexAction a = subdivide_action(ComplexAction(octahedron(), z2(6, {1, 0, 3, 2, 4, 5})));
    const auto& k = a.complex();
    for (size_t g = 0; g < a.group().order(); ++g)
        for (int d = 1; d <= k.dimension(); ++d)
            for (size_t i = 0; i < k.count(d); ++i) {
                // g(boundary of s) and boundary of g(s), as signed face lists.
                auto [j, sign] = a.apply(g, d, i);
                std::map<size_t, int> lhs, rhs;
                auto s = k.simplex_vec(d, i);
                for (size_t w = 0; w < s.size(); ++w) {
                    Simplex f = s;
                    f.erase(f.begin() + w);
                    auto [fi, fs] = a.apply(g, d - 1, static_cast<size_t>(k.index_of(f)));
                    lhs[fi] += (w % 2 ? -1 : 1) * fs;
                }
                auto t = k.simplex_vec(d, j);
                for (size_t w = 0; w < t.size(); ++w) {
                    Simplex f = t;
                    f.erase(f.begin() + w);
                    rhs[static_cast<size_t>(k.index_of(f))] += (w % 2 ? -1 : 1) * sign;
                }
                CHECK(lhs == rhs);
            }
}

TEST_CASE("singular locus, ghosts and orientation") {
    GlobalQuotientOrbifold triv(octahedron(), FiniteGroup::trivial(6), 1);
    CHECK(triv.singular_vertices().empty());
    CHECK(triv.ghost_orbit(0).empty());
    CHECK(triv.orientation_character().is_trivial());

    GlobalQuotientOrbifold anti(octahedron(), z2(6, {1, 0, 3, 2, 5, 4}), 1);
    CHECK(anti.singular_vertices().empty());
    CHECK(anti.ghost_orbit(0) == std::vector<uint32_t>{1});
    CHECK(anti.orientation_signs() == std::vector<int8_t>{1, -1});

    GlobalQuotientOrbifold football(octahedron(), z2(6, {1, 0, 3, 2, 4, 5}), 1);
    CHECK(football.singular_vertices() == std::vector<uint32_t>{4, 5});
    CHECK(football.ghost_orbit(4).empty());
    CHECK(football.orientation_signs() == std::vector<int8_t>{1, 1});

    // Odd dimension: omega_n is the sign of the permutation.
    auto circle = SimplicialComplex::from_facets(3, {{0, 1}, {1, 2}, {0, 2}});
    GlobalQuotientOrbifold c(circle, FiniteGroup::trivial(3), 0);
    auto omega = c.orientation_character();
    WreathProduct w(c.group(), 3);
    for (const auto& e : w.elements()) CHECK(omega(e) == permutation_sign(e.pi));
}

TEST_CASE("omega_n is multiplicative and factors over blocks") {
    GlobalQuotientOrbifold anti(octahedron(), z2(6, {1, 0, 3, 2, 5, 4}), 1);
    auto omega = anti.orientation_character();
    for (size_t n = 1; n <= 4; ++n) CHECK(is_multiplicative(omega, WreathProduct(anti.group(), n)));
    for (size_t n = 1; n <= 5; ++n)
        for (size_t m = 0; m <= n; ++m) CHECK(block_factorization_holds(omega, anti.group(), n, m));
    // Elements swapping the two blocks are not in the block subgroup.
    WreathProduct w(anti.group(), 2);
    auto e = w.elements();
    CHECK_THROWS_AS(split_block_element(w.elements()[e.size() - 1], 1), InputError);
}

TEST_CASE("orbifold input validation") {
    auto disk = SimplicialComplex::from_facets(3, {{0, 1, 2}});
    CHECK_THROWS_AS(GlobalQuotientOrbifold(disk, FiniteGroup::trivial(3), 0, std::vector<uint32_t>{0, 1}), InputError);
    GlobalQuotientOrbifold ok(disk, FiniteGroup::trivial(3), 1, std::vector<uint32_t>{0, 1, 2}, StabilisationRequest{0, {}, {}});
    REQUIRE(ok.stabilisation());
    CHECK(ok.stabilisation()->collar);
    CHECK(!ok.closed());
    // Interior vertex (barycenter of the triangle) cannot carry a collar.
    uint32_t centre = static_cast<uint32_t>(disk.global_id(2, 0));
    CHECK_THROWS_AS(GlobalQuotientOrbifold(disk, FiniteGroup::trivial(3), 1, std::nullopt, StabilisationRequest{centre, {}, {}}),
                    InputError);
    CHECK_THROWS_AS(GlobalQuotientOrbifold(octahedron(), FiniteGroup::trivial(6), 0, std::nullopt, StabilisationRequest{0, {}, {}}),
                    InputError);
}
