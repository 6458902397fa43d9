#include <catch2/catch_amalgamated.hpp>

#include "orbiconf/config.hpp"
#include "support.hpp"

using namespace orbiconf;
using namespace orbiconf::test;

namespace {

std::vector<size_t> trimmed(std::vector<size_t> b) {
    while (!b.empty() && b.back() == 0) b.pop_back();
    return b;
}

std::vector<size_t> betti(const HomologyReport& r) { return trimmed(r.betti); }

// Trivial-isotypic homology of the triangulated deleted product: a model
// independent of the cellular one used by conf_homology.
std::vector<size_t> triangulated_betti(const GlobalQuotientOrbifold& x, size_t n) {
    auto dp = deleted_product(x, n);
    return trimmed(isotypic_homology(dp.action, restrict_character(WreathCharacter{}, dp.elements)).betti);
}

// Generalized binomial C(c, n) = c (c-1) ... (c-n+1) / n!.
long binomial_of(long c, long n) {
    long num = 1, den = 1;
    for (long i = 0; i < n; ++i) {
        num *= c - i;
        den *= i + 1;
    }
    return num / den;
}

} // namespace

TEST_CASE("deleted product examples") {
    auto x = football(1);
    auto dp1 = deleted_product(x, 1);
    CHECK(dp1.action.complex() == barycentric_subdivide(x.complex()));
    auto pair = SimplicialComplex::from_facets(2, {{0}, {1}});
    GlobalQuotientOrbifold swapped(pair, cyclic(2, {1, 0}), 0);
    CHECK(deleted_product(swapped, 2).action.complex().dimension() < 0);
    auto three = SimplicialComplex::from_facets(3, {{0}, {1}, {2}});
    GlobalQuotientOrbifold pts(three, FiniteGroup::trivial(3), 0);
    CHECK(deleted_product(pts, 2).action.complex().f_vector() == std::vector<size_t>{6});
    auto dp0 = deleted_product(pts, 0);
    CHECK(dp0.action.complex().f_vector() == std::vector<size_t>{1});
    CHECK_THROWS_AS(deleted_product(x, 3, 1000), CapacityError);
}

TEST_CASE("deleted products are invariant and orbit-disjoint") {
    for (auto* make : {+[] { return disk(1); }, +[] { return sphere(0); }}) {
        auto x = make();
        auto dp = deleted_product(x, 2);
        // The validating constructor checks every group element is an automorphism.
        CHECK_NOTHROW(ComplexAction(dp.action.complex(), dp.action.group()));
        SimplexOrbits orbits(x.working());
        uint64_t radix = x.complex().size();
        for (uint32_t v : dp.action.complex().used_vertices())
            CHECK(orbit_disjoint(orbits, decode_tuple(v, radix, 2)));
    }
}

TEST_CASE("conf_homology examples") {
    auto s2 = conf_homology(sphere(0), 2, Coefficients::integral);
    CHECK(s2.betti == std::vector<size_t>{1, 0, 0, 0, 0});
    CHECK(s2.torsion[1] == std::vector<Integer>{Integer(2)});
    CHECK(betti(conf_homology(disk(1), 2)) == std::vector<size_t>{1, 1});
    CHECK(betti(conf_homology(football(1), 1)) == std::vector<size_t>{1, 0, 1});
    CHECK_THROWS_AS(conf_homology(football(1), 1, Coefficients::integral), InputError);
    // Sign-twisted: H_*(Conf_2(disk); Q^sign) vanishes (rationally Conf_2 ~ S^1 ~ UConf_2).
    auto sign = conf_homology(disk(1), 2, Coefficients::character, WreathCharacter{"sign", 1, {}});
    CHECK(std::all_of(sign.betti.begin(), sign.betti.end(), [](size_t b) { return b == 0; }));
}

TEST_CASE("cellular and triangulated models agree") {
    CHECK(betti(conf_homology(disk(1), 2)) == triangulated_betti(disk(1), 2));
    CHECK(betti(conf_homology(sphere(0), 2)) == triangulated_betti(sphere(0), 2));
    CHECK(betti(conf_homology(sphere(0), 1)) == triangulated_betti(sphere(0), 1));
    CHECK(betti(conf_homology(football(1), 1)) == triangulated_betti(football(1), 1));
}

TEST_CASE("ordered and unordered views agree through the quotient complex") {
    auto dp = deleted_product(disk(1), 2);
    REQUIRE(is_regular_action(dp.action));
    REQUIRE(is_free_action(dp.action));
    auto q = homology(quotient_complex(dp.action), true);
    auto c = conf_homology(disk(1), 2, Coefficients::integral);
    CHECK(q.betti == std::vector<size_t>(c.betti.begin(), c.betti.begin() + q.betti.size()));
    CHECK(q.torsion == std::vector<std::vector<Integer>>(c.torsion.begin(), c.torsion.begin() + q.torsion.size()));
}

TEST_CASE("subdivision stability on small cases") {
    CHECK(betti(conf_homology(disk(1), 2)) == betti(conf_homology(disk(2), 2)));
    CHECK(betti(conf_homology(sphere(0), 2)) == betti(conf_homology(sphere(1), 2)));
    CHECK(betti(conf_homology(football(1), 1)) == betti(conf_homology(football(2), 1)));
    CHECK(betti(conf_homology(cone(1), 2, Coefficients::rational, {}, 1)) ==
          betti(conf_homology(cone(2), 2, Coefficients::rational, {}, 1)));
}

TEST_CASE("strata") {
    auto s = sphere(0);
    CHECK(stratum_model(s, 2, 0).rational_homology() == conf_homology(s, 2));
    auto f = football(1);
    CHECK(betti(stratum_model(f, 1, 1).rational_homology()) == std::vector<size_t>{2});
    CHECK(betti(stratum_model(f, 2, 2).rational_homology()) == std::vector<size_t>{1});
    CHECK(betti(stratum_model(f, 2, 1).rational_homology()) == std::vector<size_t>{2, 2});
    CHECK_THROWS_AS(stratum_model(s, 2, 1), InputError);
    // One named component of the complement gives the same homology.
    REQUIRE(f.complement_components().size() == 1);
    for (size_t n = 1; n <= 2; ++n)
        CHECK(stratum_model(f, n, 0, 0).rational_homology() == stratum_model(f, n, 0).rational_homology());
    CHECK_THROWS_AS(stratum_model(f, 1, 0, 3), InputError);
}

TEST_CASE("compact-support pairs") {
    auto s = sphere(0);
    auto p1 = compact_support_pair(s, 1);
    CHECK(p1.closed_part().dimension() < 0);
    CHECK(p1.relative_cohomology(WreathCharacter{}).betti == std::vector<size_t>{1, 0, 1});
    // Ordered view of n = 2: forget the group.
    auto p2 = compact_support_pair(s, 2);
    auto plain = ComplexAction::trivial(p2.ambient().complex());
    auto ordered = isotypic_chain_complex(plain, Character::trivial(plain.group()),
                                          [&](std::span<const uint32_t> x) { return p2.in_closed_part(x); });
    auto rel = rational_homology(ordered.chains);
    REQUIRE(rel.betti.size() == 5);
    CHECK(rel.betti[4] == 1);
    CHECK_THROWS_AS(compact_support_pair(disk(1), 1), InputError);
    // Two disjoint triangles: chi_c of ordered and unordered pairs of distinct points.
    auto two = SimplicialComplex::from_facets(6, {{0, 1, 2}, {3, 4, 5}});
    CompactSupportPair pair(ComplexAction::trivial(two), 2);
    CHECK(pair.euler_characteristic(WreathCharacter{}) == 1);
    auto amb = ComplexAction::trivial(pair.ambient().complex());
    long euler_ordered = two.euler_characteristic() * two.euler_characteristic() - two.euler_characteristic();
    auto cells = isotypic_chain_complex(amb, Character::trivial(amb.group()),
                                        [&](std::span<const uint32_t> x) { return pair.in_closed_part(x); });
    long e = 0;
    for (size_t d = 0; d < cells.chains.dims.size(); ++d) e += (d % 2 ? -1L : 1L) * long(cells.chains.dims[d]);
    CHECK(e == euler_ordered);
}

TEST_CASE("chi_c over strata") {
    // Trivial group: one stratum, and chi_c(UConf_n(S^2)) = C(2, n).
    for (size_t n = 1; n <= 2; ++n) {
        auto r = chi_c_report(sphere(0), n);
        CHECK(r.total == binomial_of(2, long(n)));
        CHECK(r.strata[0] == r.total);
        CHECK(r.additive());
    }
    // Football: the coarse space is S^2 with two cone points.
    auto r1 = chi_c_report(football(1), 1);
    CHECK(r1.total == 2);
    CHECK(r1.strata == std::vector<long>{0, 2});
    CHECK(r1.additive());
    auto r2 = chi_c_report(football(1), 2);
    // C_{2,0}: two points on a cylinder, C_{2,1}: one on it and one pole, C_{2,2}: both poles.
    CHECK(r2.strata == std::vector<long>{binomial_of(0, 2), 0 * 2, binomial_of(2, 2)});
    CHECK(r2.total == binomial_of(2, 2));
    CHECK(r2.additive());
}
