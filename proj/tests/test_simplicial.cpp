#include <catch2/catch_amalgamated.hpp>

#include "orbiconf/simplicial.hpp"

#include <random>
#include <set>

using namespace orbiconf;

namespace {

SimplicialComplex boundary_tetrahedron() {
    return SimplicialComplex::from_facets(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex rp2_six() {
    return SimplicialComplex::from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                              {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

// Random complex on at most `nv` vertices from a few random facets.
SimplicialComplex random_complex(std::mt19937_64& rng, uint32_t nv, int facets, int max_dim) {
    std::uniform_int_distribution<uint32_t> vert(0, nv - 1);
    std::uniform_int_distribution<int> dim(0, max_dim);
    std::vector<Simplex> fs;
    for (uint32_t v = 0; v < nv; ++v) fs.push_back({v});
    for (int i = 0; i < facets; ++i) {
        std::set<uint32_t> s;
        int d = dim(rng);
        while (static_cast<int>(s.size()) < d + 1) s.insert(vert(rng));
        fs.emplace_back(s.begin(), s.end());
    }
    return SimplicialComplex::from_facets(nv, fs);
}

// Counts chains of nonempty proper subsets of {0..3} by length.
std::vector<size_t> flags_of_tetrahedron_boundary() {
    std::vector<unsigned> faces;
    for (unsigned m = 1; m < 15; ++m) faces.push_back(m);
    std::vector<size_t> counts(3, 0);
    auto sub = [](unsigned a, unsigned b) { return a != b && (a & b) == a; };
    for (unsigned a : faces) {
        ++counts[0];
        for (unsigned b : faces) {
            if (!sub(a, b)) continue;
            ++counts[1];
            for (unsigned c : faces)
                if (sub(b, c)) ++counts[2];
        }
    }
    return counts;
}

} // namespace

TEST_CASE("complexes are closed under faces and canonical") {
    auto k = SimplicialComplex::from_facets(5, {{2, 0, 1}, {1, 3}, {0, 1, 2}, {4}});
    CHECK(k.dimension() == 2);
    CHECK(k.f_vector() == std::vector<size_t>{5, 4, 1});
    CHECK(k.contains(Simplex{0, 2}));
    CHECK(!k.contains(Simplex{0, 3}));
    CHECK(k.facets().size() == 3);
}

TEST_CASE("barycentric subdivision examples") {
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    auto sd = barycentric_subdivide(edge);
    CHECK(sd.f_vector() == std::vector<size_t>{3, 2});
    auto sd_tet = barycentric_subdivide(boundary_tetrahedron());
    CHECK(sd_tet.f_vector() == flags_of_tetrahedron_boundary());
    CHECK(sd_tet.f_vector() == std::vector<size_t>{14, 36, 24});
    CHECK(barycentric_subdivide(SimplicialComplex::from_flat(0, {})).dimension() < 0);
}

TEST_CASE("order complexes of small posets") {
    CHECK(order_complex(Poset(2, {{0, 1}})).f_vector() == std::vector<size_t>{2, 1});
    CHECK(order_complex(Poset(2, {})).f_vector() == std::vector<size_t>{2});
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    CHECK(order_complex(face_poset(edge)).f_vector() == std::vector<size_t>{3, 2});
}

TEST_CASE("homology examples") {
    CHECK(homology(boundary_tetrahedron()).betti == std::vector<size_t>{1, 0, 1});
    auto z = homology(boundary_tetrahedron(), true);
    for (const auto& t : z.torsion) CHECK(t.empty());
    auto rp = homology(rp2_six(), true);
    CHECK(rp.betti == std::vector<size_t>{1, 0, 0});
    REQUIRE(rp.torsion.size() == 3);
    CHECK(rp.torsion[1] == std::vector<Integer>{Integer(2)});
    CHECK(homology(rp2_six()).betti == std::vector<size_t>{1, 0, 0});
    CHECK(homology(SimplicialComplex::from_facets(1, {{0}})).betti == std::vector<size_t>{1});
}

TEST_CASE("product triangulations") {
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    auto sq = product_complex(edge, 2);
    CHECK(sq.f_vector() == std::vector<size_t>{9, 16, 8});
    CHECK(sq.euler_characteristic() == 1);
    // Kunneth: S^2 x S^2.
    auto s2s2 = product_complex(boundary_tetrahedron(), 2);
    CHECK(homology(s2s2).betti == std::vector<size_t>{1, 0, 2, 0, 1});
    CHECK(boundary_squares_to_zero(s2s2.chain_complex<Integer>()));
    // n = 1 gives the barycentric subdivision on the same vertex ids.
    CHECK(product_complex(boundary_tetrahedron(), 1) == barycentric_subdivide(boundary_tetrahedron()));
    CHECK_THROWS_AS(product_complex(edge, 0), InputError);
}

TEST_CASE("full subcomplexes") {
    auto k = boundary_tetrahedron();
    CHECK(full_subcomplex(k, [](uint32_t) { return true; }) == k);
    CHECK(full_subcomplex(k, [](uint32_t) { return false; }).dimension() < 0);
    auto sd = barycentric_subdivision(k);
    auto upper = full_subcomplex(sd.complex, [&](uint32_t v) { return sd.carrier[v].size() >= 2; });
    CHECK(upper.used_vertices().size() == 10);
}

TEST_CASE("simplicial maps reject non-simplicial vertex maps and drop degenerate images") {
    auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
    auto two = SimplicialComplex::from_facets(2, {{0}, {1}});
    CHECK_THROWS_AS(SimplicialMap(edge, two, {0, 1}), InputError);
    SimplicialMap collapse(edge, edge, {0, 0});
    CHECK(collapse.chain_image<Integer>(1, 0).empty());
    SimplicialMap flip(edge, edge, {1, 0});
    auto img = flip.chain_image<Integer>(1, 0);
    REQUIRE(img.size() == 1);
    CHECK(img[0].value == Integer(-1));
}

TEST_CASE("random complexes: subdivision and products (seed 20240611)") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 25; ++trial) {
        auto k = random_complex(rng, 6, 4, 2);
        auto h = homology(k, true);
        CHECK(boundary_squares_to_zero(k.chain_complex<Integer>()));
        auto sd = barycentric_subdivide(k);
        CHECK(sd.euler_characteristic() == k.euler_characteristic());
        CHECK(homology(sd, true) == h);
        if (trial % 5 == 0) {
            auto p = product_complex(k, 2);
            CHECK(p.euler_characteristic() == k.euler_characteristic() * k.euler_characteristic());
            CHECK(boundary_squares_to_zero(p.chain_complex<Rational>()));
        }
    }
}

TEST_CASE("coordinate permutations are automorphisms of the product (seed 7)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto k = random_complex(rng, 4, 2, 2);
        uint64_t radix = k.size();
        auto p = product_complex(k, 3);
        // Vertex maps for the transposition (0 1) and the cycle (0 1 2).
        auto perm_map = [&](std::vector<size_t> sigma) {
            std::vector<uint32_t> m(p.vertex_count());
            for (uint32_t code = 0; code < p.vertex_count(); ++code) {
                auto t = decode_tuple(code, radix, 3);
                std::vector<uint32_t> u(3);
                for (size_t i = 0; i < 3; ++i) u[sigma[i]] = t[i];
                m[code] = static_cast<uint32_t>(encode_tuple(u, radix));
            }
            return m;
        };
        auto a = perm_map({1, 0, 2}), b = perm_map({1, 2, 0});
        SimplicialMap ma(p, p, a), mb(p, p, b);
        // (0 1) o (0 1 2) computed on vertices equals the composite permutation's map.
        std::vector<uint32_t> ab(p.vertex_count());
        for (uint32_t v = 0; v < p.vertex_count(); ++v) ab[v] = a[b[v]];
        CHECK(ab == perm_map({0, 2, 1}));
        std::vector<uint32_t> aa(p.vertex_count());
        for (uint32_t v = 0; v < p.vertex_count(); ++v) aa[v] = a[a[v]];
        std::vector<uint32_t> id(p.vertex_count());
        std::iota(id.begin(), id.end(), 0u);
        CHECK(aa == id);
    }
}
