// Small orbifolds shared by the tests; they mirror fixtures/*.json.
#pragma once

#include "orbiconf/orbifold.hpp"

namespace orbiconf::test {

// Octahedron with antipodal pairs {0,1}, {2,3}, {4,5}.
inline SimplicialComplex octahedron() {
    std::vector<Simplex> fs;
    for (uint32_t a : {0u, 1u})
        for (uint32_t b : {2u, 3u})
            for (uint32_t c : {4u, 5u}) fs.push_back({a, b, c});
    return SimplicialComplex::from_facets(6, fs);
}

inline SimplicialComplex hexagon_cone() {
    std::vector<Simplex> fs;
    for (uint32_t i = 1; i <= 6; ++i) fs.push_back({0, i, i % 6 + 1});
    return SimplicialComplex::from_facets(7, fs);
}

inline FiniteGroup cyclic(uint32_t degree, Perm gen) { return FiniteGroup::generated_by(degree, {std::move(gen)}); }

inline GlobalQuotientOrbifold disk(size_t r = 1) {
    return GlobalQuotientOrbifold(SimplicialComplex::from_facets(3, {{0, 1, 2}}), FiniteGroup::trivial(3), r, std::nullopt,
                                  StabilisationRequest{0, {}, {}});
}

inline GlobalQuotientOrbifold cone(size_t r = 1) {
    return GlobalQuotientOrbifold(hexagon_cone(), cyclic(7, {0, 3, 4, 5, 6, 1, 2}), r, std::nullopt,
                                  StabilisationRequest{1, {}, {}});
}

inline GlobalQuotientOrbifold sphere(size_t r = 0) {
    return GlobalQuotientOrbifold(octahedron(), FiniteGroup::trivial(6), r);
}

inline GlobalQuotientOrbifold football(size_t r = 1) {
    return GlobalQuotientOrbifold(octahedron(), cyclic(6, {1, 0, 3, 2, 4, 5}), r);
}

inline GlobalQuotientOrbifold antipodal(size_t r = 1) {
    return GlobalQuotientOrbifold(octahedron(), cyclic(6, {1, 0, 3, 2, 5, 4}), r);
}

} // namespace orbiconf::test
