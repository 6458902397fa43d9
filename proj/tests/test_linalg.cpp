#include <catch2/catch_amalgamated.hpp>

#include "orbiconf/chain.hpp"

#include <random>

using namespace orbiconf;

namespace {

SparseMatrix<Integer> int_matrix(std::vector<std::vector<int>> rows) {
    std::vector<std::vector<Integer>> d;
    for (auto& r : rows) d.emplace_back(r.begin(), r.end());
    return SparseMatrix<Integer>::from_dense(d);
}

SparseMatrix<Rational> rat_matrix(std::vector<std::vector<int>> rows) {
    return convert<Rational>(int_matrix(std::move(rows)));
}

SparseMatrix<Integer> random_matrix(std::mt19937_64& rng, int rows, int cols, int range, double density) {
    std::uniform_real_distribution<double> coin(0, 1);
    std::uniform_int_distribution<int> val(-range, range);
    std::vector<std::vector<Integer>> d(rows, std::vector<Integer>(cols, Integer(0)));
    for (auto& r : d)
        for (auto& x : r)
            if (coin(rng) < density) x = Integer(val(rng));
    return SparseMatrix<Integer>::from_dense(d);
}

// Dense fraction-free rank, kept deliberately naive as an oracle.
size_t naive_rank(std::vector<std::vector<Rational>> m) {
    size_t rank = 0, rows = m.size(), cols = rows ? m[0].size() : 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c].is_zero()) continue;
            Rational f = m[i][c] / m[rank][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("exact scalars overflow into big integers") {
    Integer big(int64_t(1) << 62);
    Integer sq = big * big;
    CHECK(sq / big == big);
    CHECK((sq - sq).is_zero());
    Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    Rational huge = Rational(Integer(sq)) / Rational(3);
    CHECK(huge * Rational(3) == Rational(Integer(sq)));
    CHECK(!huge.is_integer());
    CHECK(gcd(Integer(12), Integer(-18)) == Integer(6));
}

TEST_CASE("rank examples") {
    CHECK(rank_rational(SparseMatrix<Rational>(4, 3)) == 0);
    CHECK(rank_rational(SparseMatrix<Rational>::identity(5)) == 5);
    CHECK(rank_rational(rat_matrix({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(SparseMatrix<Rational>::identity(4)).empty());
    CHECK(kernel_basis(SparseMatrix<Rational>(2, 3)).size() == 3);
    auto k = kernel_basis(rat_matrix({{1, 1, 0}}));
    CHECK(k.size() == 2);
}

TEST_CASE("smith normal form examples") {
    auto d = smith_normal_form(int_matrix({{2, 0}, {0, 3}}));
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0] == Integer(1));
    CHECK(d.factors[1] == Integer(6));
    auto id = smith_normal_form(SparseMatrix<Integer>::identity(4));
    CHECK(id.factors == std::vector<Integer>(4, Integer(1)));
    auto z = smith_normal_form(int_matrix({{0}}));
    CHECK(z.rank == 0);
    CHECK(z.factors.empty());
}

TEST_CASE("smith transforms reproduce the diagonal") {
    auto a = int_matrix({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto sf = smith_normal_form(a, true);
    REQUIRE(sf.left);
    REQUIRE(sf.right);
    auto diag = (*sf.left) * a * (*sf.right);
    CHECK(sf.factors == std::vector<Integer>{Integer(2), Integer(6), Integer(12)});
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) CHECK(diag.at(i, j) == (i == j ? sf.factors[i] : Integer(0)));
}

TEST_CASE("random matrices: rank, kernel and smith agree") {
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 300; ++trial) {
        int rows = 1 + int(rng() % 9), cols = 1 + int(rng() % 9);
        auto a = random_matrix(rng, rows, cols, trial % 3 == 0 ? 1 : 5, 0.2 + 0.1 * (trial % 6));
        auto q = convert<Rational>(a);
        size_t r = rank_rational(q);
        CHECK(r == naive_rank(q.to_dense()));
        auto sf = smith_normal_form(a);
        CHECK(sf.rank == r);
        for (size_t i = 0; i + 1 < sf.factors.size(); ++i)
            CHECK((sf.factors[i + 1] % sf.factors[i]).is_zero());
        auto full = smith_normal_form(a, true);
        CHECK(full.factors == sf.factors);
        auto ker = kernel_basis(q);
        CHECK(ker.size() == size_t(cols) - r);
        for (const auto& k : ker) CHECK(q.apply(k).empty());
    }
}

TEST_CASE("homology of a hollow triangle with bases") {
    // vertices 0,1,2; edges 01,02,12
    ChainComplex<Rational> c;
    c.dims = {3, 3};
    c.boundary = {std::vector<SparseVec<Rational>>(3),
                  {{{0, Rational(-1)}, {1, Rational(1)}},
                   {{0, Rational(-1)}, {2, Rational(1)}},
                   {{1, Rational(-1)}, {2, Rational(1)}}}};
    auto rep = rational_homology(c);
    CHECK(rep.betti == std::vector<size_t>{1, 1});
    HomologyBasis hb(c);
    CHECK(hb.betti(0) == 1);
    CHECK(hb.betti(1) == 1);
    auto z = hb.representative(1, 0);
    CHECK(c.boundary_matrix(1).apply(z).empty());
    auto coords = hb.class_of(1, z);
    CHECK(coords == std::vector<Rational>{Rational(1)});
    // Every vertex is homologous to every other.
    auto v0 = hb.class_of(0, {{0, Rational(1)}});
    auto v2 = hb.class_of(0, {{2, Rational(1)}});
    CHECK(v0 == v2);
}
