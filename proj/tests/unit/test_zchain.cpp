#include "oracle.hpp"

#include "microwrap/errors.hpp"
#include "microwrap/zchain.hpp"

#include <doctest.h>

using namespace microwrap;

namespace {

HomologyProfile profile(std::map<int, HomologyGroup> g) {
    return HomologyProfile(std::move(g));
}

HomologyGroup free_group(std::size_t r) {
    return HomologyGroup{r, {}};
}

HomologyGroup torsion_group(std::initializer_list<long> factors) {
    HomologyGroup g;
    for (long f : factors)
        g.torsion.emplace_back(f);
    return g;
}

ChainMap scalar(long k) {
    return ChainMap::make(ChainComplex::unit(), ChainComplex::unit(), {{0, IntMatrix::from_rows({{k}})}});
}

// Rebuilds a complex through the validating constructor.
void check_dd(const ChainComplex& c) {
    if (c.is_zero())
        return;
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        ranks[n] = c.rank(n);
        diffs[n] = c.differential(n);
    }
    CHECK_NOTHROW(ChainComplex::make(ranks, diffs));
}

// Rebuilds a map through the validating constructor.
void check_map(const ChainMap& f) {
    std::map<int, IntMatrix> comps;
    const ChainComplex& s = f.source();
    if (!s.is_zero())
        for (int n = s.min_degree(); n <= s.max_degree(); ++n)
            comps[n] = f.component(n);
    CHECK_NOTHROW(ChainMap::make(f.source(), f.target(), comps));
}

ChainComplex circle_cochains() {
    // vertices v0 v1 v2, edges e_i = [v_i, v_{i+1}], (δf)(e_i) = f(v_{i+1}) − f(v_i)
    return ChainComplex::make({{0, 3}, {1, 3}},
                              {{0, IntMatrix::from_rows({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}})}});
}

} // namespace

TEST_SUITE("zchain") {

TEST_CASE("make_complex examples") {
    ChainComplex z = ChainComplex::make({{0, 1}});
    CHECK(z.rank(0) == 1);
    CHECK(z.rank(1) == 0);
    CHECK(z == ChainComplex::unit());

    ChainComplex two = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{2}})}});
    CHECK(two.differential(0) == IntMatrix::from_rows({{2}}));

    try {
        ChainComplex::make({{0, 1}, {1, 1}, {2, 1}},
                           {{0, IntMatrix::from_rows({{1}})}, {1, IntMatrix::from_rows({{1}})}});
        FAIL("d∘d ≠ 0 accepted");
    } catch (const ChainError& e) {
        CHECK(std::string(e.what()).find("degree 0") != std::string::npos);
    }
    CHECK_THROWS_AS(ChainComplex::make({{0, 2}, {1, 1}}, {{0, IntMatrix::from_rows({{1}})}}), ChainError);
}

TEST_CASE("chain map validation") {
    ChainComplex two = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{2}})}});
    CHECK_THROWS_AS(ChainMap::make(two, two, {{0, IntMatrix::from_rows({{1}})}}), ChainError);
    CHECK_NOTHROW(ChainMap::make(two, two, {{0, IntMatrix::from_rows({{3}})}, {1, IntMatrix::from_rows({{3}})}}));
}

TEST_CASE("shift examples") {
    ChainComplex s = shift(ChainComplex::unit(), 1);
    CHECK(s == ChainComplex::concentrated(-1));
    ChainComplex two = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{2}})}});
    CHECK(shift(two, 0) == two);
    CHECK(shift(shift(two, 1), -1) == two);
    CHECK(shift(two, 1).differential(-1) == IntMatrix::from_rows({{-2}}));
    CHECK(shift(two, 2).differential(-2) == IntMatrix::from_rows({{2}}));
}

TEST_CASE("cone examples") {
    CHECK(is_acyclic(cone(ChainMap::identity(ChainComplex::unit()))));
    CHECK(homology(cone(scalar(2))) == profile({{0, torsion_group({2})}}));

    ChainComplex c = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{3}})}});
    ChainComplex d = ChainComplex::concentrated(2, 2);
    HomologyProfile expected(homology(direct_sum(shift(c, 1), d)));
    CHECK(homology(cone(ChainMap::zero(c, d))) == expected);
    CHECK(expected == profile({{0, torsion_group({3})}, {2, free_group(2)}}));

    // canonical maps compose to zero
    ChainMap f = scalar(2);
    CHECK(compose(cone_projection(f), cone_inclusion(f)).is_zero());
    CHECK(compose(fiber_projection(f), fiber_inclusion(f)).is_zero());
    CHECK(fiber(f) == shift(cone(f), -1));
}

TEST_CASE("homology examples") {
    ChainComplex two = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{2}})}});
    HomologyProfile h = homology(two);
    CHECK(h.at(0).is_zero());
    CHECK(h.at(1) == torsion_group({2}));
    CHECK(homology(ChainComplex::unit()) == profile({{0, free_group(1)}}));

    ChainComplex circle = circle_cochains();
    CHECK(homology(circle) == profile({{0, free_group(1)}, {1, free_group(1)}}));
    CHECK(homology(circle) == oracle::homology_by_minors(circle));
    CHECK(homology(circle).to_string() == "H^0 = Z, H^1 = Z");
}

TEST_CASE("invariant factors are in divisibility order") {
    IntMatrix m = IntMatrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}});
    auto inv = smith_invariants(m);
    REQUIRE(inv.size() == 3);
    CHECK(inv[0] == 1);
    CHECK(inv[1] == 2);
    CHECK(inv[2] == 12);
    CHECK(inv == oracle::determinantal_invariants(m));
}

TEST_CASE("hom_complex examples") {
    CHECK(hom_complex(ChainComplex::unit(), ChainComplex::unit()) == ChainComplex::unit());

    ChainComplex hc = hom_complex(cone(scalar(2)), ChainComplex::unit());
    CHECK(homology(hc) == profile({{1, torsion_group({2})}}));
    CHECK(homology(hc) == oracle::homology_by_minors(hc));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ChainComplex c = oracle::random_complex(rng, -1, 3, 2, 2);
        ChainComplex d = oracle::random_complex(rng, 0, 2, 2, 2);
        for (int k : {-2, 1, 3})
            CHECK(homology(hom_complex(shift(c, k), d)) == homology(hom_complex(c, d)).reindexed(k));
    }
}

TEST_CASE("is_quasi_iso examples") {
    ChainComplex two = ChainComplex::make({{0, 1}, {1, 1}}, {{0, IntMatrix::from_rows({{2}})}});
    CHECK(is_quasi_iso(ChainMap::identity(two)));
    CHECK_FALSE(is_quasi_iso(ChainMap::zero(ChainComplex::unit(), ChainComplex::unit())));

    // ℤ[0] → (ℤ --1--> ℤ in degrees −1, 0) ⊕ ℤ[0], inclusion of the last summand
    ChainComplex contractible = cone(ChainMap::identity(ChainComplex::unit()));
    CHECK(is_acyclic(contractible));
    std::vector<ChainComplex> parts{contractible, ChainComplex::unit()};
    CHECK(is_quasi_iso(summand_inclusion(parts, 1)));
    CHECK_FALSE(is_quasi_iso(summand_inclusion(parts, 0)));
}

TEST_CASE("octahedral witness examples") {
    ChainMap id = ChainMap::identity(ChainComplex::unit());
    OctahedralWitness w = octahedral_witness(id, id);
    CHECK(w.certified);
    CHECK(is_acyclic(w.first.source()));
    CHECK(is_acyclic(w.second.target()));

    OctahedralWitness w23 = octahedral_witness(scalar(2), scalar(3));
    CHECK(w23.certified);
    CHECK(homology(w23.first.source()) == profile({{0, torsion_group({2})}}));
    CHECK(homology(w23.first.target()) == profile({{0, torsion_group({6})}}));
    CHECK(homology(w23.second.target()) == profile({{0, torsion_group({3})}}));

    OctahedralWitness w0 = octahedral_witness(scalar(5), scalar(0));
    CHECK(w0.certified);
    CHECK(homology(w0.first.target()) ==
          homology(direct_sum(shift(ChainComplex::unit(), 1), ChainComplex::unit())));

    CHECK_THROWS_AS(octahedral_witness(scalar(2), ChainMap::identity(circle_cochains())), ChainError);
}

TEST_CASE("property: constructed complexes satisfy d∘d = 0") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        ChainComplex c = oracle::random_complex(rng, -1, 3, 3, 3);
        ChainComplex d = oracle::random_complex(rng, 0, 3, 3, 3);
        ChainMap f = oracle::random_chain_map(rng, c, d);
        check_dd(c);
        check_dd(cone(f));
        check_dd(fiber(f));
        check_dd(hom_complex(c, d));
        check_dd(shift(c, 3));
    }
}

TEST_CASE("property: homology against the determinantal oracle and shift reindexing") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        ChainComplex c = oracle::random_complex(rng, -1, 3, 4, 3);
        HomologyProfile h = homology(c);
        CHECK(h == oracle::homology_by_minors(c));
        for (const auto& [n, g] : h.groups())
            for (std::size_t i = 1; i < g.torsion.size(); ++i)
                CHECK(g.torsion[i] % g.torsion[i - 1] == 0);
        int k = oracle::uniform(rng, -3, 3);
        CHECK(homology(shift(c, k)) == h.reindexed(-k));
    }
}

TEST_CASE("property: quasi-isomorphisms and the induced map on homology") {
    std::mt19937 rng(7);
    int qis = 0;
    for (int trial = 0; trial < 60; ++trial) {
        ChainComplex c = oracle::random_complex(rng, 0, 2, 3, 2);
        ChainComplex d = oracle::random_complex(rng, 0, 2, 3, 2);
        ChainMap f = oracle::random_chain_map(rng, c, d);
        bool q = is_quasi_iso(f);
        CHECK(q == oracle::homology_by_minors(cone(f)).is_zero());
        if (q) {
            ++qis;
            CHECK(homology(c) == homology(d));
        }
        // a chain map is a degree-0 cycle of the Hom complex
        ChainComplex h = hom_complex(c, d);
        if (!h.is_zero() && h.rank(0) > 0)
            CHECK((h.differential(0) * hom_element(f)).is_zero());
        CHECK(is_quasi_iso(ChainMap::identity(c)));
    }
    CHECK(qis > 0);
}

TEST_CASE("property: Hom functoriality matches composition") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        ChainComplex a = oracle::random_complex(rng, 0, 2, 2, 2);
        ChainComplex b = oracle::random_complex(rng, 0, 2, 2, 2);
        ChainComplex c = oracle::random_complex(rng, 0, 2, 2, 2);
        ChainMap f = oracle::random_chain_map(rng, a, b);
        ChainMap g = oracle::random_chain_map(rng, b, c);
        IntMatrix gf = hom_element(compose(g, f));
        ChainMap post = hom_post(a, g);
        ChainMap pre = hom_pre(f, c);
        if (post.source().rank(0) > 0)
            CHECK(post.component(0) * hom_element(f) == gf);
        if (pre.source().rank(0) > 0)
            CHECK(pre.component(0) * hom_element(g) == gf);
        check_map(post);
        check_map(pre);
    }
}

TEST_CASE("property: octahedral witness on random composable pairs") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        ChainComplex a = oracle::random_complex(rng, -1, 3, 2, 2);
        ChainComplex b = oracle::random_complex(rng, -1, 3, 2, 2);
        ChainComplex c = oracle::random_complex(rng, -1, 3, 2, 2);
        ChainMap f1 = oracle::random_chain_map(rng, a, b);
        ChainMap f2 = oracle::random_chain_map(rng, b, c);
        OctahedralWitness w = octahedral_witness(f1, f2);
        CHECK(w.certified);
        check_map(w.first);
        check_map(w.second);
        check_map(w.comparison);
    }
}

TEST_CASE("property: H^0 of Hom complexes against determinantal divisors") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        ChainComplex c = oracle::random_complex(rng, 0, 2, 2, 1);
        ChainComplex d = oracle::random_complex(rng, 0, 2, 2, 1);
        ChainComplex h = hom_complex(c, d);
        CHECK(homology(h).at(0) == oracle::homology_by_minors(h).at(0));
    }
}

}  // TEST_SUITE
