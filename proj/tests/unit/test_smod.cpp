#include "oracle.hpp"
#include "random_objects.hpp"

#include "microwrap/errors.hpp"
#include "microwrap/smod.hpp"

#include <doctest.h>

using namespace microwrap;

namespace {

HomologyProfile z_in(int degree) {
    return HomologyProfile({{degree, HomologyGroup{1, {}}}});
}

StratSpace unit_line() {
    return StratSpace::line({0, 1});
}

std::vector<StratSpace> test_spaces() {
    return {StratSpace::line({0}), StratSpace::line({0, 1}), StratSpace::line({0, 1, 2}),
            StratSpace::circle({0}, 1), StratSpace::circle({0, 1, 2}, 3)};
}

ConstructibleSet strata(const StratSpace& s, std::vector<std::size_t> list) {
    return ConstructibleSet::from_strata(s, list);
}

std::vector<ConstructibleSet> open_sets(const StratSpace& s) {
    std::vector<ConstructibleSet> out;
    const std::size_t n = s.num_strata();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<bool> m(n);
        for (std::size_t i = 0; i < n; ++i)
            m[i] = (mask >> i) & 1;
        if (is_open(s, m))
            out.emplace_back(s, m, true);
    }
    return out;
}

} // namespace

TEST_SUITE("smod") {

TEST_CASE("representable examples") {
    StratSpace line = unit_line();
    SModule p = representable(line, 1);
    CHECK(p.value(0) == ChainComplex::unit());
    CHECK(p.value(1) == ChainComplex::unit());
    CHECK(p.value(2) == ChainComplex::unit());
    CHECK(p.value(3).is_zero());
    CHECK(p.generization(0, Side::left) == ChainMap::identity(ChainComplex::unit()));
    CHECK(p.generization(0, Side::right) == ChainMap::identity(ChainComplex::unit()));
    CHECK(p == indicator_open(line, star(line, 1)));

    SModule pe = representable(line, 2);
    CHECK(pe == indicator_open(line, strata(line, {2})));

    // on a one-vertex circle the edge is reached twice from the vertex
    StratSpace one = StratSpace::circle({0}, 1);
    SModule pv = representable(one, 0);
    CHECK(pv.value(1).rank(0) == 2);
    CHECK(homology(rhom(pv, indicator_open(one, ConstructibleSet::whole(one)))) == z_in(0));
}

TEST_CASE("indicator examples") {
    StratSpace line = unit_line();
    CHECK(indicator_open(line, star(line, 3)) == representable(line, 3));
    SModule whole = indicator_open(line, ConstructibleSet::whole(line));
    for (std::size_t s = 0; s < 5; ++s)
        CHECK(whole.value(s) == ChainComplex::unit());
    CHECK_THROWS_AS(indicator_open(line, strata(line, {1})), SpaceError);

    SModule sky = indicator_locally_closed(line, strata(line, {1}));
    CHECK(sky.value(1) == ChainComplex::unit());
    CHECK(sky.value(0).is_zero());
    CHECK(sky.generization(0, Side::left).is_zero());

    SModule closed = indicator_locally_closed(line, strata(line, {1, 2, 3}));
    CHECK(closed.value(2) == ChainComplex::unit());
    CHECK(closed.generization(0, Side::right) == ChainMap::identity(ChainComplex::unit()));
    CHECK(closed.generization(0, Side::left).is_zero());

    // excision: cone(P_left ⊕ P_right → P_v) has the stalks of the skyscraper
    std::vector<SModule> edges{representable(line, 0), representable(line, 2)};
    SModule pv = representable(line, 1);
    SModuleMap m = compose(indicator_map(edges[0], pv), summand_projection(edges, 0));
    SModuleMap m2 = compose(indicator_map(edges[1], pv), summand_projection(edges, 1));
    SModule c = cone_smod(m + m2);
    for (std::size_t s = 0; s < line.num_strata(); ++s)
        CHECK(homology(c.value(s)) == homology(sky.value(s)));
}

TEST_CASE("rhom examples") {
    StratSpace line = unit_line();
    SModule closed = indicator_locally_closed(line, strata(line, {1, 2, 3}));
    SModule open = indicator_open(line, strata(line, {2}));
    CHECK(homology(rhom(closed, open)) == z_in(1));
    CHECK(homology(rhom(open, closed)) == z_in(0));
    CHECK_THROWS_AS(rhom(open, SModule::zero(StratSpace::line({0}))), ModuleError);
}

TEST_CASE("sections examples") {
    StratSpace circle = StratSpace::circle({0, 1, 2}, 3);
    SModule constant = indicator_open(circle, ConstructibleSet::whole(circle));
    HomologyProfile circle_h({{0, HomologyGroup{1, {}}}, {1, HomologyGroup{1, {}}}});
    CHECK(homology(sections(ConstructibleSet::whole(circle), constant)) == circle_h);
    CHECK(sections(ConstructibleSet::empty(circle), constant).is_zero());
    CHECK_THROWS_AS(sections(strata(circle, {0}), constant), SpaceError);

    std::mt19937 rng(29);
    for (const auto& s : test_spaces()) {
        SModule f = oracle::random_smodule(rng, s, 2);
        for (std::size_t t = 0; t < s.num_strata(); ++t)
            CHECK(homology(sections(star(s, t), f)) == homology(f.value(t)));
    }
}

TEST_CASE("stable operations") {
    std::mt19937 rng(31);
    StratSpace line = unit_line();
    SModule f = oracle::random_smodule(rng, line, 2);
    SModule c = cone_smod(SModuleMap::identity(f));
    for (const auto& v : c.values())
        CHECK(is_acyclic(v));
    for (std::size_t s = 0; s < line.num_strata(); ++s)
        CHECK(shift_smod(f, 3).value(s) == shift(f.value(s), 3));

    ConstructibleSet u = strata(line, {2});
    ConstructibleSet v = star(line, 1);
    SModuleMap i = indicator_map(indicator_open(line, u), indicator_open(line, v));
    SModule q = cone_smod(i);
    for (std::size_t s = 0; s < line.num_strata(); ++s) {
        bool in_difference = v.contains(s) && !u.contains(s);
        CHECK(is_acyclic(q.value(s)) == !in_difference);
    }
    CHECK(compose(cone_projection(i), cone_inclusion(i)) ==
          SModuleMap::zero(i.target(), shift_smod(i.source(), 1)));
}

TEST_CASE("module map validation") {
    StratSpace line = unit_line();
    SModule sky = indicator_locally_closed(line, strata(line, {1}));
    SModule pv = representable(line, 1);
    // ℤ_{v} → ℤ_{star v} identity at v is not a strict map
    CHECK_THROWS_AS(indicator_map(sky, pv), ModuleError);
    CHECK_NOTHROW(indicator_map(pv, sky));
}

TEST_CASE("generation witness examples") {
    StratSpace line = unit_line();
    SModule p = representable(line, 3);
    Generation g = generation_witness(p);
    CHECK(g.witness.kind == GenerationWitness::Kind::leaf);
    CHECK(g.witness.stratum == 3);

    SModule sky = indicator_locally_closed(line, strata(line, {1}));
    Generation gs = generation_witness(sky);
    CHECK(gs.witness.describe(line) == "cone((P(-inf,0) + P(0,1)) -> (P{0}))");
    CHECK(is_quasi_iso(gs.augmentation));
    CHECK(evaluate(gs.witness, line) == gs.augmentation.source());

    std::mt19937 rng(37);
    int count = 0;
    for (int trial = 0; trial < 10; ++trial)
        for (const auto& s : test_spaces()) {
            SModule f = oracle::random_smodule(rng, s, 2);
            Generation w = generation_witness(f);
            CHECK(is_quasi_iso(w.augmentation));
            CHECK(w.augmentation.target() == f);
            ++count;
        }
    CHECK(count == 50);
}

TEST_CASE("property: Yoneda") {
    std::mt19937 rng(41);
    for (const auto& s : test_spaces())
        for (int trial = 0; trial < 3; ++trial) {
            SModule g = oracle::random_smodule(rng, s, 2);
            for (std::size_t t = 0; t < s.num_strata(); ++t)
                CHECK(homology(rhom(representable(s, t), g)) == homology(g.value(t)));
        }
}

TEST_CASE("property: rhom is invariant under generation witnesses") {
    std::mt19937 rng(43);
    for (const auto& s : test_spaces())
        for (int trial = 0; trial < 2; ++trial) {
            SModule f = oracle::random_smodule(rng, s, 2);
            SModule g = oracle::random_smodule(rng, s, 2);
            SModule fw = generation_witness(f).augmentation.source();
            SModule gw = generation_witness(g).augmentation.source();
            HomologyProfile h = homology(rhom(f, g));
            CHECK(homology(rhom(fw, g)) == h);
            CHECK(homology(rhom(f, gw)) == h);
            // the induced maps themselves are quasi-isomorphisms
            CHECK(is_quasi_iso(rhom_pre(generation_witness(f).augmentation, g)));
            CHECK(is_quasi_iso(rhom_post(f, generation_witness(g).augmentation)));
        }
}

TEST_CASE("property: excision long exact sequences") {
    std::mt19937 rng(47);
    for (const auto& s : {StratSpace::line({0, 1}), StratSpace::circle({0, 1}, 2)}) {
        auto opens = open_sets(s);
        SModule g = oracle::random_smodule(rng, s, 2);
        for (const auto& u : opens)
            for (const auto& v : opens) {
                bool nested = true;
                for (std::size_t t = 0; t < s.num_strata(); ++t)
                    if (u.contains(t) && !v.contains(t))
                        nested = false;
                if (!nested)
                    continue;
                std::vector<bool> diff(s.num_strata());
                for (std::size_t t = 0; t < s.num_strata(); ++t)
                    diff[t] = v.contains(t) && !u.contains(t);
                SModule zu = indicator_open(s, u), zv = indicator_open(s, v);
                SModule zd = indicator_locally_closed(s, ConstructibleSet(s, diff));
                SModuleMap i = indicator_map(zu, zv), q = indicator_map(zv, zd);
                ChainMap h = rhom_pre(q, g), r = rhom_pre(i, g);
                CHECK(is_quasi_iso(lift_to_fiber(h, r)));
            }
    }
}

TEST_CASE("property: sections turn disjoint unions into sums") {
    std::mt19937 rng(53);
    StratSpace s = StratSpace::line({0, 1, 2});
    SModule f = oracle::random_smodule(rng, s, 2);
    ConstructibleSet a = star(s, 1), b = star(s, 5);
    ConstructibleSet both = ConstructibleSet::from_strata(s, {0, 1, 2, 4, 5, 6}, true);
    CHECK(homology(sections(both, f)) ==
          homology(direct_sum(sections(a, f), sections(b, f))));
}

TEST_CASE("property: random module maps are strict") {
    std::mt19937 rng(59);
    for (const auto& s : test_spaces()) {
        SModule f = oracle::random_smodule(rng, s, 2);
        SModule g = oracle::random_smodule(rng, s, 2);
        CHECK_NOTHROW(oracle::random_smodule_map(rng, f, g));
    }
}

}  // TEST_SUITE
