#include "random_objects.hpp"

#include "oracle.hpp"

#include "microwrap/errors.hpp"

#include <map>

namespace oracle {

using namespace microwrap;

SModule random_smodule(std::mt19937& rng, const StratSpace& space, std::size_t max_rank, int bound) {
    std::vector<ChainComplex> values;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        values.push_back(random_complex(rng, 0, 2, max_rank, bound));
    std::vector<ChainMap> maps;
    for (std::size_t v = 0; v < space.num_vertices(); ++v)
        for (Side side : {Side::left, Side::right})
            maps.push_back(random_chain_map(rng, values[space.vertex_stratum(v)],
                                            values[space.edge_at(v, side)], 1));
    return SModule::make(space, std::move(values), std::move(maps));
}

SModuleMap random_smodule_map(std::mt19937& rng, const SModule& source, const SModule& target, int coeff_bound) {
    const StratSpace& space = source.base();
    const std::size_t ns = space.num_strata();
    int lo = 0, hi = -1;
    bool any = false;
    for (std::size_t s = 0; s < ns; ++s)
        for (const ChainComplex* c : {&source.value(s), &target.value(s)})
            if (!c->is_zero()) {
                lo = any ? std::min(lo, c->min_degree()) : c->min_degree();
                hi = any ? std::max(hi, c->max_degree()) : c->max_degree();
                any = true;
            }
    if (!any)
        return SModuleMap::zero(source, target);

    std::map<std::pair<std::size_t, int>, std::size_t> offset;
    std::size_t unknowns = 0;
    for (std::size_t s = 0; s < ns; ++s)
        for (int n = lo; n <= hi; ++n) {
            offset[{s, n}] = unknowns;
            unknowns += target.value(s).rank(n) * source.value(s).rank(n);
        }
    auto var = [&](std::size_t s, int n, std::size_t i, std::size_t j) {
        return offset[{s, n}] + i * source.value(s).rank(n) + j;
    };

    std::vector<std::vector<Integer>> rows;
    // Each equation reads L X − X' R = 0 for blocks X, X' of unknowns.
    auto add_equation = [&](const IntMatrix& l, std::size_t xs, int xn, const IntMatrix& r, std::size_t ys,
                            int yn) {
        std::size_t out_rows = l.rows(), out_cols = r.cols();
        for (std::size_t i = 0; i < out_rows; ++i)
            for (std::size_t j = 0; j < out_cols; ++j) {
                std::vector<Integer> row(unknowns);
                for (std::size_t k = 0; k < l.cols(); ++k)
                    if (l(i, k) != 0)
                        row[var(xs, xn, k, j)] += l(i, k);
                for (std::size_t k = 0; k < r.rows(); ++k)
                    if (r(k, j) != 0)
                        row[var(ys, yn, i, k)] -= r(k, j);
                rows.push_back(std::move(row));
            }
    };
    for (std::size_t s = 0; s < ns; ++s)
        for (int n = lo; n < hi; ++n)
            add_equation(target.value(s).differential(n), s, n, source.value(s).differential(n), s, n + 1);
    for (const Arrow& a : source.arrows()) {
        std::size_t v = space.vertex_stratum(a.vertex), e = source.arrow_target(a);
        for (int n = lo; n <= hi; ++n)
            add_equation(target.generization(a).component(n), v, n, source.generization(a).component(n), e, n);
    }
    IntMatrix basis = integer_kernel(IntMatrix::from_rows(rows, unknowns));
    std::vector<Integer> x(unknowns);
    for (std::size_t b = 0; b < basis.cols(); ++b) {
        int c = uniform(rng, -coeff_bound, coeff_bound);
        for (std::size_t i = 0; i < unknowns; ++i)
            x[i] += c * basis(i, b);
    }
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < ns; ++s) {
        std::map<int, IntMatrix> m;
        for (int n = lo; n <= hi; ++n) {
            IntMatrix block(target.value(s).rank(n), source.value(s).rank(n));
            for (std::size_t i = 0; i < block.rows(); ++i)
                for (std::size_t j = 0; j < block.cols(); ++j)
                    block(i, j) = x[var(s, n, i, j)];
            m[n] = block;
        }
        comps.push_back(ChainMap::make(source.value(s), target.value(s), m));
    }
    return SModuleMap::make(source, target, std::move(comps));
}

} // namespace oracle

namespace oracle {

using namespace microwrap;

ChainComplex random_coefficient(std::mt19937& rng, bool torsion) {
    switch (uniform(rng, 0, torsion ? 3 : 2)) {
    case 0:
        return ChainComplex::unit();
    case 1:
        return ChainComplex::concentrated(-1);
    case 2:
        return ChainComplex::concentrated(0, 2);
    default:
        return ChainComplex::make({{-1, 1}, {0, 1}}, {{-1, IntMatrix::from_rows({{2}})}});
    }
}

IntervalSheaf random_interval_sheaf(std::mt19937& rng, const Ambient& ambient, const std::vector<Rational>& grid,
                                    std::size_t max_generators) {
    std::vector<IntervalGenerator> gens;
    std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_generators)));
    const int last = static_cast<int>(grid.size()) - 1;
    while (gens.size() < n) {
        ChainComplex c = random_coefficient(rng);
        if (ambient.circle && uniform(rng, 0, 9) == 0) {
            gens.push_back(IntervalGenerator::whole_circle(c));
            continue;
        }
        int a = uniform(rng, 0, last), b = uniform(rng, 0, last);
        if (a > b)
            std::swap(a, b);
        if (a == b) {
            gens.push_back(IntervalGenerator::skyscraper(grid[a], c));
            continue;
        }
        Endpoint l{Endpoint::Kind::finite, grid[a], uniform(rng, 0, 1) == 1};
        Endpoint r{Endpoint::Kind::finite, grid[b], uniform(rng, 0, 1) == 1};
        if (!ambient.circle && uniform(rng, 0, 5) == 0)
            l = Endpoint::minus_infinity();
        if (!ambient.circle && uniform(rng, 0, 5) == 0)
            r = Endpoint::plus_infinity();
        gens.push_back(IntervalGenerator::make(l, r, c));
    }
    return IntervalSheaf::make(ambient, std::move(gens));
}

std::vector<IntervalSheaf> sh_lambda_family(const WrapStops& stops) {
    const Ambient& amb = stops.ambient();
    std::vector<Endpoint> lefts, rights;
    for (const auto& p : stops.points()) {
        // left open ↦ −, left closed ↦ +; right open ↦ +, right closed ↦ −
        lefts.push_back({Endpoint::Kind::finite, p.position, p.codirection == Codirection::plus});
        rights.push_back({Endpoint::Kind::finite, p.position, p.codirection == Codirection::minus});
    }
    std::vector<IntervalSheaf> out;
    auto add = [&](Endpoint l, Endpoint r) {
        try {
            out.push_back(IntervalSheaf::make(amb, {IntervalGenerator::make(l, r)}));
        } catch (const WrapError&) {
        }
    };
    if (amb.circle) {
        out.push_back(IntervalSheaf::make(amb, {IntervalGenerator::whole_circle()}));
        for (const auto& l : lefts)
            for (auto r : rights) {
                if (r.position < l.position || (r.position == l.position && !(l.closed && r.closed)))
                    r.position += amb.perimeter;
                add(l, r);
            }
    } else {
        lefts.push_back(Endpoint::minus_infinity());
        rights.push_back(Endpoint::plus_infinity());
        for (const auto& l : lefts)
            for (const auto& r : rights)
                add(l, r);
    }
    return out;
}

HomologyProfile hom_profile(const IntervalSheaf& g, const IntervalSheaf& f, const WrapStops& stops) {
    std::vector<Rational> pos = positions(g);
    for (const auto& x : positions(f))
        pos.push_back(x);
    for (const auto& p : stops.points())
        pos.push_back(p.position);
    StratSpace s = adapted_space(g.ambient, pos);
    return homology(rhom(realize(g, s), realize(f, s)));
}

microwrap::ChainComplex microstalk_by_sections(const microwrap::SModule& f, const microwrap::ConormalPoint& p) {
    using namespace microwrap;
    const StratSpace& s = f.base();
    Side below = p.codirection == Codirection::plus ? Side::left : Side::right;
    ConstructibleSet ball = star(s, s.vertex_stratum(p.vertex));
    ConstructibleSet half = ConstructibleSet::from_strata(s, {s.edge_at(p.vertex, below)}, true);
    return fiber(restriction(ball, half, f));
}

} // namespace oracle
