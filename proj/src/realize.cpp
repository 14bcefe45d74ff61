#include "microwrap/errors.hpp"
#include "microwrap/wrapper.hpp"

#include <algorithm>
#include <numeric>

namespace microwrap {

namespace {

WrapError unrealizable(const std::string& what) {
    return WrapError(WrapError::Kind::unrealizable, what);
}

using Span = std::pair<std::optional<Rational>, std::optional<Rational>>;

// The edge on the cover, copy 0; a circle edge ends past its start.
Span edge_span(const StratSpace& s, std::size_t edge) {
    auto [a, b] = s.edge_ends(edge);
    Span out;
    if (a)
        out.first = s.vertices()[*a];
    if (b)
        out.second = s.vertices()[*b];
    if (s.is_circle() && *out.second <= *out.first)
        *out.second += s.perimeter();
    return out;
}

bool after_left(const Endpoint& l, const Rational& x, bool strict_ok) {
    if (l.kind == Endpoint::Kind::minus_infinity)
        return true;
    if (l.kind == Endpoint::Kind::plus_infinity)
        return false;
    return l.position < x || (strict_ok && l.position == x);
}

bool before_right(const Endpoint& r, const Rational& x, bool strict_ok) {
    if (r.kind == Endpoint::Kind::plus_infinity)
        return true;
    if (r.kind == Endpoint::Kind::minus_infinity)
        return false;
    return x < r.position || (strict_ok && r.position == x);
}

bool covers_point(const IntervalGenerator& g, const Rational& x) {
    return after_left(g.left, x, g.left.closed) && before_right(g.right, x, g.right.closed);
}

bool covers_span(const IntervalGenerator& g, const Span& span) {
    bool left_ok = span.first ? after_left(g.left, *span.first, true) : g.left.kind == Endpoint::Kind::minus_infinity;
    bool right_ok =
        span.second ? before_right(g.right, *span.second, true) : g.right.kind == Endpoint::Kind::plus_infinity;
    return left_ok && right_ok;
}

long to_long(const Integer& z) {
    return z.get_si();
}

// Cover copies of a stratum inside the generator.
std::vector<long> copies(const IntervalGenerator& g, const StratSpace& s, std::size_t stratum) {
    if (g.full)
        return {0};
    const Rational period = s.is_circle() ? s.perimeter() : Rational(0);
    Rational ref;
    Span span;
    bool vertex = s.is_vertex(stratum);
    if (vertex) {
        ref = s.vertices()[s.vertex_of(stratum)];
    } else {
        span = edge_span(s, stratum);
        ref = span.first.value_or(span.second.value_or(0));
    }
    long lo = 0, hi = 0;
    if (s.is_circle()) {
        lo = to_long(floor_div(g.left.position - ref, period)) - 1;
        hi = to_long(floor_div(g.right.position - ref, period)) + 1;
    }
    std::vector<long> out;
    for (long j = lo; j <= hi; ++j) {
        Rational off = period * j;
        bool in;
        if (vertex) {
            in = covers_point(g, ref + off);
        } else {
            Span moved = span;
            if (moved.first)
                *moved.first += off;
            if (moved.second)
                *moved.second += off;
            in = covers_span(g, moved);
        }
        if (in)
            out.push_back(j);
    }
    return out;
}

// Cover copy of the edge met by copy j of vertex v on the given side.
long edge_copy(const StratSpace& s, std::size_t v, Side side, long j) {
    if (!s.is_circle())
        return 0;
    Span span = edge_span(s, s.edge_at(v, side));
    const Rational& end = side == Side::right ? *span.first : *span.second;
    Rational k = (s.vertices()[v] - end) / s.perimeter();
    return j + to_long(k.get_num());
}

ChainMap block_map(const std::vector<ChainComplex>& from, const std::vector<ChainComplex>& to,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    ChainMap out = ChainMap::zero(direct_sum(from), direct_sum(to));
    for (auto [a, b] : pairs)
        out = out + compose(summand_inclusion(to, b), summand_projection(from, a));
    return out;
}

void check_vertices(const IntervalGenerator& g, const StratSpace& s) {
    if (g.full) {
        if (!s.is_circle())
            throw unrealizable("full-circle generator on a line");
        return;
    }
    for (const Endpoint* e : {&g.left, &g.right}) {
        if (!e->is_finite()) {
            if (s.is_circle())
                throw unrealizable("infinite end on a circle");
            continue;
        }
        if (!s.vertex_at(e->position))
            throw unrealizable("interval end " + to_string(e->position) + " is not a vertex; refine first");
    }
}

} // namespace

std::vector<Rational> positions(const IntervalSheaf& f) {
    std::vector<Rational> out;
    for (const auto& g : f.generators) {
        if (g.full)
            continue;
        for (const Endpoint* e : {&g.left, &g.right})
            if (e->is_finite())
                out.push_back(f.ambient.circle ? mod_positive(e->position, f.ambient.perimeter) : e->position);
    }
    return out;
}

StratSpace adapted_space(const Ambient& ambient, std::vector<Rational> vertices) {
    if (ambient.circle)
        for (auto& x : vertices)
            x = mod_positive(x, ambient.perimeter);
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (!ambient.circle)
        return StratSpace::line(std::move(vertices));
    if (vertices.empty())
        vertices.push_back(0);
    return StratSpace::circle(std::move(vertices), ambient.perimeter);
}

SModule realize(const IntervalGenerator& g, const StratSpace& s) {
    check_vertices(g, s);
    const std::size_t n = s.num_strata();
    std::vector<std::vector<long>> cover(n);
    std::vector<ChainComplex> values;
    for (std::size_t t = 0; t < n; ++t) {
        cover[t] = copies(g, s, t);
        values.push_back(direct_sum(std::vector<ChainComplex>(cover[t].size(), g.coefficient)));
    }
    std::vector<ChainMap> maps;
    for (std::size_t v = 0; v < s.num_vertices(); ++v)
        for (Side side : {Side::left, Side::right}) {
            std::size_t vs = s.vertex_stratum(v), e = s.edge_at(v, side);
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t a = 0; a < cover[vs].size(); ++a) {
                long j = g.full ? 0 : edge_copy(s, v, side, cover[vs][a]);
                auto it = std::find(cover[e].begin(), cover[e].end(), j);
                if (it != cover[e].end())
                    pairs.emplace_back(a, static_cast<std::size_t>(it - cover[e].begin()));
            }
            maps.push_back(block_map(std::vector<ChainComplex>(cover[vs].size(), g.coefficient),
                                     std::vector<ChainComplex>(cover[e].size(), g.coefficient), pairs));
        }
    return SModule::make(s, std::move(values), std::move(maps));
}

SModule realize(const IntervalSheaf& f, const StratSpace& s) {
    if (!(Ambient::of(s) == f.ambient))
        throw unrealizable("interval sheaf and triangulation live on different ambients");
    if (f.generators.empty())
        return SModule::zero(s);
    std::vector<SModule> parts;
    for (const auto& g : f.generators)
        parts.push_back(realize(g, s));
    return sum(parts);
}

SModuleMap overlap_map(const IntervalGenerator& from, const IntervalGenerator& to, const StratSpace& s) {
    if (!(from.coefficient == to.coefficient))
        throw unrealizable("overlap map between generators with different coefficients");
    SModule src = realize(from, s), tgt = realize(to, s);
    std::vector<ChainMap> comps;
    for (std::size_t t = 0; t < s.num_strata(); ++t) {
        auto a = copies(from, s, t), b = copies(to, s, t);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto it = std::find(b.begin(), b.end(), a[i]);
            if (it != b.end())
                pairs.emplace_back(i, static_cast<std::size_t>(it - b.begin()));
        }
        comps.push_back(block_map(std::vector<ChainComplex>(a.size(), from.coefficient),
                                  std::vector<ChainComplex>(b.size(), to.coefficient), pairs));
    }
    try {
        return SModuleMap::make(src, tgt, std::move(comps));
    } catch (const ModuleError&) {
        throw unrealizable("no overlap map " + from.to_string() + " -> " + to.to_string());
    }
}

ContinuationMap continuation_map(const WrapTrace& trace, const StratSpace& s) {
    if (!trace.positive)
        throw WrapError(WrapError::Kind::invalid_input, "continuation maps follow positive wrappings");
    const auto& init = trace.initial.generators;
    std::vector<std::size_t> alive(init.size());
    std::iota(alive.begin(), alive.end(), std::size_t{0});
    std::vector<std::optional<Rational>> crossing(init.size());
    for (const auto& st : trace.steps) {
        const WrapEvent& e = st.event;
        if (e.kind == WrapEvent::Kind::advance)
            continue;
        std::size_t id = alive.at(e.generator);
        if (e.kind == WrapEvent::Kind::crossing)
            crossing[id] = e.position;
        if (e.dropped)
            alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(e.generator));
    }
    const auto& fin = trace.final_state().generators;
    std::vector<std::optional<std::size_t>> final_of(init.size());
    for (std::size_t k = 0; k < alive.size(); ++k)
        final_of[alive[k]] = k;

    std::vector<SModuleMap> forward, back;
    std::vector<SModule> last_parts;
    for (std::size_t id = 0; id < init.size(); ++id) {
        SModule src = realize(init[id], s);
        if (!final_of[id]) {
            // a dropped generator must not have crossed; its image is zero
            forward.push_back(SModuleMap::zero(src, SModule::zero(s)));
            continue;
        }
        const IntervalGenerator& last = fin[*final_of[id]];
        SModule tgt = realize(last, s);
        last_parts.push_back(tgt);
        if (!crossing[id]) {
            forward.push_back(overlap_map(init[id], last, s));
            back.push_back(SModuleMap::identity(tgt));
            continue;
        }
        // ℤ_K → ℤ_m → cone(ρ) ≃ ℤ_I[1], where ρ : ℤ_{I ∩ (−∞,m]} ⊕ ℤ_{I ∩ [m,∞)} → ℤ_m
        // is the difference of restrictions and ℤ_I is its fiber.
        const Rational& m = *crossing[id];
        const ChainComplex& c = init[id].coefficient;
        IntervalGenerator sky = IntervalGenerator::skyscraper(m, c);
        IntervalGenerator middle = last;
        middle.coefficient = c;
        std::vector<IntervalGenerator> halves;
        std::vector<int> signs;
        if (after_left(last.left, m, false)) {
            halves.push_back(IntervalGenerator::make(last.left, Endpoint::closed_at(m), c));
            signs.push_back(1);
        }
        if (before_right(last.right, m, false)) {
            halves.push_back(IntervalGenerator::make(Endpoint::closed_at(m), last.right, c));
            signs.push_back(-1);
        }
        std::vector<SModule> pieces;
        for (const auto& h : halves)
            pieces.push_back(realize(h, s));
        SModule x = sum(pieces);
        SModule skym = realize(sky, s);
        SModule mid = realize(middle, s);
        SModuleMap rho = SModuleMap::zero(x, skym);
        SModuleMap diag = SModuleMap::zero(mid, x);
        for (std::size_t k = 0; k < halves.size(); ++k) {
            SModuleMap r = compose(overlap_map(halves[k], sky, s), summand_projection(pieces, k));
            rho = rho + (signs[k] > 0 ? r : -r);
            diag = diag + compose(summand_inclusion(pieces, k), overlap_map(middle, halves[k], s));
        }
        SModuleMap lifted = shift_smod(lift_to_fiber(diag, rho), 1);
        SModule q = cone_smod(rho);
        forward.push_back(compose(cone_inclusion(rho), overlap_map(init[id], sky, s)));
        std::vector<ChainMap> comps;
        for (std::size_t t = 0; t < s.num_strata(); ++t)
            comps.push_back(lifted.component(t));
        back.push_back(SModuleMap::make(tgt, q, std::move(comps)));
    }
    SModuleMap fwd = forward.empty() ? SModuleMap::zero(SModule::zero(s), SModule::zero(s)) : sum(forward);
    SModule middle = fwd.target();
    SModule last = realize(trace.final_state(), s);
    if (back.empty())
        return {fwd, SModuleMap::zero(last, middle)};
    SModuleMap b = sum(back);
    std::vector<ChainMap> comps;
    for (std::size_t t = 0; t < s.num_strata(); ++t)
        comps.push_back(b.component(t));
    return {fwd, SModuleMap::make(last, middle, std::move(comps))};
}

} // namespace microwrap
