#include "microwrap/smod.hpp"

#include "microwrap/errors.hpp"

#include <sstream>

namespace microwrap {

namespace {

std::size_t arrow_index(std::size_t vertex, Side side) {
    return 2 * vertex + (side == Side::right ? 1 : 0);
}

// Arrows s → t of the exit-path category; nullopt stands for the identity.
std::vector<std::optional<Side>> arrows_between(const StratSpace& space, std::size_t s, std::size_t t) {
    std::vector<std::optional<Side>> out;
    if (s == t) {
        out.emplace_back(std::nullopt);
        return out;
    }
    if (!space.is_vertex(s) || space.is_vertex(t))
        return out;
    std::size_t v = space.vertex_of(s);
    for (Side side : {Side::left, Side::right})
        if (space.edge_at(v, side) == t)
            out.emplace_back(side);
    return out;
}

void require_same_base(const StratSpace& a, const StratSpace& b, const char* what) {
    if (!(a == b))
        throw ModuleError(std::string(what) + ": S-modules live on different spaces");
}

std::vector<ChainComplex> values_at(const std::vector<SModule>& parts, std::size_t s) {
    std::vector<ChainComplex> out;
    out.reserve(parts.size());
    for (const auto& p : parts)
        out.push_back(p.value(s));
    return out;
}

// Block offsets of the summands of direct_sum(parts) in one degree.
std::vector<std::size_t> offsets(const std::vector<ChainComplex>& parts, int degree) {
    std::vector<std::size_t> out(parts.size());
    std::size_t acc = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out[i] = acc;
        acc += parts[i].rank(degree);
    }
    return out;
}

} // namespace

// --- SModule -------------------------------------------------------------------

SModule SModule::make(StratSpace base, std::vector<ChainComplex> values, std::vector<ChainMap> maps) {
    if (values.size() != base.num_strata())
        throw ModuleError("expected " + std::to_string(base.num_strata()) + " stalks, got " +
                          std::to_string(values.size()));
    if (maps.size() != 2 * base.num_vertices())
        throw ModuleError("expected " + std::to_string(2 * base.num_vertices()) + " generization maps, got " +
                          std::to_string(maps.size()));
    for (std::size_t v = 0; v < base.num_vertices(); ++v)
        for (Side side : {Side::left, Side::right}) {
            const ChainMap& m = maps[arrow_index(v, side)];
            if (m.source() != values[base.vertex_stratum(v)] || m.target() != values[base.edge_at(v, side)])
                throw ModuleError("generization map at vertex " + std::to_string(v) + " (" +
                                  (side == Side::left ? "left" : "right") + ") has wrong endpoints");
        }
    SModule m;
    m.base_ = std::move(base);
    m.values_ = std::move(values);
    m.maps_ = std::move(maps);
    return m;
}

SModule SModule::zero(const StratSpace& base) {
    return make(base, std::vector<ChainComplex>(base.num_strata()),
                std::vector<ChainMap>(2 * base.num_vertices()));
}

const ChainMap& SModule::generization(std::size_t vertex, Side side) const {
    if (vertex >= base_.num_vertices())
        throw ModuleError("vertex index out of range: " + std::to_string(vertex));
    return maps_[arrow_index(vertex, side)];
}

std::vector<Arrow> SModule::arrows() const {
    std::vector<Arrow> out;
    for (std::size_t v = 0; v < base_.num_vertices(); ++v) {
        out.push_back({v, Side::left});
        out.push_back({v, Side::right});
    }
    return out;
}

bool SModule::is_zero() const {
    for (const auto& v : values_)
        if (!v.is_zero())
            return false;
    return true;
}

bool SModule::operator==(const SModule& other) const {
    return base_ == other.base_ && values_ == other.values_ && maps_ == other.maps_;
}

// --- SModuleMap ----------------------------------------------------------------

SModuleMap SModuleMap::make(SModule source, SModule target, std::vector<ChainMap> components) {
    require_same_base(source.base(), target.base(), "module map");
    const StratSpace& space = source.base();
    if (components.size() != space.num_strata())
        throw ModuleError("module map needs one component per stratum");
    for (std::size_t s = 0; s < components.size(); ++s)
        if (components[s].source() != source.value(s) || components[s].target() != target.value(s))
            throw ModuleError("module map component on stratum " + std::to_string(s) + " has wrong endpoints");
    for (const Arrow& a : source.arrows()) {
        std::size_t v = space.vertex_stratum(a.vertex), e = source.arrow_target(a);
        if (compose(target.generization(a), components[v]) != compose(components[e], source.generization(a)))
            throw ModuleError("module map square at vertex " + std::to_string(a.vertex) + " does not commute");
    }
    SModuleMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.components_ = std::move(components);
    return f;
}

SModuleMap SModuleMap::identity(const SModule& m) {
    std::vector<ChainMap> comps;
    for (const auto& v : m.values())
        comps.push_back(ChainMap::identity(v));
    return make(m, m, std::move(comps));
}

SModuleMap SModuleMap::zero(SModule source, SModule target) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < source.values().size(); ++s)
        comps.push_back(ChainMap::zero(source.value(s), target.value(s)));
    return make(std::move(source), std::move(target), std::move(comps));
}

SModuleMap SModuleMap::operator+(const SModuleMap& other) const {
    if (source_ != other.source_ || target_ != other.target_)
        throw ModuleError("sum of module maps with different endpoints");
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < components_.size(); ++s)
        comps.push_back(components_[s] + other.components_[s]);
    SModuleMap f;
    f.source_ = source_;
    f.target_ = target_;
    f.components_ = std::move(comps);
    return f;
}

SModuleMap SModuleMap::operator-() const {
    SModuleMap f = *this;
    for (auto& c : f.components_)
        c = -c;
    return f;
}

bool SModuleMap::operator==(const SModuleMap& other) const {
    return source_ == other.source_ && target_ == other.target_ && components_ == other.components_;
}

// --- objects -----------------------------------------------------------------------

SModule representable(const StratSpace& space, std::size_t stratum, const ChainComplex& coefficient) {
    if (stratum >= space.num_strata())
        throw SpaceError("stratum id out of range: " + std::to_string(stratum));
    std::vector<ChainComplex> values(space.num_strata());
    std::vector<std::vector<std::optional<Side>>> arrows(space.num_strata());
    for (std::size_t t = 0; t < space.num_strata(); ++t) {
        arrows[t] = arrows_between(space, stratum, t);
        values[t] = direct_sum(std::vector<ChainComplex>(arrows[t].size(), coefficient));
    }
    std::vector<ChainMap> maps(2 * space.num_vertices());
    for (std::size_t v = 0; v < space.num_vertices(); ++v)
        for (Side side : {Side::left, Side::right}) {
            std::size_t vs = space.vertex_stratum(v), e = space.edge_at(v, side);
            ChainMap& m = maps[arrow_index(v, side)];
            if (vs != stratum) {
                m = ChainMap::zero(values[vs], values[e]);
                continue;
            }
            std::size_t slot = 0;
            while (arrows[e][slot] != std::optional<Side>(side))
                ++slot;
            m = summand_inclusion(std::vector<ChainComplex>(arrows[e].size(), coefficient), slot);
        }
    return SModule::make(space, std::move(values), std::move(maps));
}

SModule indicator_locally_closed(const StratSpace& space, const ConstructibleSet& set,
                                 const ChainComplex& coefficient) {
    if (!is_locally_closed(space, set.members()))
        throw SpaceError("constructible set is not locally closed");
    std::vector<ChainComplex> values(space.num_strata());
    for (std::size_t s = 0; s < values.size(); ++s)
        if (set.contains(s))
            values[s] = coefficient;
    std::vector<ChainMap> maps(2 * space.num_vertices());
    for (std::size_t v = 0; v < space.num_vertices(); ++v)
        for (Side side : {Side::left, Side::right}) {
            std::size_t vs = space.vertex_stratum(v), e = space.edge_at(v, side);
            maps[arrow_index(v, side)] = set.contains(vs) && set.contains(e)
                                             ? ChainMap::identity(coefficient)
                                             : ChainMap::zero(values[vs], values[e]);
        }
    return SModule::make(space, std::move(values), std::move(maps));
}

SModule indicator_open(const StratSpace& space, const ConstructibleSet& open) {
    if (!is_open(space, open.members()))
        throw SpaceError("indicator_open needs an open constructible set");
    return indicator_locally_closed(space, open);
}

SModuleMap indicator_map(const SModule& from, const SModule& to) {
    require_same_base(from.base(), to.base(), "indicator_map");
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < from.values().size(); ++s) {
        const ChainComplex& a = from.value(s);
        const ChainComplex& b = to.value(s);
        comps.push_back(!a.is_zero() && a == b ? ChainMap::identity(a) : ChainMap::zero(a, b));
    }
    return SModuleMap::make(from, to, std::move(comps));
}

// --- stable operations ---------------------------------------------------------------

SModule sum(const std::vector<SModule>& parts) {
    if (parts.empty())
        throw ModuleError("sum of no S-modules has no base space");
    const StratSpace& space = parts.front().base();
    for (const auto& p : parts)
        require_same_base(space, p.base(), "sum");
    std::vector<ChainComplex> values;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        values.push_back(direct_sum(values_at(parts, s)));
    std::vector<ChainMap> maps;
    for (const Arrow& a : parts.front().arrows()) {
        std::vector<ChainMap> pieces;
        for (const auto& p : parts)
            pieces.push_back(p.generization(a));
        maps.push_back(direct_sum(pieces));
    }
    return SModule::make(space, std::move(values), std::move(maps));
}

SModule shift_smod(const SModule& m, int k) {
    std::vector<ChainComplex> values;
    for (const auto& v : m.values())
        values.push_back(shift(v, k));
    std::vector<ChainMap> maps;
    for (const Arrow& a : m.arrows())
        maps.push_back(shift(m.generization(a), k));
    return SModule::make(m.base(), std::move(values), std::move(maps));
}

SModule cone_smod(const SModuleMap& f) {
    const SModule& src = f.source();
    const SModule& tgt = f.target();
    const StratSpace& space = src.base();
    std::vector<ChainComplex> values;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        values.push_back(cone(f.component(s)));
    std::vector<ChainMap> maps;
    for (const Arrow& a : src.arrows()) {
        std::size_t v = space.vertex_stratum(a.vertex), e = src.arrow_target(a);
        maps.push_back(induced_cone_map(f.component(v), f.component(e), src.generization(a), tgt.generization(a)));
    }
    return SModule::make(space, std::move(values), std::move(maps));
}

SModule fiber_smod(const SModuleMap& f) {
    return shift_smod(cone_smod(f), -1);
}

SModuleMap sum(const std::vector<SModuleMap>& parts) {
    if (parts.empty())
        throw ModuleError("sum of no module maps has no base space");
    std::vector<SModule> sources, targets;
    for (const auto& p : parts) {
        sources.push_back(p.source());
        targets.push_back(p.target());
    }
    SModule s = sum(sources), t = sum(targets);
    std::vector<ChainMap> comps;
    for (std::size_t k = 0; k < s.values().size(); ++k) {
        std::vector<ChainMap> pieces;
        for (const auto& p : parts)
            pieces.push_back(p.component(k));
        comps.push_back(direct_sum(pieces));
    }
    return SModuleMap::make(std::move(s), std::move(t), std::move(comps));
}

SModuleMap shift_smod(const SModuleMap& f, int k) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        comps.push_back(shift(f.component(s), k));
    return SModuleMap::make(shift_smod(f.source(), k), shift_smod(f.target(), k), std::move(comps));
}

SModuleMap compose(const SModuleMap& g, const SModuleMap& f) {
    if (f.target() != g.source())
        throw ModuleError("compose: target of the first map differs from source of the second");
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        comps.push_back(compose(g.component(s), f.component(s)));
    return SModuleMap::make(f.source(), g.target(), std::move(comps));
}

SModuleMap summand_inclusion(const std::vector<SModule>& parts, std::size_t index) {
    if (index >= parts.size())
        throw ModuleError("summand index out of range");
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < parts[index].values().size(); ++s)
        comps.push_back(summand_inclusion(values_at(parts, s), index));
    return SModuleMap::make(parts[index], sum(parts), std::move(comps));
}

SModuleMap summand_projection(const std::vector<SModule>& parts, std::size_t index) {
    if (index >= parts.size())
        throw ModuleError("summand index out of range");
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < parts[index].values().size(); ++s)
        comps.push_back(summand_projection(values_at(parts, s), index));
    return SModuleMap::make(sum(parts), parts[index], std::move(comps));
}

SModuleMap cone_inclusion(const SModuleMap& f) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        comps.push_back(cone_inclusion(f.component(s)));
    return SModuleMap::make(f.target(), cone_smod(f), std::move(comps));
}

SModuleMap cone_projection(const SModuleMap& f) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        comps.push_back(cone_projection(f.component(s)));
    return SModuleMap::make(cone_smod(f), shift_smod(f.source(), 1), std::move(comps));
}

SModuleMap induced_cone_map(const SModuleMap& f, const SModuleMap& f2, const SModuleMap& alpha,
                            const SModuleMap& beta) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        comps.push_back(induced_cone_map(f.component(s), f2.component(s), alpha.component(s), beta.component(s)));
    return SModuleMap::make(cone_smod(f), cone_smod(f2), std::move(comps));
}

SModuleMap lift_to_fiber(const SModuleMap& h, const SModuleMap& g) {
    std::vector<ChainMap> comps;
    for (std::size_t s = 0; s < h.source().values().size(); ++s)
        comps.push_back(lift_to_fiber(h.component(s), g.component(s)));
    return SModuleMap::make(h.source(), fiber_smod(g), std::move(comps));
}

bool is_quasi_iso(const SModuleMap& f) {
    for (std::size_t s = 0; s < f.source().values().size(); ++s)
        if (!is_quasi_iso(f.component(s)))
            return false;
    return true;
}

// --- derived Hom -------------------------------------------------------------------------

namespace {

// The two-term model: C0 = ⊕_s Hom(F(s), G(s)), C1 = ⊕_a Hom(F(v), G(e)).
struct Resolution {
    std::vector<ChainComplex> parts0;
    std::vector<ChainComplex> parts1;
    ChainMap delta;
};

Resolution resolve(const SModule& f, const SModule& g) {
    require_same_base(f.base(), g.base(), "rhom");
    const StratSpace& space = f.base();
    const std::vector<Arrow> arrows = f.arrows();
    Resolution r;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        r.parts0.push_back(hom_complex(f.value(s), g.value(s)));
    std::vector<ChainMap> post, pre;
    for (const Arrow& a : arrows) {
        std::size_t v = space.vertex_stratum(a.vertex), e = f.arrow_target(a);
        r.parts1.push_back(hom_complex(f.value(v), g.value(e)));
        post.push_back(hom_post(f.value(v), g.generization(a)));  // Hom(F v, G v) → Hom(F v, G e)
        pre.push_back(hom_pre(f.generization(a), g.value(e)));    // Hom(F e, G e) → Hom(F v, G e)
    }
    ChainComplex c0 = direct_sum(r.parts0), c1 = direct_sum(r.parts1);
    std::map<int, IntMatrix> comps;
    if (!c0.is_zero() && !c1.is_zero())
        for (int n = c0.min_degree(); n <= c0.max_degree(); ++n) {
            IntMatrix m(c1.rank(n), c0.rank(n));
            if (m.empty())
                continue;
            auto row = offsets(r.parts1, n);
            auto col = offsets(r.parts0, n);
            for (std::size_t i = 0; i < arrows.size(); ++i) {
                std::size_t v = space.vertex_stratum(arrows[i].vertex), e = f.arrow_target(arrows[i]);
                m.add_block(row[i], col[v], post[i].component(n));
                m.add_block(row[i], col[e], -pre[i].component(n));
            }
            comps.emplace(n, std::move(m));
        }
    r.delta = ChainMap::make_trusted(std::move(c0), std::move(c1), std::move(comps));
    return r;
}

} // namespace

ChainComplex rhom(const SModule& f, const SModule& g) {
    return fiber(resolve(f, g).delta);
}

ChainMap rhom_post(const SModule& f, const SModuleMap& g) {
    Resolution a = resolve(f, g.source());
    Resolution b = resolve(f, g.target());
    const StratSpace& space = f.base();
    std::vector<ChainMap> alpha, beta;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        alpha.push_back(hom_post(f.value(s), g.component(s)));
    for (const Arrow& ar : f.arrows())
        beta.push_back(hom_post(f.value(space.vertex_stratum(ar.vertex)), g.component(f.arrow_target(ar))));
    return induced_fiber_map(a.delta, b.delta, direct_sum(alpha), direct_sum(beta));
}

ChainMap rhom_pre(const SModuleMap& f, const SModule& g) {
    Resolution a = resolve(f.target(), g);
    Resolution b = resolve(f.source(), g);
    const StratSpace& space = g.base();
    std::vector<ChainMap> alpha, beta;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        alpha.push_back(hom_pre(f.component(s), g.value(s)));
    for (const Arrow& ar : g.arrows())
        beta.push_back(hom_pre(f.component(space.vertex_stratum(ar.vertex)), g.value(f.source().arrow_target(ar))));
    return induced_fiber_map(a.delta, b.delta, direct_sum(alpha), direct_sum(beta));
}

ChainComplex sections(const ConstructibleSet& open, const SModule& f) {
    return rhom(indicator_open(f.base(), open), f);
}

ChainMap restriction(const ConstructibleSet& larger, const ConstructibleSet& smaller, const SModule& f) {
    const StratSpace& space = f.base();
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        if (smaller.contains(s) && !larger.contains(s))
            throw SpaceError("restriction needs nested open sets");
    SModuleMap incl = indicator_map(indicator_open(space, smaller), indicator_open(space, larger));
    return rhom_pre(incl, f);
}

// --- generation --------------------------------------------------------------------------

namespace {

std::string coefficient_text(const ChainComplex& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

GenerationWitness leaf(std::size_t stratum, const ChainComplex& coefficient) {
    GenerationWitness w;
    w.kind = GenerationWitness::Kind::leaf;
    w.stratum = stratum;
    w.coefficient = coefficient;
    return w;
}

GenerationWitness sum_node(std::vector<GenerationWitness> children) {
    GenerationWitness w;
    w.kind = GenerationWitness::Kind::sum;
    w.children = std::move(children);
    return w;
}

} // namespace

std::string GenerationWitness::describe(const StratSpace& space) const {
    switch (kind) {
    case Kind::leaf: {
        std::string s = "P" + space.stratum_name(stratum);
        if (coefficient != ChainComplex::unit())
            s += "*" + coefficient_text(coefficient);
        return s;
    }
    case Kind::sum: {
        if (children.empty())
            return "0";
        std::string s = "(";
        for (std::size_t i = 0; i < children.size(); ++i)
            s += (i ? " + " : "") + children[i].describe(space);
        return s + ")";
    }
    case Kind::cone:
        return "cone(" + children[0].describe(space) + " -> " + children[1].describe(space) + ")";
    }
    return {};
}

SModule evaluate(const GenerationWitness& w, const StratSpace& space) {
    switch (w.kind) {
    case GenerationWitness::Kind::leaf:
        return representable(space, w.stratum, w.coefficient);
    case GenerationWitness::Kind::sum: {
        if (w.children.empty())
            return SModule::zero(space);
        std::vector<SModule> parts;
        for (const auto& c : w.children)
            parts.push_back(evaluate(c, space));
        return sum(parts);
    }
    case GenerationWitness::Kind::cone:
        return cone_smod(w.map.at(0));
    }
    throw ModuleError("malformed generation witness");
}

Generation generation_witness(const SModule& f) {
    const StratSpace& space = f.base();
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        if (!f.value(s).is_zero() && f == representable(space, s, f.value(s)))
            return {leaf(s, f.value(s)), SModuleMap::identity(f)};

    // R0 = ⊕_s P_s ⊗ F(s), R1 = ⊕_{a : v → e} P_e ⊗ F(v).
    struct Part {
        std::size_t stratum;      // leaf stratum
        std::size_t value_of;     // stratum whose stalk is the coefficient
        std::optional<Arrow> arrow;
    };
    std::vector<Part> p0, p1;
    for (std::size_t s = 0; s < space.num_strata(); ++s)
        if (!f.value(s).is_zero())
            p0.push_back({s, s, std::nullopt});
    for (const Arrow& a : f.arrows()) {
        std::size_t v = space.vertex_stratum(a.vertex);
        if (!f.value(v).is_zero())
            p1.push_back({f.arrow_target(a), v, a});
    }
    if (p0.empty())
        return {sum_node({}), SModuleMap::identity(f)};

    std::vector<GenerationWitness> leaves0, leaves1;
    std::vector<SModule> mods0, mods1;
    for (const auto& p : p0) {
        leaves0.push_back(leaf(p.stratum, f.value(p.value_of)));
        mods0.push_back(representable(space, p.stratum, f.value(p.value_of)));
    }
    for (const auto& p : p1) {
        leaves1.push_back(leaf(p.stratum, f.value(p.value_of)));
        mods1.push_back(representable(space, p.stratum, f.value(p.value_of)));
    }
    SModule r0 = sum(mods0);
    SModule r1 = mods1.empty() ? SModule::zero(space) : sum(mods1);

    // Flattened slots of R0(t): one per (part, arrow part.stratum → t).
    struct Slot {
        std::size_t part;
        std::optional<Side> arrow;
    };
    auto slots_at = [&](std::size_t t) {
        std::vector<Slot> slots;
        std::vector<ChainComplex> pieces;
        for (std::size_t i = 0; i < p0.size(); ++i)
            for (auto arrow : arrows_between(space, p0[i].stratum, t)) {
                slots.push_back({i, arrow});
                pieces.push_back(f.value(p0[i].value_of));
            }
        return std::make_pair(slots, pieces);
    };

    std::vector<ChainMap> psi, eps;
    for (std::size_t t = 0; t < space.num_strata(); ++t) {
        auto [slots, pieces] = slots_at(t);
        // ε_t : R0(t) → F(t), each slot through the generization of its arrow.
        ChainMap e = ChainMap::zero(r0.value(t), f.value(t));
        for (std::size_t k = 0; k < slots.size(); ++k) {
            ChainMap proj = summand_projection(pieces, k);
            const Slot& sl = slots[k];
            ChainMap along = sl.arrow ? f.generization(space.vertex_of(p0[sl.part].stratum), *sl.arrow)
                                      : ChainMap::identity(f.value(t));
            e = e + compose(along, proj);
        }
        eps.push_back(e);

        // ψ_t : R1(t) → R0(t), x ↦ (slot of the arrow itself) − (identity slot of F(e)) F(a) x.
        std::vector<ChainComplex> r1_pieces;
        std::vector<std::size_t> r1_parts;
        for (std::size_t i = 0; i < p1.size(); ++i)
            if (p1[i].stratum == t) {
                r1_pieces.push_back(f.value(p1[i].value_of));
                r1_parts.push_back(i);
            }
        ChainMap m = ChainMap::zero(r1.value(t), r0.value(t));
        for (std::size_t j = 0; j < r1_parts.size(); ++j) {
            const Part& p = p1[r1_parts[j]];
            ChainMap proj = summand_projection(r1_pieces, j);
            std::size_t via = slots.size(), own = slots.size();
            for (std::size_t k = 0; k < slots.size(); ++k) {
                const Part& q = p0[slots[k].part];
                if (q.stratum == p.value_of && slots[k].arrow == std::optional<Side>(p.arrow->side))
                    via = k;
                if (q.stratum == t && !slots[k].arrow)
                    own = k;
            }
            ChainMap term = compose(summand_inclusion(pieces, via), proj);
            if (own != slots.size())
                term = term - compose(compose(summand_inclusion(pieces, own), f.generization(*p.arrow)), proj);
            m = m + term;
        }
        psi.push_back(m);
    }
    SModuleMap psi_map = SModuleMap::make(r1, r0, std::move(psi));
    SModuleMap eps_map = SModuleMap::make(r0, f, std::move(eps));

    GenerationWitness w;
    w.kind = GenerationWitness::Kind::cone;
    w.children = {sum_node(std::move(leaves1)), sum_node(std::move(leaves0))};
    w.map = {psi_map};

    // cone(ψ) → F, (x, y) ↦ ε y.
    std::vector<ChainMap> aug;
    for (std::size_t t = 0; t < space.num_strata(); ++t)
        aug.push_back(induced_cone_map(psi_map.component(t), ChainMap::zero(ChainComplex{}, f.value(t)),
                                       ChainMap::zero(r1.value(t), ChainComplex{}), eps_map.component(t)));
    return {w, SModuleMap::make(cone_smod(psi_map), f, std::move(aug))};
}

} // namespace microwrap
