#include "microwrap/wshcat.hpp"

#include "microwrap/errors.hpp"

#include <algorithm>
#include <set>

namespace microwrap {

namespace {

WrapError invalid(const std::string& what) {
    return WrapError(WrapError::Kind::invalid_input, what);
}

bool in_lambda(const IntervalSheaf& f, const WrapStops& stops) {
    for (const auto& p : ss_points(f))
        if (!stops.contains(p.position, p.codirection))
            return false;
    return true;
}

std::string point_name(const WrappedScene& scene, const ConormalPoint& p) {
    return "(" + to_string(scene.space().vertices()[p.vertex]) + "," + to_string(p.codirection) + ")";
}

HomologyProfile hom_on(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f) {
    StratSpace s = scene.common_space({&g, &f});
    return homology(rhom(realize(g, s), realize(f, s)));
}

} // namespace

WrappedScene WrappedScene::make(StratSpace space, StopSet stops,
                                std::vector<std::pair<std::string, IntervalSheaf>> catalog) {
    WrappedScene scene;
    scene.wrap_stops_ = WrapStops(space, stops);
    std::set<std::string> names;
    for (const auto& [name, f] : catalog) {
        if (!names.insert(name).second)
            throw invalid("object '" + name + "' is defined twice");
        if (!(f.ambient == Ambient::of(space)))
            throw invalid("object '" + name + "' lives on another ambient than the scene");
    }
    scene.space_ = std::move(space);
    scene.stops_ = std::move(stops);
    scene.catalog_ = std::move(catalog);
    return scene;
}

const IntervalSheaf& WrappedScene::object(const std::string& name) const {
    for (const auto& [n, f] : catalog_)
        if (n == name)
            return f;
    throw invalid("unknown object '" + name + "'");
}

StratSpace WrappedScene::common_space(const std::vector<const IntervalSheaf*>& sheaves) const {
    std::vector<Rational> pos = space_.vertices();
    for (const IntervalSheaf* f : sheaves)
        for (const auto& x : positions(*f))
            pos.push_back(x);
    return adapted_space(ambient(), std::move(pos));
}

ChainComplex hom_wrapped(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f) {
    IntervalSheaf fw = wrap_plus(f, scene.wrap_stops()).sheaf;
    StratSpace s = scene.common_space({&g, &fw});
    return rhom(realize(g, s), realize(fw, s));
}

ChainComplex comparison_hom(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f) {
    IntervalSheaf gw = wrap_plus(g, scene.wrap_stops()).sheaf;
    IntervalSheaf fw = wrap_plus(f, scene.wrap_stops()).sheaf;
    StratSpace s = scene.common_space({&gw, &fw});
    return rhom(realize(gw, s), realize(fw, s));
}

HomReport compare_homs(const WrappedScene& scene, const std::string& source, const std::string& target) {
    const IntervalSheaf& g = scene.object(source);
    const IntervalSheaf& f = scene.object(target);
    HomReport r{source, target, homology(hom_wrapped(scene, g, f)), homology(comparison_hom(scene, g, f)), false};
    r.agree = r.wrapped == r.comparison;
    return r;
}

Rational disk_radius(const WrappedScene& scene) {
    const auto& xs = scene.space().vertices();
    std::optional<Rational> gap;
    auto take = [&](const Rational& d) {
        if (!gap || d < *gap)
            gap = d;
    };
    for (std::size_t i = 1; i < xs.size(); ++i)
        take(xs[i] - xs[i - 1]);
    if (scene.space().is_circle())
        take(xs.front() + scene.space().perimeter() - xs.back());
    return gap ? Rational(*gap / 4) : Rational(1);
}

IntervalSheaf scene_linking_disk(const WrappedScene& scene, const ConormalPoint& p) {
    return linking_disk(scene.space(), p, disk_radius(scene));
}

std::vector<IntervalSheaf> stop_adapted_family(const WrapStops& stops) {
    const Ambient& amb = stops.ambient();
    std::vector<Endpoint> lefts, rights;
    for (const auto& p : stops.points()) {
        // left open ↦ −, left closed ↦ +; right open ↦ +, right closed ↦ −
        lefts.push_back({Endpoint::Kind::finite, p.position, p.codirection == Codirection::plus});
        rights.push_back({Endpoint::Kind::finite, p.position, p.codirection == Codirection::minus});
    }
    std::vector<IntervalSheaf> out;
    auto add = [&](const Endpoint& l, const Endpoint& r) {
        bool ok = !l.is_finite() || !r.is_finite() || l.position < r.position ||
                  (l.position == r.position && l.closed && r.closed);
        if (ok)
            out.push_back(IntervalSheaf::make(amb, {IntervalGenerator::make(l, r)}));
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

// --- equivalence -----------------------------------------------------------------

bool EquivalenceReport::all_agree() const {
    for (const auto& h : homs)
        if (!h.agree)
            return false;
    for (const auto& g : generators)
        if (!g.in_sh_lambda || !g.corepresents)
            return false;
    for (const auto& [name, ok] : fixed)
        if (!ok)
            return false;
    return true;
}

namespace {

// Centers and radii of small balls, one in each component of M minus the stop positions.
std::vector<std::pair<Rational, Rational>> component_balls(const WrappedScene& scene) {
    std::vector<Rational> cuts;
    for (const auto& p : scene.wrap_stops().points())
        cuts.push_back(p.position);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<std::pair<Rational, Rational>> out;
    if (scene.space().is_circle()) {
        const Rational& per = scene.space().perimeter();
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            Rational next = i + 1 < cuts.size() ? cuts[i + 1] : cuts.front() + per;
            Rational mid = (cuts[i] + next) / 2;
            out.emplace_back(mod_positive(mid, per), Rational((next - cuts[i]) / 4));
        }
        if (cuts.empty())
            out.emplace_back(per / 2, per / 4);
        return out;
    }
    if (cuts.empty())
        return {{Rational(0), Rational(1)}};
    out.emplace_back(cuts.front() - 1, Rational(1, 2));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        out.emplace_back(Rational((cuts[i] + cuts[i + 1]) / 2), Rational((cuts[i + 1] - cuts[i]) / 4));
    out.emplace_back(cuts.back() + 1, Rational(1, 2));
    return out;
}

} // namespace

EquivalenceReport verify_equivalence(const WrappedScene& scene) {
    EquivalenceReport report;
    for (const auto& [g, gs] : scene.catalog())
        for (const auto& [f, fs] : scene.catalog())
            report.homs.push_back(compare_homs(scene, g, f));

    std::vector<std::pair<std::string, const IntervalSheaf*>> lambda_objects;
    for (const auto& [name, f] : scene.catalog())
        if (in_lambda(f, scene.wrap_stops())) {
            lambda_objects.emplace_back(name, &f);
            report.fixed.emplace_back(name, wrap_plus(f, scene.wrap_stops()).sheaf == f);
        }

    auto check = [&](GeneratorCheck gc, auto&& expected) {
        try {
            gc.wrapped = wrap_plus(gc.candidate, scene.wrap_stops()).sheaf;
        } catch (const WrapError& e) {
            if (e.kind() != WrapError::Kind::unsupported_wrap)
                throw;
            report.skipped.push_back(gc.name);
            return;
        }
        gc.in_sh_lambda = in_lambda(gc.wrapped, scene.wrap_stops());
        gc.corepresents = true;
        for (const auto& [name, f] : lambda_objects) {
            StratSpace s = scene.common_space({&gc.wrapped, f, &gc.candidate});
            SModule fm = realize(*f, s);
            if (homology(rhom(realize(gc.wrapped, s), fm)) != expected(s, fm))
                gc.corepresents = false;
        }
        report.generators.push_back(std::move(gc));
    };

    for (const auto& [x, r] : component_balls(scene)) {
        GeneratorCheck gc;
        gc.name = "ball at " + to_string(x);
        gc.candidate = IntervalSheaf::make(scene.ambient(), {IntervalGenerator::make(Endpoint::open(x - r),
                                                                                     Endpoint::open(x + r))});
        check(std::move(gc), [x = x](const StratSpace& s, const SModule& fm) {
            return homology(fm.value(s.locate(x)));
        });
    }
    for (const auto& p : scene.stops().points()) {
        GeneratorCheck gc;
        gc.name = "linking disk at " + point_name(scene, p);
        gc.candidate = scene_linking_disk(scene, p);
        const Rational x = scene.space().vertices()[p.vertex];
        const Codirection c = p.codirection;
        check(std::move(gc), [x, c](const StratSpace& s, const SModule& fm) {
            return homology(microstalk(fm, {*s.vertex_at(x), c}));
        });
    }
    return report;
}

// --- corepresentability and annihilation --------------------------------------------

bool CorepresentabilityReport::all_agree() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.agree; });
}

CorepresentabilityReport corepresentability_check(const WrappedScene& scene, const ConormalPoint& p) {
    if (!scene.stops().contains(p))
        throw invalid("corepresentability needs a stop; " +
                      (p.vertex < scene.space().num_vertices() ? point_name(scene, p) : std::string("the point")) +
                      " is not one");
    CorepresentabilityReport report;
    report.point = p;
    report.wrapped_disk = wrap_plus(scene_linking_disk(scene, p), scene.wrap_stops()).sheaf;
    const Rational x = scene.space().vertices()[p.vertex];
    for (const auto& [name, f] : scene.catalog()) {
        if (!in_lambda(f, scene.wrap_stops()))
            continue;
        StratSpace s = scene.common_space({&report.wrapped_disk, &f});
        SModule fm = realize(f, s);
        CorepresentabilityEntry e;
        e.object = name;
        e.hom = homology(rhom(realize(report.wrapped_disk, s), fm));
        e.microstalk = homology(microstalk(fm, {*s.vertex_at(x), p.codirection}));
        e.agree = e.hom == e.microstalk;
        report.entries.push_back(std::move(e));
    }
    return report;
}

DiskAnnihilationReport disk_annihilation_check(const WrappedScene& scene, const ConormalPoint& p) {
    if (p.vertex >= scene.space().num_vertices())
        throw invalid("linking disk over vertex " + std::to_string(p.vertex) + " does not exist");
    if (scene.stops().contains(p))
        throw invalid("disk annihilation needs a point outside the stops; " + point_name(scene, p) + " is a stop");
    DiskAnnihilationReport report;
    report.point = p;
    IntervalSheaf disk = scene_linking_disk(scene, p);
    WrapResult r = wrap_plus(disk, scene.wrap_stops());
    report.trace = r.trace;
    report.annihilated = r.sheaf.generators.empty();
    if (!report.annihilated) {
        StratSpace s = scene.common_space({&r.sheaf});
        report.annihilated = realize(r.sheaf, s).is_zero();
    }
    report.hom_vanishes = true;
    for (const auto& g : stop_adapted_family(scene.wrap_stops()))
        if (!hom_on(scene, disk, g).groups().empty())
            report.hom_vanishes = false;
    return report;
}

// --- stabilization ---------------------------------------------------------------------

namespace {

// Every moving end lies outside [lo, hi] and heads away from it.
bool settled(const IntervalSheaf& f, const WrapStops& stops, const Rational& lo, const Rational& hi) {
    for (const auto& g : f.generators) {
        if (g.full || is_acyclic(g.coefficient))
            continue;
        for (Side side : {Side::left, Side::right}) {
            const Endpoint& e = side == Side::left ? g.left : g.right;
            if (!e.is_finite())
                continue;
            Codirection c = (side == Side::left) == e.closed ? Codirection::plus : Codirection::minus;
            if (stops.contains(e.position, c))
                continue;
            if (f.ambient.circle)
                return false;
            bool right_moving = c == Codirection::plus;
            if (right_moving ? e.position <= hi : e.position >= lo)
                return false;
        }
    }
    return true;
}

} // namespace

StabilizationReport stabilization_check(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f,
                                        const Rational& extra,
                                        const std::vector<std::pair<Rational, Rational>>& speeds) {
    for (const auto& gen : g.generators)
        if (!gen.full && (!gen.left.is_finite() || !gen.right.is_finite()))
            throw invalid("stabilization needs a compactly supported test object");
    std::vector<Rational> hull = scene.space().vertices();
    for (const auto& x : positions(g))
        hull.push_back(x);
    for (const auto& x : positions(f))
        hull.push_back(x);
    Rational lo = hull.empty() ? Rational(0) : *std::min_element(hull.begin(), hull.end());
    Rational hi = hull.empty() ? Rational(0) : *std::max_element(hull.begin(), hull.end());

    StabilizationReport report;
    Rational t = 1;
    for (int i = 0;; ++i) {
        if (i > 64)
            throw WrapError(WrapError::Kind::unsupported_wrap, "partial wrapping does not settle");
        if (settled(wrap_partial(f, scene.wrap_stops(), t, speeds).sheaf, scene.wrap_stops(), lo, hi))
            break;
        t *= 2;
    }
    report.settle_time = t;
    report.time = t + extra;
    IntervalSheaf partial = wrap_partial(f, scene.wrap_stops(), report.time, speeds).sheaf;
    report.partial = hom_on(scene, g, partial);
    report.wrapped = homology(hom_wrapped(scene, g, f));
    report.agree = report.partial == report.wrapped;
    return report;
}

} // namespace microwrap
