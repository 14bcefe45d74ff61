#include "microwrap/microsupp.hpp"

#include "microwrap/errors.hpp"

namespace microwrap {

Codirection opposite(Codirection c) {
    return c == Codirection::plus ? Codirection::minus : Codirection::plus;
}

std::string to_string(Codirection c) {
    return c == Codirection::plus ? "+" : "-";
}

Codirection parse_codirection(std::string_view text) {
    if (text == "+")
        return Codirection::plus;
    if (text == "-" || text == "−")
        return Codirection::minus;
    throw Error("codirection must be \"+\" or \"-\", got '" + std::string(text) + "'");
}

StopSet::StopSet(const StratSpace& space, std::vector<ConormalPoint> points) {
    for (const auto& p : points) {
        if (p.vertex >= space.num_vertices())
            throw SpaceError("stop over vertex " + std::to_string(p.vertex) + ", but the space has only " +
                             std::to_string(space.num_vertices()) + " vertices");
        points_.insert(p);
    }
}

namespace {

Side side_of(Codirection c) {
    return c == Codirection::plus ? Side::left : Side::right;
}

void check_point(const StratSpace& space, const ConormalPoint& p) {
    if (p.vertex >= space.num_vertices())
        throw SpaceError("conormal point over vertex " + std::to_string(p.vertex) + " does not exist");
}

} // namespace

ChainComplex microstalk(const SModule& f, const ConormalPoint& p) {
    check_point(f.base(), p);
    return fiber(f.generization(p.vertex, side_of(p.codirection)));
}

ChainMap microstalk_map(const SModuleMap& f, const ConormalPoint& p) {
    const StratSpace& space = f.source().base();
    check_point(space, p);
    Side side = side_of(p.codirection);
    std::size_t v = space.vertex_stratum(p.vertex), e = space.edge_at(p.vertex, side);
    return induced_fiber_map(f.source().generization(p.vertex, side), f.target().generization(p.vertex, side),
                             f.component(v), f.component(e));
}

std::vector<ConormalPoint> ss_infinity(const SModule& f) {
    std::vector<ConormalPoint> out;
    for (std::size_t v = 0; v < f.base().num_vertices(); ++v)
        for (Codirection c : {Codirection::plus, Codirection::minus}) {
            ConormalPoint p{v, c};
            if (!is_acyclic(microstalk(f, p)))
                out.push_back(p);
        }
    return out;
}

bool in_sh_lambda(const SModule& f, const StopSet& stops) {
    for (const auto& p : ss_infinity(f))
        if (!stops.contains(p))
            return false;
    return true;
}

ConstructibleSet sublevel_set(const StratSpace& line, const Rational& t) {
    if (line.is_circle())
        throw SpaceError("sublevel sets are only defined on the line");
    std::size_t cut = line.locate(t);
    std::vector<bool> members(line.num_strata(), false);
    // below a vertex: strictly earlier strata; inside an edge: up to the edge
    std::size_t last = line.is_vertex(cut) ? cut : cut + 1;
    for (std::size_t s = 0; s < last; ++s)
        members[s] = true;
    return ConstructibleSet(line, std::move(members), true);
}

std::vector<SweepStep> sweep_sections(const SModule& f) {
    const StratSpace& line = f.base();
    if (line.is_circle())
        throw SpaceError("sweep_sections needs a line");
    const auto& xs = line.vertices();
    std::vector<Rational> samples;
    if (xs.empty()) {
        samples.push_back(0);
    } else {
        samples.push_back(xs.front() - 1);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            samples.push_back(xs[i]);
            samples.push_back(i + 1 < xs.size() ? Rational((xs[i] + xs[i + 1]) / 2) : Rational(xs[i] + 1));
        }
    }
    std::vector<ConormalPoint> ss = ss_infinity(f);
    std::vector<SweepStep> steps;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        SweepStep step;
        step.from = samples[k];
        step.to = samples[k + 1];
        step.restriction_is_quasi_iso =
            is_quasi_iso(restriction(sublevel_set(line, step.to), sublevel_set(line, step.from), f));
        for (const auto& p : ss)
            if (p.codirection == Codirection::plus && step.from <= xs[p.vertex] && xs[p.vertex] < step.to)
                step.crosses_microsupport = true;
        steps.push_back(step);
    }
    return steps;
}

} // namespace microwrap
