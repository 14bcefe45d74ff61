#include "microwrap/wrapper.hpp"

#include "microwrap/errors.hpp"

#include <algorithm>
#include <sstream>

namespace microwrap {

namespace {

WrapError invalid(const std::string& what) {
    return WrapError(WrapError::Kind::invalid_input, what);
}

std::string end_text(const Endpoint& e, Side side) {
    switch (e.kind) {
    case Endpoint::Kind::minus_infinity:
        return "-inf";
    case Endpoint::Kind::plus_infinity:
        return "+inf";
    default:
        return to_string(e.position);
    }
    (void)side;
}

// dual-cone rule
Codirection codirection_of(const Endpoint& e, Side side) {
    return (side == Side::left) == e.closed ? Codirection::plus : Codirection::minus;
}

bool moves_at_all(const IntervalGenerator& g) {
    return !g.full && !is_acyclic(g.coefficient);
}

Endpoint& end_of(IntervalGenerator& g, Side side) {
    return side == Side::left ? g.left : g.right;
}

const Endpoint& end_of(const IntervalGenerator& g, Side side) {
    return side == Side::left ? g.left : g.right;
}

} // namespace

Ambient Ambient::on_circle(const Rational& perimeter) {
    if (perimeter <= 0)
        throw invalid("circle perimeter must be positive, got " + microwrap::to_string(perimeter));
    return {true, perimeter};
}

Ambient Ambient::of(const StratSpace& space) {
    return space.is_circle() ? on_circle(space.perimeter()) : line();
}

// --- generators ---------------------------------------------------------------

IntervalGenerator IntervalGenerator::make(Endpoint left, Endpoint right, ChainComplex coefficient) {
    if (left.kind == Endpoint::Kind::plus_infinity || right.kind == Endpoint::Kind::minus_infinity)
        throw invalid("interval ends point the wrong way");
    if ((!left.is_finite() && left.closed) || (!right.is_finite() && right.closed))
        throw invalid("infinite interval ends must be open");
    if (left.is_finite() && right.is_finite()) {
        if (left.position > right.position)
            throw invalid("interval left end " + microwrap::to_string(left.position) + " exceeds right end " +
                          microwrap::to_string(right.position));
        if (left.position == right.position && !(left.closed && right.closed))
            throw invalid("degenerate interval at " + microwrap::to_string(left.position) + " must be closed on both sides");
    }
    return {left, right, std::move(coefficient), false};
}

IntervalGenerator IntervalGenerator::skyscraper(const Rational& x, ChainComplex coefficient) {
    return make(Endpoint::closed_at(x), Endpoint::closed_at(x), std::move(coefficient));
}

IntervalGenerator IntervalGenerator::whole_circle(ChainComplex coefficient) {
    return {Endpoint::open(0), Endpoint::open(0), std::move(coefficient), true};
}

bool IntervalGenerator::is_skyscraper() const {
    return !full && left.is_finite() && right.is_finite() && left.position == right.position;
}

std::string IntervalGenerator::to_string() const {
    std::ostringstream os;
    if (full)
        os << "S1";
    else
        os << (left.closed ? "[" : "(") << end_text(left, Side::left) << "," << end_text(right, Side::right)
           << (right.closed ? "]" : ")");
    if (!(coefficient == ChainComplex::unit()))
        os << " x " << coefficient;
    return os.str();
}

IntervalSheaf IntervalSheaf::make(Ambient ambient, std::vector<IntervalGenerator> generators) {
    for (const auto& g : generators) {
        if (g.full && !ambient.circle)
            throw invalid("full-circle generator on a line");
        if (ambient.circle && !g.full && (!g.left.is_finite() || !g.right.is_finite()))
            throw invalid("infinite interval end on a circle");
    }
    return {std::move(ambient), std::move(generators)};
}

std::string IntervalSheaf::to_string() const {
    if (generators.empty())
        return "0";
    std::string out;
    for (const auto& g : generators)
        out += (out.empty() ? "" : " + ") + g.to_string();
    return out;
}

bool LegendrianPoint::operator<(const LegendrianPoint& other) const {
    if (position != other.position)
        return position < other.position;
    return codirection < other.codirection;
}

// --- stops --------------------------------------------------------------------

WrapStops::WrapStops(Ambient ambient, std::vector<LegendrianPoint> points)
    : ambient_(std::move(ambient)), points_(std::move(points)) {
    if (ambient_.circle)
        for (auto& p : points_)
            p.position = mod_positive(p.position, ambient_.perimeter);
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

WrapStops::WrapStops(const StratSpace& space, const StopSet& stops) : ambient_(Ambient::of(space)) {
    for (const auto& p : stops.points()) {
        if (p.vertex >= space.num_vertices())
            throw invalid("stop over vertex " + std::to_string(p.vertex) + " does not exist");
        points_.push_back({space.vertices()[p.vertex], p.codirection});
    }
    std::sort(points_.begin(), points_.end());
}

bool WrapStops::contains(const Rational& x, Codirection c) const {
    Rational at = ambient_.circle ? mod_positive(x, ambient_.perimeter) : x;
    return std::binary_search(points_.begin(), points_.end(), LegendrianPoint{at, c});
}

WrapStops WrapStops::with(const LegendrianPoint& p) const {
    std::vector<LegendrianPoint> more = points_;
    more.push_back(p);
    return WrapStops(ambient_, std::move(more));
}

std::vector<LegendrianPoint> ss_points(const IntervalSheaf& f) {
    std::vector<LegendrianPoint> out;
    for (const auto& g : f.generators) {
        if (!moves_at_all(g))
            continue;
        for (Side side : {Side::left, Side::right}) {
            const Endpoint& e = side == Side::left ? g.left : g.right;
            if (!e.is_finite())
                continue;
            Rational x = f.ambient.circle ? mod_positive(e.position, f.ambient.perimeter) : e.position;
            out.push_back({x, codirection_of(e, side)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- engine -------------------------------------------------------------------

std::string WrapEvent::describe() const {
    std::string where = "generator " + std::to_string(generator);
    std::string end = side == Side::left ? "left" : "right";
    switch (kind) {
    case Kind::rest:
        return where + ": " + end + " end rests on the stop at " + to_string(position);
    case Kind::crossing:
        return where + ": ends cross at " + to_string(position);
    case Kind::escape:
        return where + ": " + end + " end escapes to " + (side == Side::left ? "-inf" : "+inf") +
               (dropped ? "; generator vanishes" : "");
    case Kind::advance:
        return "all moving ends advance by " + to_string(elapsed.value_or(0));
    }
    return {};
}

std::size_t WrapTrace::count(WrapEvent::Kind kind) const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [&](const WrapStep& s) { return s.event.kind == kind; }));
}

namespace {

using Speeds = std::vector<std::pair<Rational, Rational>>;

struct Candidate {
    WrapEvent::Kind kind;
    Rational time;
    Rational position;
    std::size_t generator;
    Side side;
};

int rank(const Candidate& c) {
    return c.kind == WrapEvent::Kind::rest ? 0 : 1;
}

// rest before crossing at equal times, then left to right
bool earlier(const Candidate& a, const Candidate& b) {
    if (a.time != b.time)
        return a.time < b.time;
    if (rank(a) != rank(b))
        return rank(a) < rank(b);
    if (a.position != b.position)
        return a.position < b.position;
    return std::make_pair(a.generator, a.side) < std::make_pair(b.generator, b.side);
}

class Engine {
public:
    Engine(IntervalSheaf state, const WrapStops& stops, int direction, Speeds speeds)
        : state_(std::move(state)), stops_(stops), direction_(direction), speeds_(std::move(speeds)) {
        if (!(stops_.ambient() == state_.ambient) && !stops_.points().empty())
            throw invalid("stops and interval sheaf live on different ambients");
        if (speeds_.empty())
            speeds_.assign(state_.generators.size(), {Rational(1), Rational(1)});
        if (speeds_.size() != state_.generators.size())
            throw invalid("one pair of speeds per generator expected");
        for (const auto& [a, b] : speeds_)
            if (a <= 0 || b <= 0)
                throw invalid("wrapping speeds must be positive");
    }

    const IntervalSheaf& state() const { return state_; }

    /// Signed velocity of an end; zero when resting, escaped or inert.
    Rational velocity(std::size_t g, Side side) const {
        const IntervalGenerator& gen = state_.generators[g];
        const Endpoint& e = side == Side::left ? gen.left : gen.right;
        if (!moves_at_all(gen) || !e.is_finite())
            return 0;
        Codirection c = codirection_of(e, side);
        if (stops_.contains(e.position, c))
            return 0;
        int sign = (c == Codirection::plus ? 1 : -1) * direction_;
        const Rational& speed = side == Side::left ? speeds_[g].first : speeds_[g].second;
        return sign * speed;
    }

    /// Distance to the next stop of codirection c ahead of x in direction sign.
    std::optional<Rational> stop_distance(const Rational& x, Codirection c, int sign) const {
        std::optional<Rational> best;
        bool any = false;
        for (const auto& p : stops_.points()) {
            if (p.codirection != c)
                continue;
            any = true;
            Rational d = (p.position - x) * sign;
            if (state_.ambient.circle) {
                d = mod_positive(d, state_.ambient.perimeter);
                if (d == 0)
                    d = state_.ambient.perimeter;
            }
            if (d > 0 && (!best || d < *best))
                best = d;
        }
        if (!any && state_.ambient.circle)
            throw WrapError(WrapError::Kind::unsupported_wrap,
                            "a point of codirection " + to_string(c) +
                                " keeps wrapping around the circle: no stop of that codirection");
        return best;
    }

    std::optional<Candidate> next_finite() const {
        std::optional<Candidate> best;
        for (auto& c : finite_candidates())
            if (!best || earlier(c, *best))
                best = std::move(c);
        return best;
    }

    /// Every end that reaches a stop at the same time as `first`, other than
    /// `first` itself.
    std::vector<Candidate> simultaneous_rests(const Candidate& first) const {
        std::vector<Candidate> out;
        if (first.kind != WrapEvent::Kind::rest)
            return out;
        for (auto& c : finite_candidates())
            if (c.kind == WrapEvent::Kind::rest && c.time == first.time &&
                !(c.generator == first.generator && c.side == first.side))
                out.push_back(std::move(c));
        std::sort(out.begin(), out.end(), earlier);
        return out;
    }

    /// Zero-time rest events for ends that arrived together with the event of
    /// `applied`; they are already resting in the current state.
    std::vector<WrapStep> arrivals(const std::vector<Candidate>& ties, const WrapEvent& applied) const {
        std::vector<WrapStep> out;
        for (const auto& c : ties) {
            std::size_t g = c.generator;
            if (applied.dropped) {
                if (g == applied.generator)
                    continue;
                if (g > applied.generator)
                    --g;
            }
            if (g >= state_.generators.size())
                continue;
            const Endpoint& e = end_of(state_.generators[g], c.side);
            if (!e.is_finite() || e.position != c.position || velocity(g, c.side) != 0)
                continue;
            WrapEvent ev;
            ev.kind = WrapEvent::Kind::rest;
            ev.generator = g;
            ev.side = c.side;
            ev.elapsed = Rational(0);
            ev.position = c.position;
            out.push_back({ev, state_});
        }
        return out;
    }

    std::vector<Candidate> finite_candidates() const {
        std::vector<Candidate> all;
        auto offer = [&](Candidate c) { all.push_back(std::move(c)); };
        for (std::size_t g = 0; g < state_.generators.size(); ++g) {
            const IntervalGenerator& gen = state_.generators[g];
            Rational vl = velocity(g, Side::left), vr = velocity(g, Side::right);
            for (Side side : {Side::left, Side::right}) {
                const Rational& v = side == Side::left ? vl : vr;
                if (v == 0)
                    continue;
                const Endpoint& e = side == Side::left ? gen.left : gen.right;
                int sign = v > 0 ? 1 : -1;
                if (auto d = stop_distance(e.position, codirection_of(e, side), sign)) {
                    Rational speed = v * sign;
                    offer({WrapEvent::Kind::rest, *d / speed, e.position + sign * *d, g, side});
                }
            }
            Rational closing = vl - vr;
            if (closing > 0 && gen.left.is_finite() && gen.right.is_finite()) {
                Rational t = (gen.right.position - gen.left.position) / closing;
                offer({WrapEvent::Kind::crossing, t, gen.left.position + vl * t, g, Side::left});
            }
        }
        return all;
    }

    std::optional<Candidate> next_escape() const {
        std::optional<Candidate> best;
        for (std::size_t g = 0; g < state_.generators.size(); ++g)
            for (Side side : {Side::left, Side::right}) {
                Rational v = velocity(g, side);
                if (v == 0)
                    continue;
                const IntervalGenerator& gen = state_.generators[g];
                Candidate c{WrapEvent::Kind::escape, 0, (side == Side::left ? gen.left : gen.right).position, g, side};
                if (!best || c.position < best->position)
                    best = c;
            }
        return best;
    }

    void advance(const Rational& t) {
        if (t == 0)
            return;
        std::vector<std::pair<Rational, Rational>> v;
        for (std::size_t g = 0; g < state_.generators.size(); ++g)
            v.emplace_back(velocity(g, Side::left), velocity(g, Side::right));
        for (std::size_t g = 0; g < state_.generators.size(); ++g) {
            auto& gen = state_.generators[g];
            if (v[g].first != 0)
                gen.left.position += v[g].first * t;
            if (v[g].second != 0)
                gen.right.position += v[g].second * t;
        }
    }

    WrapStep apply(const Candidate& c) {
        WrapEvent ev;
        ev.kind = c.kind;
        ev.generator = c.generator;
        ev.side = c.side;
        ev.position = c.position;
        if (c.kind == WrapEvent::Kind::escape) {
            // the position of an escaping end keeps its last finite value
            auto& gen = state_.generators[c.generator];
            bool outward = velocity(c.generator, c.side) > 0;
            end_of(gen, c.side) = outward ? Endpoint::plus_infinity() : Endpoint::minus_infinity();
            ev.side = outward ? Side::right : Side::left;
            if (gen.left.kind == Endpoint::Kind::plus_infinity || gen.right.kind == Endpoint::Kind::minus_infinity) {
                ev.dropped = true;
                erase(c.generator);
            }
        } else {
            ev.elapsed = c.time;
            advance(c.time);
            auto& gen = state_.generators[c.generator];
            if (c.kind == WrapEvent::Kind::rest) {
                end_of(gen, c.side).position = c.position;
                if (gen.left.is_finite() && gen.right.is_finite() && gen.left.position == gen.right.position &&
                    !(gen.left.closed && gen.right.closed)) {
                    if (gen.left.closed != gen.right.closed) {
                        // a half-open interval of length zero is zero
                        ev.dropped = true;
                        erase(c.generator);
                    } else {
                        // an open interval pinned at length zero still crosses
                        ev.kind = WrapEvent::Kind::crossing;
                        cross(c.generator, c.position);
                    }
                }
            } else {
                cross(c.generator, c.position);
                if (!gen.left.closed && !gen.right.closed && velocity(c.generator, Side::left) == 0 &&
                    velocity(c.generator, Side::right) == 0) {
                    // re-emerged empty and pinned on both sides
                    ev.dropped = true;
                    erase(c.generator);
                }
            }
        }
        return {ev, state_};
    }

    WrapStep advance_only(const Rational& t) {
        advance(t);
        WrapEvent ev;
        ev.kind = WrapEvent::Kind::advance;
        ev.elapsed = t;
        return {ev, state_};
    }

    bool anything_moves() const {
        for (std::size_t g = 0; g < state_.generators.size(); ++g)
            if (velocity(g, Side::left) != 0 || velocity(g, Side::right) != 0)
                return true;
        return false;
    }

private:
    // Both ends meet at m and swap type; the coefficient shifts with the direction.
    void cross(std::size_t g, const Rational& m) {
        auto& gen = state_.generators[g];
        gen.left = {Endpoint::Kind::finite, m, !gen.left.closed};
        gen.right = {Endpoint::Kind::finite, m, !gen.right.closed};
        gen.coefficient = shift(gen.coefficient, direction_);
    }

    void erase(std::size_t g) {
        state_.generators.erase(state_.generators.begin() + static_cast<std::ptrdiff_t>(g));
        speeds_.erase(speeds_.begin() + static_cast<std::ptrdiff_t>(g));
    }

    IntervalSheaf state_;
    const WrapStops& stops_;
    int direction_;
    Speeds speeds_;
};

std::optional<WrapStep> step(const IntervalSheaf& f, const WrapStops& stops, int direction) {
    Engine e(f, stops, direction, {});
    if (auto c = e.next_finite())
        return e.apply(*c);
    if (auto c = e.next_escape())
        return e.apply(*c);
    return std::nullopt;
}

// Applies one finite event and reports simultaneous arrivals as separate steps.
void apply_with_arrivals(Engine& e, const Candidate& c, WrapTrace& trace) {
    std::vector<Candidate> ties = e.simultaneous_rests(c);
    trace.steps.push_back(e.apply(c));
    for (auto& s : e.arrivals(ties, trace.steps.back().event))
        trace.steps.push_back(std::move(s));
}

WrapResult run(const IntervalSheaf& f, const WrapStops& stops, int direction) {
    WrapTrace trace{direction > 0, f, {}};
    Engine e(f, stops, direction, {});
    while (true) {
        if (auto c = e.next_finite())
            apply_with_arrivals(e, *c, trace);
        else if (auto c = e.next_escape())
            trace.steps.push_back(e.apply(*c));
        else
            break;
    }
    return {e.state(), std::move(trace)};
}

} // namespace

std::optional<WrapStep> positive_step(const IntervalSheaf& f, const WrapStops& stops) {
    return step(f, stops, 1);
}

std::optional<WrapStep> negative_step(const IntervalSheaf& f, const WrapStops& stops) {
    return step(f, stops, -1);
}

WrapResult wrap_plus(const IntervalSheaf& f, const WrapStops& stops) {
    return run(f, stops, 1);
}

WrapResult wrap_minus(const IntervalSheaf& f, const WrapStops& stops) {
    return run(f, stops, -1);
}

WrapResult wrap_partial(const IntervalSheaf& f, const WrapStops& stops, const Rational& budget, const Speeds& speeds) {
    if (budget < 0)
        throw invalid("wrapping time must be nonnegative");
    WrapTrace trace{true, f, {}};
    Engine e(f, stops, 1, speeds);
    Rational left = budget;
    while (true) {
        auto c = e.next_finite();
        if (!c || c->time > left) {
            if (left > 0 && e.anything_moves())
                trace.steps.push_back(e.advance_only(left));
            break;
        }
        left -= c->time;
        apply_with_arrivals(e, *c, trace);
    }
    return {e.state(), std::move(trace)};
}

IntervalSheaf linking_disk(const StratSpace& space, const ConormalPoint& p, const Rational& delta,
                           const ChainComplex& coefficient) {
    if (p.vertex >= space.num_vertices())
        throw invalid("linking disk over vertex " + std::to_string(p.vertex) + " does not exist");
    if (delta <= 0)
        throw invalid("linking disk radius must be positive");
    const Rational& x = space.vertices()[p.vertex];
    if (space.is_circle() && 2 * delta >= space.perimeter())
        throw invalid("linking disk radius " + to_string(delta) + " wraps around the circle");
    for (std::size_t w = 0; w < space.num_vertices(); ++w) {
        if (w == p.vertex)
            continue;
        Rational d = space.vertices()[w] - x;
        if (space.is_circle()) {
            d = mod_positive(d, space.perimeter());
            d = std::min(d, Rational(space.perimeter() - d));
        }
        if (abs(d) <= delta)
            throw invalid("linking disk radius " + to_string(delta) + " reaches vertex " + std::to_string(w));
    }
    auto g = p.codirection == Codirection::plus
                 ? IntervalGenerator::make(Endpoint::closed_at(x - delta), Endpoint::open(x + delta), coefficient)
                 : IntervalGenerator::make(Endpoint::open(x - delta), Endpoint::closed_at(x + delta), coefficient);
    return IntervalSheaf::make(Ambient::of(space), {g});
}

} // namespace microwrap
