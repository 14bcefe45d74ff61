#pragma once

// Interval sheaves and the wrapping engine.
//
// A generator is ℤ_I ⊗ C for an interval I with open or closed ends. Its
// Legendrian points follow the dual-cone rule:
//
//   left open  ↦ (l, −)    left closed  ↦ (l, +)
//   right open ↦ (r, +)    right closed ↦ (r, −)
//
// Positive wrapping moves (x, +) toward +x and (x, −) toward −x until the
// point rests on a stop of the same codirection or escapes to infinity. So
// open ends expand, closed ends shrink, and a closed interval that shrinks to
// a point re-emerges as an open one with coefficient shifted by [1]. Negative
// wrapping is the time reversal, with shift [−1].
//
// On a circle, intervals live on the universal cover and the sheaf is the
// pushforward: the stalk at x is the sum over all lifts of x.

#include "microwrap/microsupp.hpp"
#include "microwrap/smod.hpp"

#include <optional>
#include <string>
#include <vector>

namespace microwrap {

struct Ambient {
    bool circle = false;
    /// Only meaningful on a circle.
    Rational perimeter;

    static Ambient line() { return {}; }
    static Ambient on_circle(const Rational& perimeter);
    static Ambient of(const StratSpace& space);

    bool operator==(const Ambient& other) const = default;
};

struct Endpoint {
    enum class Kind { finite, minus_infinity, plus_infinity };

    Kind kind = Kind::finite;
    Rational position;
    bool closed = false;

    static Endpoint open(const Rational& x) { return {Kind::finite, x, false}; }
    static Endpoint closed_at(const Rational& x) { return {Kind::finite, x, true}; }
    static Endpoint minus_infinity() { return {Kind::minus_infinity, 0, false}; }
    static Endpoint plus_infinity() { return {Kind::plus_infinity, 0, false}; }

    bool is_finite() const noexcept { return kind == Kind::finite; }
    bool operator==(const Endpoint& other) const = default;
};

struct IntervalGenerator {
    Endpoint left;
    Endpoint right;
    ChainComplex coefficient = ChainComplex::unit();
    /// The constant sheaf on a whole circle; endpoints are ignored.
    bool full = false;

    /// Throws WrapError(invalid_input) unless left < right, or both are the
    /// same closed point, and infinite ends are open and pointing outward.
    static IntervalGenerator make(Endpoint left, Endpoint right, ChainComplex coefficient = ChainComplex::unit());
    static IntervalGenerator skyscraper(const Rational& x, ChainComplex coefficient = ChainComplex::unit());
    static IntervalGenerator whole_circle(ChainComplex coefficient = ChainComplex::unit());

    bool is_skyscraper() const;
    /// "(1/4,1/2)", "[0,+inf)", "S1"; a non-unit coefficient is appended as " x {0:1, 1:1}".
    std::string to_string() const;
    bool operator==(const IntervalGenerator& other) const = default;
};

struct IntervalSheaf {
    Ambient ambient;
    std::vector<IntervalGenerator> generators;

    /// Rejects infinite ends on a circle and full generators on a line.
    static IntervalSheaf make(Ambient ambient, std::vector<IntervalGenerator> generators);

    std::string to_string() const;
    bool operator==(const IntervalSheaf& other) const = default;
};

/// A point of the cosphere bundle given by its position.
struct LegendrianPoint {
    Rational position;
    Codirection codirection = Codirection::plus;

    bool operator==(const LegendrianPoint& other) const = default;
    bool operator<(const LegendrianPoint& other) const;
};

/// Stop positions in the ambient of a wrap.
class WrapStops {
public:
    WrapStops() = default;
    WrapStops(Ambient ambient, std::vector<LegendrianPoint> points);
    WrapStops(const StratSpace& space, const StopSet& stops);

    const Ambient& ambient() const noexcept { return ambient_; }
    const std::vector<LegendrianPoint>& points() const noexcept { return points_; }
    /// Also matches translates by the perimeter on a circle.
    bool contains(const Rational& x, Codirection c) const;
    WrapStops with(const LegendrianPoint& p) const;

private:
    Ambient ambient_;
    std::vector<LegendrianPoint> points_;
};

/// Sorted; a generator with acyclic coefficient contributes nothing.
std::vector<LegendrianPoint> ss_points(const IntervalSheaf& f);

// --- wrapping ---------------------------------------------------------------

struct WrapEvent {
    enum class Kind { rest, crossing, escape, advance };

    Kind kind = Kind::rest;
    /// Index into the state before the event.
    std::size_t generator = 0;
    Side side = Side::left;
    /// Time elapsed since the previous state; nullopt for an escape.
    std::optional<Rational> elapsed;
    /// Resting or crossing position; for an escape, the last finite position.
    Rational position;
    /// An escape that emptied its generator removes it.
    bool dropped = false;

    std::string describe() const;
};

struct WrapStep {
    WrapEvent event;
    IntervalSheaf state;
};

struct WrapTrace {
    bool positive = true;
    IntervalSheaf initial;
    std::vector<WrapStep> steps;

    const IntervalSheaf& final_state() const { return steps.empty() ? initial : steps.back().state; }
    std::size_t count(WrapEvent::Kind kind) const;
};

/// One event of positive wrapping, or nullopt when every point rests or has escaped.
std::optional<WrapStep> positive_step(const IntervalSheaf& f, const WrapStops& stops);
std::optional<WrapStep> negative_step(const IntervalSheaf& f, const WrapStops& stops);

struct WrapResult {
    IntervalSheaf sheaf;
    WrapTrace trace;
};

/// Throws WrapError(unsupported_wrap) on a circle when a moving point has no
/// stop of its codirection to rest on. Ends reaching stops at the same moment
/// each get a rest event; all but the first have zero elapsed time.
WrapResult wrap_plus(const IntervalSheaf& f, const WrapStops& stops);
WrapResult wrap_minus(const IntervalSheaf& f, const WrapStops& stops);

/// Positive wrapping for a finite time. `speeds` holds a positive speed per
/// generator end (left, right); empty means unit speed everywhere. Points do
/// not escape in finite time.
WrapResult wrap_partial(const IntervalSheaf& f, const WrapStops& stops, const Rational& budget,
                        const std::vector<std::pair<Rational, Rational>>& speeds = {});

/// D_(v,+) = ℤ on [v−δ, v+δ), D_(v,−) = ℤ on (v−δ, v+δ]. Throws WrapError
/// when another vertex lies in [v−δ, v+δ] or δ ≤ 0.
IntervalSheaf linking_disk(const StratSpace& space, const ConormalPoint& p, const Rational& delta,
                           const ChainComplex& coefficient = ChainComplex::unit());

// --- realization ---------------------------------------------------------------

/// Every finite endpoint position, reduced modulo the perimeter on a circle.
std::vector<Rational> positions(const IntervalSheaf& f);
/// Line or circle with exactly these vertices (deduplicated, sorted). A circle
/// always gets at least the vertex 0.
StratSpace adapted_space(const Ambient& ambient, std::vector<Rational> vertices);

/// Throws WrapError(unrealizable) when an endpoint is not a vertex of `space`.
SModule realize(const IntervalSheaf& f, const StratSpace& space);
SModule realize(const IntervalGenerator& g, const StratSpace& space);

/// Identity on every stratum copy covered by both generators, which must have
/// equal coefficients. Throws WrapError(unrealizable) when that is not a map.
SModuleMap overlap_map(const IntervalGenerator& from, const IntervalGenerator& to, const StratSpace& space);

/// The continuation map realize(initial) → realize(final) of a positive trace,
/// as a cospan: `forward` into a middle object M and a quasi-isomorphism
/// `equivalence` from realize(final) into M. Without crossings M is the final
/// state and `equivalence` is the identity.
struct ContinuationMap {
    SModuleMap forward;
    SModuleMap equivalence;
};

ContinuationMap continuation_map(const WrapTrace& trace, const StratSpace& space);

} // namespace microwrap
