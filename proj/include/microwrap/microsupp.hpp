#pragma once

// Microstalks and microsupport at infinity of 1D constructible sheaves.
//
//   μ_(v,+) F = fib(F(v) → F(left edge))
//   μ_(v,−) F = fib(F(v) → F(right edge))
//
// so that ℤ on [v, ∞) has microsupport {(v,+)} and ℤ on (0,1) has
// microsupport {(0,−), (1,+)}.

#include "microwrap/smod.hpp"

#include <set>
#include <string>
#include <vector>

namespace microwrap {

enum class Codirection { plus, minus };

Codirection opposite(Codirection c);
/// "+" or "-".
std::string to_string(Codirection c);
/// Accepts "+", "-" and the Unicode minus sign. Throws Error otherwise.
Codirection parse_codirection(std::string_view text);

struct ConormalPoint {
    std::size_t vertex = 0;
    Codirection codirection = Codirection::plus;

    auto operator<=>(const ConormalPoint&) const = default;
};

class StopSet {
public:
    StopSet() = default;
    /// Throws SpaceError when a point does not lie over a vertex of `space`.
    StopSet(const StratSpace& space, std::vector<ConormalPoint> points);

    bool contains(const ConormalPoint& p) const { return points_.count(p) != 0; }
    const std::set<ConormalPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    bool operator==(const StopSet& other) const = default;

private:
    std::set<ConormalPoint> points_;
};

/// Throws SpaceError for a point not over a vertex of the base.
ChainComplex microstalk(const SModule& f, const ConormalPoint& p);
/// μ_p(f) : μ_p(source) → μ_p(target).
ChainMap microstalk_map(const SModuleMap& f, const ConormalPoint& p);

/// Conormal points with non-acyclic microstalk, sorted.
std::vector<ConormalPoint> ss_infinity(const SModule& f);
bool in_sh_lambda(const SModule& f, const StopSet& stops);

// --- sublevel sweep ------------------------------------------------------------

/// The open set (−∞, t) on a line, up to the deformation retraction along an
/// edge: for t inside an edge, the edge is included.
ConstructibleSet sublevel_set(const StratSpace& line, const Rational& t);

struct SweepStep {
    Rational from;
    Rational to;
    /// Restriction Γ((−∞, to); F) → Γ((−∞, from); F) is a quasi-isomorphism.
    bool restriction_is_quasi_iso = false;
    /// Some point (x, +) of the microsupport has from ≤ x < to.
    bool crosses_microsupport = false;
};

/// Sweeps t left to right through one sample point per stratum of a line.
std::vector<SweepStep> sweep_sections(const SModule& f);

} // namespace microwrap
