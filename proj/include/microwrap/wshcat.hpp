#pragma once

// Wrapped Hom complexes and the comparison with Hom between wrapped objects.
//
// Every Hom is computed on one common refinement of the scene triangulation
// that contains every endpoint involved; profiles are compared degreewise.

#include "microwrap/wrapper.hpp"

#include <map>
#include <string>
#include <vector>

namespace microwrap {

class WrappedScene {
public:
    /// Throws WrapError(invalid_input) on duplicate names or objects living on
    /// another ambient.
    static WrappedScene make(StratSpace space, StopSet stops,
                             std::vector<std::pair<std::string, IntervalSheaf>> catalog);

    const StratSpace& space() const noexcept { return space_; }
    const StopSet& stops() const noexcept { return stops_; }
    const WrapStops& wrap_stops() const noexcept { return wrap_stops_; }
    Ambient ambient() const { return Ambient::of(space_); }
    const std::vector<std::pair<std::string, IntervalSheaf>>& catalog() const noexcept { return catalog_; }
    /// Throws WrapError(invalid_input) for an unknown name.
    const IntervalSheaf& object(const std::string& name) const;

    /// Scene vertices plus every endpoint of the given sheaves.
    StratSpace common_space(const std::vector<const IntervalSheaf*>& sheaves) const;

private:
    StratSpace space_ = StratSpace::line({});
    StopSet stops_;
    WrapStops wrap_stops_;
    std::vector<std::pair<std::string, IntervalSheaf>> catalog_;
};

struct HomReport {
    std::string source;
    std::string target;
    HomologyProfile wrapped;
    HomologyProfile comparison;
    bool agree = false;
};

/// rhom(G, wrap⁺F): the stabilized wrapping colimit.
ChainComplex hom_wrapped(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f);
/// rhom(wrap⁺G, wrap⁺F).
ChainComplex comparison_hom(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f);
HomReport compare_homs(const WrappedScene& scene, const std::string& source, const std::string& target);

/// A generator of the compact objects of Sh_Λ, expressed as the wrap of a
/// small ball (corepresenting a stalk) or of a linking disk (corepresenting a
/// microstalk), checked against every catalog object of Sh_Λ.
struct GeneratorCheck {
    std::string name;
    IntervalSheaf candidate;
    IntervalSheaf wrapped;
    bool in_sh_lambda = false;
    bool corepresents = false;
};

struct EquivalenceReport {
    std::vector<HomReport> homs;
    std::vector<GeneratorCheck> generators;
    /// Catalog objects of Sh_Λ that wrap⁺ fixes.
    std::vector<std::pair<std::string, bool>> fixed;
    /// Candidates whose wrap never settles (a circle lacking a stop of some
    /// codirection); they are left out of the generator checks.
    std::vector<std::string> skipped;

    bool all_agree() const;
};

EquivalenceReport verify_equivalence(const WrappedScene& scene);

/// Radius of linking disks and balls: a quarter of the smallest gap between
/// scene vertices (and of the perimeter).
Rational disk_radius(const WrappedScene& scene);
IntervalSheaf scene_linking_disk(const WrappedScene& scene, const ConormalPoint& p);

struct CorepresentabilityEntry {
    std::string object;
    HomologyProfile hom;
    HomologyProfile microstalk;
    bool agree = false;
};

struct CorepresentabilityReport {
    ConormalPoint point;
    IntervalSheaf wrapped_disk;
    /// Catalog objects of Sh_Λ only.
    std::vector<CorepresentabilityEntry> entries;

    bool all_agree() const;
};

/// Throws WrapError(invalid_input) when p is not a stop.
CorepresentabilityReport corepresentability_check(const WrappedScene& scene, const ConormalPoint& p);

struct DiskAnnihilationReport {
    ConormalPoint point;
    WrapTrace trace;
    /// wrap⁺ over Λ of D_p is the zero sheaf.
    bool annihilated = false;
    /// Hom(D_p, G) vanishes for every G of the stop-adapted family of Sh_Λ,
    /// i.e. D_p dies in the quotient by Sh_Λ'.
    bool hom_vanishes = false;

    bool agree() const { return annihilated == hom_vanishes; }
};

/// Λ is the scene's stop set and Λ' = Λ ∪ {p}. Throws WrapError(invalid_input) when p ∈ Λ.
DiskAnnihilationReport disk_annihilation_check(const WrappedScene& scene, const ConormalPoint& p);

/// Single-generator sheaves with ends at stop positions (or ±∞) whose
/// Legendrian points lie in Λ; on a circle also arcs up to one turn and the
/// constant sheaf.
std::vector<IntervalSheaf> stop_adapted_family(const WrapStops& stops);

struct StabilizationReport {
    /// Wrapping time after which nothing moves inside the hull of the scene.
    Rational settle_time;
    Rational time;
    HomologyProfile partial;
    HomologyProfile wrapped;
    bool agree = false;
};

/// Wraps F for settle_time + extra with the given end speeds and compares
/// rhom(G, F^{w_t}) with hom_wrapped(G, F). G must be compactly supported.
StabilizationReport stabilization_check(const WrappedScene& scene, const IntervalSheaf& g, const IntervalSheaf& f,
                                        const Rational& extra,
                                        const std::vector<std::pair<Rational, Rational>>& speeds = {});

} // namespace microwrap
