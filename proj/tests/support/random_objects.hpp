#pragma once

#include "microwrap/smod.hpp"

#include <random>

namespace oracle {

/// Stalks in degrees [0, 1] with ranks ≤ max_rank; random generization maps.
microwrap::SModule random_smodule(std::mt19937& rng, const microwrap::StratSpace& space, std::size_t max_rank,
                                  int bound = 2);

/// Random strict module map, drawn from an integer kernel basis of the
/// chain-map and commuting-square equations.
microwrap::SModuleMap random_smodule_map(std::mt19937& rng, const microwrap::SModule& source,
                                         const microwrap::SModule& target, int coeff_bound = 1);

} // namespace oracle

#include "microwrap/wrapper.hpp"
#include "microwrap/microsupp.hpp"

namespace oracle {

/// One of ℤ, ℤ[1], ℤ², ℤ/2 (as the cone of ×2).
microwrap::ChainComplex random_coefficient(std::mt19937& rng, bool torsion = true);

/// Generators with ends drawn from `grid` (plus ±∞ on a line, plus the full
/// circle on a circle) and random open/closed types.
microwrap::IntervalSheaf random_interval_sheaf(std::mt19937& rng, const microwrap::Ambient& ambient,
                                               const std::vector<microwrap::Rational>& grid, std::size_t max_generators);

/// Every single-generator sheaf with ends at stop positions (or ±∞) whose
/// Legendrian points all lie in the stops; on a circle, arcs up to one turn
/// and the constant sheaf.
std::vector<microwrap::IntervalSheaf> sh_lambda_family(const microwrap::WrapStops& stops);

/// rhom(realize g, realize f) on the adapted space of both and the stops.
microwrap::HomologyProfile hom_profile(const microwrap::IntervalSheaf& g, const microwrap::IntervalSheaf& f,
                                       const microwrap::WrapStops& stops);

/// Γ_{φ ≥ 0}(F)_v = fib(F_v → Γ({φ < 0} near v; F)) through sections and
/// restriction, φ = ±(x − v). Needs both edges at v to be distinct strata.
microwrap::ChainComplex microstalk_by_sections(const microwrap::SModule& f, const microwrap::ConormalPoint& p);

} // namespace oracle
