#pragma once

// Constructible sheaves as modules over the face poset of a 1D triangulation.
//
// An SModule stores the stalk complex on every stratum and, for every vertex
// v and side, the generization map F(v) → F(edge on that side). Arrows are
// indexed by (vertex, side) rather than by pairs of strata so that a circle
// with one vertex (whose only edge meets the vertex from both sides) is
// handled correctly; everywhere else this is the face-poset model.
//
// Dictionary: representable(s) is the constant sheaf on star(s), and
// indicator_locally_closed(Z) is the extension by zero of ℤ_Z.

#include "microwrap/stratcx.hpp"
#include "microwrap/zchain.hpp"

#include <string>
#include <vector>

namespace microwrap {

/// A generization arrow: vertex → incident edge on `side`.
struct Arrow {
    std::size_t vertex;
    Side side;
};

class SModule {
public:
    /// Validates shapes: maps[2v + (side == right)] : values[vertex v] → values[edge].
    static SModule make(StratSpace base, std::vector<ChainComplex> values, std::vector<ChainMap> maps);
    static SModule zero(const StratSpace& base);

    const StratSpace& base() const noexcept { return base_; }
    const ChainComplex& value(std::size_t stratum) const { return values_.at(stratum); }
    const std::vector<ChainComplex>& values() const noexcept { return values_; }
    const ChainMap& generization(std::size_t vertex, Side side) const;
    const ChainMap& generization(const Arrow& a) const { return generization(a.vertex, a.side); }

    /// Every arrow of the base, vertex-major, left before right.
    std::vector<Arrow> arrows() const;
    /// Target stratum of an arrow.
    std::size_t arrow_target(const Arrow& a) const { return base_.edge_at(a.vertex, a.side); }

    bool is_zero() const;
    bool operator==(const SModule& other) const;
    bool operator!=(const SModule& other) const { return !(*this == other); }

private:
    StratSpace base_;
    std::vector<ChainComplex> values_;
    std::vector<ChainMap> maps_;
};

/// Strictly commuting family of stalk maps.
class SModuleMap {
public:
    /// Throws ModuleError if a square fails to commute on the nose.
    static SModuleMap make(SModule source, SModule target, std::vector<ChainMap> components);
    static SModuleMap identity(const SModule& m);
    static SModuleMap zero(SModule source, SModule target);

    const SModule& source() const noexcept { return source_; }
    const SModule& target() const noexcept { return target_; }
    const ChainMap& component(std::size_t stratum) const { return components_.at(stratum); }

    SModuleMap operator+(const SModuleMap& other) const;
    SModuleMap operator-() const;
    bool operator==(const SModuleMap& other) const;

private:
    SModule source_;
    SModule target_;
    std::vector<ChainMap> components_;
};

// --- objects ------------------------------------------------------------------

/// Yoneda object of a stratum, tensored with a coefficient complex. Its value
/// on t is one copy of the coefficient per arrow s → t.
SModule representable(const StratSpace& space, std::size_t stratum,
                      const ChainComplex& coefficient = ChainComplex::unit());
/// ℤ on an open set, identity generizations. Throws SpaceError if not open.
SModule indicator_open(const StratSpace& space, const ConstructibleSet& open);
/// ℤ on Z, identity where both ends lie in Z, zero otherwise.
SModule indicator_locally_closed(const StratSpace& space, const ConstructibleSet& set,
                                 const ChainComplex& coefficient = ChainComplex::unit());
/// Identity on the overlap of two indicator supports, zero elsewhere.
/// Throws ModuleError when that family is not a strict map.
SModuleMap indicator_map(const SModule& from, const SModule& to);

// --- stable operations ----------------------------------------------------------

SModule sum(const std::vector<SModule>& parts);
SModule shift_smod(const SModule& m, int k);
SModule cone_smod(const SModuleMap& f);
SModule fiber_smod(const SModuleMap& f);

SModuleMap sum(const std::vector<SModuleMap>& parts);
SModuleMap shift_smod(const SModuleMap& f, int k);
SModuleMap compose(const SModuleMap& g, const SModuleMap& f);
SModuleMap summand_inclusion(const std::vector<SModule>& parts, std::size_t index);
SModuleMap summand_projection(const std::vector<SModule>& parts, std::size_t index);
/// target(f) → cone(f).
SModuleMap cone_inclusion(const SModuleMap& f);
/// cone(f) → shift(source(f), 1).
SModuleMap cone_projection(const SModuleMap& f);
/// Valuewise map of cones induced by a strictly commuting square f2 ∘ alpha = beta ∘ f.
SModuleMap induced_cone_map(const SModuleMap& f, const SModuleMap& f2, const SModuleMap& alpha,
                            const SModuleMap& beta);
/// Given g ∘ h = 0, source(h) → fiber(g).
SModuleMap lift_to_fiber(const SModuleMap& h, const SModuleMap& g);

bool is_quasi_iso(const SModuleMap& f);

// --- derived Hom -----------------------------------------------------------------

/// Derived Hom via the two-term resolution:
/// rhom(F, G) = fib(⊕_s Hom(F(s), G(s)) → ⊕_{v→e} Hom(F(v), G(e))),
/// φ ↦ G(a) φ_v − φ_e F(a). Throws ModuleError on base mismatch.
ChainComplex rhom(const SModule& f, const SModule& g);
/// rhom(F, G) → rhom(F, G') induced by g : G → G'.
ChainMap rhom_post(const SModule& f, const SModuleMap& g);
/// rhom(F, G) → rhom(F', G) induced by f : F' → F.
ChainMap rhom_pre(const SModuleMap& f, const SModule& g);

/// Γ(U; F) = rhom(ℤ_U, F).
ChainComplex sections(const ConstructibleSet& open, const SModule& f);
/// Restriction Γ(V; F) → Γ(U; F) for U ⊆ V open.
ChainMap restriction(const ConstructibleSet& larger, const ConstructibleSet& smaller, const SModule& f);

// --- generation --------------------------------------------------------------------

/// Finite expression of an SModule through representables.
struct GenerationWitness {
    enum class Kind { leaf, sum, cone };

    Kind kind = Kind::leaf;
    /// leaf: representable(stratum, coefficient).
    std::size_t stratum = 0;
    ChainComplex coefficient;
    /// sum: the summands; cone: {source, target} of `map`.
    std::vector<GenerationWitness> children;
    /// cone only: a map between the evaluations of the two children.
    std::vector<SModuleMap> map;

    std::string describe(const StratSpace& space) const;
};

SModule evaluate(const GenerationWitness& w, const StratSpace& space);

struct Generation {
    GenerationWitness witness;
    /// Quasi-isomorphism evaluate(witness) → F.
    SModuleMap augmentation;
};

/// Leaf when F is a representable tensored with a complex; otherwise the cone
/// of the canonical two-term resolution ⊕_{v→e} P_e ⊗ F(v) → ⊕_s P_s ⊗ F(s).
Generation generation_witness(const SModule& f);

} // namespace microwrap
