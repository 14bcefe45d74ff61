#pragma once

// Exact homological algebra over ℤ.
//
// Conventions (used by every module):
//   * cohomological grading, d^n : C^n → C^{n+1};
//   * shift(C, k)^n = C^{n+k} with differential (−1)^k d, so shift(C, 1) = C[1];
//   * cone(f)^n = src^{n+1} ⊕ tgt^n with d(a, b) = (−d a, f a + d b);
//   * fiber(f) = shift(cone(f), −1), i.e. fib^n = src^n ⊕ tgt^{n−1};
//   * Hom(C, D)^n = ∏_p Hom(C^p, D^{p+n}) with d φ = d_D φ − (−1)^n φ d_C.

#include "microwrap/matrix.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace microwrap {

/// Bounded complex of finitely generated free abelian groups.
class ChainComplex {
public:
    /// The zero complex.
    ChainComplex() = default;

    /// Validates shapes and d∘d = 0. Differentials are keyed by source degree;
    /// missing differentials are zero. Throws ChainError naming the degree.
    static ChainComplex make(const std::map<int, std::size_t>& ranks,
                             const std::map<int, IntMatrix>& differentials = {});

    /// Same as make() without the d∘d check; for constructions that are
    /// complexes by design (cones, Hom complexes, ...).
    static ChainComplex make_trusted(const std::map<int, std::size_t>& ranks,
                                     const std::map<int, IntMatrix>& differentials);

    /// ℤ^rank concentrated in one degree.
    static ChainComplex concentrated(int degree, std::size_t rank = 1);

    /// ℤ in degree 0.
    static ChainComplex unit() { return concentrated(0, 1); }

    std::size_t rank(int degree) const;
    /// rank(n+1) × rank(n) matrix of d^n.
    IntMatrix differential(int degree) const;

    bool is_zero() const noexcept { return lo_ > hi_; }
    /// Lowest/highest degree with nonzero rank. Meaningless for the zero complex.
    int min_degree() const noexcept { return lo_; }
    int max_degree() const noexcept { return hi_; }
    std::size_t total_rank() const;

    bool operator==(const ChainComplex& other) const;
    bool operator!=(const ChainComplex& other) const { return !(*this == other); }

private:
    int lo_ = 0;
    int hi_ = -1;
    std::vector<std::size_t> ranks_;  // index n - lo_
    std::vector<IntMatrix> diffs_;    // index n - lo_, for n in [lo_, hi_)
};

/// Degreewise integer matrices commuting with the differentials.
class ChainMap {
public:
    ChainMap() = default;

    /// Validates shapes and the chain-map equation in every degree.
    static ChainMap make(ChainComplex source, ChainComplex target,
                         const std::map<int, IntMatrix>& components);
    /// Shape checks only; the chain-map equation is the caller's invariant.
    static ChainMap make_trusted(ChainComplex source, ChainComplex target,
                                 std::map<int, IntMatrix> components);
    static ChainMap identity(const ChainComplex& c);
    static ChainMap zero(ChainComplex source, ChainComplex target);

    const ChainComplex& source() const noexcept { return source_; }
    const ChainComplex& target() const noexcept { return target_; }
    /// rank_target(n) × rank_source(n).
    IntMatrix component(int degree) const;

    ChainMap operator+(const ChainMap& other) const;
    ChainMap operator-(const ChainMap& other) const;
    ChainMap operator-() const;

    bool is_zero() const;
    bool operator==(const ChainMap& other) const;
    bool operator!=(const ChainMap& other) const { return !(*this == other); }

private:
    ChainComplex source_;
    ChainComplex target_;
    std::map<int, IntMatrix> components_;  // only nonzero-shaped degrees
};

/// Free rank plus invariant factors (> 1, divisibility ordered).
struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& other) const = default;
};

/// Homology in invariant-factor normal form; only nonzero degrees are stored,
/// so equality is degreewise equality of normal forms.
class HomologyProfile {
public:
    HomologyProfile() = default;
    explicit HomologyProfile(std::map<int, HomologyGroup> groups);

    HomologyGroup at(int degree) const;
    const std::map<int, HomologyGroup>& groups() const noexcept { return groups_; }
    bool is_zero() const noexcept { return groups_.empty(); }
    /// Same profile with every degree moved by `offset` (degree n ↦ n + offset).
    HomologyProfile reindexed(int offset) const;

    bool operator==(const HomologyProfile& other) const = default;

    /// e.g. "H^0 = Z^2 + Z/2, H^1 = Z"; "0" for the zero profile.
    std::string to_string() const;

private:
    std::map<int, HomologyGroup> groups_;
};

std::ostream& operator<<(std::ostream& os, const HomologyProfile& p);
std::ostream& operator<<(std::ostream& os, const ChainComplex& c);

// --- complexes -----------------------------------------------------------

ChainComplex shift(const ChainComplex& c, int k);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainComplex direct_sum(const std::vector<ChainComplex>& parts);
ChainComplex cone(const ChainMap& f);
ChainComplex fiber(const ChainMap& f);

HomologyProfile homology(const ChainComplex& c);
bool is_acyclic(const ChainComplex& c);

// --- maps ------------------------------------------------------------------

/// g ∘ f. Throws ChainError when target(f) ≠ source(g).
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap shift(const ChainMap& f, int k);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
ChainMap direct_sum(const std::vector<ChainMap>& parts);

/// Inclusion of a summand / projection onto a summand of direct_sum(parts).
ChainMap summand_inclusion(const std::vector<ChainComplex>& parts, std::size_t index);
ChainMap summand_projection(const std::vector<ChainComplex>& parts, std::size_t index);

/// target(f) → cone(f), b ↦ (0, b).
ChainMap cone_inclusion(const ChainMap& f);
/// cone(f) → shift(source(f), 1), (a, b) ↦ a.
ChainMap cone_projection(const ChainMap& f);
/// fiber(f) → source(f), (a, b) ↦ a.
ChainMap fiber_projection(const ChainMap& f);
/// shift(target(f), -1) → fiber(f), b ↦ (0, b).
ChainMap fiber_inclusion(const ChainMap& f);

/// Map of cones induced by a strictly commuting square f' ∘ alpha = beta ∘ f.
ChainMap induced_cone_map(const ChainMap& f, const ChainMap& f2, const ChainMap& alpha,
                          const ChainMap& beta);
/// Map of fibers induced by the same kind of square.
ChainMap induced_fiber_map(const ChainMap& f, const ChainMap& f2, const ChainMap& alpha,
                           const ChainMap& beta);
/// Given g ∘ h = 0 on the nose, the map source(h) → fiber(g), x ↦ (h x, 0).
ChainMap lift_to_fiber(const ChainMap& h, const ChainMap& g);

/// True iff cone(f) is acyclic.
bool is_quasi_iso(const ChainMap& f);

// --- Hom complexes ---------------------------------------------------------

ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d);
/// Hom(C, D) → Hom(C, D'), φ ↦ g ∘ φ.
ChainMap hom_post(const ChainComplex& c, const ChainMap& g);
/// Hom(C, D) → Hom(C', D), φ ↦ φ ∘ f for f : C' → C.
ChainMap hom_pre(const ChainMap& f, const ChainComplex& d);
/// The degree-0 element of Hom(C, D) represented by a chain map (or any
/// degreewise family of matrices), as a column vector.
IntMatrix hom_element(const ChainMap& f);

// --- octahedral axiom ------------------------------------------------------

/// Canonical maps cone(f1) → cone(f2∘f1) → cone(f2), together with the
/// comparison cone(first) → cone(f2) whose acyclic cone certifies that the
/// three cones form a fiber sequence.
struct OctahedralWitness {
    ChainMap first;
    ChainMap second;
    ChainMap comparison;
    bool certified = false;
};

/// Throws ChainError when target(f1) ≠ source(f2).
OctahedralWitness octahedral_witness(const ChainMap& f1, const ChainMap& f2);

} // namespace microwrap
