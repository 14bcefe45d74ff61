#pragma once

// Triangulated 1-manifolds.
//
// Strata are numbered left to right. On a line with n vertices, stratum 2i+1 is
// vertex i and stratum 2i is the edge (or ray) just left of it; stratum 2n is
// the right ray. On a circle, stratum 2i is vertex i and 2i+1 is the edge from
// vertex i to vertex i+1 (cyclically).
//
// Order convention: s ≤ t iff stratum t lies in the closure of stratum s, so
// every edge is ≤ each of its boundary vertices and vertices are maximal.

#include "microwrap/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace microwrap {

enum class SpaceKind { line, circle };
enum class Side { left, right };

class StratSpace {
public:
    /// Vertices must be strictly increasing.
    static StratSpace line(std::vector<Rational> vertices);
    /// Vertices strictly increasing in [0, perimeter); at least one vertex.
    static StratSpace circle(std::vector<Rational> vertices, Rational perimeter);

    SpaceKind kind() const noexcept { return kind_; }
    bool is_circle() const noexcept { return kind_ == SpaceKind::circle; }
    const std::vector<Rational>& vertices() const noexcept { return vertices_; }
    /// Only meaningful on a circle.
    const Rational& perimeter() const noexcept { return perimeter_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_strata() const noexcept;

    bool is_vertex(std::size_t stratum) const;
    std::size_t vertex_stratum(std::size_t vertex) const;
    /// Vertex index of a 0-dimensional stratum; throws SpaceError otherwise.
    std::size_t vertex_of(std::size_t stratum) const;
    /// The edge (or ray) incident to a vertex on the given side.
    std::size_t edge_at(std::size_t vertex, Side side) const;
    /// Boundary vertices of an edge; nullopt for the open end of a ray.
    std::pair<std::optional<std::size_t>, std::optional<std::size_t>> edge_ends(std::size_t stratum) const;

    /// Vertex at exactly this position (taken modulo the perimeter on a circle).
    std::optional<std::size_t> vertex_at(const Rational& position) const;
    /// Stratum containing this position.
    std::size_t locate(const Rational& position) const;
    /// Position normalized into [0, perimeter) on a circle; unchanged on a line.
    Rational normalize(const Rational& position) const;

    std::string stratum_name(std::size_t stratum) const;

    bool operator==(const StratSpace& other) const = default;

private:
    SpaceKind kind_ = SpaceKind::line;
    std::vector<Rational> vertices_;
    Rational perimeter_{0};
};

/// The face poset as an explicit finite relation.
class FacePoset {
public:
    explicit FacePoset(const StratSpace& space);

    std::size_t size() const noexcept { return n_; }
    bool leq(std::size_t s, std::size_t t) const { return leq_[s * n_ + t]; }
    /// All pairs (s, t) with s ≤ t.
    std::vector<std::pair<std::size_t, std::size_t>> relation() const;

    bool is_reflexive() const;
    bool is_antisymmetric() const;
    bool is_transitive() const;

private:
    std::size_t n_;
    std::vector<bool> leq_;
};

/// A union of strata, optionally certified open.
class ConstructibleSet {
public:
    /// Throws SpaceError if `open` is requested but the set is not open.
    ConstructibleSet(const StratSpace& space, std::vector<bool> members, bool open = false);
    static ConstructibleSet from_strata(const StratSpace& space, const std::vector<std::size_t>& strata,
                                        bool open = false);
    static ConstructibleSet empty(const StratSpace& space);
    static ConstructibleSet whole(const StratSpace& space);

    bool contains(std::size_t stratum) const { return members_.at(stratum); }
    const std::vector<bool>& members() const noexcept { return members_; }
    std::vector<std::size_t> strata() const;
    bool is_open_flagged() const noexcept { return open_; }
    bool is_empty() const;

    bool operator==(const ConstructibleSet& other) const { return members_ == other.members_; }

private:
    std::vector<bool> members_;
    bool open_ = false;
};

/// 1D openness: every vertex in the set brings both incident edges.
bool is_open(const StratSpace& space, const std::vector<bool>& members);
/// Open in its closure.
bool is_locally_closed(const StratSpace& space, const std::vector<bool>& members);
std::vector<bool> closure(const StratSpace& space, const std::vector<bool>& members);

/// Smallest open constructible set containing the stratum: {t : t ≤ s}.
ConstructibleSet star(const StratSpace& space, std::size_t stratum);

struct Refinement {
    StratSpace space;
    /// For every stratum of `space`, the stratum of the original space containing it.
    std::vector<std::size_t> to_original;
};

/// Adds vertices. Throws SpaceError on positions already present (or repeated).
Refinement refine(const StratSpace& space, const std::vector<Rational>& new_positions);

/// Preimage of a constructible set of the original space.
ConstructibleSet pull_back(const ConstructibleSet& set, const Refinement& refinement);
/// Original strata whose every refined piece lies in `set`.
ConstructibleSet push_forward(const ConstructibleSet& set, const Refinement& refinement,
                              const StratSpace& original);

} // namespace microwrap
