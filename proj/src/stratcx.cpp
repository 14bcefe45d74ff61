#include "microwrap/stratcx.hpp"

#include "microwrap/errors.hpp"

#include <algorithm>

namespace microwrap {

StratSpace StratSpace::line(std::vector<Rational> vertices) {
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i - 1] < vertices[i]))
            throw SpaceError("vertex positions must be strictly increasing (" + to_string(vertices[i - 1]) +
                             " is followed by " + to_string(vertices[i]) + ")");
    StratSpace s;
    s.kind_ = SpaceKind::line;
    s.vertices_ = std::move(vertices);
    return s;
}

StratSpace StratSpace::circle(std::vector<Rational> vertices, Rational perimeter) {
    if (perimeter <= 0)
        throw SpaceError("circle perimeter must be positive");
    if (vertices.empty())
        throw SpaceError("a circle needs at least one vertex");
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i - 1] < vertices[i]))
            throw SpaceError("vertex positions must be strictly increasing (" + to_string(vertices[i - 1]) +
                             " is followed by " + to_string(vertices[i]) + ")");
    if (vertices.front() < 0 || vertices.back() >= perimeter)
        throw SpaceError("circle vertex positions must lie in [0, perimeter)");
    StratSpace s;
    s.kind_ = SpaceKind::circle;
    s.vertices_ = std::move(vertices);
    s.perimeter_ = std::move(perimeter);
    return s;
}

std::size_t StratSpace::num_strata() const noexcept {
    return is_circle() ? 2 * vertices_.size() : 2 * vertices_.size() + 1;
}

bool StratSpace::is_vertex(std::size_t stratum) const {
    if (stratum >= num_strata())
        throw SpaceError("stratum id out of range: " + std::to_string(stratum));
    return is_circle() ? stratum % 2 == 0 : stratum % 2 == 1;
}

std::size_t StratSpace::vertex_stratum(std::size_t vertex) const {
    if (vertex >= vertices_.size())
        throw SpaceError("vertex index out of range: " + std::to_string(vertex));
    return is_circle() ? 2 * vertex : 2 * vertex + 1;
}

std::size_t StratSpace::vertex_of(std::size_t stratum) const {
    if (!is_vertex(stratum))
        throw SpaceError("stratum " + std::to_string(stratum) + " is not a vertex");
    return is_circle() ? stratum / 2 : (stratum - 1) / 2;
}

std::size_t StratSpace::edge_at(std::size_t vertex, Side side) const {
    std::size_t s = vertex_stratum(vertex);
    if (side == Side::right)
        return s + 1;
    if (is_circle() && s == 0)
        return num_strata() - 1;
    return s - 1;
}

std::pair<std::optional<std::size_t>, std::optional<std::size_t>>
StratSpace::edge_ends(std::size_t stratum) const {
    if (is_vertex(stratum))
        throw SpaceError("stratum " + std::to_string(stratum) + " is not an edge");
    const std::size_t n = vertices_.size();
    if (is_circle()) {
        std::size_t i = stratum / 2;
        return {i, (i + 1) % n};
    }
    std::size_t i = stratum / 2;  // vertex to the right, if any
    std::optional<std::size_t> left, right;
    if (i > 0)
        left = i - 1;
    if (i < n)
        right = i;
    return {left, right};
}

Rational StratSpace::normalize(const Rational& position) const {
    return is_circle() ? mod_positive(position, perimeter_) : position;
}

std::optional<std::size_t> StratSpace::vertex_at(const Rational& position) const {
    Rational x = normalize(position);
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
    if (it != vertices_.end() && *it == x)
        return static_cast<std::size_t>(it - vertices_.begin());
    return std::nullopt;
}

std::size_t StratSpace::locate(const Rational& position) const {
    Rational x = normalize(position);
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - vertices_.begin());
    if (it != vertices_.end() && *it == x)
        return vertex_stratum(i);
    if (is_circle())
        // x lies after vertex i-1 (or before vertex 0, i.e. on the last edge).
        return i == 0 ? num_strata() - 1 : 2 * (i - 1) + 1;
    return 2 * i;
}

std::string StratSpace::stratum_name(std::size_t stratum) const {
    if (is_vertex(stratum))
        return "{" + to_string(vertices_[vertex_of(stratum)]) + "}";
    auto [l, r] = edge_ends(stratum);
    std::string left = l ? to_string(vertices_[*l]) : "-inf";
    std::string right = r ? to_string(vertices_[*r]) : "+inf";
    if (is_circle() && l && r && *r <= *l)
        right = to_string(vertices_[*r] + perimeter_);
    return "(" + left + "," + right + ")";
}

// --- FacePoset -------------------------------------------------------------

FacePoset::FacePoset(const StratSpace& space) : n_(space.num_strata()), leq_(n_ * n_, false) {
    for (std::size_t s = 0; s < n_; ++s) {
        leq_[s * n_ + s] = true;
        if (space.is_vertex(s))
            continue;
        auto [l, r] = space.edge_ends(s);
        if (l)
            leq_[s * n_ + space.vertex_stratum(*l)] = true;
        if (r)
            leq_[s * n_ + space.vertex_stratum(*r)] = true;
    }
}

std::vector<std::pair<std::size_t, std::size_t>> FacePoset::relation() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < n_; ++s)
        for (std::size_t t = 0; t < n_; ++t)
            if (leq(s, t))
                out.emplace_back(s, t);
    return out;
}

bool FacePoset::is_reflexive() const {
    for (std::size_t s = 0; s < n_; ++s)
        if (!leq(s, s))
            return false;
    return true;
}

bool FacePoset::is_antisymmetric() const {
    for (std::size_t s = 0; s < n_; ++s)
        for (std::size_t t = 0; t < n_; ++t)
            if (s != t && leq(s, t) && leq(t, s))
                return false;
    return true;
}

bool FacePoset::is_transitive() const {
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
            if (leq(a, b))
                for (std::size_t c = 0; c < n_; ++c)
                    if (leq(b, c) && !leq(a, c))
                        return false;
    return true;
}

// --- constructible sets ----------------------------------------------------

bool is_open(const StratSpace& space, const std::vector<bool>& members) {
    if (members.size() != space.num_strata())
        throw SpaceError("constructible set size does not match the space");
    for (std::size_t v = 0; v < space.num_vertices(); ++v) {
        if (!members[space.vertex_stratum(v)])
            continue;
        if (!members[space.edge_at(v, Side::left)] || !members[space.edge_at(v, Side::right)])
            return false;
    }
    return true;
}

std::vector<bool> closure(const StratSpace& space, const std::vector<bool>& members) {
    if (members.size() != space.num_strata())
        throw SpaceError("constructible set size does not match the space");
    std::vector<bool> out = members;
    for (std::size_t s = 0; s < members.size(); ++s) {
        if (!members[s] || space.is_vertex(s))
            continue;
        auto [l, r] = space.edge_ends(s);
        if (l)
            out[space.vertex_stratum(*l)] = true;
        if (r)
            out[space.vertex_stratum(*r)] = true;
    }
    return out;
}

bool is_locally_closed(const StratSpace& space, const std::vector<bool>& members) {
    // Z is open in its closure iff for every vertex of Z, each incident edge
    // lying in the closure already lies in Z.
    std::vector<bool> cl = closure(space, members);
    for (std::size_t v = 0; v < space.num_vertices(); ++v) {
        if (!members[space.vertex_stratum(v)])
            continue;
        for (Side side : {Side::left, Side::right}) {
            std::size_t e = space.edge_at(v, side);
            if (cl[e] && !members[e])
                return false;
        }
    }
    return true;
}

ConstructibleSet::ConstructibleSet(const StratSpace& space, std::vector<bool> members, bool open)
    : members_(std::move(members)), open_(open) {
    if (members_.size() != space.num_strata())
        throw SpaceError("constructible set size does not match the space");
    if (open_ && !is_open(space, members_))
        throw SpaceError("constructible set is not open");
}

ConstructibleSet ConstructibleSet::from_strata(const StratSpace& space, const std::vector<std::size_t>& strata,
                                               bool open) {
    std::vector<bool> members(space.num_strata(), false);
    for (std::size_t s : strata) {
        if (s >= members.size())
            throw SpaceError("stratum id out of range: " + std::to_string(s));
        members[s] = true;
    }
    return ConstructibleSet(space, std::move(members), open);
}

ConstructibleSet ConstructibleSet::empty(const StratSpace& space) {
    return ConstructibleSet(space, std::vector<bool>(space.num_strata(), false), true);
}

ConstructibleSet ConstructibleSet::whole(const StratSpace& space) {
    return ConstructibleSet(space, std::vector<bool>(space.num_strata(), true), true);
}

std::vector<std::size_t> ConstructibleSet::strata() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < members_.size(); ++s)
        if (members_[s])
            out.push_back(s);
    return out;
}

bool ConstructibleSet::is_empty() const {
    return std::none_of(members_.begin(), members_.end(), [](bool b) { return b; });
}

ConstructibleSet star(const StratSpace& space, std::size_t stratum) {
    FacePoset poset(space);
    std::vector<bool> members(space.num_strata(), false);
    for (std::size_t t = 0; t < members.size(); ++t)
        members[t] = poset.leq(t, stratum);
    return ConstructibleSet(space, std::move(members), true);
}

// --- refinement --------------------------------------------------------------

Refinement refine(const StratSpace& space, const std::vector<Rational>& new_positions) {
    std::vector<Rational> all = space.vertices();
    for (const auto& p : new_positions) {
        if (space.is_circle() && (p < 0 || p >= space.perimeter()))
            throw SpaceError("refinement position " + to_string(p) + " outside [0, perimeter)");
        if (std::find(all.begin(), all.end(), p) != all.end())
            throw SpaceError("duplicate refinement position " + to_string(p));
        all.push_back(p);
    }
    std::sort(all.begin(), all.end());
    Refinement r{space.is_circle() ? StratSpace::circle(all, space.perimeter()) : StratSpace::line(all), {}};
    const StratSpace& fine = r.space;
    r.to_original.resize(fine.num_strata());
    for (std::size_t s = 0; s < fine.num_strata(); ++s) {
        if (fine.is_vertex(s)) {
            r.to_original[s] = space.locate(fine.vertices()[fine.vertex_of(s)]);
            continue;
        }
        // Any interior point of the refined edge locates the coarse stratum.
        auto [l, rt] = fine.edge_ends(s);
        Rational sample;
        if (!l && !rt)
            sample = 0;
        else if (!l)
            sample = fine.vertices()[*rt] - 1;
        else if (!rt)
            sample = fine.vertices()[*l] + 1;
        else {
            Rational a = fine.vertices()[*l], b = fine.vertices()[*rt];
            if (fine.is_circle() && b <= a)
                b += fine.perimeter();
            sample = (a + b) / 2;
        }
        r.to_original[s] = space.locate(sample);
    }
    return r;
}

ConstructibleSet pull_back(const ConstructibleSet& set, const Refinement& refinement) {
    std::vector<bool> members(refinement.space.num_strata());
    for (std::size_t s = 0; s < members.size(); ++s)
        members[s] = set.contains(refinement.to_original[s]);
    return ConstructibleSet(refinement.space, std::move(members), set.is_open_flagged());
}

ConstructibleSet push_forward(const ConstructibleSet& set, const Refinement& refinement,
                              const StratSpace& original) {
    std::vector<bool> members(original.num_strata(), true);
    for (std::size_t s = 0; s < refinement.to_original.size(); ++s)
        if (!set.contains(s))
            members[refinement.to_original[s]] = false;
    return ConstructibleSet(original, std::move(members), set.is_open_flagged());
}

} // namespace microwrap
