#include "microwrap/zchain.hpp"

#include "microwrap/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace microwrap {

namespace {

std::string deg(int n) {
    return std::to_string(n);
}

int sign_of_shift(int k) {
    return (k % 2 == 0) ? 1 : -1;
}

// Matrix of φ ↦ A φ B on row-major vectorizations, for φ of shape
// A.cols() × B.rows(). Entry [(i,k),(j,l)] = A(i,j) B(l,k).
IntMatrix sandwich(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t r = a.cols(), c = b.rows();
    const std::size_t r2 = a.rows(), c2 = b.cols();
    IntMatrix m(r2 * c2, r * c);
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const Integer& aij = a(i, j);
            if (aij == 0)
                continue;
            for (std::size_t l = 0; l < c; ++l)
                for (std::size_t k = 0; k < c2; ++k) {
                    const Integer& blk = b(l, k);
                    if (blk != 0)
                        m(i * c2 + k, j * c + l) = aij * blk;
                }
        }
    return m;
}

// Offsets of the blocks Hom(C^p, D^{p+n}) inside Hom(C, D)^n.
struct HomLayout {
    std::map<int, std::size_t> offset;  // p -> offset
    std::size_t dim = 0;

    HomLayout(const ChainComplex& c, const ChainComplex& d, int n) {
        if (c.is_zero() || d.is_zero())
            return;
        for (int p = c.min_degree(); p <= c.max_degree(); ++p) {
            std::size_t size = c.rank(p) * d.rank(p + n);
            if (size == 0)
                continue;
            offset[p] = dim;
            dim += size;
        }
    }
};

std::pair<int, int> hom_degree_range(const ChainComplex& c, const ChainComplex& d) {
    return {d.min_degree() - c.max_degree(), d.max_degree() - c.min_degree()};
}

} // namespace

// --- ChainComplex ----------------------------------------------------------

ChainComplex ChainComplex::make_trusted(const std::map<int, std::size_t>& ranks,
                                        const std::map<int, IntMatrix>& differentials) {
    ChainComplex c;
    bool any = false;
    for (auto [n, r] : ranks) {
        if (r == 0)
            continue;
        if (!any) {
            c.lo_ = c.hi_ = n;
            any = true;
        }
        c.lo_ = std::min(c.lo_, n);
        c.hi_ = std::max(c.hi_, n);
    }
    if (!any)
        return ChainComplex{};
    c.ranks_.assign(static_cast<std::size_t>(c.hi_ - c.lo_ + 1), 0);
    for (auto [n, r] : ranks)
        if (r != 0)
            c.ranks_[static_cast<std::size_t>(n - c.lo_)] = r;
    for (int n = c.lo_; n < c.hi_; ++n)
        c.diffs_.emplace_back(c.rank(n + 1), c.rank(n));
    for (const auto& [n, m] : differentials) {
        if (m.rows() != c.rank(n + 1) || m.cols() != c.rank(n))
            throw ChainError("differential d^" + deg(n) + " has shape " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + ", expected " +
                             std::to_string(c.rank(n + 1)) + "x" + std::to_string(c.rank(n)));
        if (m.empty())
            continue;
        c.diffs_[static_cast<std::size_t>(n - c.lo_)] = m;
    }
    return c;
}

ChainComplex ChainComplex::make(const std::map<int, std::size_t>& ranks,
                                const std::map<int, IntMatrix>& differentials) {
    ChainComplex c = make_trusted(ranks, differentials);
    for (int n = c.lo_; n + 1 < c.hi_; ++n) {
        if (!(c.differential(n + 1) * c.differential(n)).is_zero())
            throw ChainError("d^" + deg(n + 1) + " ∘ d^" + deg(n) + " ≠ 0 (offending degree " + deg(n) +
                             ")");
    }
    return c;
}

ChainComplex ChainComplex::concentrated(int degree, std::size_t rank) {
    return make_trusted({{degree, rank}}, {});
}

std::size_t ChainComplex::rank(int degree) const {
    if (degree < lo_ || degree > hi_)
        return 0;
    return ranks_[static_cast<std::size_t>(degree - lo_)];
}

IntMatrix ChainComplex::differential(int degree) const {
    if (degree < lo_ || degree >= hi_)
        return IntMatrix(rank(degree + 1), rank(degree));
    return diffs_[static_cast<std::size_t>(degree - lo_)];
}

std::size_t ChainComplex::total_rank() const {
    std::size_t t = 0;
    for (auto r : ranks_)
        t += r;
    return t;
}

bool ChainComplex::operator==(const ChainComplex& other) const {
    if (is_zero() || other.is_zero())
        return is_zero() && other.is_zero();
    return lo_ == other.lo_ && hi_ == other.hi_ && ranks_ == other.ranks_ && diffs_ == other.diffs_;
}

std::ostream& operator<<(std::ostream& os, const ChainComplex& c) {
    if (c.is_zero())
        return os << "0";
    os << "{";
    for (int n = c.min_degree(); n <= c.max_degree(); ++n)
        os << (n == c.min_degree() ? "" : ", ") << n << ":" << c.rank(n);
    return os << "}";
}

// --- ChainMap --------------------------------------------------------------

ChainMap ChainMap::make_trusted(ChainComplex source, ChainComplex target,
                                std::map<int, IntMatrix> components) {
    ChainMap f;
    for (auto& [n, m] : components) {
        if (m.rows() != target.rank(n) || m.cols() != source.rank(n))
            throw ChainError("chain map component in degree " + deg(n) + " has shape " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                             std::to_string(target.rank(n)) + "x" + std::to_string(source.rank(n)));
        if (!m.empty())
            f.components_.emplace(n, std::move(m));
    }
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    return f;
}

ChainMap ChainMap::make(ChainComplex source, ChainComplex target,
                        const std::map<int, IntMatrix>& components) {
    ChainMap f = make_trusted(std::move(source), std::move(target), components);
    if (f.source_.is_zero() || f.target_.is_zero())
        return f;
    int lo = std::min(f.source_.min_degree(), f.target_.min_degree()) - 1;
    int hi = std::max(f.source_.max_degree(), f.target_.max_degree());
    for (int n = lo; n <= hi; ++n) {
        IntMatrix lhs = f.target_.differential(n) * f.component(n);
        IntMatrix rhs = f.component(n + 1) * f.source_.differential(n);
        if (lhs != rhs)
            throw ChainError("chain map equation fails in degree " + deg(n));
    }
    return f;
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    std::map<int, IntMatrix> comps;
    if (!c.is_zero())
        for (int n = c.min_degree(); n <= c.max_degree(); ++n)
            comps.emplace(n, IntMatrix::identity(c.rank(n)));
    return make_trusted(c, c, std::move(comps));
}

ChainMap ChainMap::zero(ChainComplex source, ChainComplex target) {
    return make_trusted(std::move(source), std::move(target), {});
}

IntMatrix ChainMap::component(int degree) const {
    auto it = components_.find(degree);
    if (it != components_.end())
        return it->second;
    return IntMatrix(target_.rank(degree), source_.rank(degree));
}

ChainMap ChainMap::operator+(const ChainMap& other) const {
    if (source_ != other.source_ || target_ != other.target_)
        throw ChainError("sum of chain maps with different endpoints");
    std::map<int, IntMatrix> comps = components_;
    for (const auto& [n, m] : other.components_) {
        auto it = comps.find(n);
        if (it == comps.end())
            comps.emplace(n, m);
        else
            it->second = it->second + m;
    }
    return make_trusted(source_, target_, std::move(comps));
}

ChainMap ChainMap::operator-() const {
    std::map<int, IntMatrix> comps;
    for (const auto& [n, m] : components_)
        comps.emplace(n, -m);
    return make_trusted(source_, target_, std::move(comps));
}

ChainMap ChainMap::operator-(const ChainMap& other) const {
    return *this + (-other);
}

bool ChainMap::is_zero() const {
    for (const auto& [n, m] : components_)
        if (!m.is_zero())
            return false;
    return true;
}

bool ChainMap::operator==(const ChainMap& other) const {
    if (source_ != other.source_ || target_ != other.target_)
        return false;
    return (*this - other).is_zero();
}

// --- HomologyProfile -------------------------------------------------------

HomologyProfile::HomologyProfile(std::map<int, HomologyGroup> groups) {
    for (auto& [n, g] : groups)
        if (!g.is_zero())
            groups_.emplace(n, std::move(g));
}

HomologyGroup HomologyProfile::at(int degree) const {
    auto it = groups_.find(degree);
    return it == groups_.end() ? HomologyGroup{} : it->second;
}

HomologyProfile HomologyProfile::reindexed(int offset) const {
    std::map<int, HomologyGroup> out;
    for (const auto& [n, g] : groups_)
        out.emplace(n + offset, g);
    return HomologyProfile(std::move(out));
}

std::string HomologyProfile::to_string() const {
    if (groups_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, g] : groups_) {
        os << (first ? "" : ", ") << "H^" << n << " = ";
        first = false;
        bool any = false;
        if (g.free_rank > 0) {
            os << "Z";
            if (g.free_rank > 1)
                os << "^" << g.free_rank;
            any = true;
        }
        for (const auto& t : g.torsion) {
            os << (any ? " + " : "") << "Z/" << t;
            any = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const HomologyProfile& p) {
    return os << p.to_string();
}

// --- constructions on complexes ----------------------------------------------

ChainComplex shift(const ChainComplex& c, int k) {
    if (c.is_zero())
        return c;
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    const int s = sign_of_shift(k);
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        ranks[n - k] = c.rank(n);
        if (n < c.max_degree())
            diffs[n - k] = s == 1 ? c.differential(n) : -c.differential(n);
    }
    return ChainComplex::make_trusted(ranks, diffs);
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
    return direct_sum(std::vector<ChainComplex>{a, b});
}

ChainComplex direct_sum(const std::vector<ChainComplex>& parts) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& p : parts) {
        if (p.is_zero())
            continue;
        lo = any ? std::min(lo, p.min_degree()) : p.min_degree();
        hi = any ? std::max(hi, p.max_degree()) : p.max_degree();
        any = true;
    }
    if (!any)
        return ChainComplex{};
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = lo; n <= hi; ++n) {
        std::size_t r = 0;
        for (const auto& p : parts)
            r += p.rank(n);
        ranks[n] = r;
    }
    for (int n = lo; n < hi; ++n) {
        IntMatrix d(ranks[n + 1], ranks[n]);
        std::size_t row = 0, col = 0;
        for (const auto& p : parts) {
            d.set_block(row, col, p.differential(n));
            row += p.rank(n + 1);
            col += p.rank(n);
        }
        diffs[n] = std::move(d);
    }
    return ChainComplex::make_trusted(ranks, diffs);
}

ChainComplex cone(const ChainMap& f) {
    const ChainComplex& s = f.source();
    const ChainComplex& t = f.target();
    if (s.is_zero())
        return t;
    int lo = s.min_degree() - 1, hi = s.max_degree() - 1;
    if (!t.is_zero()) {
        lo = std::min(lo, t.min_degree());
        hi = std::max(hi, t.max_degree());
    }
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = lo; n <= hi; ++n)
        ranks[n] = s.rank(n + 1) + t.rank(n);
    for (int n = lo; n < hi; ++n) {
        IntMatrix d(ranks[n + 1], ranks[n]);
        d.set_block(0, 0, -s.differential(n + 1));
        d.set_block(s.rank(n + 2), 0, f.component(n + 1));
        d.set_block(s.rank(n + 2), s.rank(n + 1), t.differential(n));
        diffs[n] = std::move(d);
    }
    return ChainComplex::make_trusted(ranks, diffs);
}

ChainComplex fiber(const ChainMap& f) {
    return shift(cone(f), -1);
}

HomologyProfile homology(const ChainComplex& c) {
    if (c.is_zero())
        return {};
    std::map<int, std::vector<Integer>> invariants;
    for (int n = c.min_degree(); n < c.max_degree(); ++n)
        invariants[n] = smith_invariants(c.differential(n));
    std::map<int, HomologyGroup> groups;
    for (int n = c.min_degree(); n <= c.max_degree(); ++n) {
        const std::vector<Integer> none;
        const auto& out = invariants.count(n) ? invariants[n] : none;
        const auto& in = invariants.count(n - 1) ? invariants[n - 1] : none;
        HomologyGroup g;
        g.free_rank = c.rank(n) - out.size() - in.size();
        for (const auto& v : in)
            if (v > 1)
                g.torsion.push_back(v);
        groups.emplace(n, std::move(g));
    }
    return HomologyProfile(std::move(groups));
}

bool is_acyclic(const ChainComplex& c) {
    return homology(c).is_zero();
}

// --- maps -------------------------------------------------------------------

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target() != g.source())
        throw ChainError("compose: target of the first map differs from source of the second");
    std::map<int, IntMatrix> comps;
    const ChainComplex& s = f.source();
    if (!s.is_zero())
        for (int n = s.min_degree(); n <= s.max_degree(); ++n)
            comps.emplace(n, g.component(n) * f.component(n));
    return ChainMap::make_trusted(f.source(), g.target(), std::move(comps));
}

ChainMap shift(const ChainMap& f, int k) {
    std::map<int, IntMatrix> comps;
    const ChainComplex& s = f.source();
    if (!s.is_zero())
        for (int n = s.min_degree(); n <= s.max_degree(); ++n)
            comps.emplace(n - k, f.component(n));
    return ChainMap::make_trusted(shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    return direct_sum(std::vector<ChainMap>{f, g});
}

ChainMap direct_sum(const std::vector<ChainMap>& parts) {
    std::vector<ChainComplex> sources, targets;
    for (const auto& p : parts) {
        sources.push_back(p.source());
        targets.push_back(p.target());
    }
    ChainComplex s = direct_sum(sources), t = direct_sum(targets);
    std::map<int, IntMatrix> comps;
    if (!s.is_zero())
        for (int n = s.min_degree(); n <= s.max_degree(); ++n) {
            IntMatrix m(t.rank(n), s.rank(n));
            std::size_t row = 0, col = 0;
            for (const auto& p : parts) {
                m.set_block(row, col, p.component(n));
                row += p.target().rank(n);
                col += p.source().rank(n);
            }
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(s), std::move(t), std::move(comps));
}

namespace {

ChainMap summand_map(const std::vector<ChainComplex>& parts, std::size_t index, bool inclusion) {
    if (index >= parts.size())
        throw ChainError("summand index out of range");
    ChainComplex sum = direct_sum(parts);
    const ChainComplex& part = parts[index];
    std::map<int, IntMatrix> comps;
    if (!part.is_zero())
        for (int n = part.min_degree(); n <= part.max_degree(); ++n) {
            std::size_t offset = 0;
            for (std::size_t i = 0; i < index; ++i)
                offset += parts[i].rank(n);
            IntMatrix m(sum.rank(n), part.rank(n));
            m.set_block(offset, 0, IntMatrix::identity(part.rank(n)));
            comps.emplace(n, inclusion ? m : m.transposed());
        }
    return inclusion ? ChainMap::make_trusted(part, std::move(sum), std::move(comps))
                     : ChainMap::make_trusted(std::move(sum), part, std::move(comps));
}

} // namespace

ChainMap summand_inclusion(const std::vector<ChainComplex>& parts, std::size_t index) {
    return summand_map(parts, index, true);
}

ChainMap summand_projection(const std::vector<ChainComplex>& parts, std::size_t index) {
    return summand_map(parts, index, false);
}

ChainMap cone_inclusion(const ChainMap& f) {
    ChainComplex c = cone(f);
    const ChainComplex& t = f.target();
    std::map<int, IntMatrix> comps;
    if (!t.is_zero())
        for (int n = t.min_degree(); n <= t.max_degree(); ++n) {
            IntMatrix m(c.rank(n), t.rank(n));
            m.set_block(f.source().rank(n + 1), 0, IntMatrix::identity(t.rank(n)));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(t, std::move(c), std::move(comps));
}

ChainMap cone_projection(const ChainMap& f) {
    ChainComplex c = cone(f);
    ChainComplex s1 = shift(f.source(), 1);
    std::map<int, IntMatrix> comps;
    if (!s1.is_zero())
        for (int n = s1.min_degree(); n <= s1.max_degree(); ++n) {
            IntMatrix m(s1.rank(n), c.rank(n));
            m.set_block(0, 0, IntMatrix::identity(s1.rank(n)));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(c), std::move(s1), std::move(comps));
}

ChainMap fiber_projection(const ChainMap& f) {
    ChainComplex fb = fiber(f);
    const ChainComplex& s = f.source();
    std::map<int, IntMatrix> comps;
    if (!s.is_zero())
        for (int n = s.min_degree(); n <= s.max_degree(); ++n) {
            IntMatrix m(s.rank(n), fb.rank(n));
            m.set_block(0, 0, IntMatrix::identity(s.rank(n)));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(fb), s, std::move(comps));
}

ChainMap fiber_inclusion(const ChainMap& f) {
    ChainComplex fb = fiber(f);
    ChainComplex t1 = shift(f.target(), -1);
    std::map<int, IntMatrix> comps;
    if (!t1.is_zero())
        for (int n = t1.min_degree(); n <= t1.max_degree(); ++n) {
            IntMatrix m(fb.rank(n), t1.rank(n));
            m.set_block(f.source().rank(n), 0, IntMatrix::identity(t1.rank(n)));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(t1), std::move(fb), std::move(comps));
}

namespace {

void check_square(const ChainMap& f, const ChainMap& f2, const ChainMap& alpha, const ChainMap& beta) {
    if (alpha.source() != f.source() || beta.source() != f.target() || alpha.target() != f2.source() ||
        beta.target() != f2.target())
        throw ChainError("square endpoints do not match");
    if (compose(f2, alpha) != compose(beta, f))
        throw ChainError("square does not commute");
}

} // namespace

ChainMap induced_cone_map(const ChainMap& f, const ChainMap& f2, const ChainMap& alpha,
                          const ChainMap& beta) {
    check_square(f, f2, alpha, beta);
    ChainComplex c1 = cone(f), c2 = cone(f2);
    std::map<int, IntMatrix> comps;
    if (!c1.is_zero())
        for (int n = c1.min_degree(); n <= c1.max_degree(); ++n) {
            IntMatrix m(c2.rank(n), c1.rank(n));
            m.set_block(0, 0, alpha.component(n + 1));
            m.set_block(f2.source().rank(n + 1), f.source().rank(n + 1), beta.component(n));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(c1), std::move(c2), std::move(comps));
}

ChainMap induced_fiber_map(const ChainMap& f, const ChainMap& f2, const ChainMap& alpha,
                           const ChainMap& beta) {
    return shift(induced_cone_map(f, f2, alpha, beta), -1);
}

ChainMap lift_to_fiber(const ChainMap& h, const ChainMap& g) {
    if (h.target() != g.source())
        throw ChainError("lift_to_fiber: maps are not composable");
    if (!compose(g, h).is_zero())
        throw ChainError("lift_to_fiber: composite is not zero");
    ChainComplex fb = fiber(g);
    const ChainComplex& x = h.source();
    std::map<int, IntMatrix> comps;
    if (!x.is_zero())
        for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
            IntMatrix m(fb.rank(n), x.rank(n));
            m.set_block(0, 0, h.component(n));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(x, std::move(fb), std::move(comps));
}

bool is_quasi_iso(const ChainMap& f) {
    return is_acyclic(cone(f));
}

// --- Hom complexes -----------------------------------------------------------

ChainComplex hom_complex(const ChainComplex& c, const ChainComplex& d) {
    if (c.is_zero() || d.is_zero())
        return ChainComplex{};
    auto [lo, hi] = hom_degree_range(c, d);
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = lo; n <= hi; ++n)
        ranks[n] = HomLayout(c, d, n).dim;
    for (int n = lo; n < hi; ++n) {
        HomLayout from(c, d, n), to(c, d, n + 1);
        IntMatrix m(to.dim, from.dim);
        const int sign = (n % 2 == 0) ? 1 : -1;
        for (const auto& [p, off] : from.offset) {
            // d_D ∘ φ_p lands in block p of degree n+1.
            if (auto it = to.offset.find(p); it != to.offset.end())
                m.add_block(it->second, off, sandwich(d.differential(p + n), IntMatrix::identity(c.rank(p))));
            // −(−1)^n φ_p ∘ d_C^{p−1} lands in block p−1 of degree n+1.
            if (auto it = to.offset.find(p - 1); it != to.offset.end()) {
                IntMatrix block = sandwich(IntMatrix::identity(d.rank(p + n)), c.differential(p - 1));
                m.add_block(it->second, off, sign == 1 ? -block : block);
            }
        }
        diffs[n] = std::move(m);
    }
    return ChainComplex::make_trusted(ranks, diffs);
}

ChainMap hom_post(const ChainComplex& c, const ChainMap& g) {
    ChainComplex src = hom_complex(c, g.source());
    ChainComplex tgt = hom_complex(c, g.target());
    std::map<int, IntMatrix> comps;
    if (!src.is_zero())
        for (int n = src.min_degree(); n <= src.max_degree(); ++n) {
            HomLayout from(c, g.source(), n), to(c, g.target(), n);
            IntMatrix m(to.dim, from.dim);
            for (const auto& [p, off] : from.offset)
                if (auto it = to.offset.find(p); it != to.offset.end())
                    m.set_block(it->second, off, sandwich(g.component(p + n), IntMatrix::identity(c.rank(p))));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(src), std::move(tgt), std::move(comps));
}

ChainMap hom_pre(const ChainMap& f, const ChainComplex& d) {
    ChainComplex src = hom_complex(f.target(), d);
    ChainComplex tgt = hom_complex(f.source(), d);
    std::map<int, IntMatrix> comps;
    if (!src.is_zero())
        for (int n = src.min_degree(); n <= src.max_degree(); ++n) {
            HomLayout from(f.target(), d, n), to(f.source(), d, n);
            IntMatrix m(to.dim, from.dim);
            for (const auto& [p, off] : from.offset)
                if (auto it = to.offset.find(p); it != to.offset.end())
                    m.set_block(it->second, off, sandwich(IntMatrix::identity(d.rank(p + n)), f.component(p)));
            comps.emplace(n, std::move(m));
        }
    return ChainMap::make_trusted(std::move(src), std::move(tgt), std::move(comps));
}

IntMatrix hom_element(const ChainMap& f) {
    HomLayout layout(f.source(), f.target(), 0);
    IntMatrix v(layout.dim, 1);
    for (const auto& [p, off] : layout.offset) {
        IntMatrix comp = f.component(p);
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j)
                v(off + i * comp.cols() + j, 0) = comp(i, j);
    }
    return v;
}

// --- octahedral axiom --------------------------------------------------------

OctahedralWitness octahedral_witness(const ChainMap& f1, const ChainMap& f2) {
    if (f1.target() != f2.source())
        throw ChainError("octahedral_witness: target of f1 differs from source of f2");
    const ChainComplex& a = f1.source();
    const ChainComplex& b = f1.target();
    const ChainComplex& c = f2.target();
    ChainMap f21 = compose(f2, f1);
    ChainComplex c1 = cone(f1), c21 = cone(f21), c2 = cone(f2);

    std::map<int, IntMatrix> first, second;
    if (!c1.is_zero())
        for (int n = c1.min_degree(); n <= c1.max_degree(); ++n) {
            IntMatrix m(c21.rank(n), c1.rank(n));
            m.set_block(0, 0, IntMatrix::identity(a.rank(n + 1)));
            m.set_block(a.rank(n + 1), a.rank(n + 1), f2.component(n));
            first.emplace(n, std::move(m));
        }
    if (!c21.is_zero())
        for (int n = c21.min_degree(); n <= c21.max_degree(); ++n) {
            IntMatrix m(c2.rank(n), c21.rank(n));
            m.set_block(0, 0, f1.component(n + 1));
            m.set_block(b.rank(n + 1), a.rank(n + 1), IntMatrix::identity(c.rank(n)));
            second.emplace(n, std::move(m));
        }
    OctahedralWitness w;
    w.first = ChainMap::make_trusted(c1, c21, std::move(first));
    w.second = ChainMap::make_trusted(c21, c2, std::move(second));

    // cone(first)^n = (A^{n+2} ⊕ B^{n+1}) ⊕ (A^{n+1} ⊕ C^n) → B^{n+1} ⊕ C^n,
    // ((a', b), (a, c)) ↦ (b + f1 a, c).
    ChainComplex cf = cone(w.first);
    std::map<int, IntMatrix> comp;
    if (!cf.is_zero())
        for (int n = cf.min_degree(); n <= cf.max_degree(); ++n) {
            IntMatrix m(c2.rank(n), cf.rank(n));
            const std::size_t b_col = a.rank(n + 2);
            const std::size_t a_col = c1.rank(n + 1);
            const std::size_t c_col = a_col + a.rank(n + 1);
            m.set_block(0, b_col, IntMatrix::identity(b.rank(n + 1)));
            m.set_block(0, a_col, f1.component(n + 1));
            m.set_block(b.rank(n + 1), c_col, IntMatrix::identity(c.rank(n)));
            comp.emplace(n, std::move(m));
        }
    w.comparison = ChainMap::make_trusted(std::move(cf), c2, std::move(comp));
    w.certified = is_quasi_iso(w.comparison);
    return w;
}

} // namespace microwrap
