/**
 * Finite ball complexes, modelled as regular CW posets whose codimension-one
 * face relation carries incidence numbers +1 / -1.
 *
 * Orientation is not stored: every cell has a fixed reference orientation
 * and reversing it is handled by negating whatever value sits on the cell.
 */
#ifndef ADSING_BALL_COMPLEX_HPP
#define ADSING_BALL_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "chain_complex.hpp"

namespace adsing
{

class ComplexError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct Cell
{
    std::string id;
    int dim = 0;
    std::optional<std::string> label;
};

/// One codimension-one face of a cell.
struct Incidence
{
    std::size_t face;
    int sign;
};

struct IncidenceEntry
{
    std::string of;
    std::string face;
    int sign;
};

struct ValidationReport
{
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

class BallComplex
{
public:
    BallComplex() = default;

    /**
     * Only structural sanity is enforced here (unique ids, nonnegative
     * dimensions, known ids, signs +-1); the geometric invariants are left
     * to validate_complex so broken inputs can still be reported on.
     */
    BallComplex(std::vector<Cell> cells, const std::vector<IncidenceEntry>& incidence)
        : cells_(std::move(cells)), boundary_(cells_.size()), coboundary_(cells_.size())
    {
        for (std::size_t i = 0; i < cells_.size(); ++i)
        {
            if (cells_[i].dim < 0)
                throw ComplexError("cell " + cells_[i].id + " has negative dimension");
            if (!index_.emplace(cells_[i].id, i).second)
                throw ComplexError("duplicate cell id " + cells_[i].id);
        }
        for (const auto& e : incidence)
        {
            if (e.sign != 1 && e.sign != -1)
                throw ComplexError("incidence (" + e.of + ", " + e.face + ") has sign " +
                                   std::to_string(e.sign));
            auto of = find(e.of);
            auto face = find(e.face);
            if (!of)
                throw ComplexError("incidence refers to unknown cell " + e.of);
            if (!face)
                throw ComplexError("incidence refers to unknown cell " + e.face);
            for (const auto& existing : boundary_[*of])
                if (existing.face == *face)
                    throw ComplexError("incidence (" + e.of + ", " + e.face + ") listed twice");
            boundary_[*of].push_back({*face, e.sign});
            coboundary_[*face].push_back({*of, e.sign});
        }
        for (std::size_t i = 0; i < cells_.size(); ++i)
            max_dim_ = std::max(max_dim_, cells_[i].dim);
    }

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const Cell& cell(std::size_t i) const { return cells_.at(i); }
    const std::vector<Cell>& cells() const { return cells_; }
    int dim(std::size_t i) const { return cells_[i].dim; }
    const std::string& id(std::size_t i) const { return cells_[i].id; }

    /// -1 for the empty complex.
    int max_dim() const { return max_dim_; }

    std::optional<std::size_t> find(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const std::string& id) const
    {
        auto i = find(id);
        if (!i)
            throw ComplexError("no cell with id " + id);
        return *i;
    }

    const std::vector<Incidence>& boundary(std::size_t i) const { return boundary_[i]; }
    const std::vector<Incidence>& coboundary(std::size_t i) const { return coboundary_[i]; }

    /// Incidence number [cell : face], zero when face is not a codimension-one face.
    int incidence(std::size_t cell, std::size_t face) const
    {
        for (const auto& e : boundary_[cell])
            if (e.face == face)
                return e.sign;
        return 0;
    }

    std::vector<std::size_t> cells_of_dim(int d) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i].dim == d)
                out.push_back(i);
        return out;
    }

    /// The cell together with all faces of all orders, as a sorted index list.
    std::vector<std::size_t> closure(std::size_t i) const
    {
        std::vector<bool> seen(cells_.size(), false);
        std::vector<std::size_t> stack{i};
        seen[i] = true;
        while (!stack.empty())
        {
            std::size_t c = stack.back();
            stack.pop_back();
            for (const auto& e : boundary_[c])
                if (!seen[e.face])
                {
                    seen[e.face] = true;
                    stack.push_back(e.face);
                }
        }
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < cells_.size(); ++c)
            if (seen[c])
                out.push_back(c);
        return out;
    }

    /// face <= cell in the face order.
    bool is_face_of(std::size_t face, std::size_t cell) const
    {
        auto c = closure(cell);
        return std::binary_search(c.begin(), c.end(), face);
    }

    std::vector<IncidenceEntry> incidence_entries() const
    {
        std::vector<IncidenceEntry> out;
        for (std::size_t i = 0; i < cells_.size(); ++i)
            for (const auto& e : boundary_[i])
                out.push_back({cells_[i].id, cells_[e.face].id, e.sign});
        return out;
    }

    /// Boundary matrix C_d -> C_{d-1} on the cells of those dimensions in index order.
    IntMatrix boundary_matrix(int d) const
    {
        auto hi = cells_of_dim(d);
        auto lo = cells_of_dim(d - 1);
        std::vector<std::size_t> pos(cells_.size(), 0);
        for (std::size_t r = 0; r < lo.size(); ++r)
            pos[lo[r]] = r;
        IntMatrix m(lo.size(), hi.size());
        for (std::size_t c = 0; c < hi.size(); ++c)
            for (const auto& e : boundary_[hi[c]])
                if (cells_[e.face].dim == d - 1)
                    m(pos[e.face], c) = e.sign;
        return m;
    }

    long euler_characteristic() const
    {
        long chi = 0;
        for (const auto& c : cells_)
            chi += c.dim % 2 == 0 ? 1 : -1;
        return chi;
    }

private:
    std::vector<Cell> cells_;
    std::vector<std::vector<Incidence>> boundary_;
    std::vector<std::vector<Incidence>> coboundary_;
    std::unordered_map<std::string, std::size_t> index_;
    int max_dim_ = -1;
};

inline ValidationReport validate_complex(const BallComplex& k)
{
    ValidationReport report;
    auto pair = [&](std::size_t a, std::size_t b) {
        return "(" + k.id(a) + ", " + k.id(b) + ")";
    };
    for (std::size_t s = 0; s < k.size(); ++s)
    {
        for (const auto& e : k.boundary(s))
            if (k.dim(e.face) != k.dim(s) - 1)
                report.violations.push_back("incidence between cells of non-adjacent dimensions at " +
                                            pair(s, e.face));
        if (k.dim(s) >= 1 && k.boundary(s).size() < 2)
            report.violations.push_back("cell " + k.id(s) + " has fewer than two codimension-one faces");
        if (k.dim(s) == 1)
        {
            int total = 0;
            for (const auto& e : k.boundary(s))
                total += e.sign;
            if (total != 0)
                report.violations.push_back("∂∂≠0 at (" + k.id(s) + ", ∅)");
        }
        std::map<std::size_t, int> twice;
        for (const auto& e : k.boundary(s))
            for (const auto& f : k.boundary(e.face))
                twice[f.face] += e.sign * f.sign;
        for (const auto& [face, total] : twice)
            if (total != 0)
                report.violations.push_back("∂∂≠0 at " + pair(s, face));
    }
    return report;
}

/// Cellular chain complex, cells of each dimension taken in index order.
inline ChainComplexZ cellular_chain_complex(const BallComplex& k)
{
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> bd;
    for (int d = 0; d <= k.max_dim(); ++d)
    {
        ranks.push_back(k.cells_of_dim(d).size());
        bd.push_back(k.boundary_matrix(d));
    }
    return ChainComplexZ(ranks, bd);
}

inline std::string vertex_list_id(const std::vector<int>& vertices)
{
    std::string s = "[";
    for (std::size_t i = 0; i < vertices.size(); ++i)
        s += (i ? "," : "") + std::to_string(vertices[i]);
    return s + "]";
}

/**
 * The simplex on the given increasing vertex labels.  The cell for the
 * nonempty subset with local bitmask b sits at index b - 1; its id is the
 * vertex list, e.g. "[0,2]".
 */
inline BallComplex simplex_on(const std::vector<int>& vertices)
{
    const std::size_t n = vertices.size();
    if (n == 0 || n > 20)
        throw ComplexError("simplex_on: need between 1 and 20 vertices");
    for (std::size_t i = 1; i < n; ++i)
        if (vertices[i] <= vertices[i - 1])
            throw ComplexError("simplex_on: vertex labels must increase");
    auto subset = [&](unsigned mask) {
        std::vector<int> out;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u)
                out.push_back(vertices[i]);
        return out;
    };
    std::vector<Cell> cells;
    std::vector<IncidenceEntry> inc;
    const unsigned full = (1u << n) - 1;
    for (unsigned mask = 1; mask <= full; ++mask)
    {
        auto vs = subset(mask);
        cells.push_back({vertex_list_id(vs), static_cast<int>(vs.size()) - 1, std::nullopt});
        if (vs.size() < 2)
            continue;
        int position = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!(mask >> i & 1u))
                continue;
            inc.push_back({vertex_list_id(vs), vertex_list_id(subset(mask & ~(1u << i))),
                           position % 2 == 0 ? 1 : -1});
            ++position;
        }
    }
    return BallComplex(std::move(cells), inc);
}

/// The standard simplex on {0, ..., n}.
inline BallComplex simplex(int n)
{
    if (n < 0)
        throw ComplexError("simplex: negative dimension");
    std::vector<int> v(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        v[static_cast<std::size_t>(i)] = i;
    return simplex_on(v);
}

inline BallComplex point() { return simplex(0); }

/**
 * K x L.  The pair (a, b) sits at index a * |L| + b with id "(a,b)".
 * Incidence follows the graded Leibniz rule.
 */
inline BallComplex product(const BallComplex& k, const BallComplex& l)
{
    std::vector<Cell> cells;
    std::vector<IncidenceEntry> inc;
    cells.reserve(k.size() * l.size());
    auto name = [&](std::size_t a, std::size_t b) { return "(" + k.id(a) + "," + l.id(b) + ")"; };
    for (std::size_t a = 0; a < k.size(); ++a)
        for (std::size_t b = 0; b < l.size(); ++b)
        {
            cells.push_back({name(a, b), k.dim(a) + l.dim(b), std::nullopt});
            for (const auto& e : k.boundary(a))
                inc.push_back({name(a, b), name(e.face, b), e.sign});
            int sign = k.dim(a) % 2 == 0 ? 1 : -1;
            for (const auto& e : l.boundary(b))
                inc.push_back({name(a, b), name(a, e.face), sign * e.sign});
        }
    return BallComplex(std::move(cells), inc);
}

/// The subcomplex on the given cells, which must be closed under faces.
inline BallComplex subcomplex(const BallComplex& k, const std::vector<std::size_t>& members)
{
    std::vector<bool> in(k.size(), false);
    for (auto i : members)
        in[i] = true;
    std::vector<Cell> cells;
    std::vector<IncidenceEntry> inc;
    for (std::size_t i = 0; i < k.size(); ++i)
    {
        if (!in[i])
            continue;
        cells.push_back(k.cell(i));
        for (const auto& e : k.boundary(i))
        {
            if (!in[e.face])
                throw ComplexError("subcomplex: face " + k.id(e.face) + " of " + k.id(i) + " missing");
            inc.push_back({k.id(i), k.id(e.face), e.sign});
        }
    }
    return BallComplex(std::move(cells), inc);
}

/// The proper faces of sigma.
inline BallComplex boundary_subcomplex(const BallComplex& k, const std::string& sigma)
{
    std::size_t s = k.index_of(sigma);
    auto members = k.closure(s);
    members.erase(std::find(members.begin(), members.end(), s));
    return subcomplex(k, members);
}

} // namespace adsing

#endif
