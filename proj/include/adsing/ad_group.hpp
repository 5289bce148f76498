/**
 * Linearisation of ad conditions: groups of ads as integer lattices and
 * bordism groups as quotients of lattices.
 */
#ifndef ADSING_AD_GROUP_HPP
#define ADSING_AD_GROUP_HPP

#include <vector>

#include "abelian.hpp"
#include "pre_ad.hpp"

namespace adsing
{

/// Unknowns x in Z^variables subject to constraints * x = 0 mod modulus.
struct LinearAdSystem
{
    std::size_t variables = 0;
    IntMatrix constraints;
    Integer modulus = 0;
};

/// All solutions; contains modulus * Z^variables.
inline Lattice solution_lattice(const LinearAdSystem& s)
{
    if (s.constraints.rows() == 0)
        return Lattice::full(s.variables);
    if (s.modulus == 0)
        return kernel(s.constraints);
    return preimage(s.constraints, Lattice::scaled(s.constraints.rows(), s.modulus));
}

/// cycles / relations, presented on the basis of cycles.
struct QuotientGroup
{
    Lattice cycles;
    Lattice relations;
    FgAbGroup group;

    QuotientGroup() = default;
    QuotientGroup(Lattice c, Lattice r)
        : cycles(std::move(c)), relations(std::move(r)),
          group(cycles.coordinates_of(relations).transposed())
    {
    }

    /// Coordinates of an ambient vector; throws when it is not a cycle.
    IntVector coordinates(const IntVector& x) const
    {
        auto c = cycles.coordinates(x);
        if (!c)
            throw AdError("QuotientGroup: vector is not a cycle");
        return *c;
    }

    /// Ambient vector of a group element given in coordinates.
    IntVector lift(const IntVector& coords) const { return cycles.basis() * coords; }

    bool is_zero(const IntVector& x) const { return relations.contains(x); }
};

/// The group map induced by a linear map on the ambient spaces.
inline AbMap induced_map(const QuotientGroup& src, const QuotientGroup& dst, const IntMatrix& f)
{
    IntMatrix m(dst.cycles.rank(), src.cycles.rank());
    for (std::size_t j = 0; j < src.cycles.rank(); ++j)
    {
        IntVector c = dst.coordinates(f * src.cycles.basis().column(j));
        for (std::size_t i = 0; i < c.size(); ++i)
            m(i, j) = c[i];
    }
    return AbMap(src.group, dst.group, m);
}

/**
 * Bordism from a system of *-ads, a system of I-ads and the two end
 * restrictions (matrices from I-variables to *-variables).
 */
inline QuotientGroup bordism_quotient(const LinearAdSystem& star, const LinearAdSystem& cyl,
                                      const IntMatrix& res0, const IntMatrix& res1)
{
    Lattice a = solution_lattice(star);
    Lattice i = solution_lattice(cyl);
    Lattice b = Lattice::span((res0 - res1) * i.basis()) + Lattice::scaled(star.variables, star.modulus);
    if (!a.contains(b))
        throw AdError("bordism_quotient: end restrictions of I-ads are not *-ads");
    return QuotientGroup(a, b);
}

/// The ad condition on K in degree k with every k-cell a variable.
inline LinearAdSystem ad_system(const BallComplex& k, int degree, const RingSpec& ring,
                                std::vector<std::size_t>* variable_cells = nullptr)
{
    auto vars = k.cells_of_dim(degree);
    auto rows = k.cells_of_dim(degree + 1);
    std::vector<std::size_t> pos(k.size(), 0);
    for (std::size_t v = 0; v < vars.size(); ++v)
        pos[vars[v]] = v;
    LinearAdSystem s{vars.size(), IntMatrix(rows.size(), vars.size()), ring.modulus};
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& e : k.boundary(rows[r]))
            if (k.dim(e.face) == degree)
                s.constraints(r, pos[e.face]) = e.sign;
    if (variable_cells)
        *variable_cells = vars;
    return s;
}

/// Degree-k ads on K with every k-cell carrying a ring element, modulo the ring's relations.
struct AdGroup
{
    std::vector<std::size_t> cells;
    QuotientGroup quotient;

    const FgAbGroup& group() const { return quotient.group; }

    PreAd to_pre_ad(const ComplexPtr& k, int degree, const RingSpec& ring, const IntVector& coords) const
    {
        IntVector x = quotient.lift(coords);
        PreAd m(k, degree, ring);
        for (std::size_t v = 0; v < cells.size(); ++v)
            m.set(cells[v], x[v]);
        return m;
    }
};

inline AdGroup ad_group(const BallComplex& k, int degree, const RingSpec& ring)
{
    AdGroup g;
    LinearAdSystem s = ad_system(k, degree, ring, &g.cells);
    g.quotient = QuotientGroup(solution_lattice(s), Lattice::scaled(s.variables, ring.modulus));
    return g;
}

/// Plain bordism over the point: degree-k *-ads modulo ends of I-ads.
inline QuotientGroup plain_bordism(int degree, const RingSpec& ring)
{
    BallComplex pt = point();
    BallComplex cyl = product(pt, simplex(1));
    std::vector<std::size_t> star_cells, cyl_cells;
    LinearAdSystem star = ad_system(pt, degree, ring, &star_cells);
    LinearAdSystem i = ad_system(cyl, degree, ring, &cyl_cells);
    IntMatrix res0(star.variables, i.variables), res1(star.variables, i.variables);
    for (std::size_t a = 0; a < star_cells.size(); ++a)
        for (std::size_t b = 0; b < cyl_cells.size(); ++b)
        {
            if (cyl_cells[b] == 3 * star_cells[a] + interval_cells::end0)
                res0(a, b) = 1;
            if (cyl_cells[b] == 3 * star_cells[a] + interval_cells::end1)
                res1(a, b) = 1;
        }
    return bordism_quotient(star, i, res0, res1);
}

inline FgAbGroup bordism_group(int degree, const RingSpec& ring)
{
    return plain_bordism(degree, ring).group;
}

} // namespace adsing

#endif
