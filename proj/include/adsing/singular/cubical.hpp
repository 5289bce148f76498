/**
 * The cubical diagram with vertices ad<S_T>, T a subset of {1..n}.  An
 * object of A<S_T> is a value M_sigma for every sigma subset of T + {0}
 * containing 0, with M_(sigma + i) = P_i M_sigma; a K-ad has every M_sigma a
 * K-ad.  When some P_i is empty, faces containing i carry the empty object.
 */
#ifndef ADSING_SINGULAR_CUBICAL_HPP
#define ADSING_SINGULAR_CUBICAL_HPP

#include <algorithm>
#include <vector>

#include "../ad_group.hpp"
#include "sequence.hpp"

namespace adsing
{

namespace detail
{

/// Unknowns (sigma, k-cell of K) of one cubical vertex, sigma ascending.
struct CubicalLayout
{
    unsigned vertex = 0;  ///< T as a bitmask over 1..n (bit i = index i)
    std::vector<unsigned> sigmas;
    std::vector<std::size_t> cells;
    LinearAdSystem system;

    std::size_t block(unsigned sigma) const
    {
        for (std::size_t b = 0; b < sigmas.size(); ++b)
            if (sigmas[b] == sigma)
                return b;
        return sigmas.size();
    }
};

inline CubicalLayout cubical_layout(const BallComplex& k, int degree, const RingSpec& ring,
                                    const SingularitySequence& seq, unsigned t)
{
    CubicalLayout l;
    l.vertex = t;
    LinearAdSystem single = ad_system(k, degree, ring, &l.cells);
    for (unsigned sub = t;; sub = (sub - 1) & t)
    {
        bool empty = false;
        for (int i = 1; i < 32; ++i)
            if ((sub >> i & 1u) && !seq.entry(static_cast<std::size_t>(i)))
                empty = true;
        if (!empty)
            l.sigmas.push_back(sub | 1u);
        if (sub == 0)
            break;
    }
    std::sort(l.sigmas.begin(), l.sigmas.end());
    const std::size_t v = l.cells.size(), nb = l.sigmas.size();
    std::vector<IntVector> rows;
    for (std::size_t b = 0; b < nb; ++b)
    {
        for (std::size_t r = 0; r < single.constraints.rows(); ++r)
        {
            IntVector row(v * nb);
            for (std::size_t j = 0; j < v; ++j)
                row[b * v + j] = single.constraints(r, j);
            rows.push_back(std::move(row));
        }
        for (int i = 1; i < 32; ++i)
        {
            unsigned hi = l.sigmas[b];
            if (!(hi >> i & 1u))
                continue;
            std::size_t lo = l.block(hi & ~(1u << i));
            for (std::size_t j = 0; j < v; ++j)
            {
                IntVector row(v * nb);
                row[b * v + j] = 1;
                row[lo * v + j] = -*seq.entry(static_cast<std::size_t>(i));
                rows.push_back(std::move(row));
            }
        }
    }
    l.system = {v * nb, IntMatrix(rows.size(), v * nb), ring.modulus};
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < v * nb; ++j)
            l.system.constraints(r, j) = rows[r][j];
    return l;
}

} // namespace detail

/// Bordism of ad<S_T> over the point in one degree.
struct CubicalVertex
{
    unsigned vertex;
    detail::CubicalLayout star;
    QuotientGroup quotient;

    const FgAbGroup& group() const { return quotient.group; }
};

inline CubicalVertex cubical_vertex(const RingSpec& ring, const SingularitySequence& seq, unsigned t, int degree)
{
    if (t & 1u)
        throw std::invalid_argument("cubical_vertex: T must be a subset of {1..n}");
    if (t >> 1 >> seq.size())
        throw std::invalid_argument("cubical_vertex: T exceeds the sequence");
    BallComplex pt = point();
    BallComplex cyl = product(pt, simplex(1));
    auto star = detail::cubical_layout(pt, degree, ring, seq, t);
    auto i = detail::cubical_layout(cyl, degree, ring, seq, t);
    IntMatrix res0(star.system.variables, i.system.variables), res1(star.system.variables, i.system.variables);
    const std::size_t vs = star.cells.size(), vi = i.cells.size();
    for (std::size_t b = 0; b < star.sigmas.size(); ++b)
        for (std::size_t a = 0; a < vs; ++a)
            for (std::size_t c = 0; c < vi; ++c)
            {
                if (i.cells[c] == 3 * star.cells[a] + interval_cells::end0)
                    res0(b * vs + a, b * vi + c) = 1;
                if (i.cells[c] == 3 * star.cells[a] + interval_cells::end1)
                    res1(b * vs + a, b * vi + c) = 1;
            }
    QuotientGroup q = bordism_quotient(star.system, i.system, res0, res1);
    return {t, std::move(star), std::move(q)};
}

/// Projection to the member M_{0}: the isomorphism ad<S_T> -> ad on bordism.
inline AbMap cubical_vertex_iso(const CubicalVertex& v, const QuotientGroup& plain)
{
    const std::size_t width = v.star.cells.size();
    IntMatrix m(width, v.star.system.variables);
    for (std::size_t j = 0; j < width; ++j)
        m(j, v.star.block(1u) * width + j) = 1;
    return induced_map(v.quotient, plain, m);
}

/// The inverse direction x -> (prod_{i in sigma} P_i x)_sigma, built directly.
inline AbMap cubical_vertex_section(const CubicalVertex& v, const QuotientGroup& plain,
                                    const SingularitySequence& seq)
{
    const std::size_t width = v.star.cells.size();
    IntMatrix m(v.star.system.variables, width);
    for (std::size_t b = 0; b < v.star.sigmas.size(); ++b)
    {
        Integer f = 1;
        for (int i = 1; i < 32; ++i)
            if (v.star.sigmas[b] >> i & 1u)
                f *= *seq.entry(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < width; ++j)
            m(b * width + j, j) = f;
    }
    return induced_map(plain, v.quotient, m);
}

/// The face functor d_k: (d_k M)_sigma = M_(sigma + k), from vertex T to T - k.
inline AbMap cubical_face_map(const CubicalVertex& from, const CubicalVertex& to, int k)
{
    if (!(from.vertex >> k & 1u) || to.vertex != (from.vertex & ~(1u << k)))
        throw std::invalid_argument("cubical_face_map: vertices are not related by d_" + std::to_string(k));
    const std::size_t width = from.star.cells.size();
    IntMatrix m(to.star.system.variables, from.star.system.variables);
    for (std::size_t b = 0; b < to.star.sigmas.size(); ++b)
    {
        std::size_t src = from.star.block(to.star.sigmas[b] | 1u << k);
        if (src == from.star.sigmas.size())
            continue;  // empty face
        for (std::size_t j = 0; j < width; ++j)
            m(b * width + j, src * width + j) = 1;
    }
    return induced_map(from.quotient, to.quotient, m);
}

/// d_k read through the vertex isomorphisms, as an endomorphism of plain bordism.
inline AbMap cubical_face_on_plain(const RingSpec& ring, const SingularitySequence& seq, unsigned t, int k,
                                   int degree)
{
    QuotientGroup plain = plain_bordism(degree, ring);
    CubicalVertex from = cubical_vertex(ring, seq, t, degree);
    CubicalVertex to = cubical_vertex(ring, seq, t & ~(1u << k), degree);
    return compose(cubical_vertex_iso(to, plain),
                   compose(cubical_face_map(from, to, k), cubical_vertex_section(from, plain, seq)));
}

/// Multiplication by P_k on plain bordism; P_k empty gives the zero map.
inline AbMap multiplication_on_plain(const RingSpec& ring, const Value& p, int degree)
{
    QuotientGroup plain = plain_bordism(degree, ring);
    IntMatrix m = p ? IntMatrix::scalar(plain.cycles.ambient_dim(), *p)
                    : IntMatrix(plain.cycles.ambient_dim(), plain.cycles.ambient_dim());
    return induced_map(plain, plain, m);
}

} // namespace adsing

#endif
