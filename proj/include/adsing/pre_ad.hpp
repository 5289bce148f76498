/**
 * Pre-ads in the ring model: a degree k and a value (ring element or empty)
 * on every k-cell of a ball complex, all other cells being empty.
 *
 * The ad condition asks that for every (k+1)-cell the incidence-weighted
 * sum of the values on its faces vanishes in the ring.  This header also
 * provides restriction, cylinders, gluing along interval subdivisions and
 * transport along incidence-preserving cell isomorphisms.
 */
#ifndef ADSING_PRE_AD_HPP
#define ADSING_PRE_AD_HPP

#include <bit>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ball_complex.hpp"
#include "ring.hpp"
#include "subdivision.hpp"

namespace adsing
{

using ComplexPtr = std::shared_ptr<const BallComplex>;

inline ComplexPtr share(BallComplex k)
{
    return std::make_shared<const BallComplex>(std::move(k));
}

class AdError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class PreAd
{
public:
    PreAd() : PreAd(share(BallComplex()), 0, RingSpec()) {}

    /// The all-empty pre-ad.
    PreAd(ComplexPtr complex, int degree, RingSpec ring)
        : complex_(std::move(complex)), degree_(degree), ring_(std::move(ring)),
          values_(complex_->size())
    {
    }

    PreAd(ComplexPtr complex, int degree, RingSpec ring, std::vector<Value> values)
        : PreAd(std::move(complex), degree, std::move(ring))
    {
        if (values.size() != values_.size())
            throw AdError("PreAd: one value per cell expected");
        for (std::size_t i = 0; i < values.size(); ++i)
            set(i, values[i]);
    }

    const BallComplex& complex() const { return *complex_; }
    const ComplexPtr& complex_ptr() const { return complex_; }
    int degree() const { return degree_; }
    const RingSpec& ring() const { return ring_; }
    const std::vector<Value>& values() const { return values_; }
    const Value& value(std::size_t cell) const { return values_.at(cell); }

    void set(std::size_t cell, const Value& v)
    {
        if (v && complex_->dim(cell) != degree_)
            throw AdError("PreAd: cell " + complex_->id(cell) + " of dimension " +
                          std::to_string(complex_->dim(cell)) + " cannot carry a value in degree " +
                          std::to_string(degree_));
        values_.at(cell) = v ? Value(ring_.reduce(*v)) : Value();
    }

    void set(const std::string& cell, const Value& v) { set(complex_->index_of(cell), v); }

    bool is_empty() const
    {
        for (const auto& v : values_)
            if (v)
                return false;
        return true;
    }

    /// The value on the opposite orientation of every cell.
    PreAd negated() const
    {
        PreAd out(complex_, degree_, ring_);
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (values_[i])
                out.set(i, -*values_[i]);
        return out;
    }

    /// Cellwise equality, including empty versus zero.
    friend bool operator==(const PreAd& a, const PreAd& b)
    {
        return a.degree_ == b.degree_ && a.ring_ == b.ring_ && a.values_ == b.values_ &&
               a.complex_->size() == b.complex_->size();
    }

private:
    ComplexPtr complex_;
    int degree_;
    RingSpec ring_;
    std::vector<Value> values_;
};

/// Boundary sum at a (k+1)-cell, empty faces contributing nothing.
inline Integer boundary_sum(const PreAd& m, std::size_t cell)
{
    Integer s = 0;
    for (const auto& e : m.complex().boundary(cell))
        if (const auto& v = m.value(e.face))
            s += e.sign * *v;
    return m.ring().reduce(s);
}

inline ValidationReport is_ad(const PreAd& m)
{
    ValidationReport r;
    for (std::size_t c : m.complex().cells_of_dim(m.degree() + 1))
    {
        Integer s = boundary_sum(m, c);
        if (s != 0)
            r.violations.push_back("ad condition fails at " + m.complex().id(c) + ": boundary sum " +
                                   s.get_str());
    }
    return r;
}

/// Restriction to a subcomplex given by cell indices closed under faces.
inline PreAd restrict_to(const PreAd& m, const std::vector<std::size_t>& members)
{
    auto sub = share(subcomplex(m.complex(), members));
    PreAd out(sub, m.degree(), m.ring());
    for (std::size_t i = 0; i < sub->size(); ++i)
        out.set(i, m.value(m.complex().index_of(sub->id(i))));
    return out;
}

/// Restriction to the closure of one cell.
inline PreAd restrict_to_cell(const PreAd& m, std::size_t cell)
{
    return restrict_to(m, m.complex().closure(cell));
}

/**
 * An ad on K x I that restricts to M on both ends.  Values sit on the end
 * copies of the k-cells, every swept cell c x I is empty.
 */
inline PreAd cylinder(const PreAd& m)
{
    if (!is_ad(m).ok())
        throw AdError("cylinder: input is not an ad");
    auto cyl = share(product(m.complex(), simplex(1)));
    PreAd out(cyl, m.degree(), m.ring());
    for (std::size_t c = 0; c < m.complex().size(); ++c)
    {
        out.set(3 * c + interval_cells::end0, m.value(c));
        out.set(3 * c + interval_cells::end1, m.value(c));
    }
    return out;
}

/// Restriction of a pre-ad on K x I to K x {end}, end in {0, 1}.
inline PreAd restrict_end(const PreAd& m, const ComplexPtr& k, int end)
{
    if (m.complex().size() != 3 * k->size())
        throw AdError("restrict_end: pre-ad does not live on K x I");
    PreAd out(k, m.degree(), m.ring());
    std::size_t slot = end == 0 ? interval_cells::end0 : interval_cells::end1;
    for (std::size_t c = 0; c < k->size(); ++c)
        out.set(c, m.value(3 * c + slot));
    return out;
}

/**
 * Glue an ad on the fine complex to the coarse one: each coarse k-cell gets
 * the signed sum of its equal-dimension fine cells (empty when all are).
 */
inline PreAd glue(const Subdivision& s, const PreAd& m)
{
    if (m.complex_ptr() != s.fine && m.complex().size() != s.fine->size())
        throw AdError("glue: pre-ad does not live on the fine complex");
    if (!is_ad(m).ok())
        throw AdError("glue: input is not an ad");
    PreAd out(s.coarse, m.degree(), m.ring());
    std::vector<Value> acc(s.coarse->size());
    for (std::size_t f = 0; f < s.fine->size(); ++f)
    {
        std::size_t c = s.carrier[f];
        if (s.fine->dim(f) != s.coarse->dim(c) || s.fine->dim(f) != m.degree())
            continue;
        acc[c] = add_values(acc[c], scale_value(m.value(f), s.orientation_sign[f]));
    }
    for (std::size_t c = 0; c < acc.size(); ++c)
        out.set(c, acc[c]);
    auto report = is_ad(out);
    if (!report.ok())
        throw AdError("glue: glued pre-ad is not an ad (" + report.violations.front() + ")");
    return out;
}

/**
 * Canonical refinement of an ad on K x I to the midpoint subdivision:
 * the left half keeps the swept value, the right half carries 0 (or
 * stays empty), and the midpoint copy repeats the end-1 value.
 */
inline PreAd refine(const Subdivision& s, const PreAd& m)
{
    using namespace interval_cells;
    if (m.complex().size() != s.coarse->size() || s.fine->size() * 3 != s.coarse->size() * 5)
        throw AdError("refine: not an interval subdivision of the pre-ad's complex");
    PreAd out(s.fine, m.degree(), m.ring());
    for (std::size_t c = 0; c < s.coarse->size() / 3; ++c)
    {
        const Value& swept = m.value(3 * c + edge);
        out.set(5 * c + fine0, m.value(3 * c + end0));
        out.set(5 * c + fine1, m.value(3 * c + end1));
        out.set(5 * c + fine_mid, m.value(3 * c + end1));
        out.set(5 * c + fine_left, swept);
        out.set(5 * c + fine_right, swept ? Value(Integer(0)) : Value());
    }
    return out;
}

/**
 * A bijection between the cells of (source, source_rel) and (target,
 * target_rel) outside the relative parts, with dim c = dim image(c) + shift
 * and [c : c'] = sign(c) sign(c') [image c : image c'].
 */
struct CellIsomorphism
{
    ComplexPtr source;
    std::vector<bool> source_rel;
    ComplexPtr target;
    std::vector<bool> target_rel;
    std::vector<std::size_t> image;
    std::vector<int> signs;
    int shift = 0;

    static CellIsomorphism identity(const ComplexPtr& k)
    {
        CellIsomorphism t{k, std::vector<bool>(k->size(), false), k,
                          std::vector<bool>(k->size(), false), {}, std::vector<int>(k->size(), 1), 0};
        for (std::size_t i = 0; i < k->size(); ++i)
            t.image.push_back(i);
        return t;
    }
};

inline ValidationReport validate_isomorphism(const CellIsomorphism& t)
{
    ValidationReport r;
    const BallComplex& s = *t.source;
    const BallComplex& g = *t.target;
    if (t.source_rel.size() != s.size() || t.target_rel.size() != g.size() ||
        t.image.size() != s.size() || t.signs.size() != s.size())
    {
        r.violations.push_back("isomorphism tables have the wrong length");
        return r;
    }
    std::vector<int> hits(g.size(), 0);
    std::size_t source_edges = 0, target_edges = 0;
    for (std::size_t c = 0; c < s.size(); ++c)
    {
        if (t.source_rel[c])
            continue;
        std::size_t d = t.image[c];
        if (d >= g.size() || t.target_rel[d])
        {
            r.violations.push_back("cell " + s.id(c) + " is not sent to a non-relative cell");
            continue;
        }
        ++hits[d];
        if (t.signs[c] != 1 && t.signs[c] != -1)
            r.violations.push_back("cell " + s.id(c) + " has sign " + std::to_string(t.signs[c]));
        if (s.dim(c) != g.dim(d) + t.shift)
            r.violations.push_back("dimension shift wrong at " + s.id(c));
        for (const auto& e : s.boundary(c))
        {
            if (t.source_rel[e.face])
                continue;
            ++source_edges;
            std::size_t df = t.image[e.face];
            if (df >= g.size() || g.incidence(d, df) * t.signs[c] * t.signs[e.face] != e.sign)
                r.violations.push_back("incidence mismatch at (" + s.id(c) + ", " + s.id(e.face) + ")");
        }
    }
    for (std::size_t d = 0; d < g.size(); ++d)
    {
        if (t.target_rel[d])
            continue;
        if (hits[d] != 1)
            r.violations.push_back("target cell " + g.id(d) + " is hit " + std::to_string(hits[d]) +
                                   " times");
        for (const auto& e : g.boundary(d))
            if (!t.target_rel[e.face])
                ++target_edges;
    }
    if (r.ok() && source_edges != target_edges)
        r.violations.push_back("incidence relations are not in bijection");
    return r;
}

/// theta^* M: value on c is sign(c) M(theta c); degree grows by the shift.
inline PreAd transport(const CellIsomorphism& t, const PreAd& m)
{
    auto report = validate_isomorphism(t);
    if (!report.ok())
        throw AdError("transport: " + report.violations.front());
    if (m.complex().size() != t.target->size())
        throw AdError("transport: pre-ad does not live on the target complex");
    PreAd out(t.source, m.degree() + t.shift, m.ring());
    for (std::size_t c = 0; c < t.source->size(); ++c)
        if (!t.source_rel[c])
            out.set(c, scale_value(m.value(t.image[c]), t.signs[c]));
    return out;
}

/// Increasing vertex list of a bitmask.
inline std::vector<int> mask_vertices(unsigned mask)
{
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (mask >> i & 1u)
            out.push_back(i);
    return out;
}

/// Local bitmask inside simplex_on(mask_vertices(face)) of a subset of it.
inline unsigned local_mask(unsigned face, unsigned subset)
{
    unsigned out = 0;
    int pos = 0;
    for (int i = 0; i < 32; ++i)
        if (face >> i & 1u)
        {
            if (subset >> i & 1u)
                out |= 1u << pos;
            ++pos;
        }
    return out;
}

/**
 * The collapse K x Delta^(sigma + j) -> K x Delta^sigma, (c, tau + j) -> (c, tau),
 * relative to the cells missing j or the first vertex b of sigma on the
 * source and missing b on the target.  Shift 1; sign (-1)^(vertices of tau above j).
 */
inline CellIsomorphism collapse_isomorphism(const ComplexPtr& k, unsigned sigma, int j)
{
    if (sigma == 0 || (sigma >> j & 1u))
        throw AdError("collapse_isomorphism: need nonempty sigma not containing j");
    const unsigned big = sigma | 1u << j;
    const unsigned base = sigma & (~sigma + 1);
    auto src_simplex = simplex_on(mask_vertices(big));
    auto dst_simplex = simplex_on(mask_vertices(sigma));
    const std::size_t ns = src_simplex.size(), nd = dst_simplex.size();
    CellIsomorphism t;
    t.source = share(product(*k, src_simplex));
    t.target = share(product(*k, dst_simplex));
    t.shift = 1;
    t.source_rel.assign(t.source->size(), true);
    t.target_rel.assign(t.target->size(), true);
    t.image.assign(t.source->size(), 0);
    t.signs.assign(t.source->size(), 1);
    for (std::size_t c = 0; c < k->size(); ++c)
    {
        for (unsigned tau = 1; tau <= sigma; ++tau)
            if ((tau & sigma) == tau && (tau & base))
                t.target_rel[c * nd + local_mask(sigma, tau) - 1] = false;
        for (unsigned tau = 1; tau <= big; ++tau)
        {
            if ((tau & big) != tau || !(tau & base) || !(tau >> j & 1u))
                continue;
            std::size_t src = c * ns + local_mask(big, tau) - 1;
            unsigned rest = tau & ~(1u << j);
            t.source_rel[src] = false;
            t.image[src] = c * nd + local_mask(sigma, rest) - 1;
            t.signs[src] = std::popcount(rest >> j) % 2 == 0 ? 1 : -1;
        }
    }
    return t;
}

} // namespace adsing

#endif
